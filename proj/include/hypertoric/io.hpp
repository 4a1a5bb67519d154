// Configuration ingestion and report emission. Rationals travel as strings
// "p/q" and Gaussian rationals as two-element arrays ["re", "im"], so
// exactness survives serialization. Coordinate indices (walls, hyperplanes,
// active sets, offending subsets) are 1-based in emitted documents, matching
// the labels H_1..H_d; list positions (components, neighbors) are 0-based.

#ifndef HYPERTORIC_IO_HPP
#define HYPERTORIC_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "hypertoric/arrangement.hpp"
#include "hypertoric/fiber_classifier.hpp"
#include "hypertoric/hypertoric_data.hpp"
#include "hypertoric/numeric_verifier.hpp"

namespace hypertoric {

using Json = nlohmann::ordered_json;

struct VerifySettings {
    int samples = 20;
    double tolerance = 1e-7;
    unsigned seed = 0;
};

struct ProblemConfig {
    IntMatrix A;
    RatVector alpha;
    GaussRatVector beta;
    std::vector<GaussRatVector> query_points;
    VerifySettings verify;
};

/// Parses a configuration document; throws std::invalid_argument on malformed
/// input (shape mismatches, bad rationals).
ProblemConfig parse_config(const Json& j);
ProblemConfig load_config(const std::string& path);
Json config_to_json(const ProblemConfig& config);

Json to_json(const SmoothnessReport& report);
Json to_json(const HypertoricData& data);  // dimensions plus the normals U
Json to_json(const FiberDescription& fd);
Json to_json(const VerificationReport& report);
Json core_to_json(const std::vector<CoreComponent>& core);
Json arrangement_to_json(const HypertoricData& data);

/// Inverse parsers for the emitted documents (round-trip checked in tests).
FiberDescription fiber_description_from_json(const Json& j);
VerificationReport verification_report_from_json(const Json& j);

GaussRatVector parse_query_point(const Json& j);

/// One row per hyperplane on both sides:
/// side,index,normal,offset_re,offset_im,kind.
std::string arrangement_to_csv(const HypertoricData& data);

/// Per-sample series of a verification report: sample,value.
std::string report_to_csv(const VerificationReport& report);

std::string core_to_text(const std::vector<CoreComponent>& core);
std::string smoothness_to_text(const HypertoricData& data, const SmoothnessReport& report);

}  // namespace hypertoric

#endif  // HYPERTORIC_IO_HPP
