#include "hypertoric/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace hypertoric {

namespace {

using Index = Eigen::Index;

Json rat_json(const Rat& q) { return rat_to_string(q); }

Json gauss_json(const GaussRat& g) {
    return Json::array({rat_to_string(g.re), rat_to_string(g.im)});
}

Rat rat_from_json(const Json& j) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    throw std::invalid_argument("expected a rational as string or integer");
}

GaussRat gauss_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("expected a complex rational as [re, im]");
    return {rat_from_json(j[0]), rat_from_json(j[1])};
}

Json int_matrix_json(const IntMatrix& M) {
    Json rows = Json::array();
    for (Index i = 0; i < M.rows(); ++i) {
        Json row = Json::array();
        for (Index j = 0; j < M.cols(); ++j)
            row.push_back(M(i, j).convert_to<long long>());
        rows.push_back(std::move(row));
    }
    return rows;
}

IntMatrix int_matrix_from_json(const Json& j, Index forced_cols = -1) {
    if (!j.is_array()) throw std::invalid_argument("expected a matrix as array of rows");
    Index rows = static_cast<Index>(j.size());
    Index cols = forced_cols;
    if (rows > 0) {
        if (!j[0].is_array()) throw std::invalid_argument("matrix rows must be arrays");
        cols = static_cast<Index>(j[0].size());
    }
    if (cols < 0) throw std::invalid_argument("cannot infer column count of an empty matrix");
    IntMatrix M(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        if (static_cast<Index>(j[i].size()) != cols)
            throw std::invalid_argument("ragged matrix rows");
        for (Index c = 0; c < cols; ++c) M(i, c) = Int(j[i][c].get<long long>());
    }
    return M;
}

Json index_set_json(const std::vector<int>& set) {
    Json out = Json::array();
    for (int i : set) out.push_back(i + 1);  // 1-based coordinate labels
    return out;
}

std::vector<int> index_set_from_json(const Json& j) {
    std::vector<int> out;
    for (const auto& v : j) out.push_back(v.get<int>() - 1);
    return out;
}

Json rat_vector_json(const RatVector& v) {
    Json out = Json::array();
    for (Index i = 0; i < v.size(); ++i) out.push_back(rat_json(v(i)));
    return out;
}

RatVector rat_vector_from_json(const Json& j) {
    RatVector v(static_cast<Index>(j.size()));
    Index i = 0;
    for (const auto& e : j) v(i++) = rat_from_json(e);
    return v;
}

Json gauss_vector_json(const GaussRatVector& v) {
    Json out = Json::array();
    for (Index i = 0; i < v.size(); ++i) out.push_back(gauss_json(v(i)));
    return out;
}

GaussRatVector gauss_vector_from_json(const Json& j) {
    GaussRatVector v(static_cast<Index>(j.size()));
    Index i = 0;
    for (const auto& e : j) v(i++) = gauss_from_json(e);
    return v;
}

Json finite_or_null(double v) {
    if (std::isinf(v)) return nullptr;
    return v;
}

double from_finite_or_null(const Json& j) {
    if (j.is_null()) return std::numeric_limits<double>::infinity();
    return j.get<double>();
}

const char* kind_name(HyperplaneKind k) {
    switch (k) {
        case HyperplaneKind::proper: return "proper";
        case HyperplaneKind::empty: return "empty";
        case HyperplaneKind::full: return "full";
    }
    return "proper";
}

Json int_vector_json(const IntVector& v) {
    Json out = Json::array();
    for (Index i = 0; i < v.size(); ++i) out.push_back(v(i).convert_to<long long>());
    return out;
}

Json stratum_json(const ShrinkStratum& sh) {
    Json flat;
    flat["dim"] = sh.flat.flat_dim;
    flat["base"] = rat_vector_json(sh.flat.flat_base);
    flat["directions"] = int_matrix_json(sh.flat.flat_directions);
    Json out;
    out["active"] = index_set_json(sh.active);
    out["shrunk_torus_rank"] = sh.shrunk_torus_rank;
    out["flat"] = std::move(flat);
    out["feasible"] = sh.flat.feasible;
    return out;
}

ShrinkStratum stratum_from_json(const Json& j, Index n) {
    ShrinkStratum sh;
    sh.active = index_set_from_json(j.at("active"));
    sh.shrunk_torus_rank = j.at("shrunk_torus_rank").get<Index>();
    sh.flat.active = sh.active;
    sh.flat.feasible = j.at("feasible").get<bool>();
    sh.flat.flat_dim = j.at("flat").at("dim").get<Index>();
    sh.flat.flat_base = rat_vector_from_json(j.at("flat").at("base"));
    sh.flat.flat_directions = int_matrix_from_json(j.at("flat").at("directions"), n);
    return sh;
}

}  // namespace

ProblemConfig parse_config(const Json& j) {
    ProblemConfig config;
    Index forced_d = -1;
    if (j.contains("d")) forced_d = j.at("d").get<Index>();
    config.A = int_matrix_from_json(j.at("A"), forced_d);
    config.alpha = rat_vector_from_json(j.at("alpha"));
    config.beta = gauss_vector_from_json(j.at("beta"));
    if (config.alpha.size() != config.A.rows() || config.beta.size() != config.A.rows())
        throw std::invalid_argument("alpha and beta must have one entry per row of A");
    if (j.contains("query_points")) {
        for (const auto& q : j.at("query_points")) {
            GaussRatVector b = gauss_vector_from_json(q);
            if (b.size() != config.A.cols())
                throw std::invalid_argument("query points must have length d");
            config.query_points.push_back(std::move(b));
        }
    }
    if (j.contains("verify")) {
        const auto& v = j.at("verify");
        if (v.contains("samples")) config.verify.samples = v.at("samples").get<int>();
        if (v.contains("tolerance")) config.verify.tolerance = v.at("tolerance").get<double>();
        if (v.contains("seed")) config.verify.seed = v.at("seed").get<unsigned>();
    }
    return config;
}

ProblemConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument(std::string("config parse error: ") + e.what());
    }
    return parse_config(j);
}

Json config_to_json(const ProblemConfig& config) {
    Json j;
    j["A"] = int_matrix_json(config.A);
    if (config.A.rows() == 0) j["d"] = config.A.cols();
    j["alpha"] = rat_vector_json(config.alpha);
    j["beta"] = gauss_vector_json(config.beta);
    if (!config.query_points.empty()) {
        Json pts = Json::array();
        for (const auto& b : config.query_points) pts.push_back(gauss_vector_json(b));
        j["query_points"] = std::move(pts);
    }
    j["verify"] = {{"samples", config.verify.samples},
                   {"tolerance", config.verify.tolerance},
                   {"seed", config.verify.seed}};
    return j;
}

Json to_json(const SmoothnessReport& report) {
    Json j;
    j["unimodular"] = report.unimodular;
    j["parameter_regular"] = report.parameter_regular;
    j["smooth"] = report.smooth();
    j["orbifold"] = report.orbifold();
    Json off = Json::array();
    for (const auto& s : report.offending_subsets) off.push_back(index_set_json(s));
    j["offending_subsets"] = std::move(off);
    return j;
}

Json to_json(const HypertoricData& data) {
    Json j;
    j["m"] = data.m;
    j["n"] = data.n;
    j["d"] = data.d;
    j["kernel_basis"] = int_matrix_json(data.U);
    Json normals = Json::array();
    for (Index i = 0; i < data.d; ++i) normals.push_back(int_vector_json(data.U.col(i)));
    j["normals"] = std::move(normals);
    return j;
}

Json to_json(const FiberDescription& fd) {
    Json j;
    j["base_point"] = gauss_vector_json(fd.base_point);
    j["regular"] = fd.regular;
    if (fd.generic_model) {
        j["generic_model"] = {{"torus_rank", fd.generic_model->torus_rank},
                              {"affine_rank", fd.generic_model->affine_rank}};
    } else {
        j["generic_model"] = nullptr;
    }
    Json strata = Json::array();
    for (const auto& sh : fd.shrink_strata) strata.push_back(stratum_json(sh));
    j["shrink_strata"] = std::move(strata);
    Json loci = Json::array();
    for (const auto& sh : fd.fixed_loci) loci.push_back(stratum_json(sh));
    j["fixed_loci"] = std::move(loci);
    return j;
}

FiberDescription fiber_description_from_json(const Json& j) {
    FiberDescription fd;
    fd.base_point = gauss_vector_from_json(j.at("base_point"));
    fd.regular = j.at("regular").get<bool>();
    if (!j.at("generic_model").is_null()) {
        GenericModel gm;
        gm.torus_rank = j.at("generic_model").at("torus_rank").get<Index>();
        gm.affine_rank = j.at("generic_model").at("affine_rank").get<Index>();
        fd.generic_model = gm;
    }
    Index n = 0;
    for (const auto& s : j.at("shrink_strata")) {
        auto sh = stratum_from_json(s, static_cast<Index>(s.at("flat").at("base").size()));
        n = sh.flat.flat_base.size();
        fd.shrink_strata.push_back(std::move(sh));
    }
    for (const auto& s : j.at("fixed_loci"))
        fd.fixed_loci.push_back(stratum_from_json(s, n));
    return fd;
}

Json to_json(const VerificationReport& report) {
    Json j;
    j["n_samples"] = report.n_samples;
    j["max_omega_c"] = report.max_omega_c;
    j["max_omega_vx"] = report.max_omega_vx;
    j["min_isotropy_gap"] = finite_or_null(report.min_isotropy_gap);
    j["max_sampler_residual"] = report.max_sampler_residual;
    j["jacobian_rank_ok"] = report.jacobian_rank_ok;
    j["freeness_ok"] = report.freeness_ok;
    j["isotropy_ok"] = report.isotropy_ok;
    j["tolerance"] = report.tolerance;
    j["passed"] = report.passed;
    j["per_sample"] = report.per_sample;
    return j;
}

VerificationReport verification_report_from_json(const Json& j) {
    VerificationReport r;
    r.n_samples = j.at("n_samples").get<int>();
    r.max_omega_c = j.at("max_omega_c").get<double>();
    r.max_omega_vx = j.at("max_omega_vx").get<double>();
    r.min_isotropy_gap = from_finite_or_null(j.at("min_isotropy_gap"));
    r.max_sampler_residual = j.at("max_sampler_residual").get<double>();
    r.jacobian_rank_ok = j.at("jacobian_rank_ok").get<bool>();
    r.freeness_ok = j.at("freeness_ok").get<bool>();
    r.isotropy_ok = j.at("isotropy_ok").get<bool>();
    r.tolerance = j.at("tolerance").get<double>();
    r.passed = j.at("passed").get<bool>();
    r.per_sample = j.at("per_sample").get<std::vector<double>>();
    return r;
}

GaussRatVector parse_query_point(const Json& j) { return gauss_vector_from_json(j); }

Json core_to_json(const std::vector<CoreComponent>& core) {
    Json components = Json::array();
    for (const auto& c : core) {
        Json j;
        j["label"] = c.label;
        j["signs"] = c.signs;
        j["bounded"] = c.bounded;
        j["neighbors"] = c.neighbors;
        components.push_back(std::move(j));
    }
    Json out;
    out["components"] = std::move(components);
    return out;
}

Json arrangement_to_json(const HypertoricData& data) {
    Json out;
    Json ws = Json::array();
    for (const auto& w : walls(data)) {
        Json j;
        j["index"] = w.index + 1;
        j["normal"] = int_vector_json(w.normal);
        j["offset"] = gauss_json(w.offset);
        j["kind"] = kind_name(w.kind);
        ws.push_back(std::move(j));
    }
    out["walls"] = std::move(ws);
    Json hs = Json::array();
    for (const auto& h : hyperplanes(data)) {
        Json j;
        j["index"] = h.index + 1;
        j["normal"] = int_vector_json(h.normal);
        j["offset"] = rat_json(h.offset);
        j["kind"] = kind_name(h.kind);
        hs.push_back(std::move(j));
    }
    out["hyperplanes"] = std::move(hs);
    return out;
}

std::string arrangement_to_csv(const HypertoricData& data) {
    std::ostringstream os;
    os << "side,index,normal,offset_re,offset_im,kind\n";
    auto normal_field = [](const IntVector& v) {
        std::ostringstream s;
        for (Index i = 0; i < v.size(); ++i) {
            if (i) s << ' ';
            s << v(i);
        }
        return s.str();
    };
    for (const auto& h : hyperplanes(data)) {
        os << "real," << h.index + 1 << "," << normal_field(h.normal) << ","
           << rat_to_string(h.offset) << ",0," << kind_name(h.kind) << "\n";
    }
    for (const auto& w : walls(data)) {
        os << "complex," << w.index + 1 << "," << normal_field(w.normal) << ","
           << rat_to_string(w.offset.re) << "," << rat_to_string(w.offset.im) << ","
           << kind_name(w.kind) << "\n";
    }
    return os.str();
}

std::string report_to_csv(const VerificationReport& report) {
    std::ostringstream os;
    os << "sample,value\n";
    os.precision(17);
    for (size_t i = 0; i < report.per_sample.size(); ++i)
        os << i << "," << report.per_sample[i] << "\n";
    return os.str();
}

std::string core_to_text(const std::vector<CoreComponent>& core) {
    std::ostringstream os;
    for (size_t i = 0; i < core.size(); ++i) {
        if (i) os << " -- ";
        os << core[i].label;
    }
    return os.str();
}

std::string smoothness_to_text(const HypertoricData& data, const SmoothnessReport& report) {
    std::ostringstream os;
    os << "ambient circles d: " << data.d << ", subtorus rank m: " << data.m
       << ", residual rank n: " << data.n << "\n";
    os << "unimodular normals: " << (report.unimodular ? "yes" : "no") << "\n";
    os << "parameter level regular: " << (report.parameter_regular ? "yes" : "no") << "\n";
    os << "smooth manifold: " << (report.smooth() ? "yes" : (report.orbifold() ? "no (orbifold)" : "no"))
       << "\n";
    if (!report.offending_subsets.empty()) {
        os << "offending subsets:";
        for (const auto& s : report.offending_subsets) {
            os << " {";
            for (size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i] + 1;
            os << "}";
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace hypertoric
