// Command-line driver: validate quotient data, emit the wall structure,
// classify fibers, list the extended core, and run the numeric verification
// suites. Exit codes: 0 success, 2 validation/config error, 3 verification
// failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hypertoric/io.hpp"

namespace {

using namespace hypertoric;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitVerification = 3;

struct Options {
    std::string config_path;
    std::string format = "json";
    std::string output_path;
    std::string csv_path;
    std::optional<unsigned> seed;
    std::optional<int> samples;
    std::optional<double> tolerance;
    std::optional<int> point;  // restrict to one query point
    bool allow_singular = false;
};

void emit(const Options& opt, const std::string& text) {
    if (opt.output_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
    } else {
        std::ofstream out(opt.output_path);
        if (!out) throw std::invalid_argument("cannot open output file: " + opt.output_path);
        out << text;
        if (!text.empty() && text.back() != '\n') out << '\n';
    }
}

void emit_csv(const Options& opt, const std::string& text) {
    if (opt.csv_path.empty()) return;
    std::ofstream out(opt.csv_path);
    if (!out) throw std::invalid_argument("cannot open csv file: " + opt.csv_path);
    out << text;
}

void emit_json_or_text(const Options& opt, const Json& j, const std::string& text) {
    if (opt.format == "text")
        emit(opt, text);
    else
        emit(opt, j.dump(2));
}

VerifySettings effective_verify(const Options& opt, const ProblemConfig& config) {
    VerifySettings v = config.verify;
    if (opt.seed) v.seed = *opt.seed;
    if (opt.samples) v.samples = *opt.samples;
    if (opt.tolerance) v.tolerance = *opt.tolerance;
    return v;
}

std::vector<GaussRatVector> selected_points(const Options& opt, const ProblemConfig& config) {
    if (config.query_points.empty())
        throw std::invalid_argument("config has no query_points");
    if (!opt.point) return config.query_points;
    int k = *opt.point;
    if (k < 0 || k >= static_cast<int>(config.query_points.size()))
        throw std::invalid_argument("query point index out of range");
    return {config.query_points[static_cast<size_t>(k)]};
}

int cmd_validate(const Options& opt) {
    auto config = load_config(opt.config_path);
    auto data = build(config.A, config.alpha, config.beta);
    auto report = check_parameter_regularity(data);
    Json j;
    j["data"] = to_json(data);
    j["smoothness"] = to_json(report);
    emit_json_or_text(opt, j, smoothness_to_text(data, report));
    return kExitOk;
}

int cmd_normals(const Options& opt) {
    auto config = load_config(opt.config_path);
    auto data = build(config.A, config.alpha, config.beta);
    Json j = to_json(data);
    std::ostringstream text;
    text << "kernel basis rows (n = " << data.n << "):\n";
    for (Eigen::Index r = 0; r < data.U.rows(); ++r) {
        for (Eigen::Index c = 0; c < data.U.cols(); ++c) text << data.U(r, c) << " ";
        text << "\n";
    }
    emit_json_or_text(opt, j, text.str());
    return kExitOk;
}

int cmd_walls(const Options& opt) {
    auto config = load_config(opt.config_path);
    auto data = build(config.A, config.alpha, config.beta);
    Json j = arrangement_to_json(data);
    std::ostringstream text;
    for (const auto& w : j["walls"])
        text << "W_" << w["index"] << " kind=" << w["kind"].get<std::string>() << "\n";
    for (const auto& h : j["hyperplanes"])
        text << "H_" << h["index"] << " kind=" << h["kind"].get<std::string>() << "\n";
    emit_json_or_text(opt, j, text.str());
    emit_csv(opt, arrangement_to_csv(data));
    return kExitOk;
}

int cmd_classify(const Options& opt) {
    auto config = load_config(opt.config_path);
    auto data = build(config.A, config.alpha, config.beta);
    Json out = Json::array();
    std::ostringstream text;
    for (const auto& b : selected_points(opt, config)) {
        auto fd = classify_fiber(data, b);
        out.push_back(to_json(fd));
        if (fd.regular) {
            text << "regular fiber: torus rank " << fd.generic_model->torus_rank << "\n";
        } else {
            text << "singular fiber: " << fd.shrink_strata.size() << " shrink strata, "
                 << fd.fixed_loci.size() << " fixed loci\n";
        }
    }
    emit_json_or_text(opt, out, text.str());
    return kExitOk;
}

int cmd_core(const Options& opt) {
    auto config = load_config(opt.config_path);
    auto data = build(config.A, config.alpha, config.beta);
    auto core = extended_core(data);
    emit_json_or_text(opt, core_to_json(core), core_to_text(core));
    return kExitOk;
}

int cmd_verify(const Options& opt) {
    auto config = load_config(opt.config_path);
    auto data = build(config.A, config.alpha, config.beta);
    auto settings = effective_verify(opt, config);

    Json out = Json::array();
    std::ostringstream text;
    std::string csv;
    bool all_passed = true;
    for (const auto& b : selected_points(opt, config)) {
        Json entry;
        entry["base_point"] = to_json(classify_fiber(data, b))["base_point"];
        if (is_regular_value(data, b)) {
            auto lag = verify_lagrangian(data, b, settings.samples, settings.tolerance,
                                         settings.seed);
            auto gen = verify_generic_fiber(data, b);
            entry["lagrangian"] = to_json(lag);
            entry["generic_fiber"] = to_json(gen);
            all_passed = all_passed && lag.passed && gen.passed;
            text << "regular point: lagrangian " << (lag.passed ? "pass" : "FAIL")
                 << " (max |omega_C| = " << lag.max_omega_c << "), generic fiber "
                 << (gen.passed ? "pass" : "FAIL") << "\n";
            csv += report_to_csv(lag);
        } else if (opt.allow_singular) {
            auto shr = verify_shrinking(data, b);
            entry["shrinking"] = to_json(shr);
            all_passed = all_passed && shr.passed;
            text << "singular point: shrinking " << (shr.passed ? "pass" : "FAIL") << "\n";
            csv += report_to_csv(shr);
        } else {
            throw Error("query point lies on a wall; rerun with --allow-singular");
        }
        out.push_back(std::move(entry));
    }
    emit_json_or_text(opt, out, text.str());
    emit_csv(opt, csv);
    return all_passed ? kExitOk : kExitVerification;
}

int cmd_report(const Options& opt) {
    auto config = load_config(opt.config_path);
    auto data = build(config.A, config.alpha, config.beta);
    auto settings = effective_verify(opt, config);

    Json j;
    j["data"] = to_json(data);
    j["smoothness"] = to_json(check_parameter_regularity(data));
    j["arrangement"] = arrangement_to_json(data);
    if (data.beta_is_zero() && data.n <= 3) j["extended_core"] = core_to_json(extended_core(data));

    bool all_passed = true;
    Json fibers = Json::array();
    for (const auto& b : config.query_points) {
        Json entry;
        auto fd = classify_fiber(data, b);
        entry["classification"] = to_json(fd);
        if (fd.regular) {
            auto lag = verify_lagrangian(data, b, settings.samples, settings.tolerance,
                                         settings.seed);
            auto gen = verify_generic_fiber(data, b);
            entry["lagrangian"] = to_json(lag);
            entry["generic_fiber"] = to_json(gen);
            all_passed = all_passed && lag.passed && gen.passed;
        } else {
            auto shr = verify_shrinking(data, b);
            entry["shrinking"] = to_json(shr);
            all_passed = all_passed && shr.passed;
        }
        fibers.push_back(std::move(entry));
    }
    j["fibers"] = std::move(fibers);
    emit(opt, j.dump(2));
    emit_csv(opt, arrangement_to_csv(data));
    return all_passed ? kExitOk : kExitVerification;
}

void add_common(CLI::App* cmd, Options& opt, bool verify_opts = false) {
    cmd->add_option("-c,--config", opt.config_path, "problem configuration (JSON)")
        ->required();
    cmd->add_option("-f,--format", opt.format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("-o,--output", opt.output_path, "write the report to a file");
    cmd->add_option("--csv", opt.csv_path, "also emit CSV plot data to a file");
    if (verify_opts) {
        cmd->add_option("--seed", [&opt](const CLI::results_t& r) {
            opt.seed = static_cast<unsigned>(std::stoul(r[0]));
            return true;
        }, "sampling seed (overrides the config)");
        cmd->add_option("--samples", [&opt](const CLI::results_t& r) {
            opt.samples = std::stoi(r[0]);
            return true;
        }, "sample count (overrides the config)");
        cmd->add_option("--tolerance", [&opt](const CLI::results_t& r) {
            opt.tolerance = std::stod(r[0]);
            return true;
        }, "pairing tolerance (overrides the config)");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"toric hyperkaehler fibration toolkit"};
    app.require_subcommand(1);

    Options opt;
    int (*handler)(const Options&) = nullptr;

    auto* validate = app.add_subcommand("validate", "check quotient data and smoothness");
    add_common(validate, opt);
    validate->callback([&]() { handler = cmd_validate; });

    auto* normals = app.add_subcommand("normals", "derived kernel basis and normals");
    add_common(normals, opt);
    normals->callback([&]() { handler = cmd_normals; });

    auto* walls_cmd = app.add_subcommand("walls", "wall structure and real hyperplanes");
    add_common(walls_cmd, opt);
    walls_cmd->callback([&]() { handler = cmd_walls; });

    auto* classify = app.add_subcommand("classify", "classify fibers over query points");
    add_common(classify, opt);
    classify->add_option("--point", [&opt](const CLI::results_t& r) {
        opt.point = std::stoi(r[0]);
        return true;
    }, "classify a single query point by index");
    classify->callback([&]() { handler = cmd_classify; });

    auto* core = app.add_subcommand("core", "extended core components (beta = 0)");
    add_common(core, opt);
    core->callback([&]() { handler = cmd_core; });

    auto* verify = app.add_subcommand("verify", "numeric verification at query points");
    add_common(verify, opt, true);
    verify->add_flag("--allow-singular", opt.allow_singular,
                     "run shrinking checks on wall points instead of failing");
    verify->add_option("--point", [&opt](const CLI::results_t& r) {
        opt.point = std::stoi(r[0]);
        return true;
    }, "verify a single query point by index");
    verify->callback([&]() { handler = cmd_verify; });

    auto* report = app.add_subcommand("report", "full document: data, walls, core, fibers");
    add_common(report, opt, true);
    report->callback([&]() { handler = cmd_report; });

    CLI11_PARSE(app, argc, argv);

    try {
        return handler(opt);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
