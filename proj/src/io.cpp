#include "nlsvqa/io.hpp"

#include "nlsvqa/error.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>

namespace nlsvqa {

namespace {

using nlohmann::json;

const std::set<std::string> kConfigKeys = {
    "n",    "d",    "dt",   "num_steps", "s",    "a",            "v",        "x0",
    "seed", "ftol", "bounds", "mode",    "output_times", "gradient", "implicit_step",
    "max_evals"};

json number_or_null(double x) { return std::isnan(x) ? json(nullptr) : json(x); }

double number_or_nan(const json& j) {
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

RunMode parse_mode(const std::string& s) {
    if (s == "VQA") return RunMode::VQA;
    if (s == "CLASSICAL") return RunMode::CLASSICAL;
    if (s == "CLASSICAL_NORMALIZED") return RunMode::CLASSICAL_NORMALIZED;
    throw ConfigurationError("unknown mode '" + s + "'");
}

GradientSource parse_gradient(const std::string& s) {
    if (s == "finite_difference") return GradientSource::FINITE_DIFFERENCE;
    if (s == "adjoint") return GradientSource::ADJOINT;
    throw ConfigurationError("unknown gradient source '" + s + "'");
}

ImplicitStep parse_implicit(const std::string& s) {
    if (s == "fft") return ImplicitStep::FFT;
    if (s == "circuit") return ImplicitStep::CIRCUIT;
    throw ConfigurationError("unknown implicit_step '" + s + "'");
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) {
            throw ConfigurationError("cannot create directory " + path.parent_path().string() +
                                     ": " + ec.message());
        }
    }
    std::ofstream out(path);
    if (!out) {
        throw ConfigurationError("cannot open " + path.string() + " for writing");
    }
    out << std::setprecision(17);
    return out;
}

void close_checked(std::ofstream& out, const std::filesystem::path& path) {
    out.close();
    if (!out) {
        throw ConfigurationError("failed writing " + path.string());
    }
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigurationError("cannot open " + path.string());
    }
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigurationError(path.string() + ": " + e.what());
    }
}

} // namespace

RunConfig config_from_json(const json& j) {
    if (!j.is_object()) {
        throw ConfigurationError("config must be a JSON object");
    }
    for (const auto& [key, _] : j.items()) {
        if (!kConfigKeys.contains(key)) {
            throw ConfigurationError("unknown config key '" + key + "'");
        }
    }
    RunConfig c;
    try {
        if (j.contains("n")) c.n = j.at("n").get<int>();
        if (j.contains("d")) c.d = j.at("d").get<int>();
        if (j.contains("dt")) c.dt = j.at("dt").get<double>();
        if (j.contains("num_steps")) c.num_steps = j.at("num_steps").get<int>();
        if (j.contains("s")) c.s = j.at("s").get<double>();
        if (j.contains("a")) c.a = j.at("a").get<double>();
        if (j.contains("v")) c.v = j.at("v").get<double>();
        if (j.contains("x0")) c.x0 = j.at("x0").get<double>();
        if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("ftol")) c.ftol = j.at("ftol").get<double>();
        if (j.contains("bounds")) {
            const auto& b = j.at("bounds");
            if (!b.is_array() || b.size() != 2) {
                throw ConfigurationError("bounds must be a [lower, upper] pair");
            }
            c.bounds = {b[0].get<double>(), b[1].get<double>()};
        }
        if (j.contains("mode")) c.mode = parse_mode(j.at("mode").get<std::string>());
        if (j.contains("output_times")) c.output_times = j.at("output_times").get<std::vector<int>>();
        if (j.contains("gradient")) c.gradient = parse_gradient(j.at("gradient").get<std::string>());
        if (j.contains("implicit_step")) {
            c.implicit_step = parse_implicit(j.at("implicit_step").get<std::string>());
        }
        if (j.contains("max_evals")) c.max_evals = j.at("max_evals").get<int>();
    } catch (const json::exception& e) {
        throw ConfigurationError(std::string("bad config value: ") + e.what());
    }
    c.validate();
    return c;
}

json config_to_json(const RunConfig& c) {
    return json{{"n", c.n},
                {"d", c.d},
                {"dt", c.dt},
                {"num_steps", c.num_steps},
                {"s", c.s},
                {"a", c.a},
                {"v", c.v},
                {"x0", c.x0},
                {"seed", c.seed},
                {"ftol", c.ftol},
                {"bounds", {c.bounds.lower, c.bounds.upper}},
                {"mode", to_string(c.mode)},
                {"output_times", c.output_times},
                {"gradient", to_string(c.gradient)},
                {"implicit_step", to_string(c.implicit_step)},
                {"max_evals", c.max_evals}};
}

RunConfig load_config(const std::filesystem::path& path) { return config_from_json(read_json(path)); }

json record_to_json(const RunRecord& r) {
    json steps = json::array();
    for (const auto& s : r.steps) {
        steps.push_back({{"step", s.step},
                         {"t", s.t},
                         {"rmse_q", number_or_null(s.rmse_q)},
                         {"rmse_c", number_or_null(s.rmse_c)},
                         {"rmse_nc", number_or_null(s.rmse_nc)},
                         {"cost", number_or_null(s.cost)},
                         {"iters", s.iters},
                         {"cost_evals", s.cost_evals},
                         {"termination", s.termination},
                         {"flagged", s.flagged},
                         {"fidelity", number_or_null(s.fidelity)},
                         {"norm", number_or_null(s.norm)},
                         {"lambda_star", s.lambda_star}});
    }
    json snapshots = json::array();
    for (const auto& s : r.snapshots) {
        snapshots.push_back({{"step", s.step}, {"t", s.t}, {"x", r.x}, {"modulus", s.modulus}});
    }
    return json{{"config", config_to_json(r.config)}, {"x", r.x}, {"steps", steps}, {"snapshots", snapshots}};
}

RunRecord record_from_json(const json& j) {
    RunRecord r;
    try {
        r.config = config_from_json(j.at("config"));
        r.x = j.at("x").get<std::vector<double>>();
        for (const auto& s : j.at("steps")) {
            StepRecord row;
            row.step = s.at("step").get<int>();
            row.t = s.at("t").get<double>();
            row.rmse_q = number_or_nan(s.at("rmse_q"));
            row.rmse_c = number_or_nan(s.at("rmse_c"));
            row.rmse_nc = number_or_nan(s.at("rmse_nc"));
            row.cost = number_or_nan(s.at("cost"));
            row.iters = s.at("iters").get<int>();
            row.cost_evals = s.at("cost_evals").get<int>();
            row.termination = s.at("termination").get<std::string>();
            row.flagged = s.at("flagged").get<bool>();
            row.fidelity = number_or_nan(s.at("fidelity"));
            row.norm = number_or_nan(s.at("norm"));
            row.lambda_star = s.at("lambda_star").get<std::vector<double>>();
            r.steps.push_back(std::move(row));
        }
        for (const auto& s : j.at("snapshots")) {
            r.snapshots.push_back(
                {s.at("step").get<int>(), s.at("t").get<double>(), s.at("modulus").get<std::vector<double>>()});
        }
    } catch (const json::exception& e) {
        throw ConfigurationError(std::string("malformed run record: ") + e.what());
    }
    return r;
}

RunRecord load_record(const std::filesystem::path& path) { return record_from_json(read_json(path)); }

std::vector<std::filesystem::path> emit_results(const RunRecord& record,
                                                const std::filesystem::path& dir,
                                                const std::string& stem) {
    const auto csv_path = dir / (stem + ".csv");
    const auto json_path = dir / (stem + ".json");

    auto csv = open_for_write(csv_path);
    csv << kCsvHeader << '\n';
    for (const auto& s : record.steps) {
        csv << s.step << ',' << s.t << ',' << s.rmse_q << ',' << s.rmse_c << ',' << s.rmse_nc << ','
            << s.cost << ',' << s.iters << '\n';
    }
    close_checked(csv, csv_path);

    auto js = open_for_write(json_path);
    js << record_to_json(record).dump(1) << '\n';
    close_checked(js, json_path);
    return {csv_path, json_path};
}

std::filesystem::path emit_step_sweep(const std::vector<StepSweepRow>& rows,
                                      const std::filesystem::path& dir) {
    const auto path = dir / "sweep_steps.csv";
    auto out = open_for_write(path);
    out << "steps,dt,rmse_q,rmse_c,rmse_nc\n";
    for (const auto& r : rows) {
        out << r.steps << ',' << r.dt << ',' << r.rmse_q << ',' << r.rmse_c << ',' << r.rmse_nc << '\n';
    }
    close_checked(out, path);
    return path;
}

std::vector<std::filesystem::path> emit_depth_sweep(const DepthSweep& sweep,
                                                    const std::filesystem::path& dir) {
    const auto path = dir / "sweep_depth.csv";
    auto out = open_for_write(path);
    out << "d,step,t,rmse_q,rmse_c\n";
    for (std::size_t i = 0; i < sweep.runs.size(); ++i) {
        for (const auto& s : sweep.runs[i].steps) {
            out << sweep.depths[i] << ',' << s.step << ',' << s.t << ',' << s.rmse_q << ',' << s.rmse_c
                << '\n';
        }
    }
    close_checked(out, path);
    std::vector<std::filesystem::path> paths{path};
    for (std::size_t i = 0; i < sweep.runs.size(); ++i) {
        auto more = emit_results(sweep.runs[i], dir, "depth_" + std::to_string(sweep.depths[i]));
        paths.insert(paths.end(), more.begin(), more.end());
    }
    return paths;
}

} // namespace nlsvqa
