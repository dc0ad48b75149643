// Command-line front end: single runs, the two parameter sweeps, and the
// circuit cross-check suite.
//
// Output files go to --out, else $NLSVQA_OUTPUT_DIR, else the working directory.

#include "nlsvqa/circuits.hpp"
#include "nlsvqa/error.hpp"
#include "nlsvqa/io.hpp"
#include "nlsvqa/optimizer.hpp"
#include "nlsvqa/verify.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <iostream>
#include <numbers>
#include <random>

namespace {

std::filesystem::path output_dir(const std::string& flag) {
    if (!flag.empty()) {
        return flag;
    }
    if (const char* env = std::getenv("NLSVQA_OUTPUT_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return ".";
}

int verify_circuits(int n, std::uint64_t seed) {
    using namespace nlsvqa;
    constexpr double kTol = 1e-9;
    bool ok = true;
    auto report = [&ok](const std::string& name, double deviation, double tol) {
        const bool pass = deviation < tol;
        ok = ok && pass;
        std::cout << (pass ? "PASS " : "FAIL ") << name << "  max deviation " << deviation << '\n';
    };

    report("qft == dft", qft_dft_deviation(n), 1e-12);
    report("kinetic phase diagonal", kinetic_phase_deviation(n, -1.5e-3), 1e-12);

    const int d = std::max(1, n - 1);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    auto draw = [&] {
        std::vector<double> v(AnsatzParams::parameter_count(n, d));
        for (auto& x : v) x = angle(rng);
        return v;
    };
    const auto lambda_t = draw();
    report("U~ circuit == FFT pipeline", tilde_u_fft_deviation(n, d, lambda_t, 3e-3), 1e-10);
    if (3 * n + 1 <= kMaxQubits) {
        const auto trial = draw();
        const double prefactor = 3e-3 * 2.0 * 2.0 * (1 << n) / (2.0 * std::numbers::pi);
        report("circuit cost == direct cost",
               cost_circuit_deviation(n, d, lambda_t, trial, 3e-3, prefactor), kTol);
    } else {
        std::cout << "SKIP circuit cost check: QNPU needs " << 3 * n + 1 << " qubits\n";
    }
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hybrid split-step / variational NLSE solver"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_flag;

    auto* solve = app.add_subcommand("solve", "Run one simulation (any mode)");
    solve->add_option("--config", config_path, "JSON run config")->required()->check(CLI::ExistingFile);
    solve->add_option("--out", out_flag, "Output directory");

    std::vector<int> counts{20, 40, 60, 80, 100, 150};
    auto* sweep_steps = app.add_subcommand("sweep-steps", "Final-time RMSE versus step count over t in [0, 0.3]");
    sweep_steps->add_option("--config", config_path, "JSON base config")->required()->check(CLI::ExistingFile);
    sweep_steps->add_option("--counts", counts, "Step counts")->delimiter(',');
    sweep_steps->add_option("--out", out_flag, "Output directory");

    std::vector<int> depths{8, 9, 10, 11, 12, 13};
    auto* sweep_depth = app.add_subcommand("sweep-depth", "RMSE series versus circuit depth");
    sweep_depth->add_option("--config", config_path, "JSON base config")->required()->check(CLI::ExistingFile);
    sweep_depth->add_option("--depths", depths, "Circuit depths")->delimiter(',');
    sweep_depth->add_option("--out", out_flag, "Output directory");

    int verify_n = 3;
    std::uint64_t verify_seed = 7;
    auto* verify = app.add_subcommand("verify-circuits", "Cross-check circuits against classical oracles");
    verify->add_option("--n", verify_n, "Qubit count")->required()->check(CLI::Range(1, 8));
    verify->add_option("--seed", verify_seed, "Seed for random parameters");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve) {
            const auto config = nlsvqa::load_config(config_path);
            const auto record = nlsvqa::run(config);
            for (const auto& p : nlsvqa::emit_results(record, output_dir(out_flag))) {
                std::cout << "wrote " << p.string() << '\n';
            }
        } else if (*sweep_steps) {
            const auto config = nlsvqa::load_config(config_path);
            const auto rows = nlsvqa::sweep_timesteps(config, counts);
            std::cout << "wrote " << nlsvqa::emit_step_sweep(rows, output_dir(out_flag)).string() << '\n';
        } else if (*sweep_depth) {
            const auto config = nlsvqa::load_config(config_path);
            const auto sweep = nlsvqa::sweep_depth(config, depths);
            for (const auto& p : nlsvqa::emit_depth_sweep(sweep, output_dir(out_flag))) {
                std::cout << "wrote " << p.string() << '\n';
            }
        } else if (*verify) {
            return verify_circuits(verify_n, verify_seed);
        }
    } catch (const nlsvqa::ConfigurationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
