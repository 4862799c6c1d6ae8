#include "dirqsp/errors.hpp"
#include "dirqsp/io.hpp"
#include "dirqsp/pipeline.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <string>
#include <vector>

namespace {

constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitVerification = 4;

void print_report_summary(const dirqsp::SimulationReport& r) {
    std::printf("tau=%.6g epsilon=%.3g K=%d d=%d alpha=%.12g precision=%s\n", r.tau, r.epsilon, r.order,
                r.degree_d, r.alpha, r.precision.c_str());
    std::printf("residuals: circle=%.3g completion=%.3g reconstruction=%.3g structural=%.3g\n",
                r.circle_norm_residual, r.completion_residual, r.reconstruction_residual,
                r.plus_block_structural);
    std::printf("error_2norm=%.6g queries: directional=%d baseline=%d ratio=%.4f\n", r.error_2norm,
                r.queries_directional, r.queries_baseline, r.query_ratio);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hamiltonian-evolution circuit synthesis via directional generalized quantum signal processing"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "run the full synthesis pipeline and compare against exact evolution");
    std::string spec_path, report_path, angles_path, precision = "double";
    double time_value = 0.0, epsilon = 1e-8;
    std::uint64_t seed = 0;
    bool force = false;
    sim->add_option("--spec", spec_path, "Hamiltonian spec JSON file")->required();
    sim->add_option("--time", time_value, "evolution time t")->required();
    sim->add_option("--epsilon", epsilon, "target accuracy in (0,1)");
    sim->add_option("--precision", precision, "double | extended")->check(CLI::IsMember({"double", "extended"}));
    sim->add_option("--seed", seed, "seed recorded in the report");
    sim->add_option("--report", report_path, "write the JSON report here");
    sim->add_option("--angles", angles_path, "export the angle sequence as JSON");
    sim->add_flag("--force", force, "override the tau cap");

    // verify
    auto* ver = app.add_subcommand("verify", "run invariant suites");
    std::string suite = "all", verify_angles_path;
    std::uint64_t verify_seed = 1;
    ver->add_option("--suite", suite, "theorem2 | theorem3 | walk | completion | all")
        ->check(CLI::IsMember({"theorem2", "theorem3", "walk", "completion", "all"}));
    ver->add_option("--seed", verify_seed, "seed for randomized suites");
    ver->add_option("--angles", verify_angles_path, "verify an exported angle file instead of a named suite");

    // bench
    auto* ben = app.add_subcommand("bench", "query-count table over (tau, epsilon)");
    std::vector<double> tau_list, eps_list;
    std::string csv_path;
    ben->add_option("--tau", tau_list, "tau values")->required()->delimiter(',');
    ben->add_option("--epsilon", eps_list, "epsilon values")->required()->delimiter(',');
    ben->add_option("--csv", csv_path, "write CSV here (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            dirqsp::HamiltonianSpec spec = dirqsp::load_spec(spec_path);
            dirqsp::SimulateOptions options;
            options.precision =
                precision == "extended" ? dirqsp::PrecisionMode::extended : dirqsp::PrecisionMode::plain;
            options.seed = seed;
            options.force = force;
            dirqsp::SimulationReport report = dirqsp::simulate(spec, time_value, epsilon, options);
            print_report_summary(report);
            if (!report_path.empty()) dirqsp::save_report(report, report_path);
            if (!angles_path.empty()) dirqsp::save_angles(report.angles, angles_path);
            return 0;
        }
        if (ver->parsed()) {
            std::vector<dirqsp::SuiteReport> reports;
            if (!verify_angles_path.empty()) {
                reports.push_back(dirqsp::verify_angle_file(dirqsp::load_angles(verify_angles_path)));
            } else {
                reports = dirqsp::verify_suites(suite, verify_seed);
            }
            bool all_pass = true;
            for (const auto& rep : reports) {
                std::printf("[%s] suite %s (worst %.3g)\n", rep.pass ? "pass" : "FAIL", rep.name.c_str(), rep.worst);
                for (const auto& line : rep.lines) std::printf("  %s\n", line.c_str());
                all_pass = all_pass && rep.pass;
            }
            if (!all_pass) return kExitVerification;
            return 0;
        }
        if (ben->parsed()) {
            auto rows = dirqsp::bench(tau_list, eps_list);
            std::string csv = dirqsp::bench_to_csv(rows);
            if (csv_path.empty())
                std::fputs(csv.c_str(), stdout);
            else
                dirqsp::save_bench_csv(rows, csv_path);
            return 0;
        }
    } catch (const dirqsp::InputError& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return kExitInput;
    } catch (const dirqsp::NumericError& e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return kExitNumeric;
    } catch (const dirqsp::VerificationError& e) {
        std::fprintf(stderr, "verification failure: %s\n", e.what());
        return kExitVerification;
    }
    return 0;
}
