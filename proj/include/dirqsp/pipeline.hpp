#pragma once

#include "dirqsp/angles.hpp"
#include "dirqsp/laurent.hpp"
#include "dirqsp/walk.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dirqsp {

enum class PrecisionMode { plain, extended };

struct SimulateOptions {
    PrecisionMode precision = PrecisionMode::plain;
    std::uint64_t seed = 0;
    bool force = false;  // override the tau cap
    double tau_cap_plain = 30.0;
    double tau_cap_extended = 60.0;
};

// Narrowed outputs of the coefficient pipeline (truncation, completion,
// angle synthesis), independent of the walk operator.
struct CoefficientArtifacts {
    int order = 0;  // K
    double tail_bound = 0.0;
    double alpha = 0.0;
    int degree_d = 0;
    LaurentPoly<double> p;
    LaurentPoly<double> q;
    LaurentPoly<double> series_sum;  // alpha-free truncated cos + sin carrier
    AngleSequence angles;
    double circle_residual = 0.0;          // measured on the narrowed pair
    double completion_residual = 0.0;      // exact-completion identity residual
    double reconstruction_residual = 0.0;  // double-realized angle round trip
    bool used_extended = false;
    std::vector<double> cos_cheb, sin_factor_u, even_cheb, odd_cheb;
};

// Runs choose_truncation .. solve_angles at the requested precision; in
// plain mode a NumericError from any residual gate retries the whole chain
// in extended precision before giving up.
CoefficientArtifacts run_coefficient_lane(double tau, double epsilon, int sin_sign, PrecisionMode mode);

struct StageTimings {
    double encode_ms = 0.0;
    double truncation_completion_ms = 0.0;
    double angles_ms = 0.0;
    double circuit_ms = 0.0;
    double compare_ms = 0.0;
};

struct SimulationReport {
    double tau = 0.0;
    double epsilon = 0.0;
    int order = 0;  // K
    double alpha = 0.0;
    int degree_d = 0;
    double circle_norm_residual = 0.0;
    double completion_residual = 0.0;
    double reconstruction_residual = 0.0;
    double plus_block_structural = 0.0;
    double error_2norm = 0.0;
    int queries_directional = 0;
    int queries_baseline = 0;
    double query_ratio = 0.0;
    std::string precision;
    std::uint64_t seed = 0;
    StageTimings timings;
    AngleSequence angles;
};

SimulationReport simulate(const HamiltonianSpec& spec, double t, double epsilon, const SimulateOptions& options = {});

// ---------------------------------------------------------------------------
// verification suites (CLI `verify`)

struct SuiteReport {
    std::string name;
    bool pass = false;
    double worst = 0.0;  // suite-specific worst margin/error
    std::vector<std::string> lines;
};

SuiteReport verify_theorem2(std::uint64_t seed, int trials_per_degree = 50, int max_degree = 12);
SuiteReport verify_theorem3();
SuiteReport verify_walk(std::uint64_t seed, int specs_per_encoding = 10);
SuiteReport verify_completion();
SuiteReport verify_angle_file(const AngleSequence& angles);
std::vector<SuiteReport> verify_suites(const std::string& suite, std::uint64_t seed);

// ---------------------------------------------------------------------------
// query-count bench

struct BenchRow {
    double tau = 0.0;
    double epsilon = 0.0;
    int order = 0;
    int queries_directional = 0;  // K + 3
    int queries_baseline = 0;     // 2K + 2
    double ratio = 0.0;
};

std::vector<BenchRow> bench(const std::vector<double>& tau_list, const std::vector<double>& epsilon_list);

}  // namespace dirqsp
