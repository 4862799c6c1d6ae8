#pragma once

#include "dirqsp/angles.hpp"
#include "dirqsp/pipeline.hpp"
#include "dirqsp/walk.hpp"

#include <string>
#include <vector>

namespace dirqsp {

// JSON schemas (flat, diff-friendly):
//   direct:    {"variant": "direct", "enc_lambda": 2.0,
//               "matrix": {"dim": 4, "re": [...], "im": [...]}}   (row-major)
//   pauli_lcu: {"variant": "pauli_lcu", "n_qubits": 2,
//               "terms": [{"pauli": "XZ", "coeff": 0.5}, ...]}
HamiltonianSpec load_spec(const std::string& path);
HamiltonianSpec parse_spec(const std::string& text);

// {"d": ..., "theta": [theta_d..theta_0], "phi": [phi_d..phi_0],
//  "rot_lambda": ..., "phase_fix_delta": ..., "convention": "appendix-B-modified"}
void save_angles(const AngleSequence& angles, const std::string& path);
AngleSequence load_angles(const std::string& path);

void save_report(const SimulationReport& report, const std::string& path);
std::string report_to_json(const SimulationReport& report);

// columns: tau,epsilon,K,queries_dir,queries_std,ratio
void save_bench_csv(const std::vector<BenchRow>& rows, const std::string& path);
std::string bench_to_csv(const std::vector<BenchRow>& rows);

}  // namespace dirqsp
