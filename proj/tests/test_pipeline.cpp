#include "dirqsp/pipeline.hpp"

#include "dirqsp/errors.hpp"
#include "dirqsp/io.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <fstream>

using namespace dirqsp;

namespace {

HamiltonianSpec xz_spec() {
    HamiltonianSpec spec;
    spec.kind = HamiltonianSpec::Kind::pauli_lcu;
    spec.n_qubits = 1;
    spec.terms = {{"X", 0.5}, {"Z", 0.5}};
    return spec;
}

struct TempFile {
    std::string path;
    explicit TempFile(std::string p) : path(std::move(p)) {}
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("simulate at t = 0 yields alpha times the identity") {
    SimulationReport report = simulate(xz_spec(), 0.0, 1e-8);
    CHECK(report.error_2norm <= 1e-11);
    CHECK(report.queries_directional == 3);  // degenerate degree d = 1
    CHECK(report.tau == 0.0);
}

TEST_CASE("simulate end to end on the two-term LCU spec") {
    SimulationReport report = simulate(xz_spec(), 5.0, 1e-8);  // enc_lambda = 1, tau = 5
    CHECK(report.error_2norm <= 1e-7);
    CHECK(report.order >= 5);
    CHECK(report.queries_directional == report.order + 3);
    CHECK(report.queries_baseline == 2 * report.order + 2);
    CHECK(report.circle_norm_residual <= 1e-9);
    CHECK(report.plus_block_structural <= 1e-10);
    // composed error budget holds on the reported fields
    double budget = 2.5e-9 + std::abs(1.0 - report.alpha) + 10.0 * report.circle_norm_residual +
                    10.0 * report.reconstruction_residual;
    CHECK(report.error_2norm <= budget);
}

TEST_CASE("simulate input validation") {
    CHECK_THROWS_AS(simulate(xz_spec(), 1.0, 0.0), InputError);
    CHECK_THROWS_AS(simulate(xz_spec(), 1.0, 1.0), InputError);
    CHECK_THROWS_AS(simulate(xz_spec(), 40.0, 1e-6), InputError);  // tau cap without --force
}

TEST_CASE("reports are deterministic modulo timings") {
    SimulateOptions options;
    options.seed = 7;
    SimulationReport a = simulate(xz_spec(), 2.0, 1e-6, options);
    SimulationReport b = simulate(xz_spec(), 2.0, 1e-6, options);
    auto ja = nlohmann::ordered_json::parse(report_to_json(a));
    auto jb = nlohmann::ordered_json::parse(report_to_json(b));
    ja.erase("timing_ms");
    jb.erase("timing_ms");
    CHECK(ja.dump() == jb.dump());
}

TEST_CASE("bench rows and the query-count trend") {
    auto rows = bench({2.0, 5.0, 10.0, 20.0, 30.0}, {1e-6});
    REQUIRE(rows.size() == 5);
    CHECK(rows[0].ratio > 0.5);  // (K+3)/(2K+2) > 1/2 always
    double prev = 1.0;
    for (const auto& row : rows) {
        CHECK(row.queries_directional == row.order + 3);
        CHECK(row.queries_baseline == 2 * row.order + 2);
        CHECK(row.ratio <= prev);
        prev = row.ratio;
    }
    auto t20 = bench({20.0}, {1e-6});
    CHECK(t20[0].ratio <= 0.6);

    CHECK_THROWS_AS(bench({}, {1e-6}), InputError);
    CHECK_THROWS_AS(bench({1.0}, {}), InputError);

    std::string csv = bench_to_csv(rows);
    CHECK(csv.rfind("tau,epsilon,K,queries_dir,queries_std,ratio\n", 0) == 0);
}

TEST_CASE("angle export round trip") {
    SimulationReport report = simulate(xz_spec(), 3.0, 1e-6);
    TempFile file("angles_roundtrip_test.json");
    save_angles(report.angles, file.path);
    AngleSequence loaded = load_angles(file.path);
    REQUIRE(loaded.d == report.angles.d);
    for (std::size_t j = 0; j < loaded.theta.size(); ++j) {
        CHECK(loaded.theta[j] == report.angles.theta[j]);  // bitwise: shortest-round-trip JSON doubles
        CHECK(loaded.phi[j] == report.angles.phi[j]);
    }
    CHECK(loaded.rot_lambda == report.angles.rot_lambda);
    CHECK(loaded.phase_fix_delta == report.angles.phase_fix_delta);

    // the exported file passes the angle-file verification path
    CHECK(verify_angle_file(loaded).pass);
}

TEST_CASE("spec JSON parsing") {
    HamiltonianSpec direct = parse_spec(R"({
        "variant": "direct", "enc_lambda": 2.0,
        "matrix": {"dim": 2, "re": [1, 0, 0, -1], "im": [0, 0, 0, 0]}})");
    CHECK(direct.kind == HamiltonianSpec::Kind::direct);
    CHECK(direct.enc_lambda == 2.0);
    CHECK(direct.matrix(1, 1).real() == -1.0);

    HamiltonianSpec lcu = parse_spec(R"({
        "variant": "pauli_lcu", "n_qubits": 2,
        "terms": [{"pauli": "XZ", "coeff": 0.5}]})");
    CHECK(lcu.kind == HamiltonianSpec::Kind::pauli_lcu);
    CHECK(lcu.terms.size() == 1);

    CHECK_THROWS_AS(parse_spec("{"), InputError);
    CHECK_THROWS_AS(parse_spec(R"({"variant": "direct"})"), InputError);
    CHECK_THROWS_AS(parse_spec(R"({"variant": "qubit"})"), InputError);
    CHECK_THROWS_AS(parse_spec(R"({"variant": "direct", "enc_lambda": 1.0,
        "matrix": {"dim": 2, "re": [1], "im": [0]}})"),
                    InputError);
}

TEST_CASE("report JSON carries the spec schema fields") {
    SimulationReport report = simulate(xz_spec(), 1.0, 1e-6);
    auto j = nlohmann::ordered_json::parse(report_to_json(report));
    for (const char* key : {"tau", "epsilon", "K", "alpha", "residuals", "error_2norm", "queries", "precision"})
        CHECK(j.contains(key));
    CHECK(j["queries"].contains("directional"));
    CHECK(j["queries"].contains("baseline_standard"));
    CHECK(j["queries"].contains("ratio"));
    CHECK(j["residuals"].contains("circle_norm"));
    CHECK(j["residuals"].contains("completion"));
    CHECK(j["residuals"].contains("reconstruction"));
    CHECK(j["residuals"].contains("plus_block_structural"));
}

TEST_CASE("verify suite dispatch") {
    CHECK_THROWS_AS(verify_suites("nonsense", 1), InputError);
    auto reports = verify_suites("walk", 3);
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].name == "walk");
    CHECK(reports[0].pass);
}
