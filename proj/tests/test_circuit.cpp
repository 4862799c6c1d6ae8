#include "dirqsp/circuit.hpp"

#include "dirqsp/bessel.hpp"
#include "dirqsp/completion.hpp"
#include "dirqsp/errors.hpp"

#include <doctest.h>

using namespace dirqsp;
using C = std::complex<double>;
using L = LaurentPoly<double>;

namespace {

struct PipelineFixture {
    NormalizedPair<double> pq;
    AngleSequence angles;
    LaurentPoly<double> series_sum;
    double alpha = 0.0;
    int order = 0;
};

// tau = 5 coefficient stage, solved in the 60-digit tier and narrowed
PipelineFixture fixture_tau5() {
    using R = big_real<60>;
    auto plan = choose_truncation<R>(R(5.0), R(1e-8));
    auto pair = build_truncated_pair(plan);
    auto comp = complete(pair);
    PipelineFixture f;
    f.pq.p = convert_laurent<double>(comp.pair.p);
    f.pq.q = convert_laurent<double>(comp.pair.q);
    f.angles = narrow_angles(solve_angles(comp.pair.p, comp.pair.q));
    f.series_sum = convert_laurent<double>(add(pair.cos_poly, pair.sin_poly));
    f.alpha = to_double(comp.alpha);
    f.order = plan.order;
    return f;
}

}  // namespace

TEST_CASE("assemble_circuit fixture cases") {
    CMatrix u = random_unitary(4, 51);

    // P = 1, Q = 0: the phase-fixed product's top-left block is the identity
    AngleSequence trivial = narrow_angles(solve_angles(L::monomial(0), L{}));
    DirectionalCircuit c0 = assemble_circuit(trivial, u);
    CMatrix m0 = circuit_product(c0);
    CHECK(max_abs(CMatrix(m0.topLeftCorner(4, 4) - CMatrix::Identity(4, 4))) <= 1e-13);

    SUBCASE("every gate and the product stay unitary") {
        SplitMix64 rng(52);
        AngleSequence a = random_angles<double>(6, rng);
        DirectionalCircuit c = assemble_circuit(a, u);
        for (const auto& g : c.gates) CHECK(is_unitary(g, 1e-12));
        CHECK(is_unitary(circuit_product(c), 1e-12));
    }

    SUBCASE("scalar walk unitary: product unitary at every point") {
        SplitMix64 rng(53);
        AngleSequence a = random_angles<double>(6, rng);
        for (int t = 0; t < 20; ++t) {
            double theta = 2.0 * pi_v<double>() * t / 20.0;
            CMatrix z(1, 1);
            z(0, 0) = C(std::cos(theta), std::sin(theta));
            CHECK(is_unitary(circuit_product(assemble_circuit(a, z)), 1e-13));
        }
    }

    CMatrix notu = CMatrix::Identity(2, 2) * 1.5;
    CHECK_THROWS_AS(assemble_circuit(trivial, notu), InputError);
}

TEST_CASE("top-left block equals P(U) for pipeline angles") {
    PipelineFixture f = fixture_tau5();
    CMatrix u = random_unitary(4, 54);
    DirectionalCircuit c = assemble_circuit(f.angles, u);
    CMatrix m = circuit_product(c);
    CMatrix want = laurent_apply(f.pq.p, u);
    CHECK(max_abs(CMatrix(m.topLeftCorner(4, 4) - want)) <= 1e-9);
    CHECK(max_abs(CMatrix(m.bottomLeftCorner(4, 4) - laurent_apply(f.pq.q, u))) <= 1e-9);
}

TEST_CASE("apply_correction removes the spare power of U") {
    CMatrix u = random_unitary(3, 55);

    // P = z, Q = 0: corrected top-left becomes U^dag U = I
    AngleSequence shift = narrow_angles(solve_angles(L::monomial(1), L{}));
    DirectionalCircuit plain = assemble_circuit(shift, u);
    CMatrix before = circuit_product(plain);
    CHECK(max_abs(CMatrix(before.topLeftCorner(3, 3) - u)) <= 1e-13);
    DirectionalCircuit corrected = apply_correction(plain, u);
    CMatrix after = circuit_product(corrected);
    CHECK(max_abs(CMatrix(after.topLeftCorner(3, 3) - CMatrix::Identity(3, 3))) <= 1e-13);
    CHECK(corrected.query_count == shift.d + 2);
    CHECK_THROWS_AS(apply_correction(corrected, u), InputError);

    SUBCASE("corrected blocks are [U^dag P, -Q^dag; Q, P^dag U]") {
        PipelineFixture f = fixture_tau5();
        CMatrix w = random_unitary(3, 56);
        DirectionalCircuit c = apply_correction(assemble_circuit(f.angles, w), w);
        CMatrix m = circuit_product(c);
        CMatrix p_at = laurent_apply(f.pq.p, w);
        CMatrix q_at = laurent_apply(f.pq.q, w);
        CHECK(max_abs(CMatrix(m.topLeftCorner(3, 3) - w.adjoint() * p_at)) <= 1e-10);
        CHECK(max_abs(CMatrix(m.topRightCorner(3, 3) + laurent_apply(adjoint(f.pq.q), w))) <= 1e-10);
        CHECK(max_abs(CMatrix(m.bottomLeftCorner(3, 3) - q_at)) <= 1e-10);
        CHECK(max_abs(CMatrix(m.bottomRightCorner(3, 3) - laurent_apply(adjoint(f.pq.p), w) * w)) <= 1e-10);
        CHECK(c.query_count == f.order + 3);  // d = K + 1
    }
}

TEST_CASE("extract_plus_block") {
    // identity gates: B = I
    DirectionalCircuit trivial;
    trivial.walk_dim = 3;
    trivial.d = 0;
    trivial.corrected = true;
    trivial.gates = {CMatrix::Identity(6, 6)};
    CHECK(max_abs(CMatrix(extract_plus_block(trivial) - CMatrix::Identity(3, 3))) <= 1e-15);

    SUBCASE("completion parts cancel structurally in the <+| combination") {
        PipelineFixture f = fixture_tau5();
        CMatrix u = random_unitary(4, 57);
        DirectionalCircuit c = apply_correction(assemble_circuit(f.angles, u), u);
        CMatrix b = extract_plus_block(c);
        CMatrix want = f.alpha * laurent_apply(f.series_sum, u);
        CHECK(max_abs(CMatrix(b - want)) <= 1e-11);
    }
}

TEST_CASE("laurent_apply against eigenvalue substitution") {
    PipelineFixture f = fixture_tau5();
    CMatrix u(2, 2);
    double theta = 0.9;
    u.setZero();
    u(0, 0) = C(std::cos(theta), std::sin(theta));
    u(1, 1) = C(std::cos(0.2), std::sin(0.2));
    CMatrix at = laurent_apply(f.pq.p, u);
    CHECK(std::abs(at(0, 0) - eval_circle(f.pq.p, theta)) <= 1e-12);
    CHECK(std::abs(at(1, 1) - eval_circle(f.pq.p, 0.2)) <= 1e-12);
    CHECK(std::abs(at(0, 1)) <= 1e-15);
}
