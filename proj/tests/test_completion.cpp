#include "dirqsp/completion.hpp"

#include "dirqsp/errors.hpp"

#include <doctest.h>

using namespace dirqsp;
using C = std::complex<double>;

namespace {

// tau >= ~3 needs the extended tiers; run the moderate-tau fixtures there
template <class R>
CompletionResult<R> pipeline_completion(double tau, double epsilon) {
    auto plan = choose_truncation<R>(R(tau), R(epsilon));
    auto pair = build_truncated_pair(plan);
    return complete(pair);
}

}  // namespace

TEST_CASE("choose_alpha constant and pipeline cases") {
    auto plan0 = choose_truncation<double>(0.0, 1e-8);
    auto pair0 = build_truncated_pair(plan0);
    double delta = 2.5e-9;  // clamp(eps/4, 1e-10, 1e-4)
    CHECK(std::abs(choose_alpha(pair0) - (1.0 - delta)) <= 1e-14);

    auto plan = choose_truncation<double>(10.0, 1e-8);
    auto pair = build_truncated_pair(plan);
    double alpha = choose_alpha(pair);
    CHECK(1.0 - alpha <= 2.5e-9 + 1e-10);
    CHECK(alpha < 1.0);

    SUBCASE("min of the target stays above delta/2 on [-1,1]") {
        for (int j = 0; j <= 2000; ++j) {
            double theta = pi_v<double>() * j / 2000.0;
            double c = eval_cos_series(plan.bessel, plan.order, theta);
            double s = eval_sin_series(plan.bessel, plan.order, theta);
            CHECK(1.0 - alpha * alpha * (c * c + s * s) >= delta / 2.0);
        }
    }

    SUBCASE("alpha climbs monotonically toward 1 as epsilon decreases") {
        // delta = clamp(eps/4, ...) and the grid maximum both shrink with eps,
        // so alpha = (1 - delta)/sqrt(M) is nondecreasing along the sweep
        double prev = 0.0;
        for (double eps : {1e-4, 1e-6, 1e-8, 1e-10}) {
            auto p = build_truncated_pair(choose_truncation<double>(10.0, eps));
            double a = choose_alpha(p);
            CHECK(a >= prev - 1e-15);
            CHECK(a < 1.0);
            prev = a;
        }
    }
}

TEST_CASE("build_p_poly structure") {
    TruncationPlan<double> plan;
    plan.tau = 1.0;
    plan.epsilon = 1e-2;
    plan.order = 4;
    plan.bessel = bessel_j<double>(5, 1.0);
    plan.tail_bound = truncation_tail_majorant(1.0, 4);
    auto pair = build_truncated_pair(plan);
    double alpha = choose_alpha(pair);
    RealPoly<double> p = build_p_poly(pair, alpha);

    CHECK(p.degree() == 2 * plan.order + 2);
    // dual-path at x = 0
    double direct = 1.0 - alpha * alpha * (pair.cos_x.eval(0.0) * pair.cos_x.eval(0.0) - pair.sin_sq_x.eval(0.0));
    CHECK(std::abs(p.eval(0.0) - direct) <= 1e-12);

    SplitMix64 rng(21);
    for (int t = 0; t < 20; ++t) {
        double x = 2.0 * rng.next_double() - 1.0;
        CHECK(std::abs(p.eval(x) - p.eval(-x)) <= 1e-12);  // even
    }

    double j_top = plan.bessel[5];
    double expected_lead = alpha * alpha * 4.0 * j_top * j_top * std::pow(4.0, plan.order);
    CHECK(std::abs(p.coeff(p.degree()) - expected_lead) <= 1e-10 * expected_lead);
}

TEST_CASE("find_roots_even on factored fixtures") {
    RealPoly<double> sq;  // x^4 + 2x^2 + 1 = (u+1)^2
    sq.coeffs = {1.0, 0.0, 2.0, 0.0, 1.0};
    EvenRoots<double> r = find_roots_even(sq);
    REQUIRE(r.u_roots.size() == 2);
    CHECK(r.lead == 1.0);
    for (const auto& u : r.u_roots) CHECK(std::abs(u - C(-1.0)) <= 1e-6);

    RealPoly<double> quartic;  // x^4 + 1: u-roots +/- i
    quartic.coeffs = {1.0, 0.0, 0.0, 0.0, 1.0};
    EvenRoots<double> r2 = find_roots_even(quartic);
    REQUIRE(r2.u_roots.size() == 2);
    CHECK(std::abs(r2.u_roots[0] - C(0.0, -1.0)) <= 1e-12);
    CHECK(std::abs(r2.u_roots[1] - C(0.0, 1.0)) <= 1e-12);

    RealPoly<double> odd;
    odd.coeffs = {0.0, 1.0};
    CHECK_THROWS_AS(find_roots_even(odd), InputError);
}

TEST_CASE("pipeline roots at tau = 5: classification and symmetry") {
    using R = big_real<60>;
    auto plan = choose_truncation<R>(R(5.0), R(1e-8));
    auto pair = build_truncated_pair(plan);
    R alpha = choose_alpha(pair);
    auto target = build_p_poly(pair, alpha);
    auto roots = find_roots_even(target);
    REQUIRE(static_cast<int>(roots.u_roots.size()) == plan.order + 1);

    int real_negative = 0;
    for (const auto& u : roots.u_roots) {
        bool is_real = abs(u.imag()) <= R(kRootClassTol) * (R(1) + abs(u));
        if (is_real) {
            CHECK(u.real() <= R(0));  // no real-positive roots: target is strictly positive
            ++real_negative;
        }
    }
    CHECK(real_negative % 2 == 1);  // odd count forces the (odd + i even) orientation

    // conjugate-pair symmetry
    for (const auto& u : roots.u_roots) {
        if (abs(u.imag()) <= R(kRootClassTol) * (R(1) + abs(u))) continue;
        R best(1);
        for (const auto& v : roots.u_roots) best = std::min(best, abs(conj(v) - u));
        CHECK(to_double(best) <= 1e-8);
    }
}

TEST_CASE("assemble_q pairing rules") {
    std::vector<C> single{C(-1.0, 0.0)};
    auto q = assemble_q<double>(single, 1.0);
    REQUIRE(q.size() == 2);
    CHECK(std::abs(q[0] - C(0.0, -1.0)) <= 1e-15);  // q = x - i
    CHECK(std::abs(q[1] - C(1.0)) <= 1e-15);
    SplitMix64 rng(22);
    for (int t = 0; t < 5; ++t) {
        double x = 4.0 * rng.next_double() - 2.0;
        CHECK(std::abs(std::norm(q[0] + q[1] * x) - (x * x + 1.0)) <= 1e-14);
    }

    std::vector<C> pair{C(0.0, -1.0), C(0.0, 1.0)};  // u-roots of x^4 + 1
    auto q2 = assemble_q<double>(pair, 1.0);
    REQUIRE(q2.size() == 3);
    for (int t = 0; t < 10; ++t) {
        double x = 4.0 * rng.next_double() - 2.0;
        C val = q2[0] + q2[1] * x + q2[2] * x * x;
        CHECK(std::abs(std::norm(val) - (x * x * x * x + 1.0)) <= 1e-12);
    }

    std::vector<C> positive{C(0.25, 0.0)};
    CHECK_THROWS_AS(assemble_q<double>(positive, 1.0), VerificationError);
    CHECK_THROWS_AS(assemble_q<double>(single, -1.0), InputError);
}

TEST_CASE("split_parity roles and the synthetic negative case") {
    std::vector<C> q{C(0.0, -1.0), C(1.0, 0.0)};  // q = x - i
    RealPoly<double> target;
    target.coeffs = {1.0, 0.0, 1.0};  // x^2 + 1
    auto parts = split_parity(q, target);
    CHECK(parts.first.degree() == 0);   // even part: -1
    CHECK(parts.first.coeff(0) == -1.0);
    CHECK(parts.second.degree() == 1);  // odd part: x
    CHECK(parts.second.coeff(1) == 1.0);
    CHECK(std::abs(parts.second.coeff(0)) == 0.0);

    // (x^2 - 3) + 2ix has an even real part: parity violation
    std::vector<C> bad{C(-3.0, 0.0), C(0.0, 2.0), C(1.0, 0.0)};
    RealPoly<double> bad_target;
    bad_target.coeffs = {9.0, -2.0, 0.0, 0.0, 1.0};
    CHECK_THROWS_AS(split_parity(bad, bad_target), NumericError);
}

TEST_CASE("pipeline completion at tau = 10: parity mass and contracts") {
    using R = big_real<60>;
    auto comp = pipeline_completion<R>(10.0, 1e-8);

    // off-parity coefficient mass of q before zeroing
    R mx(0), worst_re(0), worst_im(0);
    for (std::size_t k = 0; k < comp.q_coeffs.size(); ++k) {
        mx = std::max(mx, abs(comp.q_coeffs[k]));
        if (k % 2 == 0) worst_re = std::max(worst_re, abs(comp.q_coeffs[k].real()));
        if (k % 2 == 1) worst_im = std::max(worst_im, abs(comp.q_coeffs[k].imag()));
    }
    CHECK(to_double(worst_re) <= 1e-10 * to_double(mx));
    CHECK(to_double(worst_im) <= 1e-10 * to_double(mx));

    CHECK(to_double(comp.circle_residual) <= 1e-9);
    CHECK(to_double(comp.identity_residual) <= 1e-8);
    CHECK(has_parity(comp.pair.p, Parity::odd));
    CHECK(has_parity(comp.pair.q, Parity::odd));
    int d = choose_truncation<double>(10.0, 1e-8).order + 1;
    CHECK(comp.pair.p.degree() == d);
    CHECK(comp.pair.q.degree() == d);
    CHECK(comp.even_part.degree() <= d - 1);
    CHECK(comp.odd_part.degree() <= d);
    CHECK(has_parity(comp.even_part, Parity::even));
    CHECK(has_parity(comp.odd_part, Parity::odd));
}

TEST_CASE("tau = 0 limiting case") {
    auto plan = choose_truncation<double>(0.0, 1e-8);
    auto pair = build_truncated_pair(plan);
    auto comp = complete(pair);

    CHECK(comp.odd_part.is_zero());
    CHECK(comp.even_part.degree() == 0);
    CHECK(comp.pair.q.is_zero());
    CHECK(comp.pair.p.degree() == 1);
    CHECK(has_parity(comp.pair.p, Parity::odd));
    CHECK(to_double(circle_norm_residual(comp.pair.p, comp.pair.q)) <= 1e-12);
    // P = z (alpha + i sqrt(1 - alpha^2))
    CHECK(std::abs(comp.pair.p.coeff(1).real() - comp.alpha) <= 1e-15);
    CHECK(std::abs(std::norm(comp.pair.p.coeff(1)) - 1.0) <= 1e-14);
}

TEST_CASE("completion invariants: identity, no cross terms, positivity") {
    using R = big_real<60>;
    auto plan = choose_truncation<R>(R(5.0), R(1e-6));
    auto pair = build_truncated_pair(plan);
    auto comp = complete(pair);

    CHECK(to_double(completion_identity_residual(pair.cos_cheb, pair.sin_factor_u, comp.alpha, comp.even_cheb,
                                                 comp.odd_cheb, completion_check_points<R>(100))) <= 1e-8);

    // |P|^2 splits as alpha^2 cos^2 + P'^2 pointwise (real x imaginary parts)
    SplitMix64 rng(23);
    for (int t = 0; t < 12; ++t) {
        R theta = R(2) * pi_v<R>() * R(rng.next_double());
        R x = cos(theta);
        auto pv = eval_circle(comp.pair.p, theta);
        R want = comp.alpha * comp.alpha * pow(clenshaw_t(pair.cos_cheb, x), 2) + pow(clenshaw_t(comp.even_cheb, x), 2);
        CHECK(to_double(abs(norm(pv) - want)) <= 1e-12);
        auto qv = eval_circle(comp.pair.q, theta);
        R sin_sq = -(x * x - R(1)) * pow(clenshaw_u(pair.sin_factor_u, x), 2);
        R want_q = comp.alpha * comp.alpha * sin_sq + pow(clenshaw_t(comp.odd_cheb, x), 2);
        CHECK(to_double(abs(norm(qv) - want_q)) <= 1e-12);
    }

    // target is nonnegative on [-3, 3] (2000-point grid, high-precision eval)
    for (int j = 0; j <= 2000; ++j) {
        R x = R(-3) + R(6) * R(j) / R(2000);
        R c = clenshaw_t(pair.cos_cheb, x);
        R s = clenshaw_u(pair.sin_factor_u, x);
        R value = R(1) - comp.alpha * comp.alpha * (c * c - (x * x - R(1)) * s * s);
        CHECK(to_double(value) >= -1e-12);
    }
}
