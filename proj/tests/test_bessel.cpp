#include "dirqsp/bessel.hpp"

#include "dirqsp/errors.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace dirqsp;

TEST_CASE("bessel_j basics") {
    auto zero = bessel_j<double>(4, 0.0);
    CHECK(zero.size() == 5);
    CHECK(zero[0] == 1.0);
    for (int k = 1; k <= 4; ++k) CHECK(zero[static_cast<std::size_t>(k)] == 0.0);

    auto j2 = bessel_j<double>(1, 2.0);
    CHECK(std::abs(j2[1] - 0.576724807757) <= 1e-11);  // frozen from the Maclaurin oracle

    auto j10 = bessel_j<double>(40, 10.0);
    double norm = j10[0];
    for (int k = 2; k <= 40; k += 2) norm += 2.0 * j10[static_cast<std::size_t>(k)];
    CHECK(std::abs(norm - 1.0) <= 1e-12);

    CHECK_THROWS_AS(bessel_j<double>(4, -1.0), InputError);
}

TEST_CASE("backward recurrence matches the series oracle") {
    for (double tau : {0.5, 2.0, 10.0, 30.0}) {
        auto j = bessel_j<double>(60, tau);
        for (int k = 0; k <= 60; ++k) {
            double want = oracles::maclaurin_bessel(k, tau);
            CHECK(std::abs(j[static_cast<std::size_t>(k)] - want) <= 1e-12 * std::max(std::abs(want), 1e-300));
        }
    }
}

TEST_CASE("choose_truncation order selection") {
    auto zero_plan = choose_truncation<double>(0.0, 0.5);
    CHECK(zero_plan.order == 2);
    CHECK(zero_plan.tail_bound == 0.0);

    auto plan = choose_truncation<double>(10.0, 1e-8);
    CHECK(plan.order % 2 == 0);
    CHECK(plan.order >= 10);
    CHECK(plan.tail_bound <= 2.5e-9);
    // direct tail summation stays below the majorant
    auto j = bessel_j<double>(plan.order + 60, 10.0);
    double tail = 0.0;
    for (int k = plan.order + 1; k <= plan.order + 60; ++k) tail += 2.0 * std::abs(j[static_cast<std::size_t>(k)]);
    CHECK(tail <= plan.tail_bound);

    // a smaller even order would violate the bound (minimality)
    CHECK(truncation_tail_majorant(10.0, plan.order - 2) > 2.5e-9);

    SUBCASE("order growth is monotone and slow in epsilon at tau = 20") {
        int prev = 0;
        for (double eps : {1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9, 1e-10, 1e-11, 1e-12}) {
            int k = choose_truncation<double>(20.0, eps).order;
            CHECK(k >= prev);
            if (prev > 0 && eps < 1e-5) CHECK(k - prev <= 2);
            prev = k;
        }
    }

    CHECK_THROWS_AS(choose_truncation<double>(1.0, 0.0), InputError);
    CHECK_THROWS_AS(choose_truncation<double>(1.0, 1.5), InputError);
}

TEST_CASE("build_truncated_pair structure and values") {
    auto plan = choose_truncation<double>(10.0, 1e-6);
    auto pair = build_truncated_pair(plan);

    // theta = 0: cosine series sums to ~1, sine series to 0
    auto p0 = eval_circle(pair.cos_poly, 0.0);
    CHECK(std::abs(p0.imag()) <= 1e-14);
    CHECK(p0.real() <= 1.0 + to_double(plan.tail_bound));
    CHECK(std::abs(p0.real() - 1.0) <= to_double(plan.tail_bound));
    CHECK(std::abs(eval_circle(pair.sin_poly, 0.0)) <= 1e-14);

    // circle values are real (cos part) / purely imaginary (sin part)
    for (int j = 0; j < 12; ++j) {
        double theta = 0.1 + 0.5 * j;
        CHECK(std::abs(eval_circle(pair.cos_poly, theta).imag()) <= 1e-13);
        CHECK(std::abs(eval_circle(pair.sin_poly, theta).real()) <= 1e-13);
    }

    CHECK(has_parity(pair.cos_poly, Parity::even));
    CHECK(has_parity(pair.sin_poly, Parity::odd));
    CHECK(pair.sin_poly.degree() == plan.order + 1);
    CHECK(pair.cos_x.degree() == plan.order);
    CHECK(pair.sin_sq_x.degree() == 2 * plan.order + 2);

    SUBCASE("tau=1, K=4 pinned-order plan: cos value within the K=4 tail bound") {
        TruncationPlan<double> small;
        small.tau = 1.0;
        small.epsilon = 1e-2;
        small.order = 4;
        small.bessel = bessel_j<double>(5, 1.0);
        small.tail_bound = truncation_tail_majorant(1.0, 4);
        auto sp = build_truncated_pair(small);
        auto val = eval_circle(sp.cos_poly, pi_v<double>() / 2);
        CHECK(std::abs(val - std::complex<double>(std::cos(1.0))) <= small.tail_bound);
    }

    SUBCASE("x-form square matches the squared circle value") {
        SplitMix64 rng(313);
        for (int t = 0; t < 20; ++t) {
            double theta = 2.0 * pi_v<double>() * rng.next_double();
            auto qv = eval_circle(pair.sin_poly, theta);
            std::complex<double> sq = qv * qv;
            CHECK(std::abs(sq.imag()) <= 1e-12);
            CHECK(std::abs(pair.sin_sq_x.eval(std::cos(theta)) - sq.real()) <= 1e-12);
        }
    }

    SUBCASE("evolution sign flips the sine part only") {
        auto flipped = build_truncated_pair(plan, +1);
        double theta = 0.83;
        CHECK(std::abs(eval_circle(flipped.sin_poly, theta) + eval_circle(pair.sin_poly, theta)) <= 1e-15);
        CHECK(std::abs(eval_circle(flipped.cos_poly, theta) - eval_circle(pair.cos_poly, theta)) == 0.0);
    }
}

TEST_CASE("positivity checker on the y-power forms") {
    // y = 1 boundary: P+Q collapses to the cosine series at x = 1
    auto boundary = check_theorem3(8, 4.0, {1.0});
    CHECK(boundary.pass);
    CHECK(boundary.points[0].margin_upper >= 0.0);
    CHECK(boundary.points[0].margin_upper <= truncation_tail_majorant(4.0, 8));

    auto rep = check_theorem3(10, 10.0, {1.01, 1.1, 1.5, 2.0, 4.0});
    CHECK(rep.pass);
    CHECK(rep.worst_norm_excess <= 1e-12);

    CHECK_THROWS_AS(check_theorem3(3, 1.0, {1.0}), InputError);
    CHECK_THROWS_AS(check_theorem3(4, 5.0, {1.0}), InputError);
    CHECK_THROWS_AS(check_theorem3(4, 1.0, {0.5}), InputError);
}

TEST_CASE("tail constants from the positivity proof") {
    for (int k = 2; k <= 40; ++k) {
        CHECK(bessel_peak(k) <= 0.32);
        CHECK(factorial_tail_constant(k) < 0.46);
    }
    // both are monotone decreasing, so the k = 2 values are the worst
    CHECK(bessel_peak(2) == doctest::Approx(0.309063).epsilon(1e-4));
    CHECK(factorial_tail_constant(2) == doctest::Approx(std::exp(1.0) / 6.0).epsilon(1e-12));
}

TEST_CASE("truncated tail against the closed bound") {
    for (int k : {2, 10, 24}) {
        for (double y : {1.0, 1.5, 3.0}) {
            TailBoundSample s = tail_sum_and_bound(k, static_cast<double>(k), y, k + 80);
            CHECK(s.sum <= s.bound);
            CHECK(s.sum >= 0.0);
        }
    }
    // the as-printed constant variant is violated at large tau = K
    TailBoundSample bad = tail_sum_and_bound(40, 40.0, 3.0, 120);
    CHECK(bad.sum > bad.as_printed);
    CHECK(bad.sum <= bad.bound);
}
