#pragma once

#include "dirqsp/errors.hpp"
#include "dirqsp/laurent.hpp"
#include "dirqsp/numerics.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace dirqsp {

// Global sign on the sine-series coefficients calibrated so the assembled
// pipeline realizes e^{-iHt} for t > 0 (the <+| block picks up
// cos + sign * i * sin of tau sin(theta)).
inline constexpr int kEvolutionSign = -1;

// J_0..J_kmax(tau) by Miller's backward recurrence, normalized with
// J_0 + 2 sum_{m>=1} J_{2m} = 1. Start index kmax + 20 + ceil(tau), with
// extra headroom when the scalar type carries more digits than double.
template <class R>
std::vector<R> bessel_j(int kmax, const R& tau) {
    using std::abs;
    using std::ceil;
    if (tau < R(0)) throw InputError("bessel_j: tau must be nonnegative");
    if (kmax < 0) throw InputError("bessel_j: kmax must be nonnegative");
    if (tau == R(0)) {
        std::vector<R> out(static_cast<std::size_t>(kmax) + 1, R(0));
        out[0] = R(1);
        return out;
    }
    int digits = std::numeric_limits<R>::digits10;
    int extra = digits > 16 ? (3 * (digits - 16)) / 2 : 0;
    int start = kmax + 20 + static_cast<int>(ceil(to_double(tau))) + extra;
    std::vector<R> f(static_cast<std::size_t>(start) + 2, R(0));
    f[static_cast<std::size_t>(start) + 1] = R(0);
    f[static_cast<std::size_t>(start)] = R(1);
    const R big = R(1e250);
    for (int k = start; k >= 1; --k) {
        f[static_cast<std::size_t>(k - 1)] =
            (R(2 * k) / tau) * f[static_cast<std::size_t>(k)] - f[static_cast<std::size_t>(k + 1)];
        if (abs(f[static_cast<std::size_t>(k - 1)]) > big) {
            for (std::size_t i = static_cast<std::size_t>(k - 1); i < f.size(); ++i) f[i] /= big;
        }
    }
    R norm = f[0];
    for (int k = 2; k <= start; k += 2) norm += R(2) * f[static_cast<std::size_t>(k)];
    std::vector<R> out(static_cast<std::size_t>(kmax) + 1);
    for (int k = 0; k <= kmax; ++k) out[static_cast<std::size_t>(k)] = f[static_cast<std::size_t>(k)] / norm;
    return out;
}

template <class R>
struct TruncationPlan {
    R tau{};
    R epsilon{};
    int order = 2;          // K: even, >= max(2, ceil(tau))
    std::vector<R> bessel;  // J_0..J_{K+1}(tau)
    R tail_bound{};         // majorant of sum_{k>K} 2|J_k|, <= epsilon/4
};

// Rigorous majorant of the truncated Jacobi-Anger tail, from
// |J_k(tau)| <= (tau/2)^k / k!. Computed in log space.
inline double truncation_tail_majorant(double tau, int order) {
    if (tau == 0.0) return 0.0;
    double lg = static_cast<double>(order + 1) * std::log(tau / 2.0) - std::lgamma(static_cast<double>(order + 2));
    return 4.0 * std::exp(lg) / (1.0 - tau / (2.0 * (order + 2)));
}

// Smallest even K >= max(2, ceil(tau)) whose tail majorant is <= epsilon/4.
// The selection always runs in double so both precision lanes agree on K.
template <class R>
TruncationPlan<R> choose_truncation(const R& tau, const R& epsilon) {
    double eps_d = to_double(epsilon);
    double tau_d = to_double(tau);
    if (!(eps_d > 0.0 && eps_d < 1.0)) throw InputError("choose_truncation: epsilon must be in (0, 1)");
    if (tau_d < 0.0) throw InputError("choose_truncation: tau must be nonnegative");
    int k = std::max(2, static_cast<int>(std::ceil(tau_d)));
    if (k % 2 != 0) ++k;
    while (truncation_tail_majorant(tau_d, k) > eps_d / 4.0) {
        k += 2;
        if (k > 4000) throw NumericError("choose_truncation: no admissible order below 4000");
    }
    TruncationPlan<R> plan;
    plan.tau = tau;
    plan.epsilon = epsilon;
    plan.order = k;
    plan.tail_bound = R(truncation_tail_majorant(tau_d, k));
    plan.bessel = bessel_j<R>(k + 1, tau);
    return plan;
}

// Truncated Jacobi-Anger pair. cos_poly carries the even cosine series
// (real symmetric coefficients); sin_poly the odd sine series as real
// antisymmetric coefficients, so its circle values are sign * i * (sine
// series). sin_sq_x is the x-form square including the (x^2 - 1) factor.
template <class R>
struct TruncatedPair {
    TruncationPlan<R> plan;
    int sin_sign = kEvolutionSign;
    LaurentPoly<R> cos_poly;       // powers -K..K, even
    LaurentPoly<R> sin_poly;       // powers -(K+1)..K+1, odd
    RealPoly<R> cos_x;             // degree K, even
    RealPoly<R> sin_sq_x;          // degree 2K+2, even
    std::vector<R> cos_cheb;       // T-basis coefficients of cos_x
    std::vector<R> sin_factor_u;   // U-basis coefficients of 2 sum J_{2m+1} U_{2m}
};

// Monomial coefficients of sum_k a_k U_k.
template <class R>
RealPoly<R> chebyshev_u_to_monomial(const std::vector<R>& a) {
    RealPoly<R> out;
    if (a.empty()) return out;
    std::vector<R> prev{R(1)};       // U_0
    std::vector<R> cur{R(0), R(2)};  // U_1
    out.coeffs.assign(a.size(), R(0));
    out.coeffs[0] = a[0];
    for (std::size_t k = 1; k < a.size(); ++k) {
        for (std::size_t i = 0; i < cur.size(); ++i) out.coeffs[i] += a[k] * cur[i];
        if (k + 1 < a.size()) {
            std::vector<R> next(cur.size() + 1, R(0));
            for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] = R(2) * cur[i];
            for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
            prev = std::move(cur);
            cur = std::move(next);
        }
    }
    out.trim();
    return out;
}

template <class R>
TruncatedPair<R> build_truncated_pair(const TruncationPlan<R>& plan, int sin_sign = kEvolutionSign) {
    using C = complex_t<R>;
    const int k_ord = plan.order;
    TruncatedPair<R> pair;
    pair.plan = plan;
    pair.sin_sign = sin_sign;

    pair.cos_poly.min_power = -k_ord;
    pair.cos_poly.coeffs.assign(static_cast<std::size_t>(2 * k_ord + 1), C(0));
    pair.cos_poly.coeffs[static_cast<std::size_t>(k_ord)] = C(plan.bessel[0]);
    for (int m = 2; m <= k_ord; m += 2) {
        pair.cos_poly.coeffs[static_cast<std::size_t>(k_ord + m)] = C(plan.bessel[static_cast<std::size_t>(m)]);
        pair.cos_poly.coeffs[static_cast<std::size_t>(k_ord - m)] = C(plan.bessel[static_cast<std::size_t>(m)]);
    }
    pair.cos_poly.trim();

    pair.sin_poly.min_power = -(k_ord + 1);
    pair.sin_poly.coeffs.assign(static_cast<std::size_t>(2 * k_ord + 3), C(0));
    for (int m = 1; m <= k_ord + 1; m += 2) {
        R c = R(sin_sign) * plan.bessel[static_cast<std::size_t>(m)];
        pair.sin_poly.coeffs[static_cast<std::size_t>(k_ord + 1 + m)] = C(c);
        pair.sin_poly.coeffs[static_cast<std::size_t>(k_ord + 1 - m)] = C(-c);
    }
    pair.sin_poly.trim();

    pair.cos_cheb.assign(static_cast<std::size_t>(k_ord) + 1, R(0));
    pair.cos_cheb[0] = plan.bessel[0];
    for (int m = 2; m <= k_ord; m += 2) pair.cos_cheb[static_cast<std::size_t>(m)] = R(2) * plan.bessel[static_cast<std::size_t>(m)];
    pair.cos_x = chebyshev_to_monomial(pair.cos_cheb);

    pair.sin_factor_u.assign(static_cast<std::size_t>(k_ord) + 1, R(0));
    for (int m = 1; m <= k_ord + 1; m += 2) pair.sin_factor_u[static_cast<std::size_t>(m - 1)] = R(2) * plan.bessel[static_cast<std::size_t>(m)];
    RealPoly<R> sin_factor = chebyshev_u_to_monomial(pair.sin_factor_u);
    RealPoly<R> x2m1;
    x2m1.coeffs = {R(-1), R(0), R(1)};
    pair.sin_sq_x = product(x2m1, product(sin_factor, sin_factor));
    return pair;
}

// cos series J_0 + 2 sum J_{2m} cos(2m theta); numerically benign form used
// for conditioning-sensitive grid maxima on [-1, 1].
template <class R>
R eval_cos_series(const std::vector<R>& bessel, int order, const R& theta) {
    using std::cos;
    R acc = bessel[0];
    for (int m = 2; m <= order; m += 2) acc += R(2) * bessel[static_cast<std::size_t>(m)] * cos(R(m) * theta);
    return acc;
}

// sine series 2 sum J_{2m+1} sin((2m+1) theta), unsigned convention.
template <class R>
R eval_sin_series(const std::vector<R>& bessel, int order, const R& theta) {
    using std::sin;
    R acc(0);
    for (int m = 1; m <= order + 1; m += 2) acc += R(2) * bessel[static_cast<std::size_t>(m)] * sin(R(m) * theta);
    return acc;
}

// ---------------------------------------------------------------------------
// Positivity theorem checker (y-power forms, |x| >= 1, y = |x| + sqrt(x^2-1)).
//
// P -/+ Q at large (K, tau, y) spans ~66 orders of magnitude below the
// individual sums, so the checker evaluates at 100 decimal digits.

struct Theorem3Point {
    double y = 1.0;
    double margin_upper = 0.0;   // exp(+) - (P+Q)
    double margin_lower = 0.0;   // exp(-) - (P-Q)
    double margin_positive = 0.0;  // P+Q
    double norm_excess = 0.0;    // P^2 - Q^2 - 1
};

struct Theorem3Report {
    int order = 0;
    double tau = 0.0;
    bool pass = false;
    std::vector<Theorem3Point> points;
    double worst_norm_excess = 0.0;
};

namespace detail {
using checkreal = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<100>,
                                                boost::multiprecision::et_off>;
}

inline Theorem3Report check_theorem3(int order, double tau, const std::vector<double>& y_grid) {
    using B = detail::checkreal;
    using std::exp;
    if (order < 2 || order % 2 != 0) throw InputError("check_theorem3: order must be even and >= 2");
    if (!(tau >= 0.0 && tau <= static_cast<double>(order)))
        throw InputError("check_theorem3: requires 0 <= tau <= K");
    for (double y : y_grid)
        if (!(y >= 1.0)) throw InputError("check_theorem3: y grid must satisfy y >= 1");

    std::vector<B> j = bessel_j<B>(order + 1, B(tau));
    Theorem3Report report;
    report.order = order;
    report.tau = tau;
    report.pass = true;
    const B slack = B("1e-30");
    for (double yd : y_grid) {
        B y(yd);
        B p = j[0];
        for (int m = 2; m <= order; m += 2)
            p += j[static_cast<std::size_t>(m)] * (pow(y, m) + pow(y, -m));
        B q(0);
        for (int m = 1; m <= order + 1; m += 2)
            q += j[static_cast<std::size_t>(m)] * (pow(y, m) - pow(y, -m));
        B growth = exp(B(tau) * (y - B(1) / y) / B(2));
        Theorem3Point pt;
        pt.y = yd;
        pt.margin_upper = to_double(growth - (p + q));
        pt.margin_lower = to_double(B(1) / growth - (p - q));
        pt.margin_positive = to_double(p + q);
        pt.norm_excess = to_double(p * p - q * q - B(1));
        bool ok = (p + q) <= growth * (B(1) + slack) + slack &&
                  (p - q) <= B(1) / growth * (B(1) + slack) + slack &&
                  (p + q) >= -slack && (p * p - q * q) <= B(1) + B(1e-12);
        if (!ok) report.pass = false;
        report.worst_norm_excess = std::max(report.worst_norm_excess, pt.norm_excess);
        report.points.push_back(pt);
    }
    return report;
}

// J_{K+1}(K+1), used by the tail-constant checks.
inline double bessel_peak(int order) {
    auto v = bessel_j<double>(order + 1, static_cast<double>(order + 1));
    return v.back();
}

inline double factorial_tail_constant(int order) {
    return std::exp(static_cast<double>(order) / 2.0 - std::lgamma(static_cast<double>(order + 2)));
}

struct TailBoundSample {
    double sum = 0.0;        // truncated tail sum_{m=K+2}^{M} J_m(tau) [y^m + (-y)^{-m}]
    double bound = 0.0;      // (cosh^{1/2}(tau/y) + J_{K+1}(K+1)) e^{tau (y-1/y)/2}
    double as_printed = 0.0; // (e^{K/2}/(K+1)! + J_{K+1}(K+1)) e^{tau (y-1/y)/2}
};

// The Cauchy-Schwarz factor int_0^1 e^{-st} t^{K+1} dt equals (K+1)!/s^{K+2};
// carrying that through the chain bounds the growing part of the tail by
// cosh^{1/2}(tau/y) e^{tau(y-1/y)/2}, which is what `bound` holds. The
// 1/(K+1)! variant is kept alongside for reporting; it is violated for
// large tau = K at y near 3 even though the positivity it was meant to
// support still holds.
inline TailBoundSample tail_sum_and_bound(int order, double tau, double y, int m_top) {
    auto j = bessel_j<double>(m_top, tau);
    TailBoundSample out;
    for (int m = order + 2; m <= m_top; ++m) {
        double sgn = (m % 2 == 0) ? 1.0 : -1.0;
        out.sum += j[static_cast<std::size_t>(m)] * (std::pow(y, m) + sgn * std::pow(y, -m));
    }
    double growth = std::exp(tau * (y - 1.0 / y) / 2.0);
    double peak = bessel_peak(order);
    out.bound = (std::sqrt(std::cosh(tau / y)) + peak) * growth;
    out.as_printed = (factorial_tail_constant(order) + peak) * growth;
    return out;
}

}  // namespace dirqsp
