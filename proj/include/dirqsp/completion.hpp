#pragma once

#include "dirqsp/bessel.hpp"
#include "dirqsp/errors.hpp"
#include "dirqsp/laurent.hpp"
#include "dirqsp/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

namespace dirqsp {

inline constexpr double kRootClassTol = 1e-10;   // |Im u| <= tol (1 + |u|) counts as real
inline constexpr double kRootClusterRadius = 1e-7;
inline constexpr std::uint64_t kCompletionCheckSeed = 0x51EC7ULL;

template <class R>
struct NormalizedPair {
    LaurentPoly<R> p;  // odd powers, degree K+1 (except the tau = 0 constant case)
    LaurentPoly<R> q;
};

template <class R>
struct CompletionResult {
    R alpha{};
    RealPoly<R> target;                    // 1 - alpha^2 (cos^2 - sin_sq), even, nonnegative
    std::vector<complex_t<R>> q_coeffs;    // q(x) from the root pairing
    RealPoly<R> even_part;                 // completes the cosine series (enters P as +i * even_part)
    RealPoly<R> odd_part;                  // completes the sine series
    std::vector<R> even_cheb;              // Chebyshev-T forms for stable evaluation
    std::vector<R> odd_cheb;
    NormalizedPair<R> pair;
    R circle_residual{};
    R identity_residual{};
};

// ---------------------------------------------------------------------------
// alpha

// alpha = (1 - delta)/sqrt(M) with M the grid maximum of max(1, P^2 - Q^2)
// over a Chebyshev grid on [-1, 1]; evaluated through the trigonometric
// series, which has no coefficient cancellation.
template <class R>
R choose_alpha(const TruncatedPair<R>& pair) {
    using std::sqrt;
    const auto& plan = pair.plan;
    double delta_d = std::clamp(to_double(plan.epsilon) / 4.0, 1e-10, 1e-4);
    R delta(delta_d);
    auto grid_max = [&](int points) {
        R worst(1);
        for (int jj = 0; jj < points; ++jj) {
            R theta = pi_v<R>() * R(jj) / R(points);
            R c = eval_cos_series(plan.bessel, plan.order, theta);
            R s = eval_sin_series(plan.bessel, plan.order, theta);
            worst = std::max(worst, c * c + s * s);
        }
        return worst;
    };
    int base = 8 * (plan.order + 1);
    R m = grid_max(base);
    if (!(m >= R(1))) throw NumericError("choose_alpha: grid maximum is not finite");
    R alpha = (R(1) - delta) / sqrt(m);
    R target = (R(1) - delta) * (R(1) - delta);
    // delta-scale slack: a grid maximum converges quadratically in the
    // spacing, and the construction only needs min p >= delta/2
    R slack = R(1) + delta / R(2);
    R m4 = grid_max(4 * base);
    if (alpha * alpha * m4 > target * slack) {
        alpha = (R(1) - delta) / sqrt(m4);
        R m16 = grid_max(16 * base);
        if (alpha * alpha * m16 > target * slack)
            throw NumericError("choose_alpha: rescaling not stable under grid refinement");
    }
    return alpha;
}

// ---------------------------------------------------------------------------
// target polynomial

template <class R>
RealPoly<R> build_p_poly(const TruncatedPair<R>& pair, const R& alpha) {
    using std::abs;
    RealPoly<R> diff = add(product(pair.cos_x, pair.cos_x), scale(pair.sin_sq_x, R(-1)));
    RealPoly<R> p = scale(diff, -alpha * alpha);
    RealPoly<R> one;
    one.coeffs = {R(1)};
    p = add(p, one);

    // Full degree is certified against the closed-form leading coefficient
    // alpha^2 4 J_{K+1}^2 4^K (the relative-to-max test misfires for tau
    // beyond ~50, where mid coefficients legitimately dwarf the leading one).
    using std::pow;
    int want_deg = 2 * pair.plan.order + 2;
    R j_top = pair.plan.bessel.back();
    R expected_lead = alpha * alpha * R(4) * j_top * j_top * pow(R(4), pair.plan.order);
    if (!(expected_lead > R(0)) || p.degree() != want_deg ||
        abs(p.coeff(want_deg) - expected_lead) > R(1e-10) * expected_lead)
        throw NumericError("build_p_poly: degree deficiency in the completion target");

    // dual-path self-check of the coefficient assembly
    SplitMix64 rng(kCompletionCheckSeed);
    for (int t = 0; t < 50; ++t) {
        R x = R(2) * R(rng.next_double()) - R(1);
        R via_parts = R(1) - alpha * alpha * (pair.cos_x.eval(x) * pair.cos_x.eval(x) - pair.sin_sq_x.eval(x));
        R via_poly = p.eval(x);
        R denom = R(1) + alpha * alpha * (abs(pair.cos_x.eval(x) * pair.cos_x.eval(x)) + abs(pair.sin_sq_x.eval(x)));
        if (abs(via_poly - via_parts) > R(1e-11) * denom)
            throw NumericError("build_p_poly: dual-path evaluation mismatch");
    }
    return p;
}

// ---------------------------------------------------------------------------
// roots of the even target in u = x^2

template <class R>
struct EvenRoots {
    std::vector<complex_t<R>> u_roots;  // with multiplicity, sorted by (Re, Im)
    R lead{};
    R refit_residual{};
};

namespace detail {

template <class R>
complex_t<R> horner(const std::vector<R>& c, const complex_t<R>& u) {
    complex_t<R> acc(0);
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * u + complex_t<R>(c[i]);
    return acc;
}

// Horner value plus the running roundoff majorant eps * sum |c_k| |u|^k;
// once |value| drops below it the root cannot be improved in this precision.
template <class R>
std::pair<complex_t<R>, R> horner_with_noise(const std::vector<R>& c, const complex_t<R>& u) {
    using std::abs;
    complex_t<R> acc(0);
    R bound(0);
    R au = abs(u);
    for (std::size_t i = c.size(); i-- > 0;) {
        acc = acc * u + complex_t<R>(c[i]);
        bound = bound * au + abs(c[i]);
    }
    R noise = R(2 * static_cast<int>(c.size()) + 1) * std::numeric_limits<R>::epsilon() * bound;
    return {acc, noise};
}

}  // namespace detail

// Aberth-Ehrlich with Cauchy-radius initial guesses and Newton polishing.
// Clusters tighter than kRootClusterRadius are grouped and snapped to the
// real axis when their mean qualifies; conjugate partners are symmetrized.
template <class R>
EvenRoots<R> find_roots_even(const RealPoly<R>& p) {
    using C = complex_t<R>;
    using std::abs;
    using std::cos;
    using std::pow;
    using std::sin;
    if (!has_parity(p, Parity::even)) throw InputError("find_roots_even: polynomial must be even");

    const int n = p.degree() / 2;
    std::vector<R> g(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) g[static_cast<std::size_t>(j)] = p.coeff(2 * j);
    EvenRoots<R> out;
    out.lead = g[static_cast<std::size_t>(n)];
    if (n == 0) return out;

    std::vector<R> gd(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) gd[static_cast<std::size_t>(j - 1)] = R(j) * g[static_cast<std::size_t>(j)];

    R radius(0);
    for (int j = 0; j < n; ++j) {
        R b = abs(g[static_cast<std::size_t>(j)] / out.lead);
        if (b > R(0)) radius = std::max(radius, pow(b, R(1) / R(n - j)));
    }
    radius += R(1);

    std::vector<C> roots(static_cast<std::size_t>(n));
    R two_pi = R(2) * pi_v<R>();
    for (int i = 0; i < n; ++i) {
        R ang = two_pi * R(i) / R(n) + R(1) / R(2);
        roots[static_cast<std::size_t>(i)] = C(radius * cos(ang), radius * sin(ang));
    }

    const R tol = std::numeric_limits<R>::epsilon() * R(64);
    const int max_iter = 500;
    bool converged = false;
    for (int iter = 0; iter < max_iter && !converged; ++iter) {
        bool all_done = true;
        for (int i = 0; i < n; ++i) {
            C& u = roots[static_cast<std::size_t>(i)];
            auto [pv, noise] = detail::horner_with_noise(g, u);
            if (abs(pv) <= noise) continue;  // at the evaluation-noise floor
            C dv = detail::horner(gd, u);
            if (dv == C(0)) {
                u += C(R(1e-3) * radius * R(i + 1) / R(n), R(1e-3) * radius);
                all_done = false;
                continue;
            }
            C newton = pv / dv;
            C s(0);
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                C d = u - roots[static_cast<std::size_t>(j)];
                if (d == C(0)) d = C(tol * radius, tol * radius);
                s += C(1) / d;
            }
            C denom = C(1) - newton * s;
            C corr = (abs(denom) < tol) ? newton : newton / denom;
            u -= corr;
            if (abs(corr) > tol * (R(1) + abs(u))) all_done = false;
        }
        converged = all_done;
    }
    if (!converged) throw NumericError("find_roots_even: Aberth iteration did not converge within 500 sweeps");

    for (auto& u : roots) {
        for (int step = 0; step < 3; ++step) {
            auto [pv, noise] = detail::horner_with_noise(g, u);
            if (abs(pv) <= noise) break;
            C dv = detail::horner(gd, u);
            if (dv == C(0)) break;
            u -= pv / dv;
        }
    }

    // multiplicity grouping, then real-axis snapping per cluster
    std::vector<int> cluster(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) cluster[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            R d = abs(roots[static_cast<std::size_t>(i)] - roots[static_cast<std::size_t>(j)]);
            if (d <= R(kRootClusterRadius) * (R(1) + abs(roots[static_cast<std::size_t>(i)]))) {
                int a = cluster[static_cast<std::size_t>(i)], b = cluster[static_cast<std::size_t>(j)];
                for (auto& c : cluster)
                    if (c == b) c = a;
            }
        }
    // snap a cluster onto the real axis only when every member individually
    // qualifies; a multiple real root is better kept as a tight conjugate
    // pair, whose product preserves the second-order coefficient structure
    for (int id = 0; id < n; ++id) {
        bool all_real = true;
        int count = 0;
        for (int i = 0; i < n; ++i)
            if (cluster[static_cast<std::size_t>(i)] == id) {
                ++count;
                const C& u = roots[static_cast<std::size_t>(i)];
                if (abs(u.imag()) > R(kRootClassTol) * (R(1) + abs(u))) all_real = false;
            }
        if (count == 0 || !all_real) continue;
        for (int i = 0; i < n; ++i)
            if (cluster[static_cast<std::size_t>(i)] == id)
                roots[static_cast<std::size_t>(i)] = C(roots[static_cast<std::size_t>(i)].real(), R(0));
    }

    // conjugate symmetrization
    for (int i = 0; i < n; ++i) {
        C& u = roots[static_cast<std::size_t>(i)];
        if (u.imag() <= R(0)) continue;
        int best = -1;
        R best_d(0);
        for (int j = 0; j < n; ++j) {
            if (j == i || roots[static_cast<std::size_t>(j)].imag() >= R(0)) continue;
            R d = abs(conj(roots[static_cast<std::size_t>(j)]) - u);
            if (best < 0 || d < best_d) {
                best = j;
                best_d = d;
            }
        }
        if (best >= 0 && best_d <= R(1e-6) * (R(1) + abs(u))) {
            C w = (u + conj(roots[static_cast<std::size_t>(best)])) / R(2);
            u = w;
            roots[static_cast<std::size_t>(best)] = conj(w);
        }
    }

    std::sort(roots.begin(), roots.end(), [](const C& a, const C& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    out.u_roots = roots;

    // refit against the original coefficients at n+1 Chebyshev points
    R max_g(0), res(0);
    for (int j = 0; j <= n; ++j) {
        R x = cos(pi_v<R>() * R(j) / R(n));
        C val = detail::horner(g, C(x, R(0)));
        C prod(out.lead);
        for (const auto& u : roots) prod *= (C(x, R(0)) - u);
        max_g = std::max(max_g, abs(val));
        res = std::max(res, abs(val - prod));
    }
    out.refit_residual = res;
    if (res > R(1e-8) * max_g)
        throw NumericError("find_roots_even: root refit residual exceeds 1e-8 of the polynomial scale");
    return out;
}

// ---------------------------------------------------------------------------
// q(x) from the paired roots

// q(x) = sqrt(lead) prod (x - r(u)) with r(u) the square root of u in the
// upper half plane (i sqrt(-u) for real-negative u). Each conjugate u-pair
// contributes an (even + i odd) quadratic and each real-negative u a lone
// (odd + i even) linear factor. When deg(q) is even the whole product is
// rotated by i so the real part is the odd one; in-pipeline this happens
// only for the rootless constant target.
template <class R>
std::vector<complex_t<R>> assemble_q(const std::vector<complex_t<R>>& u_roots, const R& lead) {
    using C = complex_t<R>;
    using std::abs;
    using std::sqrt;
    if (!(lead > R(0))) throw InputError("assemble_q: leading coefficient must be positive");

    std::vector<C> factors_r;
    factors_r.reserve(u_roots.size());
    for (const auto& u : u_roots) {
        bool is_real = abs(u.imag()) <= R(kRootClassTol) * (R(1) + abs(u));
        if (is_real && u.real() > R(0))
            throw VerificationError(
                "assemble_q: real-positive u-root detected; target polynomial is not strictly positive "
                "(alpha margin too small)");
        if (is_real) {
            factors_r.push_back(C(R(0), sqrt(-u.real())));
        } else {
            C r = sqrt(u);
            if (r.imag() < R(0)) r = -r;
            factors_r.push_back(r);
        }
    }

    std::vector<C> q{C(sqrt(lead))};
    for (const auto& r : factors_r) {
        std::vector<C> next(q.size() + 1, C(0));
        for (std::size_t i = 0; i < q.size(); ++i) {
            next[i + 1] += q[i];
            next[i] -= q[i] * r;
        }
        q = std::move(next);
    }
    if (u_roots.size() % 2 == 0)
        for (auto& c : q) c *= C(R(0), R(1));
    return q;
}

// Re(q) must be odd and Im(q) even; off-parity mass up to 1e-10 relative is
// zeroed, beyond that is an error. Returns (even part, odd part) =
// (Im q, Re q), verified against the target on [-2, 2].
template <class R>
std::pair<RealPoly<R>, RealPoly<R>> split_parity(const std::vector<complex_t<R>>& q, const RealPoly<R>& target) {
    using std::abs;
    RealPoly<R> re_part, im_part;
    re_part.coeffs.reserve(q.size());
    im_part.coeffs.reserve(q.size());
    for (const auto& c : q) {
        re_part.coeffs.push_back(c.real());
        im_part.coeffs.push_back(c.imag());
    }
    R m = std::max(max_coeff_abs(re_part), max_coeff_abs(im_part));
    if (off_parity_mass(re_part, Parity::odd) > R(1e-10) * m)
        throw NumericError("split_parity: real part of q is not odd");
    if (off_parity_mass(im_part, Parity::even) > R(1e-10) * m)
        throw NumericError("split_parity: imaginary part of q is not even");
    for (std::size_t k = 0; k < re_part.coeffs.size(); ++k)
        if (k % 2 == 0) re_part.coeffs[k] = R(0);
    for (std::size_t k = 1; k < im_part.coeffs.size(); k += 2) im_part.coeffs[k] = R(0);
    re_part.trim();
    im_part.trim();

    SplitMix64 rng(kCompletionCheckSeed + 1);
    for (int t = 0; t < 100; ++t) {
        R x = R(4) * R(rng.next_double()) - R(2);
        R lhs = re_part.eval(x) * re_part.eval(x) + im_part.eval(x) * im_part.eval(x);
        R rhs = target.eval(x);
        if (abs(lhs - rhs) > R(1e-8) * (R(1) + abs(rhs)))
            throw NumericError("split_parity: |q|^2 does not reproduce the completion target");
    }
    return {im_part, re_part};
}

// ---------------------------------------------------------------------------

template <class R>
NormalizedPair<R> finalize_pq(const TruncatedPair<R>& pair, const R& alpha, const RealPoly<R>& even_part,
                              const RealPoly<R>& odd_part) {
    using C = complex_t<R>;
    NormalizedPair<R> out;
    LaurentPoly<R> p = scale(pair.cos_poly, C(alpha));
    p = add(p, scale(x_to_laurent(even_part), C(R(0), R(1))));
    out.p = shift_power(p, 1);
    out.q = add(scale(pair.sin_poly, C(alpha)), x_to_laurent(odd_part));

    if (!has_parity(out.p, Parity::odd, 1e-10) || !has_parity(out.q, Parity::odd, 1e-10))
        throw NumericError("finalize_pq: completed pair has off-parity coefficient mass above 1e-10");
    R res = circle_norm_residual(out.p, out.q);
    if (res > R(1e-9)) {
        std::ostringstream msg;
        msg << "finalize_pq: circle-norm residual " << to_double(res) << " exceeds 1e-9 (alpha margin "
            << to_double(R(1) - alpha) << ")";
        throw NumericError(msg.str());
    }
    return out;
}

// Stable evaluation of alpha^2 (P_K^2 - Q_K^2) + P'^2 + Q'^2 - 1 through the
// Chebyshev forms; returns the worst pointwise-relative residual.
template <class R>
R completion_identity_residual(const std::vector<R>& cos_cheb, const std::vector<R>& sin_factor_u, const R& alpha,
                               const std::vector<R>& even_cheb, const std::vector<R>& odd_cheb,
                               const std::vector<R>& xs) {
    using std::abs;
    R worst(0);
    for (const R& x : xs) {
        R c = clenshaw_t(cos_cheb, x);
        R s = clenshaw_u(sin_factor_u, x);
        R sin_sq = (x * x - R(1)) * s * s;
        R f = c * c - sin_sq;
        R ep = clenshaw_t(even_cheb, x);
        R op = clenshaw_t(odd_cheb, x);
        R lhs = alpha * alpha * f + ep * ep + op * op;
        // denominator carries the magnitudes actually summed: just beyond
        // [-1,1] the two squares cancel by many orders before the completion
        // terms enter
        R denom = R(1) + alpha * alpha * (c * c + abs(sin_sq)) + ep * ep + op * op;
        worst = std::max(worst, abs(lhs - R(1)) / denom);
    }
    return worst;
}

template <class R>
std::vector<R> completion_check_points(int count, std::uint64_t seed = kCompletionCheckSeed + 2) {
    SplitMix64 rng(seed);
    std::vector<R> xs;
    xs.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) xs.push_back(R(4) * R(rng.next_double()) - R(2));
    return xs;
}

template <class R>
CompletionResult<R> complete(const TruncatedPair<R>& pair) {
    using C = complex_t<R>;
    using std::sqrt;
    CompletionResult<R> out;
    out.alpha = choose_alpha(pair);
    if (pair.plan.tau == R(0)) {
        // constant target: P' = sqrt(p), Q' = 0 is the only parity-consistent
        // completion (a nonconstant sum of squares cannot be constant)
        R pc = R(1) - out.alpha * out.alpha;
        out.target.coeffs = {pc};
        out.q_coeffs = {C(R(0), sqrt(pc))};
        out.even_part.coeffs = {sqrt(pc)};
    } else {
        out.target = build_p_poly(pair, out.alpha);
        EvenRoots<R> roots = find_roots_even(out.target);
        out.q_coeffs = assemble_q(roots.u_roots, roots.lead);
        auto parts = split_parity(out.q_coeffs, out.target);
        out.even_part = parts.first;
        out.odd_part = parts.second;
    }
    out.pair = finalize_pq(pair, out.alpha, out.even_part, out.odd_part);
    out.even_cheb = monomial_to_chebyshev(out.even_part);
    out.odd_cheb = monomial_to_chebyshev(out.odd_part);
    out.circle_residual = circle_norm_residual(out.pair.p, out.pair.q);
    out.identity_residual = completion_identity_residual(pair.cos_cheb, pair.sin_factor_u, out.alpha, out.even_cheb,
                                                         out.odd_cheb, completion_check_points<R>(100));
    if (out.identity_residual > R(1e-8))
        throw NumericError("complete: exact-completion identity residual exceeds 1e-8");
    return out;
}

}  // namespace dirqsp
