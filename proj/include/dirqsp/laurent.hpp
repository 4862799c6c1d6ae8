#pragma once

#include "dirqsp/errors.hpp"
#include "dirqsp/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace dirqsp {

enum class Parity { even, odd, mixed };

// Relative tolerance separating structural zeros from numerical noise when
// classifying parity. The trim threshold below removes true zeros only.
inline constexpr double kParityTol = 1e-12;
inline constexpr double kTrimTol = 1e-300;

// Polynomial in z and 1/z with complex coefficients; coeffs[i] multiplies
// z^(min_power + i). An empty coefficient vector is the zero polynomial.
template <class R>
struct LaurentPoly {
    using C = complex_t<R>;

    int min_power = 0;
    std::vector<C> coeffs;

    bool is_zero() const { return coeffs.empty(); }
    int max_power() const { return min_power + static_cast<int>(coeffs.size()) - 1; }
    int degree() const {
        if (is_zero()) return 0;
        return std::max(std::abs(min_power), std::abs(max_power()));
    }
    C coeff(int power) const {
        int i = power - min_power;
        if (i < 0 || i >= static_cast<int>(coeffs.size())) return C(0);
        return coeffs[static_cast<std::size_t>(i)];
    }

    void trim() {
        using std::abs;
        auto dead = [](const C& c) { return abs(c) <= R(kTrimTol); };
        std::size_t lo = 0, hi = coeffs.size();
        while (hi > lo && dead(coeffs[hi - 1])) --hi;
        while (lo < hi && dead(coeffs[lo])) ++lo;
        if (lo == hi) {
            coeffs.clear();
            min_power = 0;
            return;
        }
        coeffs.erase(coeffs.begin() + static_cast<std::ptrdiff_t>(hi), coeffs.end());
        coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(lo));
        min_power += static_cast<int>(lo);
    }

    static LaurentPoly monomial(int power, C c = C(1)) {
        LaurentPoly l;
        l.min_power = power;
        l.coeffs = {c};
        return l;
    }
};

// Real coefficients, monomial basis in x. Conditioning-sensitive evaluation
// on [-1, 1] should go through the Chebyshev helpers instead.
template <class R>
struct RealPoly {
    std::vector<R> coeffs;  // coeffs[k] multiplies x^k

    bool is_zero() const { return coeffs.empty(); }
    int degree() const { return coeffs.empty() ? 0 : static_cast<int>(coeffs.size()) - 1; }
    R coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(coeffs.size())) return R(0);
        return coeffs[static_cast<std::size_t>(k)];
    }

    void trim() {
        using std::abs;
        while (!coeffs.empty() && abs(coeffs.back()) <= R(kTrimTol)) coeffs.pop_back();
    }

    template <class T>
    T eval(const T& x) const {
        T acc(0);
        for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + T(coeffs[i]);
        return acc;
    }
};

// ---------------------------------------------------------------------------
// Laurent arithmetic

template <class R>
LaurentPoly<R> add(const LaurentPoly<R>& a, const LaurentPoly<R>& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    LaurentPoly<R> out;
    out.min_power = std::min(a.min_power, b.min_power);
    int hi = std::max(a.max_power(), b.max_power());
    out.coeffs.assign(static_cast<std::size_t>(hi - out.min_power + 1), typename LaurentPoly<R>::C(0));
    for (int p = a.min_power; p <= a.max_power(); ++p)
        out.coeffs[static_cast<std::size_t>(p - out.min_power)] += a.coeff(p);
    for (int p = b.min_power; p <= b.max_power(); ++p)
        out.coeffs[static_cast<std::size_t>(p - out.min_power)] += b.coeff(p);
    out.trim();
    return out;
}

template <class R>
LaurentPoly<R> scale(const LaurentPoly<R>& a, const complex_t<R>& s) {
    LaurentPoly<R> out = a;
    for (auto& c : out.coeffs) c *= s;
    out.trim();
    return out;
}

template <class R>
LaurentPoly<R> product(const LaurentPoly<R>& a, const LaurentPoly<R>& b) {
    LaurentPoly<R> out;
    if (a.is_zero() || b.is_zero()) return out;
    out.min_power = a.min_power + b.min_power;
    out.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, typename LaurentPoly<R>::C(0));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j) out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    out.trim();
    return out;
}

// adjoint(L)(z) = sum conj(c_k) z^{-k}; on the unit circle this is the
// pointwise complex conjugate of L.
template <class R>
LaurentPoly<R> adjoint(const LaurentPoly<R>& a) {
    LaurentPoly<R> out;
    if (a.is_zero()) return out;
    out.min_power = -a.max_power();
    out.coeffs.resize(a.coeffs.size());
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        out.coeffs[i] = conj(a.coeffs[a.coeffs.size() - 1 - i]);
    return out;
}

template <class R>
LaurentPoly<R> shift_power(const LaurentPoly<R>& a, int s) {
    LaurentPoly<R> out = a;
    if (!out.is_zero()) out.min_power += s;
    return out;
}

// Horner in e^{i theta} for nonnegative powers and e^{-i theta} for the rest.
template <class R>
complex_t<R> eval_circle(const LaurentPoly<R>& l, const R& theta) {
    using C = complex_t<R>;
    using std::cos;
    using std::sin;
    if (l.is_zero()) return C(0);
    C w(cos(theta), sin(theta));
    C wbar = conj(w);
    C up(0), down(0);
    if (l.max_power() >= 0)
        for (int p = l.max_power(); p >= 0; --p) up = up * w + l.coeff(p);
    if (l.min_power < 0) {
        for (int p = l.min_power; p <= -1; ++p) down = down * wbar + l.coeff(p);
        down *= wbar;
    }
    return up + down;
}

template <class R>
complex_t<R> eval_at(const LaurentPoly<R>& l, const complex_t<R>& z) {
    using C = complex_t<R>;
    if (l.is_zero()) return C(0);
    C zinv = C(1) / z;
    C up(0), down(0);
    if (l.max_power() >= 0)
        for (int p = l.max_power(); p >= 0; --p) up = up * z + l.coeff(p);
    if (l.min_power < 0) {
        for (int p = l.min_power; p <= -1; ++p) down = down * zinv + l.coeff(p);
        down *= zinv;
    }
    return up + down;
}

// ---------------------------------------------------------------------------
// Parity

template <class R>
R max_coeff_abs(const LaurentPoly<R>& l) {
    using std::abs;
    R m(0);
    for (const auto& c : l.coeffs) m = std::max(m, abs(c));
    return m;
}

template <class R>
R max_coeff_abs(const RealPoly<R>& r) {
    using std::abs;
    R m(0);
    for (const auto& c : r.coeffs) m = std::max(m, abs(c));
    return m;
}

// Largest |coefficient| sitting on powers of the wrong parity.
template <class R>
R off_parity_mass(const LaurentPoly<R>& l, Parity want) {
    using std::abs;
    R worst(0);
    int rem = (want == Parity::even) ? 0 : 1;
    for (int p = l.min_power; p <= l.max_power(); ++p)
        if (((p % 2) + 2) % 2 != rem) worst = std::max(worst, abs(l.coeff(p)));
    return worst;
}

template <class R>
R off_parity_mass(const RealPoly<R>& r, Parity want) {
    using std::abs;
    R worst(0);
    int rem = (want == Parity::even) ? 0 : 1;
    for (int k = 0; k <= r.degree(); ++k)
        if (k % 2 != rem) worst = std::max(worst, abs(r.coeff(k)));
    return worst;
}

template <class P>
bool has_parity(const P& poly, Parity want, double rel_tol = kParityTol) {
    auto m = max_coeff_abs(poly);
    return off_parity_mass(poly, want) <= decltype(m)(rel_tol) * std::max(m, decltype(m)(0));
}

template <class P>
Parity parity_of(const P& poly, double rel_tol = kParityTol) {
    bool e = has_parity(poly, Parity::even, rel_tol);
    bool o = has_parity(poly, Parity::odd, rel_tol);
    if (e) return Parity::even;  // zero polynomial classifies as even
    if (o) return Parity::odd;
    return Parity::mixed;
}

// ---------------------------------------------------------------------------
// Real-polynomial arithmetic

template <class R>
RealPoly<R> add(const RealPoly<R>& a, const RealPoly<R>& b) {
    RealPoly<R> out;
    out.coeffs.assign(std::max(a.coeffs.size(), b.coeffs.size()), R(0));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) out.coeffs[i] += a.coeffs[i];
    for (std::size_t i = 0; i < b.coeffs.size(); ++i) out.coeffs[i] += b.coeffs[i];
    out.trim();
    return out;
}

template <class R>
RealPoly<R> scale(const RealPoly<R>& a, const R& s) {
    RealPoly<R> out = a;
    for (auto& c : out.coeffs) c *= s;
    out.trim();
    return out;
}

template <class R>
RealPoly<R> product(const RealPoly<R>& a, const RealPoly<R>& b) {
    RealPoly<R> out;
    if (a.is_zero() || b.is_zero()) return out;
    out.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, R(0));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j) out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    out.trim();
    return out;
}

template <class R>
RealPoly<R> derivative(const RealPoly<R>& a) {
    RealPoly<R> out;
    for (int k = 1; k <= a.degree(); ++k) out.coeffs.push_back(R(k) * a.coeff(k));
    out.trim();
    return out;
}

// ---------------------------------------------------------------------------
// Chebyshev helpers

template <class R>
R chebyshev_t(int n, const R& x) {
    if (n == 0) return R(1);
    R prev(1), cur = x;
    for (int k = 1; k < n; ++k) {
        R next = R(2) * x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

template <class R>
R chebyshev_u(int n, const R& x) {
    if (n == 0) return R(1);
    R prev(1), cur = R(2) * x;
    for (int k = 1; k < n; ++k) {
        R next = R(2) * x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

// Clenshaw for sum_k a_k T_k(x); valid for any real x.
template <class R>
R clenshaw_t(const std::vector<R>& a, const R& x) {
    if (a.empty()) return R(0);
    R b1(0), b2(0);
    for (std::size_t k = a.size(); k-- > 1;) {
        R b0 = R(2) * x * b1 - b2 + a[k];
        b2 = b1;
        b1 = b0;
    }
    return x * b1 - b2 + a[0];
}

// Clenshaw for sum_k a_k U_k(x).
template <class R>
R clenshaw_u(const std::vector<R>& a, const R& x) {
    R b1(0), b2(0);
    for (std::size_t k = a.size(); k-- > 0;) {
        R b0 = R(2) * x * b1 - b2 + a[k];
        b2 = b1;
        b1 = b0;
    }
    return b1;
}

// Monomial coefficients of sum_k a_k T_k via the three-term recurrence.
template <class R>
RealPoly<R> chebyshev_to_monomial(const std::vector<R>& a) {
    RealPoly<R> out;
    if (a.empty()) return out;
    std::vector<R> prev{R(1)};       // T_0
    std::vector<R> cur{R(0), R(1)};  // T_1
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

// Chebyshev-T coefficients of a monomial-basis polynomial; exact transform,
// numerically preferable to sampling when degrees are moderate.
template <class R>
std::vector<R> monomial_to_chebyshev(const RealPoly<R>& p) {
    using std::abs;
    if (p.is_zero()) return {};
    std::vector<R> out(p.coeffs.size(), R(0));
    std::vector<R> xn{R(1)};  // T-representation of x^n, starting with x^0
    for (std::size_t n = 0; n < p.coeffs.size(); ++n) {
        for (std::size_t j = 0; j < xn.size(); ++j) out[j] += p.coeffs[n] * xn[j];
        if (n + 1 < p.coeffs.size()) {
            // multiply by x: x T_0 = T_1, x T_j = (T_{j+1} + T_{j-1}) / 2
            std::vector<R> next(xn.size() + 1, R(0));
            next[1] += xn[0];
            for (std::size_t j = 1; j < xn.size(); ++j) {
                R half = xn[j] / R(2);
                next[j + 1] += half;
                next[j - 1] += half;
            }
            xn = std::move(next);
        }
    }
    while (!out.empty() && abs(out.back()) <= R(kTrimTol)) out.pop_back();
    return out;
}

// Symmetric Laurent polynomial matching a T-series under x = (z + 1/z)/2:
// T_k contributes (z^k + z^-k)/2.
template <class R>
LaurentPoly<R> laurent_from_chebyshev(const std::vector<R>& a) {
    LaurentPoly<R> out;
    if (a.empty()) return out;
    int d = static_cast<int>(a.size()) - 1;
    out.min_power = -d;
    out.coeffs.assign(static_cast<std::size_t>(2 * d + 1), typename LaurentPoly<R>::C(0));
    out.coeffs[static_cast<std::size_t>(d)] = a[0];
    for (int k = 1; k <= d; ++k) {
        auto half = typename LaurentPoly<R>::C(a[static_cast<std::size_t>(k)] / R(2));
        out.coeffs[static_cast<std::size_t>(d + k)] = half;
        out.coeffs[static_cast<std::size_t>(d - k)] = half;
    }
    out.trim();
    return out;
}

// Substitute x = (z + 1/z)/2. Goes through the Chebyshev transform, which
// keeps the result's coefficients at the scale of the function's values
// on [-1, 1] instead of the monomial coefficients' scale.
template <class R>
LaurentPoly<R> x_to_laurent(const RealPoly<R>& r) {
    return laurent_from_chebyshev(monomial_to_chebyshev(r));
}

// ---------------------------------------------------------------------------

template <class To, class From>
LaurentPoly<To> convert_laurent(const LaurentPoly<From>& in) {
    LaurentPoly<To> out;
    out.min_power = in.min_power;
    out.coeffs.reserve(in.coeffs.size());
    for (const auto& c : in.coeffs) out.coeffs.push_back(complex_cast<To>(c));
    out.trim();
    return out;
}

template <class To, class From>
RealPoly<To> convert_real(const RealPoly<From>& in) {
    RealPoly<To> out;
    out.coeffs.reserve(in.coeffs.size());
    for (const auto& c : in.coeffs) out.coeffs.push_back(real_cast<To>(c));
    out.trim();
    return out;
}

template <class To, class From>
std::vector<To> convert_vec(const std::vector<From>& in) {
    std::vector<To> out;
    out.reserve(in.size());
    for (const auto& c : in) out.push_back(real_cast<To>(c));
    return out;
}

// Max over a 4(d+1)-point uniform circle grid of | |P|^2 + |Q|^2 - 1 |.
template <class R>
R circle_norm_residual(const LaurentPoly<R>& p, const LaurentPoly<R>& q) {
    using std::abs;
    int d = std::max(p.degree(), q.degree());
    int n = 4 * (d + 1);
    R two_pi = R(2) * pi_v<R>();
    R worst(0);
    for (int j = 0; j < n; ++j) {
        R theta = two_pi * R(j) / R(n);
        R s = norm(eval_circle(p, theta)) + norm(eval_circle(q, theta));
        worst = std::max(worst, abs(s - R(1)));
    }
    return worst;
}

// Inverse DFT over >= 2d+1 equispaced circle samples f(e^{2 pi i j / M}),
// recovering coefficients for powers -d..d.
template <class R>
LaurentPoly<R> fit_laurent(const std::vector<complex_t<R>>& samples, int d) {
    using C = complex_t<R>;
    using std::cos;
    using std::sin;
    int m = static_cast<int>(samples.size());
    if (m < 2 * d + 1) throw InputError("fit_laurent: need at least 2d+1 samples");
    LaurentPoly<R> out;
    out.min_power = -d;
    out.coeffs.assign(static_cast<std::size_t>(2 * d + 1), C(0));
    R two_pi = R(2) * pi_v<R>();
    for (int k = -d; k <= d; ++k) {
        C acc(0);
        for (int j = 0; j < m; ++j) {
            // exact index arithmetic keeps the twiddle angles small
            long idx = (static_cast<long>(((k % m) + m) % m) * j) % m;
            R ang = -two_pi * R(static_cast<int>(idx)) / R(m);
            acc += samples[static_cast<std::size_t>(j)] * C(cos(ang), sin(ang));
        }
        out.coeffs[static_cast<std::size_t>(k + d)] = acc / R(m);
    }
    // keep full support: callers compare coefficient-wise against -d..d
    return out;
}

}  // namespace dirqsp
