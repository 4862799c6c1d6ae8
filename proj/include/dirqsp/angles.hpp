#pragma once

#include "dirqsp/errors.hpp"
#include "dirqsp/laurent.hpp"
#include "dirqsp/numerics.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace dirqsp {

// Rotation parameters for the directional sequence. theta[j], phi[j] belong
// to layer j; layer 0 is the final rotation carrying rot_lambda. Canonical
// branches: theta in [0, pi/2], phi in (-pi, pi].
template <class R>
struct AngleSequenceT {
    int d = 0;
    std::vector<R> theta;
    std::vector<R> phi;
    R rot_lambda{};
    R phase_fix_delta{};
};
using AngleSequence = AngleSequenceT<double>;

template <class R>
AngleSequence narrow_angles(const AngleSequenceT<R>& a) {
    AngleSequence out;
    out.d = a.d;
    out.theta.reserve(a.theta.size());
    out.phi.reserve(a.phi.size());
    for (const auto& t : a.theta) out.theta.push_back(to_double(t));
    for (const auto& p : a.phi) out.phi.push_back(to_double(p));
    out.rot_lambda = to_double(a.rot_lambda);
    out.phase_fix_delta = to_double(a.phase_fix_delta);
    return out;
}

// ---------------------------------------------------------------------------
// Laurent <-> nonnegative-power coefficient vectors under w = z^2

// Coefficients of z^d P(z) in w = z^2: index m holds the z-power 2m - d.
template <class R>
std::vector<complex_t<R>> laurent_to_w(const LaurentPoly<R>& l, int d) {
    using C = complex_t<R>;
    if (l.degree() > d) throw InputError("laurent_to_w: degree exceeds d");
    Parity want = (d % 2 == 0) ? Parity::even : Parity::odd;
    if (!has_parity(l, want)) throw InputError("laurent_to_w: parity does not match d mod 2");
    std::vector<C> w(static_cast<std::size_t>(d) + 1, C(0));
    for (int m = 0; m <= d; ++m) w[static_cast<std::size_t>(m)] = l.coeff(2 * m - d);
    return w;
}

template <class R>
LaurentPoly<R> w_to_laurent(const std::vector<complex_t<R>>& w, int d) {
    LaurentPoly<R> out;
    out.min_power = -d;
    out.coeffs.assign(static_cast<std::size_t>(2 * d + 1), complex_t<R>(0));
    for (int m = 0; m < static_cast<int>(w.size()); ++m)
        out.coeffs[static_cast<std::size_t>(2 * m)] = w[static_cast<std::size_t>(m)];
    out.trim();
    return out;
}

// ---------------------------------------------------------------------------
// angle synthesis by layer peeling

namespace detail {

template <class R>
R wrap_pi(R phi) {
    R two_pi = R(2) * pi_v<R>();
    while (phi > pi_v<R>()) phi -= two_pi;
    while (phi <= -pi_v<R>()) phi += two_pi;
    return phi;
}

template <class C>
auto vec_max_abs(const std::vector<C>& v) {
    using std::abs;
    decltype(abs(std::declval<C>())) m(0);
    for (const auto& c : v) m = std::max(m, abs(c));
    return m;
}

}  // namespace detail

// Peels one rotation per step off the w-space pair. At each degree j the
// leading coefficients fix (theta_j, phi_j); the discarded constant/leading
// entries are consistent through the normalization relation
// p_j conj(p_0) + q_j conj(q_0) = 0, asserted before solving.
template <class R>
AngleSequenceT<R> solve_angles(const LaurentPoly<R>& p_in, const LaurentPoly<R>& q_in) {
    using C = complex_t<R>;
    using std::abs;
    using std::arg;
    using std::atan2;
    using std::cos;
    using std::exp;
    using std::sin;

    int d = std::max(p_in.degree(), q_in.degree());
    if (circle_norm_residual(p_in, q_in) > R(1e-8))
        throw InputError("solve_angles: |P|^2 + |Q|^2 deviates from 1 beyond 1e-8 on the circle");
    std::vector<C> wp = laurent_to_w(p_in, d);
    std::vector<C> wq = laurent_to_w(q_in, d);

    AngleSequenceT<R> out;
    out.d = d;
    out.theta.assign(static_cast<std::size_t>(d) + 1, R(0));
    out.phi.assign(static_cast<std::size_t>(d) + 1, R(0));

    const R half_pi = pi_v<R>() / R(2);
    for (int j = d; j >= 1; --j) {
        R runmax = std::max(detail::vec_max_abs(wp), detail::vec_max_abs(wq));
        C p_lead = wp[static_cast<std::size_t>(j)];
        C q_lead = wq[static_cast<std::size_t>(j)];
        C p0 = wp[0], q0 = wq[0];
        // normalization relation, asserted on the input pair before solving;
        // interior degradation is caught by the certified-zero abort below
        if (j == d && abs(p_lead * conj(p0) + q_lead * conj(q0)) > R(1e-10) * runmax)
            throw NumericError("solve_angles: peel consistency relation violated");

        R theta, phi;
        R degen = R(1e-13) * runmax;
        if (abs(p_lead) <= degen && abs(q_lead) <= degen)
            throw NumericError("solve_angles: peel degeneracy (both leading coefficients vanish)");
        if (abs(q_lead) <= degen) {
            theta = R(0);
            phi = R(0);
        } else if (abs(p_lead) <= degen) {
            theta = half_pi;
            phi = R(0);
        } else {
            theta = atan2(abs(q_lead), abs(p_lead));
            phi = detail::wrap_pi(arg(p_lead) - arg(q_lead));
        }
        out.theta[static_cast<std::size_t>(j)] = theta;
        out.phi[static_cast<std::size_t>(j)] = phi;

        // apply the inverse rotation, then divide the first entry by w
        C e = exp(C(R(0), -phi));
        R ct = cos(theta), st = sin(theta);
        std::vector<C> np(static_cast<std::size_t>(j) + 1), nq(static_cast<std::size_t>(j) + 1);
        for (int k = 0; k <= j; ++k) {
            np[static_cast<std::size_t>(k)] = e * ct * wp[static_cast<std::size_t>(k)] + st * wq[static_cast<std::size_t>(k)];
            nq[static_cast<std::size_t>(k)] = e * st * wp[static_cast<std::size_t>(k)] - ct * wq[static_cast<std::size_t>(k)];
        }
        R abort_bar = R(1e-8) * runmax;
        if (abs(np[0]) > abort_bar || abs(nq[static_cast<std::size_t>(j)]) > abort_bar)
            throw NumericError("solve_angles: certified-zero coefficient exceeds 1e-8 of running max");
        wp.assign(np.begin() + 1, np.end());  // divide by w
        nq.pop_back();
        wq = std::move(nq);
    }

    C p0 = wp[0], q0 = wq[0];
    R tiny = R(1e-13) * std::max(abs(p0), abs(q0));
    if (abs(q0) <= tiny) {
        out.theta[0] = R(0);
        out.rot_lambda = R(0);
        out.phi[0] = detail::wrap_pi(arg(p0));
    } else if (abs(p0) <= tiny) {
        out.theta[0] = half_pi;
        out.phi[0] = R(0);
        out.rot_lambda = detail::wrap_pi(arg(q0));
    } else {
        out.theta[0] = atan2(abs(q0), abs(p0));
        out.rot_lambda = detail::wrap_pi(arg(q0));
        out.phi[0] = detail::wrap_pi(arg(p0) - arg(q0));
    }

    // Appendix-B gates differ from the plain convention by i e^{-i phi/2} per
    // layer (i e^{-i(lambda+phi)/2} for the final rotation); cancel the
    // accumulated phase by shifting lambda, which rescales the first column
    // by e^{i delta / 2}.
    R phi_sum = out.rot_lambda;
    for (const auto& f : out.phi) phi_sum += f;
    R acc_arg = R(d + 1) * half_pi - phi_sum / R(2);
    C acc = exp(C(R(0), acc_arg));
    out.phase_fix_delta = R(-2) * atan2(acc.imag(), acc.real());
    return out;
}

// Forward w-space assembly of the plain-convention product's first column;
// exact polynomial arithmetic, used for round-trip checks at any precision.
template <class R>
std::pair<LaurentPoly<R>, LaurentPoly<R>> reconstruct_pair(const AngleSequenceT<R>& a) {
    using C = complex_t<R>;
    using std::cos;
    using std::exp;
    using std::sin;
    std::vector<C> wp{exp(C(R(0), a.rot_lambda + a.phi[0])) * cos(a.theta[0])};
    std::vector<C> wq{exp(C(R(0), a.rot_lambda)) * sin(a.theta[0])};
    for (int j = 1; j <= a.d; ++j) {
        C e = exp(C(R(0), a.phi[static_cast<std::size_t>(j)]));
        R ct = cos(a.theta[static_cast<std::size_t>(j)]);
        R st = sin(a.theta[static_cast<std::size_t>(j)]);
        std::vector<C> np(wp.size() + 1, C(0)), nq(wq.size() + 1, C(0));
        for (std::size_t k = 0; k < wp.size(); ++k) {
            np[k + 1] += e * ct * wp[k];
            np[k] += e * st * wq[k];
            nq[k + 1] += st * wp[k];
            nq[k] -= ct * wq[k];
        }
        wp = std::move(np);
        wq = std::move(nq);
    }
    return {w_to_laurent<R>(wp, a.d), w_to_laurent<R>(wq, a.d)};
}

// Max coefficient-wise round-trip error of reassembling (P, Q) from angles.
template <class R>
R angle_round_trip_error(const AngleSequenceT<R>& a, const LaurentPoly<R>& p, const LaurentPoly<R>& q) {
    using std::abs;
    auto rec = reconstruct_pair(a);
    R worst(0);
    for (int k = -a.d; k <= a.d; ++k) {
        worst = std::max(worst, abs(rec.first.coeff(k) - p.coeff(k)));
        worst = std::max(worst, abs(rec.second.coeff(k) - q.coeff(k)));
    }
    return worst;
}

// ---------------------------------------------------------------------------
// scalar 2x2 products in the Appendix-B convention (for structure checks)

using Mat2 = std::array<std::complex<double>, 4>;  // row major

inline Mat2 mat2_mul(const Mat2& a, const Mat2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3]};
}

// Phase-modified rotation gate; entries i e^{i(lambda+phi)/2} cos(theta) etc.
inline Mat2 rotation_gate(double theta, double phi, double lambda = 0.0) {
    const std::complex<double> i(0.0, 1.0);
    double ct = std::cos(theta), st = std::sin(theta);
    return {i * std::exp(i * ((lambda + phi) / 2.0)) * ct, i * std::exp(i * ((phi - lambda) / 2.0)) * st,
            i * std::exp(-i * ((phi - lambda) / 2.0)) * st, -i * std::exp(-i * ((lambda + phi) / 2.0)) * ct};
}

// Full directional product evaluated at a scalar unitary z (no correction).
inline Mat2 directional_product_at(const AngleSequence& a, std::complex<double> z) {
    Mat2 acc = rotation_gate(a.theta[0], a.phi[0], a.rot_lambda + a.phase_fix_delta);
    for (int j = 1; j <= a.d; ++j) {
        Mat2 layer = rotation_gate(a.theta[static_cast<std::size_t>(j)], a.phi[static_cast<std::size_t>(j)]);
        Mat2 dz = {z, 0.0, 0.0, std::conj(z)};
        acc = mat2_mul(mat2_mul(layer, dz), acc);
    }
    return acc;
}

struct BlockStructureReport {
    bool pass = false;
    double worst_block = 0.0;    // top-right vs -Q^dag and bottom-right vs P^dag
    double worst_parity = 0.0;   // off-parity mass of the fitted P, Q
    double worst_norm = 0.0;     // | |P|^2 + |Q|^2 - 1 | on the samples
};

// Fits all four blocks of the scalar product as Laurent polynomials over an
// equispaced circle grid and checks the [[P, -Q^dag], [Q, P^dag]] form, the
// parity condition, and normalization, all to 1e-11.
inline BlockStructureReport verify_block_structure(const AngleSequence& a, double tol = 1e-11) {
    using C = std::complex<double>;
    int d = a.d;
    int m = 2 * d + 5;
    std::vector<C> f00, f01, f10, f11;
    f00.reserve(m);
    for (int j = 0; j < m; ++j) {
        double ang = 2.0 * pi_v<double>() * j / m;
        Mat2 v = directional_product_at(a, C(std::cos(ang), std::sin(ang)));
        f00.push_back(v[0]);
        f01.push_back(v[1]);
        f10.push_back(v[2]);
        f11.push_back(v[3]);
    }
    auto p = fit_laurent<double>(f00, d);
    auto nq_dag = fit_laurent<double>(f01, d);
    auto q = fit_laurent<double>(f10, d);
    auto p_dag = fit_laurent<double>(f11, d);

    BlockStructureReport rep;
    auto diff = [&](const LaurentPoly<double>& x, const LaurentPoly<double>& y) {
        double worst = 0.0;
        for (int k = -d; k <= d; ++k) worst = std::max(worst, std::abs(x.coeff(k) - y.coeff(k)));
        return worst;
    };
    rep.worst_block = std::max(diff(nq_dag, scale(adjoint(q), C(-1.0))), diff(p_dag, adjoint(p)));
    Parity want = (d % 2 == 0) ? Parity::even : Parity::odd;
    rep.worst_parity = std::max(off_parity_mass(p, want), off_parity_mass(q, want));
    for (int j = 0; j < m; ++j)
        rep.worst_norm =
            std::max(rep.worst_norm, std::abs(std::norm(f00[static_cast<std::size_t>(j)]) +
                                              std::norm(f10[static_cast<std::size_t>(j)]) - 1.0));
    rep.pass = rep.worst_block <= tol && rep.worst_parity <= tol && rep.worst_norm <= tol;
    return rep;
}

// Deterministic random angle set for structure sweeps and round-trip tests.
template <class R>
AngleSequenceT<R> random_angles(int d, SplitMix64& rng) {
    AngleSequenceT<R> a;
    a.d = d;
    a.theta.reserve(static_cast<std::size_t>(d) + 1);
    a.phi.reserve(static_cast<std::size_t>(d) + 1);
    for (int j = 0; j <= d; ++j) {
        a.theta.push_back(R(rng.next_double()) * pi_v<R>() / R(2));
        a.phi.push_back((R(rng.next_double()) * R(2) - R(1)) * pi_v<R>());
    }
    a.rot_lambda = (R(rng.next_double()) * R(2) - R(1)) * pi_v<R>();
    a.phase_fix_delta = R(0);  // only meaningful for solver output
    return a;
}

}  // namespace dirqsp
