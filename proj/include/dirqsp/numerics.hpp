#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <complex>
#include <cstdint>
#include <limits>
#include <type_traits>

namespace dirqsp {

// Extended-precision scalars for the coefficient pipeline. Layer peeling
// amplifies the pair's normalization error by roughly a constant factor per
// degree, so the extended lane is tiered: 60 digits covers moderate tau,
// 120 and 240 digits the high-degree range up to the tau caps.
template <unsigned Digits>
using big_complex = boost::multiprecision::cpp_complex<Digits>;
template <unsigned Digits>
using big_real = typename big_complex<Digits>::value_type;

using extcomplex = big_complex<60>;
using extreal = big_real<60>;

template <class R>
struct complex_for {
    using type = std::complex<R>;
};
template <>
struct complex_for<big_real<60>> {
    using type = big_complex<60>;
};
template <>
struct complex_for<big_real<120>> {
    using type = big_complex<120>;
};
template <>
struct complex_for<big_real<240>> {
    using type = big_complex<240>;
};
template <class R>
using complex_t = typename complex_for<R>::type;

template <class R>
inline R pi_v() {
    static const R value = acos(R(-1));
    return value;
}
template <>
inline double pi_v<double>() {
    return 3.14159265358979323846264338327950288;
}

inline double to_double(double x) { return x; }
template <class Backend, boost::multiprecision::expression_template_option ET>
inline double to_double(const boost::multiprecision::number<Backend, ET>& x) {
    return x.template convert_to<double>();
}
inline std::complex<double> to_cdouble(const std::complex<double>& z) { return z; }
inline std::complex<double> to_cdouble(const extcomplex& z) {
    return {z.real().convert_to<double>(), z.imag().convert_to<double>()};
}

template <class To, class From>
To real_cast(const From& x) {
    if constexpr (std::is_same_v<To, From>)
        return x;
    else if constexpr (std::is_same_v<To, double>)
        return to_double(x);
    else
        return To(x);
}

template <class To, class From>
complex_t<To> complex_cast(const From& z) {
    return complex_t<To>(real_cast<To>(z.real()), real_cast<To>(z.imag()));
}

// SplitMix64: the fixed 64-bit generator behind every seeded fixture.
// split() derives an independent stream from (state, stream id), so seeds
// are reproducible and composable across modules.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in (0, 1), never exactly 0 or 1.
    double next_double() {
        return (static_cast<double>(next() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
    }

    SplitMix64 split(std::uint64_t stream) {
        SplitMix64 mixer(state_ ^ (0xA0761D6478BD642FULL * (stream + 1)));
        return SplitMix64(mixer.next());
    }

  private:
    std::uint64_t state_;
};

}  // namespace dirqsp
