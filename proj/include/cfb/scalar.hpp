#ifndef CFB_SCALAR_HPP
#define CFB_SCALAR_HPP

#include <boost/multiprecision/mpfr.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <cmath>
#include <cstdint>
#include <string>

namespace cfb {

namespace mp = boost::multiprecision;

/// Arbitrary-precision real, runtime-selectable precision (bits).
using Real = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

/// Exact rational scalar for the exact backend.
using Rational = mp::mpq_rational;
using Integer = mp::mpz_int;

inline unsigned bits_to_digits10(unsigned bits) {
    return static_cast<unsigned>(bits * 0.30103) + 2;
}

/// Sets the working precision of Real for the calling thread.
inline void set_precision_bits(unsigned bits) {
    Real::default_precision(bits_to_digits10(bits));
}

inline unsigned precision_digits10() { return Real::default_precision(); }

/// Numeric environment shared by the algebraic modules.
struct NumericConfig {
    unsigned precision_bits = 256;
    int threshold_exp = 20;          // "vanishing" means below 10^-threshold_exp relative
    unsigned quadrature_nodes = 512; // starting node count
    unsigned quadrature_node_cap = 1u << 16;
    Real vanish_rel() const { return pow(Real(10), -threshold_exp); }
};

inline Real real_pi() {
    return mp::default_ops::get_constant_pi<Real::backend_type>();
}

inline double to_double(const Real& x) { return x.convert_to<double>(); }
inline Real to_real(const Rational& q) {
    return Real(numerator(q)) / Real(denominator(q));
}

inline std::string to_decimal_string(const Real& x, unsigned digits = 0) {
    if (digits == 0) digits = precision_digits10();
    return x.str(digits);
}

// Field helpers so templated code runs over both Real and Rational.
template <class T> struct field_traits;

template <> struct field_traits<Real> {
    static constexpr bool exact = false;
    static Real abs(const Real& x) { return mp::abs(x); }
    static bool is_zero(const Real& x) { return x == 0; }
};

template <> struct field_traits<Rational> {
    static constexpr bool exact = true;
    static Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }
    static bool is_zero(const Rational& x) { return x == 0; }
};

} // namespace cfb

#endif
