#ifndef BFMIX_RATIONAL_HPP
#define BFMIX_RATIONAL_HPP

#include <complex>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace bfmix {

using Rational = mpq_class;
using Complex = std::complex<double>;

// Accepts "p", "p/q" and plain decimals such as "-0.125" (read exactly).
Rational parse_rational(std::string_view text);

// Canonical "p/q", or "p" for integers.
std::string to_string(const Rational& r);

double to_double(const Rational& r);

// Exact square root when r is the square of a rational.
std::optional<Rational> rational_sqrt(const Rational& r);

bool is_integer(const Rational& r);

// Small-denominator rational within tol of x, if any.
std::optional<Rational> recognize_rational(double x, long max_den = 720, double tol = 1e-9);

}

#endif
