#ifndef BFMIX_LAURENT_HPP
#define BFMIX_LAURENT_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bfmix/rational.hpp"

namespace bfmix {

// Default working precision, counted in exponent units beyond the leading term.
inline constexpr int kDefaultOrder = 16;

template <class C>
struct CoeffOps;

template <>
struct CoeffOps<Rational> {
    static bool is_zero(const Rational& x) { return sgn(x) == 0; }
    static Rational lift(const Rational& r) { return r; }
};

template <>
struct CoeffOps<Complex> {
    static bool is_zero(const Complex& x) { return x == Complex(0.0, 0.0); }
    static Complex lift(const Rational& r) { return Complex(to_double(r), 0.0); }
};

template <class C>
struct LogSeries;

// Truncated Puiseux series sum c_k t^(k/d), known below an optional
// truncation exponent; no truncation means the series is exact.
// Exact and float coefficient modes are different types, so mixing
// them does not compile.
template <class C>
class Series {
public:
    using coeff_type = C;
    using Term = std::pair<Rational, C>;

    Series() = default;

    static Series constant(const C& value);
    static Series monomial(const C& value, const Rational& exponent);
    static Series from_terms(const std::vector<Term>& terms,
                             std::optional<Rational> truncation = std::nullopt);
    // Unknown series O(t^e).
    static Series big_o(const Rational& exponent);

    bool empty() const { return c_.empty(); }
    bool exact() const { return !trunc_.has_value(); }
    int ramification() const { return den_; }
    std::optional<Rational> valuation() const;
    const C& leading_coefficient() const;
    std::optional<Rational> truncation() const;
    // Coefficient of t^e; throws InsufficientOrder beyond the truncation.
    C coeff(const Rational& exponent) const;
    std::vector<Term> terms() const;

    Series truncated(const Rational& exponent) const;
    Series shifted(const Rational& exponent) const;
    Series scaled(const Rational& factor) const;
    Series pow(int k, int order = kDefaultOrder) const;

    Series inverse(int order = kDefaultOrder) const;
    Series sqrt(int order = kDefaultOrder) const;
    Series derivative() const;
    LogSeries<C> antiderivative() const;
    C residue() const;

    Series operator-() const;
    Series& operator+=(const Series& o);
    Series& operator-=(const Series& o);
    Series& operator*=(const Series& o);
    Series& operator*=(const C& k);

    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator*(const Series& a, const Series& b) { return multiply(a, b); }
    friend Series operator*(Series a, const C& k) { return a *= k; }
    friend Series operator*(const C& k, Series a) { return a *= k; }
    friend Series operator/(const Series& a, const Series& b) { return multiply(a, b.inverse()); }

    bool operator==(const Series& o) const;
    bool operator!=(const Series& o) const { return !(*this == o); }

    Complex evaluate(Complex t) const;

    std::string str() const;

private:
    static Series multiply(const Series& a, const Series& b);
    Series with_ramification(int d) const;
    long end_index() const { return lo_ + static_cast<long>(c_.size()); }
    long low_index() const;
    void normalize();

    int den_ = 1;
    long lo_ = 0;
    std::vector<C> c_;
    std::optional<long> trunc_;
};

template <class C>
struct LogSeries {
    Series<C> regular;
    C log_coefficient{};
    bool has_log() const { return !CoeffOps<C>::is_zero(log_coefficient); }
};

using ExactSeries = Series<Rational>;
using FloatSeries = Series<Complex>;

extern template class Series<Rational>;
extern template class Series<Complex>;

template <class C>
Series<C> inverse(const Series<C>& s, int order = kDefaultOrder) { return s.inverse(order); }
template <class C>
Series<C> sqrt(const Series<C>& s, int order = kDefaultOrder) { return s.sqrt(order); }
template <class C>
Series<C> derivative(const Series<C>& s) { return s.derivative(); }
template <class C>
LogSeries<C> antiderivative(const Series<C>& s) { return s.antiderivative(); }
template <class C>
C residue(const Series<C>& s) { return s.residue(); }

// True when a and b agree on every exponent below both truncations.
template <class C>
bool agree_up_to_truncation(const Series<C>& a, const Series<C>& b) { return (a - b).empty(); }

FloatSeries to_float(const ExactSeries& s);

// CSV rows "exponent,numerator,denominator" (exact) or "exponent,re,im" (float).
void write_csv(std::ostream& out, const ExactSeries& s);
void write_csv(std::ostream& out, const FloatSeries& s);
ExactSeries read_csv_exact(std::istream& in);
FloatSeries read_csv_float(std::istream& in);

}

#endif
