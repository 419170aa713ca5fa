#include "bfmix/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "bfmix/errors.hpp"

namespace bfmix {

namespace {

Rational exponent_of(long idx, int den)
{
    Rational e(idx, den);
    e.canonicalize();
    return e;
}

// Index of e on the lattice (1/den)Z, or nullopt if it is off the lattice.
std::optional<long> index_of(const Rational& e, int den)
{
    Rational x = e * den;
    if (x.get_den() != 1)
        return std::nullopt;
    return x.get_num().get_si();
}

int lcm_den(int a, int b)
{
    return std::lcm(a, b);
}

template <class C>
C scale_coeff(const C& c, const Rational& r)
{
    if constexpr (std::is_same_v<C, Rational>)
        return c * r;
    else
        return c * to_double(r);
}

template <class C>
C coeff_sqrt(const C& c)
{
    if constexpr (std::is_same_v<C, Rational>) {
        auto s = rational_sqrt(c);
        if (!s)
            throw Error(ErrorKind::field_extension_unsupported,
                        "leading coefficient " + to_string(c) + " is not a rational square");
        return *s;
    } else {
        return std::sqrt(c);
    }
}

}

template <class C>
Series<C> Series<C>::constant(const C& value)
{
    Series s;
    s.c_.push_back(value);
    s.normalize();
    return s;
}

template <class C>
Series<C> Series<C>::monomial(const C& value, const Rational& exponent)
{
    Series s;
    s.den_ = static_cast<int>(exponent.get_den().get_si());
    s.lo_ = exponent.get_num().get_si();
    s.c_.push_back(value);
    s.normalize();
    return s;
}

template <class C>
Series<C> Series<C>::big_o(const Rational& exponent)
{
    Series s;
    s.den_ = static_cast<int>(exponent.get_den().get_si());
    s.trunc_ = exponent.get_num().get_si();
    s.normalize();
    return s;
}

template <class C>
Series<C> Series<C>::from_terms(const std::vector<Term>& terms, std::optional<Rational> truncation)
{
    int den = 1;
    for (const auto& [e, c] : terms)
        den = lcm_den(den, static_cast<int>(e.get_den().get_si()));
    if (truncation)
        den = lcm_den(den, static_cast<int>(truncation->get_den().get_si()));
    Series s;
    s.den_ = den;
    if (!terms.empty()) {
        long lo = *index_of(terms.front().first, den), hi = lo;
        for (const auto& [e, c] : terms) {
            long i = *index_of(e, den);
            lo = std::min(lo, i);
            hi = std::max(hi, i);
        }
        s.lo_ = lo;
        s.c_.assign(static_cast<size_t>(hi - lo + 1), C{});
        for (const auto& [e, c] : terms)
            s.c_[static_cast<size_t>(*index_of(e, den) - lo)] += c;
    }
    if (truncation)
        s.trunc_ = *index_of(*truncation, den);
    s.normalize();
    return s;
}

template <class C>
std::optional<Rational> Series<C>::valuation() const
{
    if (c_.empty())
        return std::nullopt;
    return exponent_of(lo_, den_);
}

template <class C>
const C& Series<C>::leading_coefficient() const
{
    if (c_.empty())
        throw Error(ErrorKind::division_by_zero, "series has no known nonzero coefficient");
    return c_.front();
}

template <class C>
std::optional<Rational> Series<C>::truncation() const
{
    if (!trunc_)
        return std::nullopt;
    return exponent_of(*trunc_, den_);
}

template <class C>
C Series<C>::coeff(const Rational& exponent) const
{
    if (trunc_ && exponent >= exponent_of(*trunc_, den_))
        throw Error(ErrorKind::insufficient_order,
                    "coefficient of t^" + to_string(exponent) + " requested but series is known only below t^"
                        + to_string(exponent_of(*trunc_, den_)));
    auto idx = index_of(exponent, den_);
    if (!idx || *idx < lo_ || *idx >= end_index())
        return C{};
    return c_[static_cast<size_t>(*idx - lo_)];
}

template <class C>
std::vector<typename Series<C>::Term> Series<C>::terms() const
{
    std::vector<Term> out;
    for (size_t k = 0; k < c_.size(); ++k)
        if (!CoeffOps<C>::is_zero(c_[k]))
            out.emplace_back(exponent_of(lo_ + static_cast<long>(k), den_), c_[k]);
    return out;
}

template <class C>
Series<C> Series<C>::truncated(const Rational& exponent) const
{
    int d = lcm_den(den_, static_cast<int>(exponent.get_den().get_si()));
    Series s = with_ramification(d);
    long t = *index_of(exponent, d);
    if (!s.trunc_ || t < *s.trunc_)
        s.trunc_ = t;
    s.normalize();
    return s;
}

template <class C>
Series<C> Series<C>::shifted(const Rational& exponent) const
{
    int d = lcm_den(den_, static_cast<int>(exponent.get_den().get_si()));
    Series s = with_ramification(d);
    long k = *index_of(exponent, d);
    s.lo_ += k;
    if (s.trunc_)
        *s.trunc_ += k;
    s.normalize();
    return s;
}

template <class C>
Series<C> Series<C>::scaled(const Rational& factor) const
{
    Series s = *this;
    for (auto& c : s.c_)
        c = scale_coeff(c, factor);
    s.normalize();
    return s;
}

template <class C>
Series<C> Series<C>::pow(int k, int order) const
{
    if (k < 0)
        return inverse(order).pow(-k, order);
    Series out = constant(CoeffOps<C>::lift(Rational(1)));
    Series base = *this;
    while (k > 0) {
        if (k & 1)
            out *= base;
        k >>= 1;
        if (k)
            base = base * base;
    }
    return out;
}

template <class C>
Series<C> Series<C>::inverse(int order) const
{
    if (c_.empty())
        throw Error(ErrorKind::division_by_zero, "inverse of a series with no known nonzero coefficient");
    const long rel = trunc_ ? (*trunc_ - lo_) : static_cast<long>(order) * den_;
    const C inv_lead = CoeffOps<C>::lift(Rational(1)) / c_[0];
    std::vector<C> b(static_cast<size_t>(rel));
    b[0] = inv_lead;
    const long n = static_cast<long>(c_.size());
    for (long k = 1; k < rel; ++k) {
        C acc{};
        for (long i = 1; i <= std::min(k, n - 1); ++i)
            if (!CoeffOps<C>::is_zero(c_[i]))
                acc += c_[i] * b[k - i];
        b[k] = -(acc * inv_lead);
    }
    Series s;
    s.den_ = den_;
    s.lo_ = -lo_;
    s.c_ = std::move(b);
    s.trunc_ = -lo_ + rel;
    s.normalize();
    return s;
}

template <class C>
Series<C> Series<C>::sqrt(int order) const
{
    if (c_.empty())
        throw Error(ErrorKind::division_by_zero, "square root of a series with no known nonzero coefficient");
    Series a = (lo_ % 2 == 0) ? *this : with_ramification(2 * den_);
    const long rel = a.trunc_ ? (*a.trunc_ - a.lo_) : static_cast<long>(order) * a.den_;
    const long n = static_cast<long>(a.c_.size());
    std::vector<C> s(static_cast<size_t>(rel));
    s[0] = coeff_sqrt(a.c_[0]);
    const C inv_two_lead = CoeffOps<C>::lift(Rational(1)) / (s[0] + s[0]);
    for (long k = 1; k < rel; ++k) {
        C acc = k < n ? a.c_[k] : C{};
        for (long i = 1; i < k; ++i)
            acc -= s[i] * s[k - i];
        s[k] = acc * inv_two_lead;
    }
    Series out;
    out.den_ = a.den_;
    out.lo_ = a.lo_ / 2;
    out.c_ = std::move(s);
    out.trunc_ = a.lo_ / 2 + rel;
    out.normalize();
    return out;
}

template <class C>
Series<C> Series<C>::derivative() const
{
    Series s;
    s.den_ = den_;
    s.lo_ = lo_ - den_;
    s.c_.resize(c_.size());
    for (size_t k = 0; k < c_.size(); ++k)
        s.c_[k] = scale_coeff(c_[k], exponent_of(lo_ + static_cast<long>(k), den_));
    if (trunc_)
        s.trunc_ = *trunc_ - den_;
    s.normalize();
    return s;
}

template <class C>
LogSeries<C> Series<C>::antiderivative() const
{
    if (trunc_ && *trunc_ <= -den_)
        throw Error(ErrorKind::insufficient_order,
                    "antiderivative needs the t^-1 coefficient but series is known only below t^"
                        + to_string(exponent_of(*trunc_, den_)));
    LogSeries<C> out;
    Series s;
    s.den_ = den_;
    s.lo_ = lo_ + den_;
    s.c_.resize(c_.size());
    for (size_t k = 0; k < c_.size(); ++k) {
        long idx = lo_ + static_cast<long>(k);
        if (idx == -den_) {
            out.log_coefficient = c_[k];
            continue;
        }
        s.c_[k] = scale_coeff(c_[k], Rational(1) / exponent_of(idx + den_, den_));
    }
    if (trunc_)
        s.trunc_ = *trunc_ + den_;
    s.normalize();
    out.regular = std::move(s);
    return out;
}

template <class C>
C Series<C>::residue() const
{
    if (trunc_ && *trunc_ <= -den_)
        throw Error(ErrorKind::insufficient_order,
                    "residue requested but series is known only below t^" + to_string(exponent_of(*trunc_, den_)));
    long idx = -den_;
    if (idx < lo_ || idx >= end_index())
        return C{};
    return c_[static_cast<size_t>(idx - lo_)];
}

template <class C>
Series<C> Series<C>::operator-() const
{
    Series s = *this;
    for (auto& c : s.c_)
        c = -c;
    return s;
}

template <class C>
Series<C>& Series<C>::operator+=(const Series& o)
{
    int d = lcm_den(den_, o.den_);
    Series a = with_ramification(d), b = o.with_ramification(d);
    if (b.c_.empty()) {
        a.c_.swap(c_);
        lo_ = a.lo_;
    } else if (a.c_.empty()) {
        c_ = b.c_;
        lo_ = b.lo_;
    } else {
        long lo = std::min(a.lo_, b.lo_), hi = std::max(a.end_index(), b.end_index());
        std::vector<C> c(static_cast<size_t>(hi - lo));
        for (size_t k = 0; k < a.c_.size(); ++k)
            c[a.lo_ - lo + k] = std::move(a.c_[k]);
        for (size_t k = 0; k < b.c_.size(); ++k)
            c[b.lo_ - lo + k] += b.c_[k];
        c_.swap(c);
        lo_ = lo;
    }
    den_ = d;
    if (a.trunc_ && b.trunc_)
        trunc_ = std::min(*a.trunc_, *b.trunc_);
    else
        trunc_ = a.trunc_ ? a.trunc_ : b.trunc_;
    normalize();
    return *this;
}

template <class C>
Series<C>& Series<C>::operator-=(const Series& o)
{
    return *this += -o;
}

template <class C>
Series<C>& Series<C>::operator*=(const Series& o)
{
    *this = multiply(*this, o);
    return *this;
}

template <class C>
Series<C>& Series<C>::operator*=(const C& k)
{
    for (auto& c : c_)
        c *= k;
    normalize();
    return *this;
}

template <class C>
long Series<C>::low_index() const
{
    return c_.empty() ? *trunc_ : lo_;
}

template <class C>
Series<C> Series<C>::multiply(const Series& x, const Series& y)
{
    if ((x.c_.empty() && x.exact()) || (y.c_.empty() && y.exact()))
        return Series();
    int d = lcm_den(x.den_, y.den_);
    Series a = x.with_ramification(d), b = y.with_ramification(d);
    std::optional<long> trunc;
    if (a.trunc_)
        trunc = *a.trunc_ + b.low_index();
    if (b.trunc_) {
        long t = *b.trunc_ + a.low_index();
        trunc = trunc ? std::min(*trunc, t) : t;
    }
    Series s;
    s.den_ = d;
    s.trunc_ = trunc;
    if (!a.c_.empty() && !b.c_.empty()) {
        s.lo_ = a.lo_ + b.lo_;
        long len = static_cast<long>(a.c_.size() + b.c_.size() - 1);
        if (trunc)
            len = std::max(0L, std::min(len, *trunc - s.lo_));
        s.c_.assign(static_cast<size_t>(len), C{});
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (CoeffOps<C>::is_zero(a.c_[i]))
                continue;
            for (size_t j = 0; j < b.c_.size() && static_cast<long>(i + j) < len; ++j)
                if (!CoeffOps<C>::is_zero(b.c_[j]))
                    s.c_[i + j] += a.c_[i] * b.c_[j];
        }
    }
    s.normalize();
    return s;
}

template <class C>
Series<C> Series<C>::with_ramification(int d) const
{
    if (d == den_)
        return *this;
    const long f = d / den_;
    Series s;
    s.den_ = d;
    s.lo_ = lo_ * f;
    if (!c_.empty()) {
        s.c_.assign((c_.size() - 1) * static_cast<size_t>(f) + 1, C{});
        for (size_t k = 0; k < c_.size(); ++k)
            s.c_[k * static_cast<size_t>(f)] = c_[k];
    }
    if (trunc_)
        s.trunc_ = *trunc_ * f;
    return s;
}

template <class C>
void Series<C>::normalize()
{
    if (trunc_) {
        long keep = std::max(0L, *trunc_ - lo_);
        if (static_cast<long>(c_.size()) > keep)
            c_.resize(static_cast<size_t>(keep));
    }
    while (!c_.empty() && CoeffOps<C>::is_zero(c_.back()))
        c_.pop_back();
    size_t lead = 0;
    while (lead < c_.size() && CoeffOps<C>::is_zero(c_[lead]))
        ++lead;
    if (lead) {
        c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
        lo_ += static_cast<long>(lead);
    }
    if (c_.empty())
        lo_ = 0;

    long g = den_;
    for (size_t k = 0; k < c_.size() && g > 1; ++k)
        if (!CoeffOps<C>::is_zero(c_[k]))
            g = std::gcd(g, lo_ + static_cast<long>(k));
    if (trunc_)
        g = std::gcd(g, *trunc_);
    if (g > 1) {
        std::vector<C> c;
        if (!c_.empty()) {
            c.reserve(c_.size() / static_cast<size_t>(g) + 1);
            for (size_t k = 0; k < c_.size(); k += static_cast<size_t>(g))
                c.push_back(std::move(c_[k]));
        }
        c_.swap(c);
        lo_ /= g;
        if (trunc_)
            *trunc_ /= g;
        den_ /= static_cast<int>(g);
    }
}

template <class C>
bool Series<C>::operator==(const Series& o) const
{
    return den_ == o.den_ && lo_ == o.lo_ && trunc_ == o.trunc_ && c_ == o.c_;
}

template <class C>
Complex Series<C>::evaluate(Complex t) const
{
    Complex sum = 0.0;
    const Complex step = std::pow(t, 1.0 / den_);
    Complex term = std::pow(step, static_cast<double>(lo_));
    for (size_t k = 0; k < c_.size(); ++k) {
        if (!CoeffOps<C>::is_zero(c_[k])) {
            if constexpr (std::is_same_v<C, Rational>)
                sum += to_double(c_[k]) * term;
            else
                sum += c_[k] * term;
        }
        term *= step;
    }
    return sum;
}

template <class C>
std::string Series<C>::str() const
{
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms()) {
        if (!first)
            out << " + ";
        first = false;
        if constexpr (std::is_same_v<C, Rational>)
            out << "(" << c.get_str() << ")";
        else
            out << c;
        out << "*t^" << e.get_str();
    }
    if (trunc_) {
        out << (first ? "" : " + ") << "O(t^" << exponent_of(*trunc_, den_).get_str() << ")";
        first = false;
    }
    if (first)
        out << "0";
    return out.str();
}

template class Series<Rational>;
template class Series<Complex>;

FloatSeries to_float(const ExactSeries& s)
{
    std::vector<FloatSeries::Term> terms;
    for (const auto& [e, c] : s.terms())
        terms.emplace_back(e, Complex(to_double(c), 0.0));
    return FloatSeries::from_terms(terms, s.truncation());
}

void write_csv(std::ostream& out, const ExactSeries& s)
{
    for (const auto& [e, c] : s.terms())
        out << e.get_str() << ',' << c.get_num().get_str() << ',' << c.get_den().get_str() << '\n';
}

void write_csv(std::ostream& out, const FloatSeries& s)
{
    auto old = out.precision(17);
    for (const auto& [e, c] : s.terms())
        out << e.get_str() << ',' << c.real() << ',' << c.imag() << '\n';
    out.precision(old);
}

namespace {

std::vector<std::string> split_row(const std::string& line)
{
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
        cells.push_back(cell);
    return cells;
}

}

ExactSeries read_csv_exact(std::istream& in)
{
    std::vector<ExactSeries::Term> terms;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        auto cells = split_row(line);
        if (cells.size() != 3)
            throw Error(ErrorKind::usage, "bad series row '" + line + "'");
        Rational c{mpz_class(cells[1]), mpz_class(cells[2])};
        c.canonicalize();
        terms.emplace_back(parse_rational(cells[0]), c);
    }
    return ExactSeries::from_terms(terms);
}

FloatSeries read_csv_float(std::istream& in)
{
    std::vector<FloatSeries::Term> terms;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        auto cells = split_row(line);
        if (cells.size() != 3)
            throw Error(ErrorKind::usage, "bad series row '" + line + "'");
        terms.emplace_back(parse_rational(cells[0]), Complex(std::stod(cells[1]), std::stod(cells[2])));
    }
    return FloatSeries::from_terms(terms);
}

}
