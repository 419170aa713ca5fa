#include "bfmix/rational.hpp"

#include <cctype>
#include <cmath>

#include "bfmix/errors.hpp"

namespace bfmix {

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

}

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.pop_back();
    size_t first = 0;
    while (first < s.size() && std::isspace(static_cast<unsigned char>(s[first])))
        ++first;
    s = s.substr(first);

    std::string body = s;
    bool negative = false;
    if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
        negative = body[0] == '-';
        body = body.substr(1);
    }

    Rational r;
    auto slash = body.find('/');
    auto dot = body.find('.');
    if (slash != std::string::npos) {
        std::string num = body.substr(0, slash), den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw Error(ErrorKind::usage, "malformed rational '" + s + "'");
        mpz_class d(den);
        if (d == 0)
            throw Error(ErrorKind::usage, "zero denominator in '" + s + "'");
        r = Rational(mpz_class(num), d);
        r.canonicalize();
    } else if (dot != std::string::npos) {
        std::string ip = body.substr(0, dot), fp = body.substr(dot + 1);
        if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
            throw Error(ErrorKind::usage, "malformed decimal '" + s + "'");
        mpz_class scale = 1;
        for (size_t i = 0; i < fp.size(); ++i)
            scale *= 10;
        mpz_class num(ip.empty() ? std::string("0") : ip);
        num = num * scale + (fp.empty() ? mpz_class(0) : mpz_class(fp));
        r = Rational(num, scale);
        r.canonicalize();
    } else {
        if (!all_digits(body))
            throw Error(ErrorKind::usage, "malformed number '" + s + "'");
        r = Rational(mpz_class(body));
    }
    return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& r)
{
    return r.get_str();
}

double to_double(const Rational& r)
{
    return r.get_d();
}

std::optional<Rational> rational_sqrt(const Rational& r)
{
    if (sgn(r) < 0)
        return std::nullopt;
    mpz_class n = r.get_num(), d = r.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
        return std::nullopt;
    mpz_class sn, sd;
    mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
    Rational out(sn, sd);
    out.canonicalize();
    return out;
}

bool is_integer(const Rational& r)
{
    return r.get_den() == 1;
}

std::optional<Rational> recognize_rational(double x, long max_den, double tol)
{
    if (!std::isfinite(x))
        return std::nullopt;
    for (long d = 1; d <= max_den; ++d) {
        double n = std::round(x * d);
        if (std::abs(n / d - x) <= tol * std::max(1.0, std::abs(x))) {
            Rational out(static_cast<long>(n), d);
            out.canonicalize();
            return out;
        }
    }
    return std::nullopt;
}

}
