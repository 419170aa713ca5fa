#include "bfmix/lame.hpp"

#include <map>

#include "bfmix/errors.hpp"

namespace bfmix {

bool in_fractional_family(const Rational& n)
{
    const Rational m = n + Rational(1, 2);
    if (is_integer(m))
        return false;
    for (int k : {3, 4, 5})
        if (is_integer(m * k))
            return true;
    return false;
}

std::optional<Rational> lame_index(const Rational& g_bf)
{
    auto root = rational_sqrt(1 + 8 * g_bf);
    if (!root)
        return std::nullopt;
    Rational n = (*root - 1) / 2;
    if (sgn(n) < 0)
        return std::nullopt;
    if (is_integer(n) || is_integer(n + Rational(1, 2)) || in_fractional_family(n))
        return n;
    return std::nullopt;
}

Rational lame_offset(const ModelParams& p, const Rational& n, size_t j)
{
    return Rational(2, 3) * p.omega0 * n * (n + 1) - 2 * p.omegas.at(j);
}

namespace {

Rational require_index(const ModelParams& p)
{
    auto n = lame_index(p.g_bf);
    if (!n)
        throw Error(ErrorKind::invalid_parameter, "2 g_BF = " + to_string(Rational(2 * p.g_bf)) + " is not n(n+1) for a supported n");
    if (sgn(*n) == 0)
        throw Error(ErrorKind::invalid_parameter, "degenerate Lame index n(n+1) = 0");
    return *n;
}

// Bivariate polynomial in (alpha, h).
using Poly = std::map<std::pair<int, int>, Rational>;

Poly mul(const Poly& a, const Poly& b)
{
    Poly out;
    for (const auto& [ka, va] : a)
        for (const auto& [kb, vb] : b)
            out[{ka.first + kb.first, ka.second + kb.second}] += va * vb;
    return out;
}

Poly add(Poly a, const Poly& b, const Rational& k = 1)
{
    for (const auto& [kb, vb] : b)
        a[kb] += k * vb;
    return a;
}

Rational at(const Poly& p, int alpha, int h)
{
    auto it = p.find({alpha, h});
    return it == p.end() ? Rational(0) : it->second;
}

}

PCoefficients p_coefficients_paper(const ModelParams& p, size_t j)
{
    const Rational n = require_index(p);
    const Rational N = n * (n + 1);
    const Rational B = lame_offset(p, n, j);
    const Rational& w0 = p.omega0;
    PCoefficients c;
    c.a1 = 4 / N;
    c.a2 = 0;
    c.b1 = -12 * B / N;
    c.b2 = 0;
    c.c1 = 12 * B * B / N - Rational(16, 3) * w0 * w0 * N;
    c.c2 = 4 * N;
    c.d1 = Rational(16, 3) * B * w0 * w0 * N - 4 * B * B * B / N - N * N * (4 * p.c0_sq + Rational(64, 27) * w0 * w0 * w0);
    c.d2 = 8 * N * p.omegas.at(j);
    return c;
}

PCoefficients p_coefficients_derived(const ModelParams& p, size_t j)
{
    const Rational n = require_index(p);
    const Rational N = n * (n + 1);
    const Rational B = lame_offset(p, n, j);
    const Rational& w0 = p.omega0;

    Poly wp{{{1, 0}, 1 / N}, {{0, 0}, -B / N}};
    Poly g2{{{0, 0}, Rational(16, 3) * w0 * w0}, {{0, 1}, Rational(-4)}};
    Poly g3{{{0, 0}, 4 * p.c0_sq + Rational(64, 27) * w0 * w0 * w0}, {{0, 1}, Rational(-8, 3) * w0}};

    Poly cubic = mul(mul(wp, wp), wp);
    Poly rhs = add(add(Poly{}, cubic, 4), mul(g2, wp), -1);
    rhs = add(rhs, g3, -1);
    Poly P;
    for (const auto& [k, v] : rhs)
        P[k] = N * N * v;
    for (const auto& [k, v] : P)
        if (k.second > 1 && sgn(v) != 0)
            throw Error(ErrorKind::verification_failed, "P(alpha, h) is not affine in h");

    PCoefficients c;
    c.a1 = at(P, 3, 0);
    c.a2 = at(P, 3, 1);
    c.b1 = at(P, 2, 0);
    c.b2 = at(P, 2, 1);
    c.c1 = at(P, 1, 0);
    c.c2 = at(P, 1, 1);
    c.d1 = at(P, 0, 0);
    c.d2 = at(P, 0, 1);
    return c;
}

LameData lame_data(const ModelParams& p)
{
    LameData d;
    d.n = require_index(p);
    for (size_t j = 0; j < p.omegas.size(); ++j) {
        d.offsets.push_back(lame_offset(p, d.n, j));
        d.coeffs.push_back(p_coefficients_paper(p, j));
    }
    return d;
}

std::string to_string(Theorem5Case c)
{
    switch (c) {
    case Theorem5Case::case1: return "case1";
    case Theorem5Case::case2_1: return "case2_1";
    case Theorem5Case::case2_2: return "case2_2";
    case Theorem5Case::case2_3: return "case2_3";
    case Theorem5Case::case2_m: return "case2_m";
    case Theorem5Case::case3: return "case3";
    case Theorem5Case::none: return "none";
    }
    return "none";
}

namespace {

// k >= 1 with k(k+1) = target, if integral.
std::optional<Rational> natural_root_kk1(const Rational& target)
{
    auto r = rational_sqrt(1 + 4 * target);
    if (!r)
        return std::nullopt;
    Rational k = (*r - 1) / 2;
    if (!is_integer(k) || sgn(k) <= 0)
        return std::nullopt;
    return k;
}

}

Theorem5Verdict theorem5_check(const PCoefficients& c, const Rational& n)
{
    Theorem5Verdict v;
    auto fail = [&](const std::string& id, const Rational& value) { v.failed_conditions.push_back({id, value}); };

    if (sgn(c.a2) != 0) {
        fail("a2", c.a2);
        return v;
    }
    if (sgn(c.a1) == 0) {
        fail("a1", c.a1);
        return v;
    }

    // 1. a1 = 4/(k(k+1)), k in N
    const auto k = natural_root_kk1(4 / c.a1);
    if (k) {
        v.passed_case = Theorem5Case::case1;
        return v;
    }
    const auto idx_root = rational_sqrt(1 + 16 / c.a1);
    fail("1:n in N", idx_root ? Rational((*idx_root - 1) / 2) : n);

    // 2. a1 = 16/(4m^2 - 1), m in N
    const Rational m_sq = (16 / c.a1 + 1) / 4;
    const auto m_root = rational_sqrt(m_sq);
    if (m_root && is_integer(*m_root) && sgn(*m_root) > 0) {
        const long m = m_root->get_num().get_si();
        v.m = m;
        v.conjecture_conditional = true;
        if (sgn(c.b2) != 0) {
            fail("2:b2", c.b2);
        } else if (m == 1) {
            if (sgn(c.b1) == 0)
                v.passed_case = Theorem5Case::case2_1;
            else
                fail("2.1:b1", c.b1);
        } else if (m == 2) {
            const Rational e = 16 * c.a1 * c.c1 + 3 * c.b1 * c.b1;
            if (sgn(c.c2) == 0 && sgn(e) == 0)
                v.passed_case = Theorem5Case::case2_2;
            if (sgn(c.c2) != 0)
                fail("2.2:c2", c.c2);
            if (sgn(e) != 0)
                fail("2.2:16a1c1+3b1^2", e);
        } else if (m == 3) {
            const Rational e1 = 16 * c.a1 * c.d2 + 11 * c.b1 * c.c2;
            const Rational e2 = 1024 * c.a1 * c.a1 * c.d1 + 704 * c.a1 * c.b1 * c.c1 + 45 * c.b1 * c.b1 * c.b1;
            if (sgn(e1) == 0 && sgn(e2) == 0)
                v.passed_case = Theorem5Case::case2_3;
            if (sgn(e1) != 0)
                fail("2.3:16a1d2+11b1c2", e1);
            if (sgn(e2) != 0)
                fail("2.3:1024a1^2d1+704a1b1c1+45b1^3", e2);
        } else {
            const long r = m % 6;
            v.ambiguous_clause = (r == 3);
            const bool c_clause = (r == 1 || r == 2 || r == 4 || r == 5) && sgn(c.c1) == 0 && sgn(c.c2) == 0;
            const bool d_clause = (m % 2 == 1) && sgn(c.d1) == 0 && sgn(c.d2) == 0;
            if (sgn(c.b1) == 0 && (c_clause || d_clause))
                v.passed_case = Theorem5Case::case2_m;
            if (sgn(c.b1) != 0)
                fail("2.m:b1", c.b1);
            if (!c_clause) {
                if (sgn(c.c1) != 0)
                    fail("2.m:c1", c.c1);
                if (sgn(c.c2) != 0)
                    fail("2.m:c2", c.c2);
            }
            if (!d_clause) {
                if (sgn(c.d1) != 0)
                    fail("2.m:d1", c.d1);
                if (sgn(c.d2) != 0)
                    fail("2.m:d2", c.d2);
            }
        }
        if (v.passed_case != Theorem5Case::none)
            return v;
    } else {
        fail("2:m in N", m_root ? *m_root : n + Rational(1, 2));
    }

    // 3. fractional family
    const auto frac_root = rational_sqrt(1 + 16 / c.a1);
    const bool family = frac_root && in_fractional_family((*frac_root - 1) / 2);
    if (!family) {
        fail("3:n+1/2 in (1/3)Z u (1/4)Z u (1/5)Z minus Z", n + Rational(1, 2));
    } else if (sgn(c.b2) != 0) {
        fail("3:b2", c.b2);
    } else {
        const Rational e1 = c.b1 * c.b1 - 3 * c.a1 * c.c1;
        const Rational e2 = c.c2 * c.b1 - 3 * c.a1 * c.d2;
        const Rational e3 = 2 * c.b1 * c.b1 * c.b1 - 9 * c.a1 * c.b1 * c.c1 + 27 * c.a1 * c.a1 * c.d1;
        if ((sgn(c.c2) == 0 && sgn(e1) == 0) || (sgn(e2) == 0 && sgn(e3) == 0)) {
            v.passed_case = Theorem5Case::case3;
            return v;
        }
        if (sgn(c.c2) != 0)
            fail("3a:c2", c.c2);
        if (sgn(e1) != 0)
            fail("3a:b1^2-3a1c1", e1);
        if (sgn(e2) != 0)
            fail("3b:c2b1-3a1d2", e2);
        if (sgn(e3) != 0)
            fail("3b:2b1^3-9a1b1c1+27a1^2d1", e3);
    }
    return v;
}

Theorem5Verdict theorem5_for_model(const ModelParams& p, size_t j)
{
    const Rational n = require_index(p);
    Theorem5Verdict v = theorem5_check(p_coefficients_paper(p, j), n);
    const Rational m = n + Rational(1, 2);
    if (!is_integer(m))
        return v;
    if (m == 1) {
        // b1 = -12 B/N vanishes iff B = 0.
        v.derived_constraints.push_back({"B_j", Rational(0)});
        ModelParams q = p;
        q.omega0 = 1;
        q.omegas[j] = 0;
        const Rational b_w0 = lame_offset(q, n, j);  // coefficient of w0 in B
        q.omega0 = 0;
        q.omegas[j] = 1;
        const Rational b_wj = lame_offset(q, n, j);
        v.derived_constraints.push_back({"omega_j/omega0", -b_w0 / b_wj});
    } else if (m == 3) {
        // 16 a1 d2 + 11 b1 c2 is linear in (w0, wj); the second condition is
        // then linear in C0^2 at w0 = 1 (homogeneous of degree 3).
        auto e1 = [&](const Rational& w0, const Rational& wj) {
            ModelParams q = p;
            q.omega0 = w0;
            q.omegas[j] = wj;
            const PCoefficients c = p_coefficients_paper(q, j);
            return Rational(16 * c.a1 * c.d2 + 11 * c.b1 * c.c2);
        };
        const Rational alpha = e1(1, 0), beta = e1(0, 1);
        const Rational ratio = -alpha / beta;  // w_j / w0
        auto e2 = [&](const Rational& c0) {
            ModelParams q = p;
            q.omega0 = 1;
            q.omegas[j] = ratio;
            q.c0_sq = c0;
            const PCoefficients c = p_coefficients_paper(q, j);
            return Rational(1024 * c.a1 * c.a1 * c.d1 + 704 * c.a1 * c.b1 * c.c1 + 45 * c.b1 * c.b1 * c.b1);
        };
        const Rational gamma = e2(0), delta = e2(1) - gamma;
        ModelParams q = p;
        q.omega0 = 1;
        q.omegas[j] = ratio;
        v.derived_constraints.push_back({"B_j/omega_j", lame_offset(q, n, j) / ratio});
        v.derived_constraints.push_back({"omega_j/omega0", ratio});
        v.derived_constraints.push_back({"C0^2/omega0^3", -gamma / delta});
    }
    return v;
}

}
