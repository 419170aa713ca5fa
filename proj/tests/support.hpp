#ifndef BFMIX_TESTS_SUPPORT_HPP
#define BFMIX_TESTS_SUPPORT_HPP

#include <array>
#include <random>
#include <vector>

#include "bfmix/laurent.hpp"
#include "bfmix/model.hpp"
#include "bfmix/variational.hpp"

namespace bfmix::testing {

class Rng {
public:
    explicit Rng(unsigned long seed) : gen_(seed) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }
    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }

    // p/q with |p| <= num, 1 <= q <= den.
    Rational rational(long num = 20, long den = 12)
    {
        Rational r(integer(-num, num), integer(1, den));
        r.canonicalize();
        return r;
    }

    Rational positive(long num = 20, long den = 12)
    {
        Rational r(integer(1, num), integer(1, den));
        r.canonicalize();
        return r;
    }

    // Random series on exponents [lo, hi] in steps of 1/den, optionally truncated above hi.
    ExactSeries series(long lo, long hi, int den = 1, bool truncated = true)
    {
        std::vector<ExactSeries::Term> terms;
        for (long k = lo * den; k <= hi * den; ++k)
            if (integer(0, 3) != 0)
                terms.emplace_back(Rational(k, den), rational());
        if (terms.empty())
            terms.emplace_back(Rational(lo), Rational(1));
        return ExactSeries::from_terms(terms, truncated ? std::optional<Rational>(Rational(hi + 1))
                                                        : std::nullopt);
    }

    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

// Polynomial in epsilon up to eps^3 with series coefficients, closed under
// + - * / so the model's forces can be expanded formally.
struct Jet {
    std::array<ExactSeries, 4> c;
    static inline int order = 12;

    static Jet constant(const ExactSeries& s)
    {
        Jet j;
        j.c[0] = s;
        return j;
    }

    friend Jet operator+(const Jet& a, const Jet& b)
    {
        Jet r;
        for (int k = 0; k < 4; ++k)
            r.c[k] = a.c[k] + b.c[k];
        return r;
    }

    friend Jet operator-(const Jet& a, const Jet& b)
    {
        Jet r;
        for (int k = 0; k < 4; ++k)
            r.c[k] = a.c[k] - b.c[k];
        return r;
    }

    friend Jet operator*(const Jet& a, const Jet& b)
    {
        Jet r;
        for (int i = 0; i < 4; ++i)
            for (int k = 0; i + k < 4; ++k)
                if (!a.c[i].empty() && !b.c[k].empty())
                    r.c[i + k] += a.c[i] * b.c[k];
        return r;
    }

    Jet inverse() const
    {
        // 1/(c0 + x) = u - u x u + u x u x u - ..., u = 1/c0, x of order eps.
        const ExactSeries u = c[0].inverse(order);
        Jet x = *this;
        x.c[0] = ExactSeries();
        Jet ux = Jet::constant(u) * x;
        Jet term = Jet::constant(u);
        Jet sum = term;
        for (int k = 1; k < 4; ++k) {
            term = Jet::constant(ExactSeries()) - ux * term;
            sum = sum + term;
        }
        return sum;
    }

    friend Jet operator/(const Jet& a, const Jet& b) { return a * b.inverse(); }
};

// Forcing terms read off the epsilon expansion of the equations of motion
// along q = qbar + eps xi + eps^2 xi2 (xi2 = 0 when only VE2 is wanted).
inline std::vector<ExactSeries> forcing_by_expansion(const ModelParams& p, const ExactSeries& qbar, int k,
                                                     const std::vector<ExactSeries>& xi,
                                                     const std::vector<ExactSeries>* xi2)
{
    auto lift = [](const Rational& r) { return Jet::constant(ExactSeries::constant(r)); };
    Jet q0 = Jet::constant(qbar);
    q0.c[1] = xi[0];
    if (k == 3)
        q0.c[2] = (*xi2)[0];
    std::vector<Jet> qs;
    for (size_t j = 1; j < xi.size(); ++j) {
        Jet q;
        q.c[1] = xi[j];
        if (k == 3)
            q.c[2] = (*xi2)[j];
        qs.push_back(q);
    }
    Jet f0;
    std::vector<Jet> fs;
    forces(p, q0, qs, f0, fs, lift);
    std::vector<ExactSeries> out{f0.c[k]};
    for (const auto& f : fs)
        out.push_back(f.c[k]);
    return out;
}

inline ModelParams case2_params(const Rational& g, const Rational& omega0, const std::vector<Rational>& omegas,
                                const Rational& c0_sq)
{
    ModelParams p;
    p.omega0 = omega0;
    p.omegas = omegas;
    p.c0_sq = c0_sq;
    p.cj_sq.assign(omegas.size(), Rational(0));
    p.g_bf = g;
    return p;
}

template <class C>
Series<C> wronskian(const Series<C>& a, const Series<C>& b)
{
    return a * b.derivative() - a.derivative() * b;
}

}

#endif
