#include "bfmix/heun.hpp"

#include <array>
#include <cmath>

#include <boost/numeric/odeint.hpp>

#include "bfmix/errors.hpp"

namespace bfmix {

namespace {

using State = std::array<Complex, 2>;

struct CSum {
    double value = 0;
    std::optional<Rational> exact;
};

CSum signed_sum(const ModelParams& p)
{
    if (p.c_sum)
        return {to_double(*p.c_sum), *p.c_sum};
    CSum s;
    Rational acc = 0;
    bool exact = true;
    for (const auto& c : p.cj_sq) {
        s.value += std::sqrt(to_double(c));
        if (auto r = rational_sqrt(c))
            acc += *r;
        else
            exact = false;
    }
    if (exact)
        s.exact = acc;
    return s;
}

}

Complex HeunReduction::r(Complex x) const
{
    return -b / x - (a + 0.25) / (x * x) + b / (x * x * x);
}

HeunReduction reduce(const ModelParams& p)
{
    p.validate();
    if (sgn(p.c0_sq) != 0)
        throw Error(ErrorKind::invalid_parameter, "the Heun reduction needs C0 = 0");
    if (p.omegas.empty())
        throw Error(ErrorKind::invalid_parameter, "at least one fermionic mode is required");
    for (const auto& w : p.omegas)
        if (w != p.omegas.front())
            throw Error(ErrorKind::out_of_scope, "unequal w_j give quasi-periodic coefficients; not reducible");

    HeunReduction r;
    const CSum cs = signed_sum(p);
    r.c_sum = cs.value;
    r.c_sum_exact = cs.exact;
    const bool c_zero = cs.exact ? sgn(*cs.exact) == 0 : cs.value == 0.0;
    if (c_zero)
        throw Error(ErrorKind::assumption_violated, "sum of C_j is zero");

    const Rational& wj = p.omegas.front();
    r.omega_exact = rational_sqrt(2 * wj);
    r.omega = std::sqrt(2 * to_double(wj));
    r.a1 = 2 * p.omega0;
    const Rational w_sq = 2 * wj;
    r.a_exact = Rational(-r.a1 / (4 * w_sq));
    r.a = to_double(*r.a_exact);
    const double g = to_double(p.g_bf);
    r.b1 = -2.0 / r.omega * g * r.c_sum;
    r.b = g * r.c_sum / (4 * r.omega * r.omega * r.omega);
    if (r.omega_exact && r.c_sum_exact) {
        const Rational& w = *r.omega_exact;
        r.b1_exact = Rational(-2 / w * p.g_bf * *r.c_sum_exact);
        r.b_exact = Rational(p.g_bf * *r.c_sum_exact / (4 * w * w * w));
        r.b1 = to_double(*r.b1_exact);
        r.b = to_double(*r.b_exact);
    }
    r.b_nonzero = sgn(p.g_bf) != 0;
    return r;
}

IntegrabilityVerdict galois_verdict_case1(const ModelParams& p)
{
    const HeunReduction r = reduce(p);
    IntegrabilityVerdict v;
    v.case_id = CaseId::case1;
    v.parameters = p;
    v.witness = HeunWitness{r.b, r.b_exact};
    if (r.b_nonzero) {
        v.outcome = Outcome::non_integrable;
        v.notes.push_back("B != 0: the Galois group of the double-confluent Heun equation is SL(2,C)");
    } else {
        v.outcome = Outcome::separable;
        v.notes.push_back("B = 0: Euler equation, solvable");
    }
    return v;
}

double transform_consistency(const ModelParams& p, const std::vector<double>& t_grid, const TransformOptions& opt)
{
    namespace ode = boost::numeric::odeint;
    const HeunReduction r = reduce(p);
    const double w = r.omega, a1 = to_double(r.a1), b1 = r.b1;
    const Complex I(0, 1);
    auto rhs = [&](const State& y, State& dy, double t) {
        dy[0] = y[1];
        dy[1] = -(a1 + b1 * std::sinh(2.0 * I * w * t)) * y[0];
    };
    auto solve = [&](State y, double t) {
        if (t != 0.0)
            ode::integrate_adaptive(ode::make_controlled(opt.tol, opt.tol, ode::runge_kutta_dopri5<State>()), rhs,
                                    y, 0.0, t, (t > 0 ? 1 : -1) * 1e-3);
        for (const auto& c : y)
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
                throw Error(ErrorKind::singularity_encountered, "Mathieu-type integration diverged");
        return y;
    };

    double worst = 0;
    const double h = opt.step;
    for (const State& init : {State{1.0, 0.0}, State{0.0, 1.0}}) {
        for (double t : t_grid) {
            const State y0 = solve(init, t);
            // Five-point derivative of the integrated xi' gives xi'' without the ODE.
            const Complex d2 = (-solve(init, t + 2 * h)[1] + 8.0 * solve(init, t + h)[1]
                                - 8.0 * solve(init, t - h)[1] + solve(init, t - 2 * h)[1])
                               / (12 * h);
            const Complex x = std::exp(2.0 * I * w * t);
            const Complex lhs = -std::pow(x, -1.5) * (y0[0] + d2 / (w * w)) / 4.0;
            const Complex rhs_val = r.r(x) * std::sqrt(x) * y0[0];
            const double scale = std::max({std::abs(lhs), std::abs(rhs_val), 1e-300});
            worst = std::max(worst, std::abs(lhs - rhs_val) / scale);
        }
    }
    return worst;
}

}
