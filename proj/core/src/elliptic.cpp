#include "bfmix/elliptic.hpp"

#include <array>
#include <cmath>
#include <limits>

#include <boost/numeric/odeint.hpp>

#include "bfmix/errors.hpp"

namespace bfmix {

EllipticData invariants_from_energy(const Rational& omega0, const Rational& c0_sq, const Rational& h)
{
    if (sgn(omega0) <= 0)
        throw Error(ErrorKind::invalid_parameter, "omega0 must be positive");
    EllipticData e;
    e.omega0 = omega0;
    e.c0_sq = c0_sq;
    e.h = h;
    e.g2 = Rational(16, 3) * omega0 * omega0 - 4 * h;
    e.g3 = 4 * c0_sq - Rational(8, 3) * omega0 * h + Rational(64, 27) * omega0 * omega0 * omega0;
    e.discriminant = e.g2 * e.g2 * e.g2 - 27 * e.g3 * e.g3;
    if (sgn(e.discriminant) == 0)
        throw Error(ErrorKind::degenerate_invariants,
                    "g2^3 - 27 g3^2 = 0 at g2 = " + to_string(e.g2) + ", g3 = " + to_string(e.g3));
    return e;
}

ExactSeries wp_laurent(const Rational& g2, const Rational& g3, int order)
{
    // wp = 1/t^2 + sum c_k t^(2k); c1 = g2/20, c2 = g3/28,
    // c_k = 3/((2k+3)(k-2)) sum_{m=1}^{k-2} c_m c_{k-1-m}.
    const int top = order - 2;
    std::vector<Rational> c(1, Rational(0));
    for (int k = 1; 2 * k < top; ++k) {
        Rational ck;
        if (k == 1)
            ck = g2 / 20;
        else if (k == 2)
            ck = g3 / 28;
        else {
            Rational acc = 0;
            for (int m = 1; m <= k - 2; ++m)
                acc += c[m] * c[k - 1 - m];
            ck = Rational(3, (2 * k + 3) * (k - 2)) * acc;
        }
        c.push_back(ck);
    }
    std::vector<ExactSeries::Term> terms;
    terms.emplace_back(Rational(-2), Rational(1));
    for (size_t k = 1; k < c.size(); ++k)
        terms.emplace_back(Rational(2 * static_cast<long>(k)), c[k]);
    return ExactSeries::from_terms(terms, Rational(top));
}

ExactSeries wp_laurent(const EllipticData& e, int order)
{
    return wp_laurent(e.g2, e.g3, order);
}

namespace {

using State = std::array<Complex, 2>;

struct RaySystem {
    Complex dir;
    Complex half_g2;
    void operator()(const State& x, State& dxds, double) const
    {
        dxds[0] = dir * x[1];
        dxds[1] = dir * (6.0 * x[0] * x[0] - half_g2);
    }
};

struct SeriesSum {
    FloatSeries wp, dwp;
};

SeriesSum series_for(const EllipticData& e, int order)
{
    ExactSeries s = wp_laurent(e, order);
    return {to_float(s), to_float(s.derivative())};
}

// Root test on the last nonzero coefficients: a lower estimate of the
// distance to the nearest lattice pole.
double convergence_radius(const FloatSeries& wp)
{
    const auto terms = wp.terms();
    double r = std::numeric_limits<double>::infinity();
    int used = 0;
    for (auto it = terms.rbegin(); it != terms.rend() && used < 4; ++it) {
        const double k = to_double(it->first);
        const double c = std::abs(it->second);
        if (k < 8 || c == 0.0)
            continue;
        r = std::min(r, std::pow(c, -1.0 / k));
        ++used;
    }
    return r;
}

}

std::vector<WpValue> wp_along_ray(const EllipticData& e, Complex t, int samples, const WpOptions& opt)
{
    namespace ode = boost::numeric::odeint;
    const double r = std::abs(t);
    if (r == 0.0)
        throw Error(ErrorKind::near_pole, "wp evaluated at t = 0");
    if (samples < 1)
        samples = 1;
    const SeriesSum sum = series_for(e, opt.series_order);
    const Complex dir = t / r;
    std::vector<WpValue> out;
    out.reserve(static_cast<size_t>(samples));

    const double seed = opt.seed_radius > 0 ? opt.seed_radius : 0.4 * convergence_radius(sum.wp);
    double s = std::min(seed, r);
    Complex ts = dir * s;
    State x{sum.wp.evaluate(ts), sum.dwp.evaluate(ts)};

    auto stepper = ode::make_controlled(opt.tolerance, opt.tolerance, ode::runge_kutta_dopri5<State>());
    RaySystem sys{dir, Complex(to_double(e.g2) / 2.0, 0.0)};
    double dt = std::min(1e-3, s);

    for (int k = 1; k <= samples; ++k) {
        const double target = r * k / samples;
        Complex tk = dir * target;
        if (target <= seed) {
            out.push_back({tk, sum.wp.evaluate(tk), sum.dwp.evaluate(tk)});
            continue;
        }
        while (s < target) {
            double step = std::min(dt, target - s);
            double trial = step;
            auto res = stepper.try_step(sys, x, s, trial);
            if (res == ode::success) {
                dt = trial;
            } else {
                dt = trial;
                if (dt < 1e-14 * std::max(1.0, r))
                    throw Error(ErrorKind::near_pole, "step size underflow while continuing wp");
            }
            if (std::abs(x[0]) > opt.pole_guard)
                throw Error(ErrorKind::near_pole, "wp exceeds the overflow guard near t = "
                                                      + std::to_string((dir * s).real()) + std::string(" + ")
                                                      + std::to_string((dir * s).imag()) + "i");
        }
        out.push_back({tk, x[0], x[1]});
    }
    return out;
}

WpValue wp_numeric(const EllipticData& e, Complex t, const WpOptions& opt)
{
    return wp_along_ray(e, t, 1, opt).back();
}

}
