#include "bfmix/melnikov.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "bfmix/errors.hpp"

namespace bfmix {

namespace {

constexpr double pi = std::numbers::pi;
const Complex I(0, 1);

double period(const MelnikovSetup& s)
{
    return 2 * pi / s.theta;
}

double im_d(const MelnikovSetup& s, double t0)
{
    return melnikov_contour(s, t0, s.contour_radius, s.contour_points).imag();
}

// Upper bound for |d| used as the absolute scale of tolerances.
double bracket_scale(const MelnikovSetup& s)
{
    const double k = std::sqrt(3 * s.separatrix.a);
    const double r = s.contour_radius;
    const double pole = 6 * s.separatrix.a * k / std::pow(std::sinh(k * r), 3) * std::cosh(k * r);
    const double factor = s.action / (2 * to_double(s.omega1)) + s.amplitude * std::cosh(s.theta * r);
    return 2 * pi * r * pole * factor;
}

}

double action_lower_bound(const Rational& omega1, const Rational& c1_sq)
{
    return std::sqrt(2 * to_double(c1_sq) * to_double(omega1));
}

MelnikovSetup setup(const Rational& omega0, const Rational& omega1, const Rational& c0_sq, const Rational& c1_sq,
                    double action)
{
    if (sgn(omega0) <= 0 || sgn(omega1) <= 0)
        throw Error(ErrorKind::invalid_parameter, "frequencies must be positive");
    if (sgn(c0_sq) < 0 || sgn(c1_sq) < 0)
        throw Error(ErrorKind::invalid_parameter, "C0^2 and C1^2 must be non-negative");
    MelnikovSetup s;
    s.omega0 = omega0;
    s.omega1 = omega1;
    s.c0_sq = c0_sq;
    s.c1_sq = c1_sq;
    s.action = action;
    const double w1 = to_double(omega1);
    const double amp_sq = action * action / (4 * w1 * w1) - to_double(c1_sq) / (2 * w1);
    if (!(action > 0) || amp_sq < -1e-14 * std::max(1.0, action * action))
        throw Error(ErrorKind::invalid_action, "action " + std::to_string(action) + " is below the bound "
                                                   + std::to_string(action_lower_bound(omega1, c1_sq)));
    s.amplitude = std::sqrt(std::max(0.0, amp_sq));
    s.theta = 2 * std::sqrt(2 * w1);
    s.separatrix = separatrix_parameters(omega0, c0_sq);
    s.contour_radius = std::min(0.5, 0.5 * pi / std::sqrt(3 * s.separatrix.a));
    return s;
}

Complex poisson_bracket_H0H1(const MelnikovSetup& s, Complex t, double t0)
{
    const double a = s.separatrix.a, k = std::sqrt(3 * a);
    const Complex sh = std::sinh(k * t);
    if (std::abs(sh) < 1e-12)
        throw Error(ErrorKind::near_pole, "bracket evaluated at the separatrix pole");
    const Complex u_dot = -6 * a * k * std::cosh(k * t) / (sh * sh * sh);
    const double w1 = to_double(s.omega1);
    return u_dot * (s.action / (2 * w1) - s.amplitude * std::sin(s.theta * (t - t0)));
}

Complex melnikov_contour(const MelnikovSetup& s, double t0, double radius, int points)
{
    Complex sum = 0.0;
    for (int m = 0; m < points; ++m) {
        const Complex t = std::polar(radius, 2 * pi * m / points);
        sum += poisson_bracket_H0H1(s, t, t0) * I * t;
    }
    return sum * (2 * pi / points);
}

Complex melnikov_numeric(const MelnikovSetup& s, double t0)
{
    const Complex d1 = melnikov_contour(s, t0, s.contour_radius, s.contour_points);
    const Complex d2 = melnikov_contour(s, t0, 0.75 * s.contour_radius, 2 * s.contour_points);
    const double tol = 1e-6 * std::max(std::abs(d1), std::abs(d2)) + 1e-12 * bracket_scale(s);
    if (std::abs(d1 - d2) > tol)
        throw Error(ErrorKind::contour_unreliable, "contour integrals at two radii disagree");
    return d1;
}

Complex closed_form_prefactor(const MelnikovSetup& s)
{
    return 12.0 * pi * I * s.separatrix.a * std::sqrt(2 * to_double(s.omega1)) * s.amplitude;
}

Complex derived_prefactor(const MelnikovSetup& s)
{
    return 16.0 * pi * I * to_double(s.omega1) * s.amplitude;
}

Complex melnikov_closed_form(const MelnikovSetup& s, double t0)
{
    return closed_form_prefactor(s) * std::sin(s.theta * t0);
}

SineFit fit_sine(const MelnikovSetup& s, int samples)
{
    SineFit f;
    f.samples = samples;
    std::vector<double> t0(samples), sn(samples);
    std::vector<Complex> d(samples);
    double ss = 0;
    Complex sd = 0.0;
    for (int k = 0; k < samples; ++k) {
        t0[k] = period(s) * (k + 0.5) / samples;
        sn[k] = std::sin(s.theta * t0[k]);
        d[k] = melnikov_numeric(s, t0[k]);
        ss += sn[k] * sn[k];
        sd += sn[k] * d[k];
    }
    f.amplitude = sd / ss;
    double worst = 0;
    for (int k = 0; k < samples; ++k)
        worst = std::max(worst, std::abs(d[k] - f.amplitude * sn[k]));
    const double amp = std::abs(f.amplitude);
    f.residual = amp > 0 ? worst / amp : worst;
    return f;
}

ZeroScan find_simple_zeros(const MelnikovSetup& s, double t0_min, double t0_max, int samples)
{
    if (t0_max <= t0_min)
        t0_max = t0_min + period(s);
    samples = std::max(samples, 8);
    ZeroScan out;
    const double scale = bracket_scale(s);
    const double tiny = 1e-11 * scale;
    std::vector<double> t(samples + 1), f(samples + 1);
    double fmax = 0;
    for (int k = 0; k <= samples; ++k) {
        t[k] = t0_min + (t0_max - t0_min) * k / samples;
        f[k] = im_d(s, t[k]);
        fmax = std::max(fmax, std::abs(f[k]));
    }
    if (fmax <= tiny) {
        out.degenerate = true;
        return out;
    }
    const double h = 1e-5 * period(s);
    auto slope = [&](double x) { return (im_d(s, x + h) - im_d(s, x - h)) / (2 * h); };
    auto push = [&](double z) {
        for (int it = 0; it < 3; ++it) {
            const double d = slope(z);
            if (d == 0.0)
                break;
            z -= im_d(s, z) / d;
        }
        if (z < t0_min - 1e-9 || z > t0_max + 1e-9)
            return;
        for (const auto& e : out.zeros)
            if (std::abs(e.t0 - z) < 1e-9)
                return;
        const double d = std::abs(slope(z));
        if (d > 1e-8 * fmax / period(s))
            out.zeros.push_back({z, d});
    };
    for (int k = 0; k <= samples; ++k) {
        if (std::abs(f[k]) <= tiny) {
            push(t[k]);
            continue;
        }
        if (k == samples || std::abs(f[k + 1]) <= tiny || (f[k] > 0) == (f[k + 1] > 0))
            continue;
        double lo = t[k], hi = t[k + 1], flo = f[k];
        for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = im_d(s, mid);
            if ((fm > 0) == (flo > 0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        push(0.5 * (lo + hi));
    }
    std::sort(out.zeros.begin(), out.zeros.end(), [](const auto& x, const auto& y) { return x.t0 < y.t0; });
    return out;
}

double delta_closed_form(const MelnikovSetup& s, double t)
{
    const double a = s.separatrix.a, k = std::sqrt(3 * a), w0 = to_double(s.omega0);
    const double sh = std::sinh(k * t), ch = std::cosh(k * t);
    return 1 / std::pow(3 * a, 3)
           * ((2 * w0 + 3 * a) / (12 * k) * sh * ch * ch * ch + (10 * w0 + 27 * a) / (8 * k) * sh * ch
              + (2 * w0 + 12 * a) / (3 * k) * std::tanh(k * t) + (26 * w0 + 99 * a) / 8 * t);
}

DeltaCheck delta_quadrature_check(const MelnikovSetup& s, const std::vector<double>& t_samples)
{
    DeltaCheck c;
    for (double t : t_samples) {
        const double h = 1e-4 * std::max(1.0, std::abs(t));
        const double lhs = (-delta_closed_form(s, t + 2 * h) + 8 * delta_closed_form(s, t + h)
                            - 8 * delta_closed_form(s, t - h) + delta_closed_form(s, t - 2 * h))
                           / (12 * h);
        const SeparatrixSample x = separatrix_case3(s.omega0, s.c0_sq, s.separatrix, Complex(t, 0));
        const double rhs = std::real(1.0 / (x.p0 * x.p0));
        c.max_defect = std::max(c.max_defect, std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300));
    }
    c.inconsistent = c.max_defect > 1e-4;
    return c;
}

std::vector<SweepRow> sweep_t0(const MelnikovSetup& s, double t0_min, double t0_max, int samples)
{
    std::vector<SweepRow> rows;
    for (int k = 0; k < samples; ++k) {
        const double t0 = samples == 1 ? t0_min : t0_min + (t0_max - t0_min) * k / (samples - 1);
        rows.push_back({t0, melnikov_numeric(s, t0), melnikov_closed_form(s, t0)});
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows)
{
    out.precision(17);
    out << "t0,d_num_re,d_num_im,d_closed_re,d_closed_im\n";
    for (const auto& r : rows)
        out << r.t0 << ',' << r.numeric.real() << ',' << r.numeric.imag() << ',' << r.closed.real() << ','
            << r.closed.imag() << '\n';
}

Case3Analysis analyze_case3(const ModelParams& p, double action, double t0_min, double t0_max, int samples)
{
    p.validate();
    if (p.omegas.size() != 1 || sgn(p.c0_sq) == 0 || sgn(p.cj_sq.front()) == 0)
        throw Error(ErrorKind::invalid_parameter, "case 3 needs one mode with C0 != 0 and C1 != 0");
    Case3Analysis a;
    a.setup = setup(p.omega0, p.omegas.front(), p.c0_sq, p.cj_sq.front(), action);
    a.verdict.case_id = CaseId::case3;
    a.verdict.parameters = p;
    if (sgn(p.g_bf) == 0) {
        a.verdict.outcome = Outcome::separable;
        a.verdict.notes.push_back("g_BF = 0: the Hamiltonian separates");
        return a;
    }
    const double probe = 0.3 * period(a.setup);
    const Complex d1 = melnikov_contour(a.setup, probe, a.setup.contour_radius, a.setup.contour_points);
    const Complex d2 = melnikov_contour(a.setup, probe, 0.75 * a.setup.contour_radius, 2 * a.setup.contour_points);
    a.radius_defect = std::abs(d1 - d2) / std::max({std::abs(d1), std::abs(d2), 1e-300});
    a.fit = fit_sine(a.setup);
    a.scan = find_simple_zeros(a.setup, t0_min, t0_max, samples);
    if (a.scan.degenerate || a.scan.zeros.empty()) {
        a.verdict.outcome = Outcome::unsupported;
        a.verdict.notes.push_back(a.scan.degenerate ? "Melnikov function vanishes identically at this action"
                                                    : "no simple zero found in the scanned range");
        return a;
    }
    a.verdict.outcome = Outcome::non_integrable;
    a.verdict.witness = MelnikovWitness{a.fit.amplitude, closed_form_prefactor(a.setup), a.scan.zeros};
    a.verdict.notes.push_back("simple zeros of the Melnikov function: transversal separatrix splitting");
    return a;
}

}
