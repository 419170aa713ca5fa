#include "bfmix/model.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <Eigen/Eigenvalues>
#include <boost/numeric/odeint.hpp>

#include "bfmix/errors.hpp"

namespace bfmix {

namespace {

Complex lift_c(const Rational& r)
{
    return Complex(to_double(r), 0.0);
}

}

void ModelParams::validate() const
{
    if (sgn(omega0) <= 0)
        throw Error(ErrorKind::invalid_parameter, "omega0 must be positive");
    if (omegas.empty())
        throw Error(ErrorKind::invalid_parameter, "at least one fermionic mode is required");
    if (cj_sq.size() != omegas.size())
        throw Error(ErrorKind::invalid_parameter, "omegas and Cj^2 must have the same length");
    for (const auto& w : omegas)
        if (sgn(w) <= 0)
            throw Error(ErrorKind::invalid_parameter, "omega_j must be positive");
    if (sgn(c0_sq) < 0)
        throw Error(ErrorKind::invalid_parameter, "C0^2 must be non-negative");
    for (const auto& c : cj_sq)
        if (sgn(c) < 0)
            throw Error(ErrorKind::invalid_parameter, "Cj^2 must be non-negative");
}

ModelParams normalize(const RawParams& raw)
{
    if (sgn(raw.g_bb) <= 0)
        throw Error(ErrorKind::invalid_parameter, "g_BB must be positive");
    if (sgn(raw.m_b) <= 0 || sgn(raw.m_f) <= 0)
        throw Error(ErrorKind::invalid_parameter, "masses must be positive");
    if (raw.cj_sq.size() != raw.omegas.size())
        throw Error(ErrorKind::invalid_parameter, "omegas and Cj^2 must have the same length");
    // alpha^2 = m_F, beta^2 = m_B, gamma^2 = 1/(m_B^2 g_BB)
    const Rational gamma_sq = 1 / (raw.m_b * raw.m_b * raw.g_bb);
    ModelParams p;
    p.g_bf = raw.g_bf * raw.m_f * gamma_sq * raw.m_b;
    p.omega0 = raw.omega0 * gamma_sq * raw.m_b;
    p.c0_sq = raw.c0_sq * gamma_sq / (raw.m_b * raw.m_b);
    for (size_t j = 0; j < raw.omegas.size(); ++j) {
        p.omegas.push_back(raw.omegas[j] * gamma_sq * raw.m_f);
        p.cj_sq.push_back(raw.cj_sq[j] * gamma_sq / (raw.m_f * raw.m_f));
    }
    p.validate();
    return p;
}

Complex hamiltonian(const ModelParams& p, const PhaseState& s)
{
    const Complex g = lift_c(p.g_bf);
    Complex sum_sq = 0.0, h = 0.5 * s.p0 * s.p0;
    const Complex q0_sq = s.q0 * s.q0;
    for (size_t j = 0; j < s.qs.size(); ++j) {
        const Complex q_sq = s.qs[j] * s.qs[j];
        sum_sq += q_sq;
        h += 0.5 * s.ps[j] * s.ps[j] + lift_c(p.omegas[j]) * q_sq;
        if (sgn(p.cj_sq[j]) != 0)
            h += lift_c(p.cj_sq[j]) / (2.0 * q_sq);
    }
    h += lift_c(p.omega0) * q0_sq - g * q0_sq * sum_sq - 0.5 * q0_sq * q0_sq;
    if (sgn(p.c0_sq) != 0)
        h += lift_c(p.c0_sq) / (2.0 * q0_sq);
    return h;
}

PhaseState eom(const ModelParams& p, const PhaseState& s)
{
    PhaseState d;
    d.t = s.t;
    d.q0 = s.p0;
    d.qs = s.ps;
    forces(p, s.q0, s.qs, d.p0, d.ps, lift_c);
    return d;
}

double eom_residual(const ModelParams& p, const ClosedFormSample& s)
{
    const PhaseState f = eom(p, s.state);
    double r = std::max(std::abs(f.q0 - s.rate.q0), std::abs(f.p0 - s.rate.p0));
    for (size_t j = 0; j < f.qs.size(); ++j) {
        r = std::max(r, std::abs(f.qs[j] - s.rate.qs[j]));
        r = std::max(r, std::abs(f.ps[j] - s.rate.ps[j]));
    }
    return r;
}

namespace {

// q = sqrt(u), p = udot/(2q), pdot = (uddot - 2p^2)/(2q).
void from_square(Complex q, Complex u_dot, Complex u_ddot, Complex& p, Complex& p_dot)
{
    p = u_dot / (2.0 * q);
    p_dot = (u_ddot - 2.0 * p * p) / (2.0 * q);
}

}

ClosedFormSample solution_case1(const ModelParams& p, const std::vector<Rational>& h_j, Complex t0, Complex t)
{
    p.validate();
    if (sgn(p.c0_sq) != 0)
        throw Error(ErrorKind::invalid_parameter, "the C0 = 0 family needs C0 = 0");
    if (h_j.size() != p.omegas.size())
        throw Error(ErrorKind::invalid_parameter, "one energy per fermionic mode is required");
    ClosedFormSample out;
    out.state.t = out.rate.t = t;
    out.state.q0 = out.state.p0 = out.rate.q0 = out.rate.p0 = 0.0;
    const int n = p.n_f();
    out.state.qs.resize(n);
    out.state.ps.resize(n);
    out.rate.qs.resize(n);
    out.rate.ps.resize(n);
    const double sign = (p.c_sum && n == 1 && sgn(*p.c_sum) < 0) ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) {
        if (sgn(p.cj_sq[j]) == 0)
            throw Error(ErrorKind::invalid_parameter, "the C0 = 0 family needs Cj != 0");
        const double w = to_double(p.omegas[j]);
        const double h = to_double(h_j[j]);
        const double arg = to_double(p.cj_sq[j]) / (2 * w) - h * h / (4 * w * w);
        if (arg == 0.0)
            out.degenerate_amplitude = true;
        const Complex amp = sign * std::sqrt(Complex(arg, 0.0));
        const Complex k(0.0, 2.0 * std::sqrt(2.0 * w));
        const Complex x = k * (t - t0);
        const Complex u = h / (2 * w) + amp * std::sinh(x);
        if (std::abs(u) < 1e-300)
            throw Error(ErrorKind::invalid_parameter, "qj = 0 with Cj != 0 at this sample point");
        const Complex u_dot = amp * k * std::cosh(x);
        const Complex u_ddot = amp * k * k * std::sinh(x);
        const Complex q = std::sqrt(u);
        Complex pj, pj_dot;
        from_square(q, u_dot, u_ddot, pj, pj_dot);
        out.state.qs[j] = q;
        out.state.ps[j] = pj;
        out.rate.qs[j] = pj;
        out.rate.ps[j] = pj_dot;
    }
    return out;
}

ClosedFormSample solution_case2(const ModelParams& p, const EllipticData& e, Complex t, const WpOptions& opt)
{
    p.validate();
    for (const auto& c : p.cj_sq)
        if (sgn(c) != 0)
            throw Error(ErrorKind::invalid_parameter, "the elliptic family needs Cj = 0");
    const int samples = std::max(8, static_cast<int>(std::ceil(std::abs(t) / 0.02)));
    const auto ray = wp_along_ray(e, t, samples, opt);
    const double shift = 2.0 * to_double(p.omega0) / 3.0;
    const double half_g2 = to_double(e.g2) / 2.0;

    // Start on the branch q0 ~ +1/t and follow it by continuity.
    Complex q = 1.0 / ray.front().t;
    for (const auto& v : ray) {
        Complex root = std::sqrt(v.value + shift);
        q = (std::abs(root - q) <= std::abs(root + q)) ? root : -root;
    }
    const auto& last = ray.back();
    ClosedFormSample out;
    out.state.t = out.rate.t = t;
    out.state.qs.assign(p.n_f(), 0.0);
    out.state.ps.assign(p.n_f(), 0.0);
    out.rate.qs.assign(p.n_f(), 0.0);
    out.rate.ps.assign(p.n_f(), 0.0);
    out.state.q0 = q;
    from_square(q, last.derivative, 6.0 * last.value * last.value - half_g2, out.state.p0, out.rate.p0);
    out.rate.q0 = out.state.p0;
    return out;
}

SeparatrixData separatrix_parameters(const Rational& omega0, const Rational& c0_sq)
{
    // h^3 - w0^2 h^2 - 9 C0^2 w0 h + 8 C0^2 w0^3 + 27/4 C0^4
    const double w = to_double(omega0), c = to_double(c0_sq);
    const double b = -w * w, cc = -9 * c * w, d = 8 * c * w * w * w + 6.75 * c * c;
    Eigen::Matrix3d companion = Eigen::Matrix3d::Zero();
    companion(0, 0) = -b;
    companion(0, 1) = -cc;
    companion(0, 2) = -d;
    companion(1, 0) = 1;
    companion(2, 1) = 1;
    Eigen::EigenSolver<Eigen::Matrix3d> es(companion, false);
    const auto ev = es.eigenvalues();
    const double scale = std::max({1.0, std::abs(b), std::cbrt(std::abs(cc)), std::cbrt(std::abs(d))});
    // A hyperbolic separatrix has 0 <= a <= w0/3, i.e. w0^2 <= h* <= 4 w0^2/3;
    // such a root exists only for C0^2 < 8 w0^3/27.
    if (c >= 8 * w * w * w / 27)
        throw Error(ErrorKind::no_separatrix, "C0^2 >= 8 w0^3/27: no hyperbolic equilibrium, no separatrix");
    std::optional<double> best;
    const double slack = 1e-9 * scale;
    for (int i = 0; i < 3; ++i) {
        const double r = ev[i].real();
        if (std::abs(ev[i].imag()) < 1e-10 * scale && r >= w * w - slack && r <= 4 * w * w / 3 + slack
            && (!best || r > *best))
            best = r;
    }
    if (!best)
        throw Error(ErrorKind::no_separatrix, "the h* cubic has no root in [w0^2, 4 w0^2/3]");
    auto f = [&](double h) { return ((h + b) * h + cc) * h + d; };
    auto df = [&](double h) { return (3 * h + 2 * b) * h + cc; };
    double h = *best;
    if (df(h) != 0.0)
        h -= f(h) / df(h);
    SeparatrixData out;
    out.h_star = h;
    out.cubic_residual = std::abs(f(h));
    const double disc = 4 * w * w - 3 * h;
    if (disc <= 0)
        throw Error(ErrorKind::no_separatrix, "4 w0^2 - 3 h* <= 0, no separatrix");
    out.a = std::sqrt(disc) / 3;
    return out;
}

SeparatrixSample separatrix_case3(const Rational& omega0, const Rational& c0_sq, const SeparatrixData& d, Complex t)
{
    const double a = d.a, k = std::sqrt(3 * a);
    const Complex sh = std::sinh(k * t), ch = std::cosh(k * t);
    const Complex u = 2.0 * to_double(omega0) / 3.0 + a + 3 * a / (sh * sh);
    const Complex u_dot = -6 * a * k * ch / (sh * sh * sh);
    const Complex u_ddot = 6 * a * k * k * (2.0 * ch * ch + 1.0) / (sh * sh * sh * sh);
    (void)c0_sq;
    SeparatrixSample s;
    s.a = a;
    s.h_star = d.h_star;
    s.q0 = std::sqrt(u);
    from_square(s.q0, u_dot, u_ddot, s.p0, s.p0_dot);
    s.q0_dot = s.p0;
    return s;
}

SeparatrixSample separatrix_case3(const Rational& omega0, const Rational& c0_sq, Complex t)
{
    return separatrix_case3(omega0, c0_sq, separatrix_parameters(omega0, c0_sq), t);
}

double separatrix_residual(const Rational& omega0, const Rational& c0_sq, const SeparatrixSample& s)
{
    const Complex q = s.q0;
    Complex f = -2.0 * to_double(omega0) * q + 2.0 * q * q * q;
    if (sgn(c0_sq) != 0)
        f += to_double(c0_sq) / (q * q * q);
    return std::max(std::abs(s.p0_dot - f), std::abs(s.q0_dot - s.p0));
}

namespace {

using Vec = std::vector<Complex>;

Vec pack(const PhaseState& s)
{
    Vec x{s.q0, s.p0};
    for (size_t j = 0; j < s.qs.size(); ++j) {
        x.push_back(s.qs[j]);
        x.push_back(s.ps[j]);
    }
    return x;
}

PhaseState unpack(const Vec& x, Complex t)
{
    PhaseState s;
    s.t = t;
    s.q0 = x[0];
    s.p0 = x[1];
    for (size_t k = 2; k + 1 < x.size(); k += 2) {
        s.qs.push_back(x[k]);
        s.ps.push_back(x[k + 1]);
    }
    return s;
}

}

Trajectory integrate(const ModelParams& p, const PhaseState& s0, Complex t_end, const IntegrateOptions& opt)
{
    namespace ode = boost::numeric::odeint;
    if (!(opt.tol > 0))
        throw Error(ErrorKind::invalid_parameter, "tolerance must be positive");
    p.validate();
    const Complex t0 = s0.t, span = t_end - t0;
    Trajectory tr;
    Vec x = pack(s0);
    const Complex h0 = hamiltonian(p, s0);
    tr.states.push_back(s0);
    tr.energies.push_back(h0);
    if (std::abs(span) == 0.0)
        return tr;

    auto rhs = [&](const Vec& y, Vec& dy, double s) {
        const PhaseState st = unpack(y, t0 + s * span);
        const PhaseState d = eom(p, st);
        dy = pack(d);
        for (auto& v : dy)
            v *= span;
    };
    auto stepper = ode::make_controlled(opt.tol, opt.tol, ode::runge_kutta_dopri5<Vec>());
    double s = 0.0, ds = 1e-3;
    while (s < 1.0) {
        if (tr.steps >= opt.max_steps)
            throw Error(ErrorKind::singularity_encountered, "step budget exhausted");
        double trial = std::min(ds, 1.0 - s);
        if (stepper.try_step(rhs, x, s, trial) == ode::success) {
            ++tr.steps;
            ds = trial;
            const Complex t = t0 + s * span;
            PhaseState st = unpack(x, t);
            const Complex e = hamiltonian(p, st);
            tr.max_energy_drift = std::max(tr.max_energy_drift, std::abs(e - h0));
            tr.states.push_back(std::move(st));
            tr.energies.push_back(e);
        } else {
            ds = trial;
        }
        bool finite = true;
        for (const auto& v : x)
            finite = finite && std::isfinite(v.real()) && std::isfinite(v.imag());
        if (ds < 1e-14 || !finite) {
            const Complex t = t0 + s * span;
            throw Error(ErrorKind::singularity_encountered,
                        "step size underflow near t = " + std::to_string(t.real()) + " + "
                            + std::to_string(t.imag()) + "i");
        }
    }
    return tr;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& tr)
{
    auto old = out.precision(17);
    out << "t_re,t_im,q0_re,q0_im,p0_re,p0_im";
    const size_t n = tr.states.empty() ? 0 : tr.states.front().qs.size();
    for (size_t j = 1; j <= n; ++j)
        out << ",q" << j << "_re,q" << j << "_im,p" << j << "_re,p" << j << "_im";
    out << ",energy_re,energy_im\n";
    for (size_t k = 0; k < tr.states.size(); ++k) {
        const auto& s = tr.states[k];
        out << s.t.real() << ',' << s.t.imag() << ',' << s.q0.real() << ',' << s.q0.imag() << ','
            << s.p0.real() << ',' << s.p0.imag();
        for (size_t j = 0; j < s.qs.size(); ++j)
            out << ',' << s.qs[j].real() << ',' << s.qs[j].imag() << ',' << s.ps[j].real() << ','
                << s.ps[j].imag();
        out << ',' << tr.energies[k].real() << ',' << tr.energies[k].imag() << '\n';
    }
    out.precision(old);
}

}
