#ifndef BFMIX_MODEL_HPP
#define BFMIX_MODEL_HPP

#include <iosfwd>
#include <optional>
#include <vector>

#include "bfmix/elliptic.hpp"
#include "bfmix/rational.hpp"

namespace bfmix {

struct RawParams {
    Rational m_b = 1, m_f = 1, g_bb = 1, g_bf = 0;
    Rational omega0 = 1;
    std::vector<Rational> omegas;
    Rational c0_sq = 0;
    std::vector<Rational> cj_sq;
};

// Normalized parameters. Only C0^2 and Cj^2 enter the dynamics; c_sum is the
// signed sum of the Cj when the caller fixes signs (else Cj = +sqrt(Cj^2)).
struct ModelParams {
    Rational omega0 = 1;
    std::vector<Rational> omegas;
    Rational c0_sq = 0;
    std::vector<Rational> cj_sq;
    Rational g_bf = 0;
    std::optional<Rational> c_sum;

    int n_f() const { return static_cast<int>(omegas.size()); }
    void validate() const;
    bool operator==(const ModelParams&) const = default;
};

ModelParams normalize(const RawParams& raw);

struct PhaseState {
    Complex q0, p0;
    std::vector<Complex> qs, ps;
    Complex t;
};

Complex hamiltonian(const ModelParams& p, const PhaseState& s);

// Time derivative (qdot, pdot) stored in PhaseState layout, t copied.
PhaseState eom(const ModelParams& p, const PhaseState& s);

// Generalized forces pdot = -dH/dq, generic in the number type so the same
// field serves complex evaluation and formal epsilon-jets. lift maps a
// Rational parameter into T.
template <class T, class Lift>
void forces(const ModelParams& p, const T& q0, const std::vector<T>& qs, T& f0, std::vector<T>& fs, Lift lift)
{
    T sum_sq = lift(Rational(0));
    for (const auto& q : qs)
        sum_sq = sum_sq + q * q;
    const T g = lift(p.g_bf);
    const T q0_sq = q0 * q0;
    f0 = lift(Rational(-2) * p.omega0) * q0 + lift(Rational(2)) * q0_sq * q0 + lift(Rational(2)) * g * q0 * sum_sq;
    if (sgn(p.c0_sq) != 0)
        f0 = f0 + lift(p.c0_sq) / (q0_sq * q0);
    fs.resize(qs.size());
    for (size_t j = 0; j < qs.size(); ++j) {
        const T& q = qs[j];
        fs[j] = lift(Rational(-2) * p.omegas[j]) * q + lift(Rational(2)) * g * q0_sq * q;
        if (sgn(p.cj_sq[j]) != 0)
            fs[j] = fs[j] + lift(p.cj_sq[j]) / (q * q * q);
    }
}

// A closed-form point together with its analytic time derivative.
struct ClosedFormSample {
    PhaseState state;
    PhaseState rate;
    bool degenerate_amplitude = false;
};

// Max componentwise |rate - eom(state)|.
double eom_residual(const ModelParams& p, const ClosedFormSample& s);

// First-order family (C0 = 0): q0 = p0 = 0, qj^2 = hj/(2wj) + S sinh(2i sqrt(2wj)(t - t0)).
ClosedFormSample solution_case1(const ModelParams& p, const std::vector<Rational>& h_j, Complex t0, Complex t);

// Elliptic family (Cj = 0): q0^2 = 2w0/3 + wp(t), qj = pj = 0, branch q0 ~ +1/t continued along the ray.
ClosedFormSample solution_case2(const ModelParams& p, const EllipticData& e, Complex t, const WpOptions& opt = {});

struct SeparatrixData {
    double h_star = 0;
    double a = 0;
    double cubic_residual = 0;
};

SeparatrixData separatrix_parameters(const Rational& omega0, const Rational& c0_sq);

struct SeparatrixSample {
    Complex q0, p0;
    Complex q0_dot, p0_dot;
    double a = 0;
    double h_star = 0;
};

SeparatrixSample separatrix_case3(const Rational& omega0, const Rational& c0_sq, Complex t);
SeparatrixSample separatrix_case3(const Rational& omega0, const Rational& c0_sq, const SeparatrixData& d, Complex t);

// Residual of the sample in q0'' = -2 w0 q0 + 2 q0^3 + C0^2/q0^3.
double separatrix_residual(const Rational& omega0, const Rational& c0_sq, const SeparatrixSample& s);

struct IntegrateOptions {
    double tol = 1e-10;
    long max_steps = 1000000;
};

struct Trajectory {
    std::vector<PhaseState> states;
    std::vector<Complex> energies;
    double max_energy_drift = 0;
    long steps = 0;
};

// Adaptive Dormand-Prince along the straight segment s0.t -> t_end.
Trajectory integrate(const ModelParams& p, const PhaseState& s0, Complex t_end, const IntegrateOptions& opt = {});

void write_trajectory_csv(std::ostream& out, const Trajectory& tr);

}

#endif
