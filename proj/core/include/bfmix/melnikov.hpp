#ifndef BFMIX_MELNIKOV_HPP
#define BFMIX_MELNIKOV_HPP

#include <iosfwd>
#include <vector>

#include "bfmix/model.hpp"
#include "bfmix/rational.hpp"
#include "bfmix/verdict.hpp"

namespace bfmix {

// One fermionic mode in action-angle form around the separatrix of q0.
struct MelnikovSetup {
    Rational omega0, omega1, c0_sq, c1_sq;
    double action = 0;
    double amplitude = 0;   // sqrt(I^2/(4 w1^2) - C1^2/(2 w1))
    double theta = 0;       // 2 sqrt(2 w1)
    SeparatrixData separatrix;
    double contour_radius = 0;
    int contour_points = 512;
};

// Smallest action with a real amplitude: |C1| sqrt(2 w1).
double action_lower_bound(const Rational& omega1, const Rational& c1_sq);

MelnikovSetup setup(const Rational& omega0, const Rational& omega1, const Rational& c0_sq, const Rational& c1_sq,
                    double action);

// {H0, H1} on the separatrix: (q0^2)' (I/(2 w1) - A sin(theta (t - t0))).
Complex poisson_bracket_H0H1(const MelnikovSetup& s, Complex t, double t0);

// Trapezoid rule for the loop integral of the bracket over |t| = radius.
Complex melnikov_contour(const MelnikovSetup& s, double t0, double radius, int points);

// Default contour, cross-checked at 0.75 radius with twice the points;
// throws contour_unreliable when the two disagree beyond 1e-6 relative.
Complex melnikov_numeric(const MelnikovSetup& s, double t0);

// Reference closed form 12 pi i a sqrt(2 w1) A sin(theta t0).
Complex melnikov_closed_form(const MelnikovSetup& s, double t0);
Complex closed_form_prefactor(const MelnikovSetup& s);
// 16 pi i w1 A, the prefactor the residue computation gives.
Complex derived_prefactor(const MelnikovSetup& s);

struct SineFit {
    Complex amplitude;
    double residual = 0;   // max |d - A sin| / |A|
    int samples = 0;
};

SineFit fit_sine(const MelnikovSetup& s, int samples = 64);

struct ZeroScan {
    std::vector<MelnikovZero> zeros;
    bool degenerate = false;   // d vanishes identically on the range
};

ZeroScan find_simple_zeros(const MelnikovSetup& s, double t0_min, double t0_max, int samples = 64);

struct DeltaCheck {
    double max_defect = 0;
    bool inconsistent = false;   // defect above 1e-4
};

// Printed closed form for the quadrature int dt / p0^2.
double delta_closed_form(const MelnikovSetup& s, double t);
DeltaCheck delta_quadrature_check(const MelnikovSetup& s, const std::vector<double>& t_samples);

struct SweepRow {
    double t0 = 0;
    Complex numeric;
    Complex closed;
};

std::vector<SweepRow> sweep_t0(const MelnikovSetup& s, double t0_min, double t0_max, int samples);
// Header "t0,d_num_re,d_num_im,d_closed_re,d_closed_im".
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

struct Case3Analysis {
    IntegrabilityVerdict verdict;
    MelnikovSetup setup;
    SineFit fit;
    ZeroScan scan;
    double radius_defect = 0;
};

// t0_max <= t0_min scans one period starting at t0_min.
Case3Analysis analyze_case3(const ModelParams& p, double action, double t0_min, double t0_max, int samples);

}

#endif
