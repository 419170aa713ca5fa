#ifndef BFMIX_HEUN_HPP
#define BFMIX_HEUN_HPP

#include <optional>
#include <vector>

#include "bfmix/model.hpp"
#include "bfmix/rational.hpp"
#include "bfmix/verdict.hpp"

namespace bfmix {

// Normal variational equation along the C0 = 0 solution (energies h_j = 0):
// xi'' + (A1 + B1 sinh(2 i w t)) xi = 0, and with x = exp(2 i w t),
// y = sqrt(x) xi it becomes y'' = r(x) y.
struct HeunReduction {
    Rational a1;                  // 2 w0
    double b1 = 0;                // -(2/w) g sum C
    double a = 0;                 // -A1/(4 w^2)
    double b = 0;                 // g sum C/(4 w^3) = -B1/(8 w^2)
    std::optional<Rational> b1_exact;
    std::optional<Rational> a_exact;
    std::optional<Rational> b_exact;
    double omega = 0;             // w_j = w^2/2
    std::optional<Rational> omega_exact;
    double c_sum = 0;
    std::optional<Rational> c_sum_exact;
    bool b_nonzero = false;       // exact: g_bf != 0 and sum C != 0

    // r(x) = -B/x - (A + 1/4)/x^2 + B/x^3
    Complex r(Complex x) const;
};

HeunReduction reduce(const ModelParams& p);

IntegrabilityVerdict galois_verdict_case1(const ModelParams& p);

struct TransformOptions {
    double tol = 1e-13;
    double step = 1e-3;   // finite-difference step for xi''
};

// Integrates the Mathieu-type equation for two independent initial data and
// returns the max relative defect of y'' = r(x) y, y'' taken by the chain rule.
double transform_consistency(const ModelParams& p, const std::vector<double>& t_grid,
                             const TransformOptions& opt = {});

}

#endif
