#ifndef BFMIX_ELLIPTIC_HPP
#define BFMIX_ELLIPTIC_HPP

#include <vector>

#include "bfmix/laurent.hpp"
#include "bfmix/rational.hpp"

namespace bfmix {

struct EllipticData {
    Rational g2;
    Rational g3;
    Rational discriminant;
    Rational h;
    Rational omega0;
    Rational c0_sq;
};

// g2 = 16/3 w0^2 - 4h, g3 = 4 C0^2 - 8/3 w0 h + 64/27 w0^3.
EllipticData invariants_from_energy(const Rational& omega0, const Rational& c0_sq, const Rational& h);

// Laurent expansion of wp at t = 0, known below t^(order - 2).
ExactSeries wp_laurent(const Rational& g2, const Rational& g3, int order = kDefaultOrder);
ExactSeries wp_laurent(const EllipticData& e, int order = kDefaultOrder);

struct WpOptions {
    double seed_radius = 0;   // <= 0: 0.4 times the estimated convergence radius
    double tolerance = 1e-13;
    double pole_guard = 1e10;
    int series_order = 60;
};

struct WpValue {
    Complex t;
    Complex value;
    Complex derivative;
};

// wp and wp' at t: series inside the seed radius, outside it the ODE
// wp'' = 6 wp^2 - g2/2 integrated along the ray from the seed point.
WpValue wp_numeric(const EllipticData& e, Complex t, const WpOptions& opt = {});

// Same, sampled at `samples` equally spaced points of the ray (0, t].
std::vector<WpValue> wp_along_ray(const EllipticData& e, Complex t, int samples, const WpOptions& opt = {});

}

#endif
