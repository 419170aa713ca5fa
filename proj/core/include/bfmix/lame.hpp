#ifndef BFMIX_LAME_HPP
#define BFMIX_LAME_HPP

#include <optional>
#include <string>
#include <vector>

#include "bfmix/model.hpp"
#include "bfmix/rational.hpp"

namespace bfmix {

// P(alpha, h) = (a1 + h a2) alpha^3 + (b1 + h b2) alpha^2 + (c1 + h c2) alpha + (d1 + h d2)
struct PCoefficients {
    Rational a1, a2, b1, b2, c1, c2, d1, d2;
    bool operator==(const PCoefficients&) const = default;
};

struct LameData {
    Rational n;
    std::vector<Rational> offsets;  // B_j
    std::vector<PCoefficients> coeffs;
};

// n >= 0 with n(n+1) = 2 g_bf, if it lies in one of the families the
// condition tree names (n in N, n + 1/2 in N, or the fractional family).
std::optional<Rational> lame_index(const Rational& g_bf);

// B_j = (2/3) w0 n(n+1) - 2 w_j
Rational lame_offset(const ModelParams& p, const Rational& n, size_t j);

LameData lame_data(const ModelParams& p);

PCoefficients p_coefficients_paper(const ModelParams& p, size_t j);

// Expands n^2(n+1)^2 (4 wp^3 - g2 wp - g3) with wp = (alpha - B_j)/(n(n+1))
// as a polynomial in alpha and h.
PCoefficients p_coefficients_derived(const ModelParams& p, size_t j);

enum class Theorem5Case { case1, case2_1, case2_2, case2_3, case2_m, case3, none };

std::string to_string(Theorem5Case c);

struct ConditionResidual {
    std::string id;
    Rational value;
    bool operator==(const ConditionResidual&) const = default;
};

struct DerivedConstraint {
    std::string name;
    Rational value;
    bool operator==(const DerivedConstraint&) const = default;
};

struct Theorem5Verdict {
    Theorem5Case passed_case = Theorem5Case::none;
    std::vector<ConditionResidual> failed_conditions;
    std::vector<DerivedConstraint> derived_constraints;
    std::optional<long> m;
    bool conjecture_conditional = false;
    bool ambiguous_clause = false;
};

Theorem5Verdict theorem5_check(const PCoefficients& c, const Rational& n);

// theorem5_check on the model's coefficients for mode j, plus the parameter
// relations the surviving branch forces (w_j/w0, B_j/w_j, C0^2/w0^3).
Theorem5Verdict theorem5_for_model(const ModelParams& p, size_t j);

// n + 1/2 in (1/3)Z u (1/4)Z u (1/5)Z, not in Z.
bool in_fractional_family(const Rational& n);

}

#endif
