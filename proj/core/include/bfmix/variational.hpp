#ifndef BFMIX_VARIATIONAL_HPP
#define BFMIX_VARIATIONAL_HPP

#include <optional>
#include <string>
#include <vector>

#include "bfmix/elliptic.hpp"
#include "bfmix/lame.hpp"
#include "bfmix/laurent.hpp"
#include "bfmix/model.hpp"
#include "bfmix/verdict.hpp"

namespace bfmix {

// Coefficients of VE1 along the elliptic solution:
// tangential T = -2 w0 + 6 qbar^2 - 3 C0^2/qbar^4, normal N_j = -2 w_j + 2 g qbar^2.
template <class C>
struct VE1CoefficientsT {
    Series<C> qbar;
    Series<C> qbar_sq;
    Series<C> tangential;
    std::vector<Series<C>> normal;
};

template <class C>
VE1CoefficientsT<C> build_ve1(const ModelParams& p, const EllipticData& e, int order = kDefaultOrder);

// Local basis of xi'' = q xi at t = 0. sol1 has the lower exponent and
// leading coefficient 1, sol2 is scaled so that sol1 sol2' - sol1' sol2 = 1.
template <class C>
struct FrobeniusBasisT {
    Series<C> sol1;
    Series<C> sol2;
    Rational rho_low;
    Rational rho_high;
    bool log_in_basis = false;
    bool wronskian_normalized = false;

    const Series<C>& pick(Pick p) const { return p == Pick::first ? sol1 : sol2; }
};

template <class C>
FrobeniusBasisT<C> frobenius(const Series<C>& q, int order = kDefaultOrder);

template <class C>
struct VariationResultT {
    Series<C> mu_first;   // -sol2 K
    Series<C> mu_second;  // sol1 K
    C residue_first{};
    C residue_second{};
    Series<C> particular;  // sol1 int(mu_first) + sol2 int(mu_second), zero constants
    bool has_log() const { return !CoeffOps<C>::is_zero(residue_first) || !CoeffOps<C>::is_zero(residue_second); }
    const C& residue(Row r) const { return r == Row::first ? residue_first : residue_second; }
    const Series<C>& mu(Row r) const { return r == Row::first ? mu_first : mu_second; }
};

template <class C>
VariationResultT<C> variation_of_constants(const FrobeniusBasisT<C>& basis, const Series<C>& forcing);

// Right-hand sides K of VE2 (k = 2) and VE3 (k = 3) along qbar. first and
// second hold [xi0, xi1, ..., xiN] at orders 1 and 2; second is needed for k = 3.
template <class C>
std::vector<Series<C>> forcing_terms(const ModelParams& p, const Series<C>& qbar, int k,
                                     const std::vector<Series<C>>& first,
                                     const std::vector<Series<C>>* second = nullptr);

template <class C>
struct HigherVEResultT {
    HigherVEChoice choice;
    std::vector<Series<C>> xi1;          // chosen VE1 solutions [xi0, xi1..]
    std::vector<Series<C>> k2;
    std::vector<VariationResultT<C>> ve2;  // [tangential, normal 1..N]
    bool ve2_log = false;
    std::vector<Series<C>> xi2;          // particular + chosen homogeneous part
    std::vector<Series<C>> k3;
    std::vector<VariationResultT<C>> ve3;  // empty unless choice.order == 3 and no VE2 log
};

// Local expansions for one case-2 parameter point, reused across choices.
template <class C>
class Case2Expansion {
public:
    Case2Expansion(const ModelParams& p, const EllipticData& e, int order = kDefaultOrder);

    const ModelParams& params() const { return p_; }
    const VE1CoefficientsT<C>& ve1() const { return ve1_; }
    const FrobeniusBasisT<C>& tangential() const { return tangential_; }
    const FrobeniusBasisT<C>& normal(size_t j) const { return normal_.at(j); }
    size_t modes() const { return normal_.size(); }

    HigherVEResultT<C> solve(const HigherVEChoice& choice) const;

private:
    ModelParams p_;
    int order_;
    VE1CoefficientsT<C> ve1_;
    FrobeniusBasisT<C> tangential_;
    std::vector<FrobeniusBasisT<C>> normal_;
};

using VE1Coefficients = VE1CoefficientsT<Rational>;
using FrobeniusBasis = FrobeniusBasisT<Rational>;
using VariationResult = VariationResultT<Rational>;
using HigherVEResult = HigherVEResultT<Rational>;

// Reference solution picks for each Lame index.
std::optional<HigherVEChoice> reference_choice(const Rational& n, const Rational& offset);

std::string component_name(size_t index);  // 0 -> tangential, j -> normal[j]

struct ResidueRecord {
    HigherVEChoice choice;
    int order = 0;
    std::string component;
    Row row = Row::first;
    Rational value;
};

struct Case2Analysis {
    IntegrabilityVerdict verdict;
    std::optional<LameData> lame;
    std::vector<Theorem5Verdict> theorem5;
    std::optional<HigherVEChoice> reference;
    std::vector<ResidueRecord> reference_residues;  // every row at the reference choice
    int choices_tried = 0;
};

Case2Analysis analyze_case2(const ModelParams& p, const EllipticData& e, int order = kDefaultOrder);

// Trapezoid contour integral of mu over |t| = radius, divided by 2 pi i.
Complex contour_residue(const FloatSeries& mu, double radius = 0.05, int points = 256);

extern template struct VE1CoefficientsT<Rational>;
extern template class Case2Expansion<Rational>;
extern template class Case2Expansion<Complex>;

}

#endif
