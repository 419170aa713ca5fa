#include <doctest.h>

#include "bfmix/errors.hpp"
#include "bfmix/lame.hpp"
#include "bfmix/variational.hpp"
#include "support.hpp"

using namespace bfmix;
using bfmix::testing::case2_params;
using bfmix::testing::Rng;

namespace {

ErrorKind kind_of(auto&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::usage;
}

Rational residue_at(const Case2Analysis& a, int order, const std::string& component, Row row)
{
    for (const auto& r : a.reference_residues)
        if (r.order == order && r.component == component && r.row == row)
            return r.value;
    FAIL("residue not recorded");
    return 0;
}

}

TEST_CASE("VE1 coefficients along the elliptic solution")
{
    const ModelParams p = case2_params(1, 1, {1}, 1);
    const auto e = invariants_from_energy(1, 1, 0);
    const auto ve = build_ve1<Rational>(p, e, 12);
    CHECK(ve.qbar.coeff(Rational(-1)) == 1);
    CHECK(agree_up_to_truncation(ve.qbar * ve.qbar, ve.qbar_sq));
    // Normal coefficient 2 g qbar^2 - 2 w_j = n(n+1) wp + B_j with n = 1.
    const Rational b = lame_offset(p, 1, 0);
    CHECK(ve.normal[0].coeff(Rational(-2)) == 2);
    CHECK(ve.normal[0].coeff(Rational(0)) == b);
    CHECK(ve.tangential.coeff(Rational(-2)) == 6);
}

TEST_CASE("Frobenius exponents and leading terms")
{
    const ModelParams p = case2_params(1, 1, {Rational(1, 3)}, 2);
    const auto e = invariants_from_energy(1, 2, Rational(1, 5));
    const Case2Expansion<Rational> ex(p, e, 12);
    const auto& b = ex.normal(0);
    CHECK(b.rho_low == -1);
    CHECK(b.rho_high == 2);
    const Rational B = lame_offset(p, 1, 0);
    CHECK(b.sol1.coeff(Rational(-1)) == 1);
    CHECK(b.sol1.coeff(Rational(1)) == -B / 2);
    CHECK(b.sol2.coeff(Rational(2)) == Rational(1, 3));
    CHECK(b.sol2.coeff(Rational(4)) == B / 30);
    CHECK(ex.tangential().rho_low == -2);
    CHECK(ex.tangential().rho_high == 3);
}

TEST_CASE("Frobenius Wronskians are identically one")
{
    Rng rng(41);
    for (const Rational g : {Rational(1), Rational(3), Rational(3, 8), Rational(35, 8)}) {
        const ModelParams p = case2_params(g, rng.positive(4, 3), {rng.positive(4, 3), rng.positive(4, 3)},
                                           rng.positive(4, 3));
        const auto e = invariants_from_energy(p.omega0, p.c0_sq, rng.rational(2, 3));
        const Case2Expansion<Rational> ex(p, e, 14);
        CHECK(agree_up_to_truncation(bfmix::testing::wronskian(ex.tangential().sol1, ex.tangential().sol2),
                                     ExactSeries::constant(1)));
        for (size_t j = 0; j < ex.modes(); ++j) {
            const auto& b = ex.normal(j);
            const bool unit = agree_up_to_truncation(bfmix::testing::wronskian(b.sol1, b.sol2), ExactSeries::constant(1));
            // Off the surviving branches a half-integer index has a logarithm at the resonance.
            CHECK(unit != b.log_in_basis);
        }
    }
}

TEST_CASE("Frobenius refuses unsupported singular points")
{
    const auto t = [](long e, const Rational& c) { return ExactSeries::monomial(c, Rational(e)); };
    CHECK(kind_of([&] { (void)frobenius(t(-3, 1)); }) == ErrorKind::irregular_singularity);
    CHECK(kind_of([&] { (void)frobenius(t(-2, Rational(-1, 4))); }) == ErrorKind::log_in_basis);
    CHECK(kind_of([&] { (void)frobenius(t(-2, 1)); }) == ErrorKind::field_extension_unsupported);
}

TEST_CASE("Frobenius flags a logarithm at a resonance")
{
    const auto q = ExactSeries::from_terms({{Rational(-2), Rational(2)}, {Rational(-1), Rational(1)}});
    const auto b = frobenius(q, 8);
    CHECK(b.log_in_basis);
    const auto clean = ExactSeries::from_terms({{Rational(-2), Rational(2)}});
    CHECK_FALSE(frobenius(clean, 8).log_in_basis);
}

TEST_CASE("basis solutions solve VE1 to truncation")
{
    const ModelParams p = case2_params(3, 2, {Rational(1, 2)}, Rational(1, 3));
    const auto e = invariants_from_energy(2, Rational(1, 3), Rational(1, 7));
    const Case2Expansion<Rational> ex(p, e, 14);
    for (const auto* b : {&ex.tangential(), &ex.normal(0)}) {
        const auto& q = b == &ex.tangential() ? ex.ve1().tangential : ex.ve1().normal[0];
        CHECK(agree_up_to_truncation(b->sol1.derivative().derivative(), q * b->sol1));
        CHECK(agree_up_to_truncation(b->sol2.derivative().derivative(), q * b->sol2));
    }
}

TEST_CASE("forcing formulas match the epsilon expansion of the equations of motion")
{
    Rng rng(42);
    for (int draw = 0; draw < 20; ++draw) {
        const size_t modes = static_cast<size_t>(rng.integer(1, 2));
        std::vector<Rational> w;
        for (size_t j = 0; j < modes; ++j)
            w.push_back(rng.positive(5, 3));
        const Rational c0 = draw % 4 == 0 ? Rational(0) : rng.positive(5, 3);
        const ModelParams p = case2_params(rng.rational(5, 3), rng.positive(5, 3), w, c0);
        const auto e = invariants_from_energy(p.omega0, p.c0_sq == 0 ? Rational(1) : p.c0_sq, rng.rational(2, 3));
        const ExactSeries qbar = build_ve1<Rational>(p, e, 10).qbar;
        std::vector<ExactSeries> xi, xi2;
        for (size_t j = 0; j <= modes; ++j) {
            xi.push_back(rng.series(-3, 3, 1, false));
            xi2.push_back(rng.series(-3, 3, 1, false));
        }
        bfmix::testing::Jet::order = 10;
        const auto k2 = forcing_terms(p, qbar, 2, xi);
        const auto o2 = bfmix::testing::forcing_by_expansion(p, qbar, 2, xi, nullptr);
        const auto k3 = forcing_terms(p, qbar, 3, xi, &xi2);
        const auto o3 = bfmix::testing::forcing_by_expansion(p, qbar, 3, xi, &xi2);
        for (size_t j = 0; j <= modes; ++j) {
            CHECK(agree_up_to_truncation(k2[j], o2[j]));
            CHECK(agree_up_to_truncation(k3[j], o3[j]));
        }
    }
}

TEST_CASE("variation of constants solves the forced equation")
{
    const ModelParams p = case2_params(3, 1, {Rational(3, 7)}, 2);
    const auto e = invariants_from_energy(1, 2, Rational(1, 5));
    const Case2Expansion<Rational> ex(p, e, 14);
    const auto r = ex.solve({3, Pick::first, Pick::first, Pick::first, Pick::first, Row::first});
    REQUIRE_FALSE(r.ve2_log);
    for (size_t i = 0; i < r.ve2.size(); ++i) {
        const auto& q = i == 0 ? ex.ve1().tangential : ex.ve1().normal[i - 1];
        const auto& x = r.ve2[i].particular;
        CHECK(agree_up_to_truncation(x.derivative().derivative(), q * x + r.k2[i]));
    }
}

TEST_CASE("case 2, n = 1: VE3 residue at the reference choice")
{
    for (int nf : {1, 2}) {
        const ModelParams p = case2_params(1, 1, std::vector<Rational>(nf, Rational(1)), 1);
        const auto a = analyze_case2(p, invariants_from_energy(1, 1, 0), 16);
        REQUIRE(a.verdict.outcome == Outcome::non_integrable);
        const Rational res = residue_at(a, 3, "normal[1]", Row::first);
        // Magnitude 2 g^2 N_f / 3; the sign comes out positive.
        CHECK(res == Rational(2 * nf, 3));
        const auto* w = std::get_if<ResidueWitness>(&a.verdict.witness);
        REQUIRE(w);
        CHECK(w->order == 3);
        CHECK(w->value == res);
    }
}

TEST_CASE("case 2, n = 2: mu2 leading coefficients and vanishing residue")
{
    Rng rng(43);
    for (int i = 0; i < 5; ++i) {
        const ModelParams p = case2_params(3, rng.positive(5, 3), {rng.positive(5, 3)}, rng.positive(5, 3));
        const auto e = invariants_from_energy(p.omega0, p.c0_sq, rng.rational(2, 5));
        const Rational B = lame_offset(p, 2, 0);
        if (B == 0)
            continue;
        const Case2Expansion<Rational> ex(p, e, 16);
        const auto ch = *reference_choice(2, B);
        const auto r = ex.solve(ch);
        const auto& mu = r.ve2[1].mu(ch.row);
        CHECK(mu.coeff(Rational(-7)) == 12);
        CHECK(mu.coeff(Rational(-5)) == -4 * B);
        CHECK(mu.coeff(Rational(-3)) == Rational(4, 3) * B * B - Rational(12, 5) * e.g2);
        CHECK(mu.coeff(Rational(-1)) == 0);
        CHECK_FALSE(r.ve2_log);
    }
}

TEST_CASE("case 2, n = 2: VE3 witness")
{
    const ModelParams p = case2_params(3, 1, {Rational(3, 7)}, 2);
    const auto a = analyze_case2(p, invariants_from_energy(1, 2, Rational(1, 5)), 16);
    CHECK(a.verdict.outcome == Outcome::non_integrable);
    const auto* w = std::get_if<ResidueWitness>(&a.verdict.witness);
    REQUIRE(w);
    CHECK(w->value == Rational(-356, 245));

    // B_j = 0: the reference choice gives zero, the search finds another choice.
    const ModelParams q = case2_params(3, 1, {2}, 1);
    const auto b = analyze_case2(q, invariants_from_energy(1, 1, 0), 16);
    CHECK(residue_at(b, 3, "normal[1]", Row::second) == 0);
    CHECK(b.verdict.outcome == Outcome::non_integrable);
    const auto* v = std::get_if<ResidueWitness>(&b.verdict.witness);
    REQUIRE(v);
    CHECK(v->value != 0);
    CHECK(b.choices_tried > 1);
}

TEST_CASE("case 2, n = 1/2 and 5/2 on the surviving branches: no residue up to VE3")
{
    const ModelParams p = case2_params(Rational(3, 8), 1, {Rational(1, 4)}, 1);
    const auto a = analyze_case2(p, invariants_from_energy(1, 1, 0), 16);
    CHECK(a.verdict.outcome == Outcome::necessary_conditions_survived);
    CHECK(a.verdict.conjecture_conditional);

    const ModelParams q = case2_params(Rational(35, 8), 1, {Rational(55, 28)}, Rational(72, 343));
    const auto b = analyze_case2(q, invariants_from_energy(1, Rational(72, 343), 0), 16);
    CHECK(b.verdict.outcome == Outcome::necessary_conditions_survived);
    for (const auto& r : b.reference_residues)
        CHECK(r.value == 0);
}

TEST_CASE("analyze_case2 verdict shortcuts")
{
    const auto e = invariants_from_energy(1, 1, 0);
    CHECK(analyze_case2(case2_params(0, 1, {1}, 1), e).verdict.outcome == Outcome::separable);
    const auto a = analyze_case2(case2_params(Rational(2, 5), 1, {1}, 1), e);
    CHECK(a.verdict.outcome == Outcome::non_integrable);
    CHECK(std::holds_alternative<LameMonodromyWitness>(a.verdict.witness));
    const auto b = analyze_case2(case2_params(Rational(3, 8), 1, {1}, 1), e);
    CHECK(std::holds_alternative<Theorem5Witness>(b.verdict.witness));
    const auto c = analyze_case2(case2_params(6, 1, {Rational(8, 1)}, 1), e);
    CHECK((c.verdict.outcome == Outcome::unsupported || c.verdict.outcome == Outcome::non_integrable));
    CHECK(kind_of([&] { (void)analyze_case2(case2_params(1, 1, {1}, 0), e); }) == ErrorKind::invalid_parameter);
}

TEST_CASE("float mode agrees with exact mode on the residues")
{
    const ModelParams p = case2_params(3, 1, {Rational(3, 7)}, 2);
    const auto e = invariants_from_energy(1, 2, Rational(1, 5));
    const HigherVEChoice ch{3, Pick::first, Pick::first, Pick::first, Pick::first, Row::first};
    const auto exact = Case2Expansion<Rational>(p, e, 14).solve(ch);
    const auto flt = Case2Expansion<Complex>(p, e, 14).solve(ch);
    REQUIRE(exact.ve3.size() == flt.ve3.size());
    for (size_t i = 0; i < exact.ve3.size(); ++i)
        for (Row row : {Row::first, Row::second}) {
            const double x = to_double(exact.ve3[i].residue(row));
            const Complex y = flt.ve3[i].residue(row);
            CHECK(std::abs(y - x) < 1e-8 * (1 + std::abs(x)));
        }
}

TEST_CASE("contour residue agrees with the exact residue")
{
    const ModelParams p = case2_params(1, 1, {1}, 1);
    const auto e = invariants_from_energy(1, 1, 0);
    const Case2Expansion<Complex> ex(p, e, 40);
    const auto r = ex.solve(*reference_choice(1, lame_offset(p, 1, 0)));
    const FloatSeries mu = r.ve3[1].mu_first.truncated(Rational(30));
    CHECK(std::abs(contour_residue(mu, 0.05, 256) - Complex(2.0 / 3, 0)) < 1e-9);
}
