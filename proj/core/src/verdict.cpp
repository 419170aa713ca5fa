#include "bfmix/verdict.hpp"

#include "bfmix/elliptic.hpp"
#include "bfmix/errors.hpp"
#include "bfmix/heun.hpp"
#include "bfmix/melnikov.hpp"
#include "bfmix/variational.hpp"

namespace bfmix {

std::string to_string(CaseId c)
{
    switch (c) {
    case CaseId::case1: return "case1";
    case CaseId::case2: return "case2";
    case CaseId::case3: return "case3";
    }
    return "?";
}

std::string to_string(Outcome o)
{
    switch (o) {
    case Outcome::non_integrable: return "NonIntegrable";
    case Outcome::separable: return "Separable";
    case Outcome::necessary_conditions_survived: return "NecessaryConditionsSurvived";
    case Outcome::unsupported: return "Unsupported";
    }
    return "?";
}

std::string to_string(Pick p)
{
    return p == Pick::first ? "first" : "second";
}

std::string to_string(Row r)
{
    return r == Row::first ? "first" : "second";
}

namespace {

bool all_zero(const std::vector<Rational>& v)
{
    for (const auto& x : v)
        if (sgn(x) != 0)
            return false;
    return true;
}

bool none_zero(const std::vector<Rational>& v)
{
    for (const auto& x : v)
        if (sgn(x) == 0)
            return false;
    return true;
}

std::optional<CaseId> which_case(const ModelParams& p)
{
    const bool c0 = sgn(p.c0_sq) != 0;
    if (!c0 && !p.cj_sq.empty() && none_zero(p.cj_sq))
        return CaseId::case1;
    if (c0 && all_zero(p.cj_sq))
        return CaseId::case2;
    if (c0 && p.cj_sq.size() == 1 && sgn(p.cj_sq.front()) != 0)
        return CaseId::case3;
    return std::nullopt;
}

}

IntegrabilityVerdict classify(const ModelParams& p, const ClassifyOptions& opt)
{
    p.validate();
    const auto c = which_case(p);
    if (sgn(p.g_bf) == 0) {
        IntegrabilityVerdict v;
        v.case_id = c.value_or(CaseId::case2);
        v.outcome = Outcome::separable;
        v.parameters = p;
        v.notes.push_back("g_BF = 0: the Hamiltonian separates");
        return v;
    }
    if (!c)
        throw Error(ErrorKind::out_of_scope,
                    "parameters match none of the three cases; the variational equation does not split");
    switch (*c) {
    case CaseId::case1:
        return galois_verdict_case1(p);
    case CaseId::case2: {
        const EllipticData e = invariants_from_energy(p.omega0, p.c0_sq, opt.energy);
        return analyze_case2(p, e, opt.order).verdict;
    }
    case CaseId::case3: {
        const double action = opt.action > 0 ? opt.action : 2 * action_lower_bound(p.omegas.front(), p.cj_sq.front());
        return analyze_case3(p, action, opt.t0_min, opt.t0_max, opt.t0_samples).verdict;
    }
    }
    throw Error(ErrorKind::out_of_scope, "unknown case");
}

}
