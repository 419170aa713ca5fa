#ifndef BFMIX_VERDICT_HPP
#define BFMIX_VERDICT_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bfmix/lame.hpp"
#include "bfmix/laurent.hpp"
#include "bfmix/model.hpp"

namespace bfmix {

enum class CaseId { case1, case2, case3 };
enum class Outcome { non_integrable, separable, necessary_conditions_survived, unsupported };

std::string to_string(CaseId c);
std::string to_string(Outcome o);

enum class Pick { first, second };
// Rows of X^-1 f for one 2x2 block: first = -sol2 K, second = sol1 K.
enum class Row { first, second };

std::string to_string(Pick p);
std::string to_string(Row r);

// Which VE1 (and VE2) solutions feed the higher variational equations.
struct HigherVEChoice {
    int order = 3;
    Pick xi0 = Pick::first;
    Pick xij = Pick::first;
    Pick xi0_2 = Pick::first;
    Pick xij_2 = Pick::first;
    Row row = Row::first;
    bool operator==(const HigherVEChoice&) const = default;
};

struct HeunWitness {
    double value = 0;
    std::optional<Rational> exact;
    bool operator==(const HeunWitness&) const = default;
};

struct LameMonodromyWitness {
    Rational g_bf;
    bool operator==(const LameMonodromyWitness&) const = default;
};

struct Theorem5Witness {
    size_t mode = 0;
    std::vector<ConditionResidual> failed;
    bool operator==(const Theorem5Witness&) const = default;
};

struct ResidueWitness {
    int order = 0;
    Rational value;
    HigherVEChoice choice;
    std::string component;  // "tangential" or "normal[j]"
    Row row = Row::first;
    bool operator==(const ResidueWitness&) const = default;
};

struct MelnikovZero {
    double t0 = 0;
    double derivative = 0;
    bool operator==(const MelnikovZero&) const = default;
};

struct MelnikovWitness {
    Complex amplitude;
    Complex paper_prefactor;
    std::vector<MelnikovZero> zeros;
    bool operator==(const MelnikovWitness&) const = default;
};

using Witness = std::variant<std::monostate, HeunWitness, LameMonodromyWitness, Theorem5Witness, ResidueWitness, MelnikovWitness>;

struct IntegrabilityVerdict {
    CaseId case_id = CaseId::case2;
    Outcome outcome = Outcome::unsupported;
    Witness witness;
    ModelParams parameters;
    bool conjecture_conditional = false;
    std::vector<std::string> notes;
    bool operator==(const IntegrabilityVerdict&) const = default;
};

struct ClassifyOptions {
    Rational energy = 0;     // case 2 energy level h
    int order = kDefaultOrder;
    double action = 0;       // case 3 action I; 0 picks twice the lower bound
    double t0_min = 0;       // case 3 scan range; empty range means one period
    double t0_max = 0;
    int t0_samples = 64;
};

// Dispatches to the case 1, 2 or 3 analysis; g_bf = 0 short-circuits to Separable.
IntegrabilityVerdict classify(const ModelParams& p, const ClassifyOptions& opt = {});

}

#endif
