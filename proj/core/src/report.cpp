#include "bfmix/report.hpp"

namespace bfmix {

#ifndef BFMIX_VERSION_STRING
#define BFMIX_VERSION_STRING "0.0.0"
#endif

std::string tool_version()
{
    return BFMIX_VERSION_STRING;
}

namespace {

Json rationals(const std::vector<Rational>& v)
{
    Json a = Json::array();
    for (const auto& x : v)
        a.push_back(to_json(x));
    return a;
}

std::vector<Rational> rationals_from(const Json& j)
{
    std::vector<Rational> v;
    for (const auto& x : j)
        v.push_back(rational_from_json(x));
    return v;
}

Pick pick_from(const std::string& s)
{
    if (s == "first")
        return Pick::first;
    if (s == "second")
        return Pick::second;
    throw Error(ErrorKind::usage, "bad solution pick '" + s + "'");
}

Row row_from(const std::string& s)
{
    return pick_from(s) == Pick::first ? Row::first : Row::second;
}

CaseId case_from(const std::string& s)
{
    for (CaseId c : {CaseId::case1, CaseId::case2, CaseId::case3})
        if (to_string(c) == s)
            return c;
    throw Error(ErrorKind::usage, "bad case id '" + s + "'");
}

Outcome outcome_from(const std::string& s)
{
    for (Outcome o : {Outcome::non_integrable, Outcome::separable, Outcome::necessary_conditions_survived,
                      Outcome::unsupported})
        if (to_string(o) == s)
            return o;
    throw Error(ErrorKind::usage, "bad outcome '" + s + "'");
}

}

Json to_json(const Rational& r)
{
    return to_string(r);
}

Rational rational_from_json(const Json& j)
{
    if (!j.is_string())
        throw Error(ErrorKind::usage, "exact values must be strings");
    return parse_rational(j.get<std::string>());
}

Json to_json(const Complex& z)
{
    Json j;
    j["re"] = z.real();
    j["im"] = z.imag();
    return j;
}

Complex complex_from_json(const Json& j)
{
    return {j.at("re").get<double>(), j.at("im").get<double>()};
}

Json params_to_json(const ModelParams& p)
{
    Json j;
    j["omega0"] = to_json(p.omega0);
    j["omegas"] = rationals(p.omegas);
    j["c0_sq"] = to_json(p.c0_sq);
    j["cj_sq"] = rationals(p.cj_sq);
    j["g_bf"] = to_json(p.g_bf);
    j["c_sum"] = p.c_sum ? to_json(*p.c_sum) : Json(nullptr);
    return j;
}

ModelParams params_from_json(const Json& j)
{
    ModelParams p;
    p.omega0 = rational_from_json(j.at("omega0"));
    p.omegas = rationals_from(j.at("omegas"));
    p.c0_sq = rational_from_json(j.at("c0_sq"));
    p.cj_sq = rationals_from(j.at("cj_sq"));
    p.g_bf = rational_from_json(j.at("g_bf"));
    if (j.contains("c_sum") && !j.at("c_sum").is_null())
        p.c_sum = rational_from_json(j.at("c_sum"));
    return p;
}

Json choice_to_json(const HigherVEChoice& c)
{
    Json j;
    j["order"] = c.order;
    j["xi0"] = to_string(c.xi0);
    j["xij"] = to_string(c.xij);
    j["xi0_2"] = to_string(c.xi0_2);
    j["xij_2"] = to_string(c.xij_2);
    j["row"] = to_string(c.row);
    return j;
}

HigherVEChoice choice_from_json(const Json& j)
{
    HigherVEChoice c;
    c.order = j.at("order").get<int>();
    c.xi0 = pick_from(j.at("xi0").get<std::string>());
    c.xij = pick_from(j.at("xij").get<std::string>());
    c.xi0_2 = pick_from(j.at("xi0_2").get<std::string>());
    c.xij_2 = pick_from(j.at("xij_2").get<std::string>());
    c.row = row_from(j.at("row").get<std::string>());
    return c;
}

Json witness_to_json(const Witness& w)
{
    Json j;
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                j["kind"] = "none";
            } else if constexpr (std::is_same_v<T, HeunWitness>) {
                j["kind"] = "heun_B";
                j["B"] = x.value;
                j["B_exact"] = x.exact ? to_json(*x.exact) : Json(nullptr);
            } else if constexpr (std::is_same_v<T, LameMonodromyWitness>) {
                j["kind"] = "lame_monodromy";
                j["g_bf"] = to_json(x.g_bf);
            } else if constexpr (std::is_same_v<T, Theorem5Witness>) {
                j["kind"] = "theorem5_failure";
                j["mode"] = x.mode;
                Json c = Json::array();
                for (const auto& f : x.failed)
                    c.push_back(Json{{"id", f.id}, {"value", to_json(f.value)}});
                j["conditions"] = c;
            } else if constexpr (std::is_same_v<T, ResidueWitness>) {
                j["kind"] = "ve_residue";
                j["order"] = x.order;
                j["residue"] = to_json(x.value);
                j["component"] = x.component;
                j["row"] = to_string(x.row);
                j["choice"] = choice_to_json(x.choice);
            } else {
                j["kind"] = "melnikov";
                j["amplitude"] = to_json(x.amplitude);
                j["paper_prefactor"] = to_json(x.paper_prefactor);
                Json z = Json::array();
                for (const auto& e : x.zeros)
                    z.push_back(Json{{"t0", e.t0}, {"derivative", e.derivative}});
                j["zeros"] = z;
            }
        },
        w);
    return j;
}

Witness witness_from_json(const Json& j)
{
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "none")
        return std::monostate{};
    if (kind == "heun_B") {
        HeunWitness w;
        w.value = j.at("B").get<double>();
        if (!j.at("B_exact").is_null())
            w.exact = rational_from_json(j.at("B_exact"));
        return w;
    }
    if (kind == "lame_monodromy")
        return LameMonodromyWitness{rational_from_json(j.at("g_bf"))};
    if (kind == "theorem5_failure") {
        Theorem5Witness w;
        w.mode = j.at("mode").get<size_t>();
        for (const auto& c : j.at("conditions"))
            w.failed.push_back({c.at("id").get<std::string>(), rational_from_json(c.at("value"))});
        return w;
    }
    if (kind == "ve_residue") {
        ResidueWitness w;
        w.order = j.at("order").get<int>();
        w.value = rational_from_json(j.at("residue"));
        w.component = j.at("component").get<std::string>();
        w.row = row_from(j.at("row").get<std::string>());
        w.choice = choice_from_json(j.at("choice"));
        return w;
    }
    if (kind == "melnikov") {
        MelnikovWitness w;
        w.amplitude = complex_from_json(j.at("amplitude"));
        w.paper_prefactor = complex_from_json(j.at("paper_prefactor"));
        for (const auto& z : j.at("zeros"))
            w.zeros.push_back({z.at("t0").get<double>(), z.at("derivative").get<double>()});
        return w;
    }
    throw Error(ErrorKind::usage, "unknown witness kind '" + kind + "'");
}

Json verdict_to_json(const IntegrabilityVerdict& v)
{
    Json j;
    j["case"] = to_string(v.case_id);
    j["outcome"] = to_string(v.outcome);
    j["conjecture_conditional"] = v.conjecture_conditional;
    j["parameters"] = params_to_json(v.parameters);
    j["witness"] = witness_to_json(v.witness);
    j["notes"] = v.notes;
    return j;
}

IntegrabilityVerdict verdict_from_json(const Json& j)
{
    IntegrabilityVerdict v;
    v.case_id = case_from(j.at("case").get<std::string>());
    v.outcome = outcome_from(j.at("outcome").get<std::string>());
    v.conjecture_conditional = j.at("conjecture_conditional").get<bool>();
    v.parameters = params_from_json(j.at("parameters"));
    v.witness = witness_from_json(j.at("witness"));
    v.notes = j.at("notes").get<std::vector<std::string>>();
    return v;
}

Json make_report(const std::string& command, const Json& parameters, const std::optional<IntegrabilityVerdict>& v,
                 const Json& details, double timing_ms)
{
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["tool"] = Json{{"name", "bfmix"}, {"version", tool_version()}};
    j["command"] = command;
    j["parameters"] = parameters;
    j["verdict"] = v ? verdict_to_json(*v) : Json(nullptr);
    j["details"] = details;
    j["timing_ms"] = timing_ms;
    return j;
}

Json error_report(const std::string& command, ErrorKind kind, const std::string& message)
{
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["tool"] = Json{{"name", "bfmix"}, {"version", tool_version()}};
    j["command"] = command;
    j["error"] = Json{{"kind", to_string(kind)}, {"message", message}};
    return j;
}

}
