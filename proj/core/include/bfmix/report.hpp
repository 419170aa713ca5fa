#ifndef BFMIX_REPORT_HPP
#define BFMIX_REPORT_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "bfmix/errors.hpp"
#include "bfmix/verdict.hpp"

namespace bfmix {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

std::string tool_version();

Json to_json(const Rational& r);   // "p/q" string
Rational rational_from_json(const Json& j);
Json to_json(const Complex& z);    // {"re": .., "im": ..}
Complex complex_from_json(const Json& j);

Json params_to_json(const ModelParams& p);
ModelParams params_from_json(const Json& j);

Json choice_to_json(const HigherVEChoice& c);
HigherVEChoice choice_from_json(const Json& j);

Json witness_to_json(const Witness& w);
Witness witness_from_json(const Json& j);

Json verdict_to_json(const IntegrabilityVerdict& v);
IntegrabilityVerdict verdict_from_json(const Json& j);

// Top-level report; keys in a fixed order.
Json make_report(const std::string& command, const Json& parameters, const std::optional<IntegrabilityVerdict>& v,
                 const Json& details, double timing_ms);
Json error_report(const std::string& command, ErrorKind kind, const std::string& message);

}

#endif
