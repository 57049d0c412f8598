#pragma once

#include "arbiter/decision.hpp"
#include "arbiter/diagnostics.hpp"
#include "arbiter/policy.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace arbiter::codec {

using nlohmann::json;

json to_json(const Diagnostic& d);
json to_json(const std::vector<Diagnostic>& diags);
json to_json(const ApplicationMetadata& meta);
json to_json(const GroundRule& rule);
json to_json(const Explanation& expl);

/// Body of POST /applications/{id}/query.
struct QueryRequest {
  std::vector<std::string> facts;
  std::map<std::string, std::vector<Decimal>> bindings;
  std::optional<std::string> abduce_for;
};

/// Parses and checks a request against the application's vocabulary.
/// Bindings accept a number, a decimal string or an array of either.
/// Throws InvalidRequest (malformed JSON or shape), UnknownScenarioElement,
/// InvalidContext (a fact given as a binding or the reverse, bad number),
/// UnknownOption.
QueryRequest parse_query_request(const json& body, const ApplicationMetadata& meta);

QueryContext to_context(const QueryRequest& req);

/// {acceptable_options, ambiguous, explanations, assumptions[, abduction]}
json query_response(const Decision& decision, const std::vector<AbductiveExplanation>* abduction = nullptr);

/// {"error": {...}, "diagnostics": [...]}
json error_body(const Error& e);

}  // namespace arbiter::codec
