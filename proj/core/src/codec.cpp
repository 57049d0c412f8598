#include "arbiter/codec.hpp"

#include "arbiter/rule_lang.hpp"

namespace arbiter::codec {

namespace {

json atoms(const std::vector<DomainAtom>& v) {
  json out = json::array();
  for (const auto& a : v) out.push_back(render(a));
  return out;
}

json literals(const std::vector<Literal>& v) {
  json out = json::array();
  for (const auto& l : v) out.push_back(render(l));
  return out;
}

[[noreturn]] void reject(Code code, const std::string& message, const std::string& subject = {}) {
  throw Error(Diagnostic{Severity::Error, code, message, 0, 0, subject, {}});
}

Decimal number_of(const json& v, const std::string& name) {
  std::optional<Decimal> d;
  if (v.is_number_integer() || v.is_number_unsigned()) {
    d = Decimal::parse(v.dump());
  } else if (v.is_number_float()) {
    // Shortest round-trip text of the double, e.g. 0.5 or 70000.0.
    std::string text = v.dump();
    if (text.size() > 2 && text.compare(text.size() - 2, 2, ".0") == 0) text.resize(text.size() - 2);
    d = Decimal::parse(text);
  } else if (v.is_string()) {
    d = Decimal::parse(v.get<std::string>());
  }
  if (!d) reject(Code::InvalidContext, "binding '" + name + "' is not a decimal number: " + v.dump(), name);
  return *d;
}

}  // namespace

json to_json(const Diagnostic& d) {
  json j{{"severity", std::string(to_string(d.severity))},
         {"code", std::string(to_string(d.code))},
         {"message", d.message}};
  if (d.line > 0) {
    j["line"] = d.line;
    j["column"] = d.column;
  }
  if (!d.subject.empty()) j["subject"] = d.subject;
  if (!d.expected.empty()) j["expected"] = d.expected;
  return j;
}

json to_json(const std::vector<Diagnostic>& diags) {
  json out = json::array();
  for (const auto& d : diags) out.push_back(to_json(d));
  return out;
}

json to_json(const ApplicationMetadata& meta) {
  json elements = json::array();
  for (const auto& e : meta.scenario_elements) {
    elements.push_back({{"id", e.id}, {"kind", std::string(to_string(e.kind))}});
  }
  json j{{"options", meta.options}, {"scenario_elements", elements}};
  if (!meta.abducibles.empty()) j["abducibles"] = meta.abducibles;
  return j;
}

json to_json(const GroundRule& rule) {
  return json{{"instance_id", rule.instance_id},
              {"schema_label", rule.schema_label},
              {"level", rule.level},
              {"head", render(rule.head)},
              {"premises", atoms(rule.premises)},
              {"conditions", literals(rule.conditions)},
              {"facts_used", atoms(rule.facts_used)},
              {"assumptions", atoms(rule.assumptions)}};
}

json to_json(const Explanation& expl) {
  json decision = json::array();
  for (const auto& r : expl.decision_rules) decision.push_back(to_json(r));
  json priority = json::array();
  for (const auto& r : expl.priority_rules) priority.push_back(to_json(r));
  json defeated = json::array();
  for (const auto& d : expl.defeated) {
    defeated.push_back({{"competing_option", d.competing_option},
                        {"competing_rule", d.competing_rule},
                        {"competing_schema", d.competing_schema},
                        {"rule", d.rule},
                        {"chain", d.chain}});
  }
  return json{{"option", expl.option},
              {"decision_rules", decision},
              {"priority_rules", priority},
              {"facts_used", atoms(expl.facts_used)},
              {"assumptions", atoms(expl.assumptions)},
              {"defeated", defeated},
              {"text", render_text(expl)}};
}

QueryRequest parse_query_request(const json& body, const ApplicationMetadata& meta) {
  if (!body.is_object()) reject(Code::InvalidRequest, "query body must be a JSON object");
  for (const auto& [key, value] : body.items()) {
    if (key != "facts" && key != "bindings" && key != "abduce_for") {
      reject(Code::InvalidRequest, "unknown request field '" + key + "'", key);
    }
  }

  QueryRequest req;
  if (body.contains("facts")) {
    const json& facts = body["facts"];
    if (!facts.is_array()) reject(Code::InvalidRequest, "'facts' must be an array of scenario element ids");
    for (const auto& f : facts) {
      if (!f.is_string()) reject(Code::InvalidRequest, "fact ids must be strings: " + f.dump());
      const auto id = f.get<std::string>();
      const ScenarioElement* e = meta.element(id);
      if (!e) reject(Code::UnknownScenarioElement, "unknown scenario element '" + id + "'", id);
      if (e->kind != ScenarioElement::Kind::Propositional) {
        reject(Code::InvalidContext, "'" + id + "' is numeric and needs a binding, not a fact", id);
      }
      req.facts.push_back(id);
    }
  }

  if (body.contains("bindings")) {
    const json& bindings = body["bindings"];
    if (!bindings.is_object()) reject(Code::InvalidRequest, "'bindings' must be an object of name -> number");
    for (const auto& [name, value] : bindings.items()) {
      const ScenarioElement* e = meta.element(name);
      if (!e) reject(Code::UnknownScenarioElement, "unknown scenario element '" + name + "'", name);
      if (e->kind != ScenarioElement::Kind::Numeric) {
        reject(Code::InvalidContext, "'" + name + "' is propositional and goes in facts, not bindings", name);
      }
      auto& values = req.bindings[name];
      if (value.is_array()) {
        for (const auto& v : value) values.push_back(number_of(v, name));
      } else {
        values.push_back(number_of(value, name));
      }
    }
  }

  if (body.contains("abduce_for") && !body["abduce_for"].is_null()) {
    const json& target = body["abduce_for"];
    if (!target.is_string()) reject(Code::InvalidRequest, "'abduce_for' must be an option id");
    const auto option = target.get<std::string>();
    if (!meta.has_option(option)) reject(Code::UnknownOption, "unknown option '" + option + "'", option);
    req.abduce_for = option;
  }
  return req;
}

QueryContext to_context(const QueryRequest& req) {
  QueryContext ctx;
  ctx.facts.insert(req.facts.begin(), req.facts.end());
  ctx.bindings = req.bindings;
  return ctx;
}

json query_response(const Decision& decision, const std::vector<AbductiveExplanation>* abduction) {
  json explanations = json::array();
  for (const auto& option : decision.result.acceptable_options) {
    auto it = decision.explanations.find(option);
    if (it == decision.explanations.end()) continue;
    for (const auto& e : it->second) explanations.push_back(to_json(e));
  }
  json j{{"acceptable_options", decision.result.acceptable_options},
         {"ambiguous", decision.result.ambiguous},
         {"explanations", explanations},
         {"assumptions", atoms(decision.result.assumptions_used)}};
  if (abduction) {
    json sets = json::array();
    for (const auto& a : *abduction) {
      sets.push_back({{"assumptions", atoms(a.assumptions)}, {"explanation", to_json(a.explanation)}});
    }
    j["abduction"] = sets;
  }
  return j;
}

json error_body(const Error& e) {
  json diags;
  if (const auto* all = dynamic_cast<const DiagnosticsError*>(&e)) {
    diags = to_json(all->diagnostics());
  } else {
    diags = json::array({to_json(e.diagnostic())});
  }
  return json{{"error", {{"code", std::string(to_string(e.code()))}, {"message", e.diagnostic().message}}},
              {"diagnostics", diags}};
}

}  // namespace arbiter::codec
