#include "arbiter/policy.hpp"

#include "arbiter/diagnostics.hpp"
#include "arbiter/rule_lang.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>

namespace arbiter {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(s[0] >= 'a' && s[0] <= 'z')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

[[noreturn]] void fail(Code code, int line, std::string message, std::string subject = {}) {
  Diagnostic d;
  d.code = code;
  d.line = line;
  d.column = line > 0 ? 1 : 0;
  d.message = std::move(message);
  d.subject = std::move(subject);
  throw Error(std::move(d));
}

std::string require_identifier(std::string_view s, int line, std::string_view what) {
  s = trim(s);
  if (!is_identifier(s)) {
    fail(Code::ParseError, line, std::string(what) + " '" + std::string(s) + "' is not an identifier");
  }
  return std::string(s);
}

// Shifts parse positions from a condition snippet onto the policy line.
std::vector<Literal> parse_condition_text(std::string_view text, int line) {
  try {
    auto conds = parse_conditions(text);
    if (conds.empty()) fail(Code::ParseError, line, "empty advanced condition");
    return conds;
  } catch (const Error& e) {
    if (e.code() != Code::ParseError) throw;
    Diagnostic d = e.diagnostic();
    d.message = "in advanced condition: " + d.message;
    d.line = line;
    throw Error(std::move(d));
  }
}

void check_range_restricted(const ScenarioDef& s) {
  std::set<std::string> bound;
  std::set<std::string> used;
  for (const auto& c : *s.advanced_condition) {
    if (std::holds_alternative<DomainAtom>(c)) {
      collect_variables(c, bound);
    } else {
      collect_variables(c, used);
    }
  }
  for (const auto& v : used) {
    if (!bound.count(v)) {
      fail(Code::RangeRestrictionViolation, s.line,
           "variable " + v + " in scenario '" + s.id + "' does not occur in any condition atom", s.id);
    }
  }
}

enum class Section { None, Options, Scenarios, Statements, Preferences };

}  // namespace

std::string ScenarioDef::atom() const { return propositionalize(basic_text); }

const ScenarioDef* PolicyDocument::scenario(std::string_view id) const {
  for (const auto& s : scenarios) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

std::optional<int> PolicyDocument::level(std::string_view id) const {
  std::set<std::string> visiting;
  std::function<std::optional<int>(std::string_view)> go = [&](std::string_view x) -> std::optional<int> {
    for (const auto& s : statements) {
      if (s.id == x) return 0;
    }
    for (const auto& p : preferences) {
      if (p.id != x) continue;
      if (!visiting.insert(p.id).second) return std::nullopt;
      auto l = go(p.stronger);
      visiting.erase(p.id);
      return l ? std::optional<int>(*l + 1) : std::nullopt;
    }
    return std::nullopt;
  };
  return go(id);
}

std::string_view to_string(CompileMode mode) {
  return mode == CompileMode::Basic ? "basic" : "advanced";
}

std::optional<CompileMode> parse_compile_mode(std::string_view text) {
  if (text == "basic") return CompileMode::Basic;
  if (text == "advanced") return CompileMode::Advanced;
  return std::nullopt;
}

std::string propositionalize(std::string_view sentence) {
  std::string out;
  bool pending_underscore = false;
  for (char c : sentence) {
    const auto uc = static_cast<unsigned char>(c);
    if (std::isalnum(uc)) {
      if (pending_underscore && !out.empty()) out += '_';
      pending_underscore = false;
      out += static_cast<char>(std::tolower(uc));
    } else {
      pending_underscore = true;
    }
  }
  if (!out.empty() && !(out[0] >= 'a' && out[0] <= 'z')) out.insert(0, "s_");
  return out;
}

PolicyDocument parse_policy(std::string_view source) {
  PolicyDocument doc;
  Section section = Section::None;
  ScenarioDef* current = nullptr;
  std::set<std::string> ids;
  int line_no = 0;

  auto claim_id = [&](const std::string& id, int line) {
    if (!ids.insert(id).second) fail(Code::ParseError, line, "duplicate id '" + id + "'", id);
  };

  while (!source.empty()) {
    ++line_no;
    const auto nl = source.find('\n');
    std::string_view raw = source.substr(0, nl);
    source = nl == std::string_view::npos ? std::string_view{} : source.substr(nl + 1);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string_view line = trim(raw);
    if (line.empty()) continue;

    if (line.rfind("POLICY", 0) == 0 && (line.size() == 6 || std::isspace(static_cast<unsigned char>(line[6])))) {
      doc.name = require_identifier(line.substr(6), line_no, "policy name");
      continue;
    }
    if (line == "OPTIONS") { section = Section::Options; current = nullptr; continue; }
    if (line == "SCENARIOS") { section = Section::Scenarios; current = nullptr; continue; }
    if (line == "STATEMENTS") { section = Section::Statements; current = nullptr; continue; }
    if (line == "PREFERENCES") { section = Section::Preferences; current = nullptr; continue; }

    switch (section) {
      case Section::None:
        fail(Code::ParseError, line_no, "expected POLICY or a section header before '" + std::string(line) + "'");
      case Section::Options: {
        const std::string opt = require_identifier(line, line_no, "option");
        if (std::find(doc.options.begin(), doc.options.end(), opt) != doc.options.end()) {
          fail(Code::ParseError, line_no, "option '" + opt + "' declared twice", opt);
        }
        doc.options.push_back(opt);
        break;
      }
      case Section::Scenarios: {
        if (line.rfind("advanced:", 0) == 0 || line.rfind("mode:", 0) == 0) {
          if (!current) fail(Code::ParseError, line_no, "continuation line without a scenario");
          if (line.rfind("mode:", 0) == 0) {
            if (trim(line.substr(5)) != "propositional") {
              fail(Code::ParseError, line_no, "unknown scenario mode '" + std::string(trim(line.substr(5))) + "'");
            }
            current->propositional_only = true;
          } else {
            auto conds = parse_condition_text(line.substr(9), line_no);
            if (!current->advanced_condition) current->advanced_condition.emplace();
            for (auto& c : conds) current->advanced_condition->push_back(std::move(c));
          }
          break;
        }
        const auto colon = line.find(':');
        if (colon == std::string_view::npos) {
          fail(Code::ParseError, line_no, "expected 'id: scenario sentence'");
        }
        ScenarioDef s;
        s.id = require_identifier(line.substr(0, colon), line_no, "scenario id");
        s.basic_text = std::string(trim(line.substr(colon + 1)));
        s.line = line_no;
        if (propositionalize(s.basic_text).empty()) {
          fail(Code::ParseError, line_no, "scenario '" + s.id + "' has no text", s.id);
        }
        claim_id(s.id, line_no);
        doc.scenarios.push_back(std::move(s));
        current = &doc.scenarios.back();
        break;
      }
      case Section::Statements: {
        const auto colon = line.find(':');
        const auto arrow = line.find("=>");
        if (colon == std::string_view::npos || arrow == std::string_view::npos || arrow < colon) {
          fail(Code::ParseError, line_no, "expected 'id: scenario => option'");
        }
        DecisionStatement st;
        st.id = require_identifier(line.substr(0, colon), line_no, "statement id");
        st.scenario = require_identifier(line.substr(colon + 1, arrow - colon - 1), line_no, "scenario id");
        st.option = require_identifier(line.substr(arrow + 2), line_no, "option");
        st.line = line_no;
        claim_id(st.id, line_no);
        doc.statements.push_back(std::move(st));
        break;
      }
      case Section::Preferences: {
        const auto colon = line.find(':');
        const auto gt = line.find('>');
        if (colon == std::string_view::npos || gt == std::string_view::npos || gt < colon) {
          fail(Code::ParseError, line_no, "expected 'id: stronger > weaker [when scenario]'");
        }
        PreferenceStatement p;
        p.id = require_identifier(line.substr(0, colon), line_no, "preference id");
        p.stronger = require_identifier(line.substr(colon + 1, gt - colon - 1), line_no, "statement id");
        std::string_view rest = trim(line.substr(gt + 1));
        if (auto when = rest.find(" when "); when != std::string_view::npos) {
          p.context = require_identifier(rest.substr(when + 6), line_no, "scenario id");
          rest = rest.substr(0, when);
        }
        p.weaker = require_identifier(rest, line_no, "statement id");
        p.line = line_no;
        claim_id(p.id, line_no);
        doc.preferences.push_back(std::move(p));
        break;
      }
    }
  }

  if (doc.name.empty()) fail(Code::ParseError, 0, "missing 'POLICY <name>' line");
  if (doc.options.size() < 2) {
    fail(Code::ParseError, 0, "a policy needs at least two options, found " + std::to_string(doc.options.size()));
  }
  for (const auto& s : doc.scenarios) {
    if (s.advanced_condition) check_range_restricted(s);
  }
  for (const auto& st : doc.statements) {
    if (!doc.scenario(st.scenario)) {
      fail(Code::UnknownReference, st.line, "statement '" + st.id + "' uses undeclared scenario '" + st.scenario + "'", st.id);
    }
    if (std::find(doc.options.begin(), doc.options.end(), st.option) == doc.options.end()) {
      fail(Code::UnknownReference, st.line, "statement '" + st.id + "' uses undeclared option '" + st.option + "'", st.id);
    }
  }
  for (const auto& p : doc.preferences) {
    for (const auto* ref : {&p.stronger, &p.weaker}) {
      const bool known = std::any_of(doc.statements.begin(), doc.statements.end(), [&](const auto& s) { return s.id == *ref; }) ||
                         std::any_of(doc.preferences.begin(), doc.preferences.end(), [&](const auto& q) { return q.id == *ref; });
      if (!known) {
        fail(Code::UnknownReference, p.line, "preference '" + p.id + "' references unknown '" + *ref + "'", p.id);
      }
    }
    if (p.context && !doc.scenario(*p.context)) {
      fail(Code::UnknownReference, p.line, "preference '" + p.id + "' uses undeclared scenario '" + *p.context + "'", p.id);
    }
    if (p.stronger == p.weaker) {
      fail(Code::LevelMismatch, p.line, "preference '" + p.id + "' relates '" + p.stronger + "' to itself", p.id);
    }
    const auto a = doc.level(p.stronger);
    const auto b = doc.level(p.weaker);
    if (!a || !b) {
      fail(Code::LevelMismatch, p.line, "preference '" + p.id + "' is part of a preference cycle", p.id);
    }
    if (*a != *b) {
      fail(Code::LevelMismatch, p.line,
           "preference '" + p.id + "' relates '" + p.stronger + "' (level " + std::to_string(*a) + ") and '" +
               p.weaker + "' (level " + std::to_string(*b) + ")",
           p.id);
    }
  }
  return doc;
}

Theory compile_policy(const PolicyDocument& doc, CompileMode mode) {
  Theory theory;
  std::map<std::string, std::string> label_of;
  std::map<int, int> counter;

  auto next_label = [&](int level) {
    const int n = ++counter[level];
    switch (level) {
      case 0: return "r" + std::to_string(n);
      case 1: return "p" + std::to_string(n);
      case 2: return "c" + std::to_string(n);
      default: return "c" + std::to_string(level) + "_" + std::to_string(n);
    }
  };

  auto scenario_conditions = [&](const std::string& id, int line) -> std::vector<Literal> {
    const ScenarioDef& s = *doc.scenario(id);
    if (mode == CompileMode::Advanced && !s.propositional_only) {
      if (!s.advanced_condition) {
        fail(Code::MissingAdvancedCondition, line,
             "scenario '" + s.id + "' has no advanced condition (add 'advanced:' or 'mode: propositional')", s.id);
      }
      return *s.advanced_condition;
    }
    return {DomainAtom{s.atom(), {}}};
  };

  for (const auto& st : doc.statements) {
    RuleClause r;
    r.label = next_label(0);
    r.head = DomainAtom{st.option, {}};
    r.conditions = scenario_conditions(st.scenario, st.line);
    label_of[st.id] = r.label;
    theory.rules.push_back(std::move(r));
  }

  // Preferences may be declared before their targets; assign labels level by
  // level but emit in declaration order.
  std::vector<std::pair<int, const PreferenceStatement*>> prefs;
  int max_level = 0;
  for (const auto& p : doc.preferences) {
    const int level = *doc.level(p.id);
    prefs.emplace_back(level, &p);
    max_level = std::max(max_level, level);
  }
  for (int level = 1; level <= max_level; ++level) {
    for (const auto& [l, p] : prefs) {
      if (l == level) label_of[p->id] = next_label(level);
    }
  }
  for (const auto& [level, p] : prefs) {
    RuleClause r;
    r.label = label_of.at(p->id);
    r.head = Preference{label_of.at(p->stronger), label_of.at(p->weaker)};
    if (p->context) r.conditions = scenario_conditions(*p->context, p->line);
    theory.rules.push_back(std::move(r));
  }

  for (std::size_t i = 0; i < doc.options.size(); ++i) {
    for (std::size_t j = i + 1; j < doc.options.size(); ++j) {
      theory.complements.push_back(ComplementPair{DomainAtom{doc.options[i], {}}, DomainAtom{doc.options[j], {}}});
    }
  }
  check_theory(theory);
  return theory;
}

std::string_view to_string(ScenarioElement::Kind kind) {
  return kind == ScenarioElement::Kind::Numeric ? "numeric" : "propositional";
}

const ScenarioElement* ApplicationMetadata::element(std::string_view id) const {
  for (const auto& e : scenario_elements) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

bool ApplicationMetadata::has_option(std::string_view id) const {
  return std::find(options.begin(), options.end(), id) != options.end();
}

ApplicationMetadata metadata_of(const Theory& theory) {
  ApplicationMetadata md;
  const auto derived = derived_predicates(theory);
  std::set<std::string> abducible_preds;
  for (const auto& a : theory.abducibles) {
    abducible_preds.insert(a.predicate);
    md.abducibles.push_back(render(a));
  }

  std::set<std::string> seen;
  auto visit = [&](const DomainAtom& a) {
    if (derived.count(a.predicate) || abducible_preds.count(a.predicate)) return;
    if (a.arity() > 1 || !seen.insert(a.predicate).second) return;
    md.scenario_elements.push_back(ScenarioElement{
        a.predicate, a.arity() == 0 ? ScenarioElement::Kind::Propositional : ScenarioElement::Kind::Numeric});
  };
  for (const auto& r : theory.rules) {
    for (const auto& c : r.conditions) {
      if (const auto* a = std::get_if<DomainAtom>(&c)) visit(*a);
    }
    for (const auto& p : r.premises) visit(p);
  }

  md.options = theory_options(theory);
  return md;
}

}  // namespace arbiter
