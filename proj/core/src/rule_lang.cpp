#include "arbiter/rule_lang.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>
#include <unordered_set>

namespace arbiter {

namespace {

enum class Tok {
  Ident,
  Var,
  Number,
  LParen,
  RParen,
  LBrack,
  RBrack,
  Comma,
  Dot,
  Neck,
  Gt,
  Lt,
  Ge,
  Le,
  Eq,
  Plus,
  Minus,
  Star,
  Slash,
  Pow,
  End,
};

std::string describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Var: return "variable";
    case Tok::Number: return "number";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrack: return "'['";
    case Tok::RBrack: return "']'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Neck: return "':-'";
    case Tok::Gt: return "'>'";
    case Tok::Lt: return "'<'";
    case Tok::Ge: return "'>='";
    case Tok::Le: return "'=<'";
    case Tok::Eq: return "'='";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Pow: return "'**'";
    case Tok::End: return "end of input";
  }
  return "token";
}

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int column = 1;
};

bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_upper(char c) { return (c >= 'A' && c <= 'Z') || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_char(char c) { return is_lower(c) || is_upper(c) || is_digit(c); }

[[noreturn]] void fail_at(int line, int column, std::string message,
                          std::vector<std::string> expected = {}) {
  Diagnostic d;
  d.severity = Severity::Error;
  d.code = Code::ParseError;
  d.message = std::move(message);
  d.line = line;
  d.column = column;
  d.expected = std::move(expected);
  throw Error(std::move(d));
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto push = [&](Tok kind, std::size_t len) {
    out.push_back(Token{kind, std::string(src.substr(i, len)), line, col});
    advance(len);
  };

  while (i < src.size()) {
    const char c = src[i];
    const char next = i + 1 < src.size() ? src[i + 1] : '\0';
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
    } else if (c == '%') {
      while (i < src.size() && src[i] != '\n') advance(1);
    } else if (is_lower(c) || is_upper(c)) {
      std::size_t j = i;
      while (j < src.size() && is_ident_char(src[j])) ++j;
      push(is_lower(c) ? Tok::Ident : Tok::Var, j - i);
    } else if (is_digit(c)) {
      std::size_t j = i;
      while (j < src.size() && is_digit(src[j])) ++j;
      if (j + 1 < src.size() && src[j] == '.' && is_digit(src[j + 1])) {
        ++j;
        while (j < src.size() && is_digit(src[j])) ++j;
      }
      push(Tok::Number, j - i);
    } else if (c == ':' && next == '-') {
      push(Tok::Neck, 2);
    } else if (c == '*' && next == '*') {
      push(Tok::Pow, 2);
    } else if (c == '>' && next == '=') {
      push(Tok::Ge, 2);
    } else if (c == '=' && next == '<') {
      push(Tok::Le, 2);
    } else if (c == '<' && next == '=') {
      fail_at(line, col, "'<=' is not an operator; less-or-equal is written '=<'");
    } else {
      Tok kind;
      switch (c) {
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case '[': kind = Tok::LBrack; break;
        case ']': kind = Tok::RBrack; break;
        case ',': kind = Tok::Comma; break;
        case '.': kind = Tok::Dot; break;
        case '>': kind = Tok::Gt; break;
        case '<': kind = Tok::Lt; break;
        case '=': kind = Tok::Eq; break;
        case '+': kind = Tok::Plus; break;
        case '-': kind = Tok::Minus; break;
        case '*': kind = Tok::Star; break;
        case '/': kind = Tok::Slash; break;
        default:
          fail_at(line, col, "unexpected character '" + std::string(1, c) + "'");
      }
      push(kind, 1);
    }
  }
  out.push_back(Token{Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : tokens_(lex(src)) {}

  Theory theory() {
    Theory t;
    while (!at(Tok::End)) clause(t);
    return t;
  }

  std::vector<Literal> condition_list() {
    std::vector<Literal> out;
    if (at(Tok::End)) return out;
    out.push_back(condition());
    while (accept(Tok::Comma)) out.push_back(condition());
    expect({Tok::End});
    return out;
  }

  DomainAtom single_atom() {
    DomainAtom a = domain_atom();
    expect({Tok::End});
    return a;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  bool at(Tok k) const { return peek().kind == k; }
  bool accept(Tok k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }

  [[noreturn]] void unexpected(std::vector<Tok> expected) const {
    std::vector<std::string> names;
    for (Tok e : expected) names.push_back(describe(e));
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    fail_at(t.line, t.column, "unexpected " + found, std::move(names));
  }

  Token expect(std::vector<Tok> expected) {
    for (Tok e : expected) {
      if (at(e)) return tokens_[pos_++];
    }
    unexpected(std::move(expected));
  }

  Token keyword(std::string_view word) {
    if (!at(Tok::Ident) || peek().text != word) {
      const Token& t = peek();
      fail_at(t.line, t.column, "unexpected '" + t.text + "'", {"'" + std::string(word) + "'"});
    }
    return tokens_[pos_++];
  }

  void clause(Theory& t) {
    const Token& head = peek();
    if (!at(Tok::Ident)) {
      fail_at(head.line, head.column,
              "unexpected " + (head.kind == Tok::End ? std::string("end of input") : "'" + head.text + "'"),
              {"'rule'", "'complement'", "'abducible'"});
    }
    if (head.text == "rule") {
      t.rules.push_back(rule());
    } else if (head.text == "complement") {
      ++pos_;
      expect({Tok::LParen});
      DomainAtom a = domain_atom();
      expect({Tok::Comma});
      DomainAtom b = domain_atom();
      expect({Tok::RParen});
      expect({Tok::Dot});
      const bool known = std::any_of(t.complements.begin(), t.complements.end(),
                                     [&](const ComplementPair& p) { return p.matches(a, b); });
      if (!known) t.complements.push_back(ComplementPair{std::move(a), std::move(b)});
    } else if (head.text == "abducible") {
      ++pos_;
      expect({Tok::LParen});
      DomainAtom a = domain_atom();
      expect({Tok::RParen});
      expect({Tok::Dot});
      if (std::find(t.abducibles.begin(), t.abducibles.end(), a) == t.abducibles.end()) {
        t.abducibles.push_back(std::move(a));
      }
    } else {
      fail_at(head.line, head.column, "unknown clause '" + head.text + "'",
              {"'rule'", "'complement'", "'abducible'"});
    }
  }

  RuleClause rule() {
    RuleClause r;
    r.line = keyword("rule").line;
    expect({Tok::LParen});
    r.label = expect({Tok::Ident}).text;
    expect({Tok::Comma});
    if (at(Tok::Ident) && peek().text == "prefer" && peek(1).kind == Tok::LParen) {
      pos_ += 2;
      Preference p;
      p.stronger = expect({Tok::Ident}).text;
      expect({Tok::Comma});
      p.weaker = expect({Tok::Ident}).text;
      expect({Tok::RParen});
      r.head = std::move(p);
    } else {
      r.head = domain_atom();
    }
    expect({Tok::Comma});
    expect({Tok::LBrack});
    if (!at(Tok::RBrack)) {
      r.premises.push_back(domain_atom());
      while (accept(Tok::Comma)) r.premises.push_back(domain_atom());
    }
    expect({Tok::RBrack});
    expect({Tok::RParen});
    if (accept(Tok::Neck)) {
      r.conditions.push_back(condition());
      while (accept(Tok::Comma)) r.conditions.push_back(condition());
    }
    expect({Tok::Dot});
    return r;
  }

  DomainAtom domain_atom() {
    const Token name = expect({Tok::Ident});
    if (name.text == "prefer") {
      fail_at(name.line, name.column, "prefer/2 may only appear as a rule head");
    }
    DomainAtom a;
    a.predicate = name.text;
    if (accept(Tok::LParen)) {
      a.args.push_back(plain_term());
      while (accept(Tok::Comma)) a.args.push_back(plain_term());
      expect({Tok::RParen});
    }
    return a;
  }

  // Argument of a domain atom: no arithmetic.
  Term plain_term() {
    if (at(Tok::Var)) return Term::var(tokens_[pos_++].text);
    if (at(Tok::Number) || at(Tok::Minus)) return number();
    if (at(Tok::Ident)) {
      std::string name = tokens_[pos_++].text;
      if (!accept(Tok::LParen)) return Term::atom(std::move(name));
      std::vector<Term> args;
      args.push_back(plain_term());
      while (accept(Tok::Comma)) args.push_back(plain_term());
      expect({Tok::RParen});
      return Term::compound(std::move(name), std::move(args));
    }
    unexpected({Tok::Var, Tok::Number, Tok::Ident});
  }

  Term number() {
    const bool negative = accept(Tok::Minus);
    const Token tok = expect({Tok::Number});
    auto d = Decimal::parse(tok.text);
    if (!d) fail_at(tok.line, tok.column, "malformed number '" + tok.text + "'");
    return Term::num(negative ? -*d : *d);
  }

  Literal condition() {
    if (at(Tok::Ident)) return domain_atom();
    Comparison c;
    c.lhs = expr();
    const Token op = expect({Tok::Gt, Tok::Lt, Tok::Ge, Tok::Le, Tok::Eq});
    switch (op.kind) {
      case Tok::Gt: c.op = CmpOp::Gt; break;
      case Tok::Lt: c.op = CmpOp::Lt; break;
      case Tok::Ge: c.op = CmpOp::Ge; break;
      case Tok::Le: c.op = CmpOp::Le; break;
      default: c.op = CmpOp::Eq; break;
    }
    c.rhs = expr();
    return c;
  }

  // expr   := factor (('+'|'-') factor)*
  // factor := power (('*'|'/') power)*
  // power  := primary ['**' primary]
  Term expr() {
    Term lhs = factor();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      const ArithOp op = tokens_[pos_++].kind == Tok::Plus ? ArithOp::Add : ArithOp::Sub;
      lhs = Term::arith(op, std::move(lhs), factor());
    }
    return lhs;
  }

  Term factor() {
    Term lhs = power();
    while (at(Tok::Star) || at(Tok::Slash)) {
      const ArithOp op = tokens_[pos_++].kind == Tok::Star ? ArithOp::Mul : ArithOp::Div;
      lhs = Term::arith(op, std::move(lhs), power());
    }
    return lhs;
  }

  Term power() {
    Term base = primary();
    if (accept(Tok::Pow)) return Term::arith(ArithOp::Pow, std::move(base), primary());
    return base;
  }

  Term primary() {
    if (at(Tok::Var)) return Term::var(tokens_[pos_++].text);
    if (at(Tok::Number) || at(Tok::Minus)) return number();
    if (accept(Tok::LParen)) {
      Term inner = expr();
      expect({Tok::RParen});
      return inner;
    }
    if (at(Tok::Ident)) {
      const Token& t = peek();
      fail_at(t.line, t.column, "atom '" + t.text + "' cannot be an arithmetic operand",
              {describe(Tok::Var), describe(Tok::Number), describe(Tok::LParen)});
    }
    unexpected({Tok::Var, Tok::Number, Tok::LParen, Tok::Minus});
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// ---- rendering ----

int precedence(ArithOp op) {
  switch (op) {
    case ArithOp::Add:
    case ArithOp::Sub: return 500;
    case ArithOp::Mul:
    case ArithOp::Div: return 400;
    case ArithOp::Pow: return 200;
  }
  return 0;
}

void render_term(const Term& t, std::string& out, int max_prec, bool parenthesize_pow) {
  switch (t.kind) {
    case Term::Kind::Atom:
    case Term::Kind::Variable: out += t.name; return;
    case Term::Kind::Number: out += t.number.to_string(); return;
    case Term::Kind::Compound:
      out += t.name;
      out += '(';
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i) out += ',';
        render_term(t.args[i], out, 1200, false);
      }
      out += ')';
      return;
    case Term::Kind::Arith: {
      const int prec = precedence(t.op);
      // `**` is always bracketed when nested, which keeps `O*((1+X)**2)` readable.
      const bool parens = prec > max_prec || (t.op == ArithOp::Pow && parenthesize_pow);
      if (parens) out += '(';
      const int left_max = t.op == ArithOp::Pow ? prec - 1 : prec;
      render_term(t.args[0], out, left_max, true);
      out += to_string(t.op);
      render_term(t.args[1], out, prec - 1, true);
      if (parens) out += ')';
      return;
    }
  }
}

}  // namespace

std::string render(const Term& term) {
  std::string out;
  render_term(term, out, 1200, false);
  return out;
}

std::string render(const DomainAtom& atom) {
  std::string out = atom.predicate;
  if (!atom.args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < atom.args.size(); ++i) {
      if (i) out += ',';
      out += render(atom.args[i]);
    }
    out += ')';
  }
  return out;
}

std::string render(const Literal& literal) {
  return std::visit(
      [](const auto& l) -> std::string {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, DomainAtom>) {
          return render(l);
        } else if constexpr (std::is_same_v<T, Comparison>) {
          return render(l.lhs) + std::string(to_string(l.op)) + render(l.rhs);
        } else {
          return "prefer(" + l.stronger + "," + l.weaker + ")";
        }
      },
      literal);
}

std::string render(const RuleClause& rule) {
  std::string out = "rule(" + rule.label + "," + render(rule.head) + ",[";
  for (std::size_t i = 0; i < rule.premises.size(); ++i) {
    if (i) out += ',';
    out += render(rule.premises[i]);
  }
  out += "])";
  if (!rule.conditions.empty()) {
    out += ":-";
    for (std::size_t i = 0; i < rule.conditions.size(); ++i) {
      if (i) out += ",";
      out += render(rule.conditions[i]);
    }
  }
  out += '.';
  return out;
}

std::string render_theory(const Theory& theory) {
  std::string out;
  for (const auto& r : theory.rules) {
    out += render(r);
    out += '\n';
  }
  for (const auto& c : theory.complements) {
    out += "complement(" + render(c.first) + "," + render(c.second) + ").\n";
    out += "complement(" + render(c.second) + "," + render(c.first) + ").\n";
  }
  for (const auto& a : theory.abducibles) {
    out += "abducible(" + render(a) + ").\n";
  }
  return out;
}

void collect_variables(const Term& term, std::set<std::string>& out) {
  if (term.kind == Term::Kind::Variable) out.insert(term.name);
  for (const auto& a : term.args) collect_variables(a, out);
}

void collect_variables(const Literal& literal, std::set<std::string>& out) {
  if (const auto* a = std::get_if<DomainAtom>(&literal)) {
    for (const auto& t : a->args) collect_variables(t, out);
  } else if (const auto* c = std::get_if<Comparison>(&literal)) {
    collect_variables(c->lhs, out);
    collect_variables(c->rhs, out);
  }
}

std::map<std::string, int> rule_levels(const Theory& theory) {
  std::unordered_map<std::string, const RuleClause*> by_label;
  for (const auto& r : theory.rules) by_label.emplace(r.label, &r);

  std::map<std::string, int> levels;
  std::unordered_set<std::string> in_progress;

  std::function<int(const RuleClause&)> visit = [&](const RuleClause& r) -> int {
    if (auto it = levels.find(r.label); it != levels.end()) return it->second;
    const auto* pref = std::get_if<Preference>(&r.head);
    if (!pref) return levels[r.label] = 0;
    if (!in_progress.insert(r.label).second) {
      Diagnostic d{Severity::Error, Code::StratificationError,
                   "preference cycle through rule '" + r.label + "'", r.line, 1, r.label, {}};
      throw Error(std::move(d));
    }
    auto target = [&](const std::string& label) -> const RuleClause& {
      auto it = by_label.find(label);
      if (it == by_label.end()) {
        Diagnostic d{Severity::Error, Code::DanglingPreferTarget,
                     "rule '" + r.label + "' prefers unknown rule '" + label + "'", r.line, 1,
                     r.label, {}};
        throw Error(std::move(d));
      }
      return *it->second;
    };
    const int a = visit(target(pref->stronger));
    const int b = visit(target(pref->weaker));
    if (a != b) {
      Diagnostic d{Severity::Error, Code::StratificationError,
                   "rule '" + r.label + "' relates '" + pref->stronger + "' (level " +
                       std::to_string(a) + ") and '" + pref->weaker + "' (level " +
                       std::to_string(b) + ")",
                   r.line, 1, r.label, {}};
      throw Error(std::move(d));
    }
    in_progress.erase(r.label);
    return levels[r.label] = a + 1;
  };

  for (const auto& r : theory.rules) visit(r);
  return levels;
}

int level_of(const Theory& theory, std::string_view label) {
  const auto levels = rule_levels(theory);
  auto it = levels.find(std::string(label));
  if (it == levels.end()) {
    throw Error(Code::UnknownReference, "no rule labelled '" + std::string(label) + "'");
  }
  return it->second;
}

std::set<std::string> derived_predicates(const Theory& theory) {
  std::set<std::string> out;
  for (const auto& r : theory.rules) {
    if (const auto* a = std::get_if<DomainAtom>(&r.head)) out.insert(a->predicate);
  }
  return out;
}

std::set<std::string> body_predicates(const Theory& theory) {
  std::set<std::string> out;
  for (const auto& r : theory.rules) {
    for (const auto& p : r.premises) out.insert(p.predicate);
    for (const auto& c : r.conditions) {
      if (const auto* a = std::get_if<DomainAtom>(&c)) out.insert(a->predicate);
    }
  }
  return out;
}

std::vector<std::string> theory_options(const Theory& theory) {
  const auto in_body = body_predicates(theory);
  std::vector<std::string> out;
  auto add = [&](const DomainAtom& a) {
    if (in_body.count(a.predicate)) return;
    std::string id = render(a);
    if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(std::move(id));
  };
  for (const auto& c : theory.complements) {
    add(c.first);
    add(c.second);
  }
  for (const auto& r : theory.rules) {
    if (const auto* a = std::get_if<DomainAtom>(&r.head)) add(*a);
  }
  return out;
}

void check_theory(const Theory& t) {
  std::unordered_map<std::string, int> seen;
  for (const auto& r : t.rules) {
    auto [it, inserted] = seen.emplace(r.label, r.line);
    if (!inserted) {
      Diagnostic d{Severity::Error, Code::DuplicateLabel,
                   "label '" + r.label + "' already used on line " + std::to_string(it->second),
                   r.line, 1, r.label, {}};
      throw Error(std::move(d));
    }
  }
  for (const auto& r : t.rules) {
    if (const auto* p = std::get_if<Preference>(&r.head)) {
      for (const auto* target : {&p->stronger, &p->weaker}) {
        if (!seen.count(*target)) {
          Diagnostic d{Severity::Error, Code::DanglingPreferTarget,
                       "rule '" + r.label + "' prefers unknown rule '" + *target + "'", r.line, 1,
                       r.label, {}};
          throw Error(std::move(d));
        }
      }
    }
    std::set<std::string> bound;
    for (const auto& c : r.conditions) {
      if (std::holds_alternative<DomainAtom>(c)) collect_variables(c, bound);
    }
    std::set<std::string> used;
    collect_variables(r.head, used);
    for (const auto& p : r.premises) collect_variables(Literal{p}, used);
    for (const auto& c : r.conditions) {
      if (std::holds_alternative<Comparison>(c)) collect_variables(c, used);
    }
    for (const auto& v : used) {
      if (!bound.count(v)) {
        Diagnostic d{Severity::Error, Code::RangeRestrictionViolation,
                     "variable " + v + " in rule '" + r.label +
                         "' does not occur in any condition atom",
                     r.line, 1, r.label, {}};
        throw Error(std::move(d));
      }
    }
  }
  rule_levels(t);
}

Theory parse_theory(std::string_view source) {
  Theory t = Parser(source).theory();
  check_theory(t);
  return t;
}

std::vector<Literal> parse_conditions(std::string_view text) {
  return Parser(text).condition_list();
}

DomainAtom parse_atom(std::string_view text) {
  return Parser(text).single_atom();
}

}  // namespace arbiter
