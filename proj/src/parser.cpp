#include "supkit/parser.hpp"

#include <cctype>
#include <vector>

namespace supkit {

namespace {

enum class Tok { Ident, Param, LParen, RParen, Comma, Dot, Not, And, Or, Imp, Iff, Eq, Sup, Forall, Exists, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Param: return "parameter";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Not: return "'~'";
    case Tok::And: return "'/\\'";
    case Tok::Or: return "'\\/'";
    case Tok::Imp: return "'->'";
    case Tok::Iff: return "'<->'";
    case Tok::Eq: return "'='";
    case Tok::Sup: return "'sup'";
    case Tok::Forall: return "'forall'";
    case Tok::Exists: return "'exists'";
    case Tok::End: return "end of input";
  }
  return "?";
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    auto two = [&](std::string_view op) { return s.substr(i, op.size()) == op; };
    if (ident_start(c)) {
      while (i < s.size() && ident_char(s[i])) ++i;
      std::string word(s.substr(start, i - start));
      Tok kind = Tok::Ident;
      if (word == "sup") kind = Tok::Sup;
      else if (word == "forall") kind = Tok::Forall;
      else if (word == "exists") kind = Tok::Exists;
      out.push_back({kind, std::move(word), start});
      continue;
    }
    if (c == '@') {
      ++i;
      while (i < s.size() && ident_char(s[i])) ++i;
      if (i == start + 1) throw ParseError("empty parameter name", start);
      out.push_back({Tok::Param, std::string(s.substr(start + 1, i - start - 1)), start});
      continue;
    }
    if (two("<->")) {
      out.push_back({Tok::Iff, "<->", start});
      i += 3;
    } else if (two("->")) {
      out.push_back({Tok::Imp, "->", start});
      i += 2;
    } else if (two("/\\")) {
      out.push_back({Tok::And, "/\\", start});
      i += 2;
    } else if (two("\\/")) {
      out.push_back({Tok::Or, "\\/", start});
      i += 2;
    } else {
      Tok kind;
      switch (c) {
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case ',': kind = Tok::Comma; break;
        case '.': kind = Tok::Dot; break;
        case '~': kind = Tok::Not; break;
        case '=': kind = Tok::Eq; break;
        case '|': kind = Tok::Sup; break;
        default: throw ParseError(std::string("unexpected character '") + c + "'", start);
      }
      out.push_back({kind, std::string(1, c), start});
      ++i;
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

bool variable_name(const std::string& s) {
  if (s.empty() || std::string_view("uvwxyz").find(s[0]) == std::string_view::npos) return false;
  for (std::size_t i = 1; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

class Parser {
 public:
  Parser(std::string_view text, const Signature* sig) : toks_(lex(text)), sig_(sig) {}

  Formula formula() {
    Formula f = iff();
    expect(Tok::End);
    return f;
  }

  Term term_only() {
    Term t = term();
    expect(Tok::End);
    return t;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(at_ + ahead, toks_.size() - 1)]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++at_;
    return true;
  }
  const Token& expect(Tok k) {
    if (peek().kind != k)
      throw ParseError(std::string("expected ") + describe(k) + ", found " + describe(peek().kind) +
                           (peek().text.empty() ? "" : " '" + peek().text + "'"),
                       peek().pos);
    return toks_[at_++];
  }

  Formula iff() {
    Formula f = imp();
    while (accept(Tok::Iff)) f = Formula::biconditional(f, imp());
    return f;
  }

  Formula imp() {
    Formula f = disj();
    if (accept(Tok::Imp)) return Formula::implication(f, imp());
    return f;
  }

  Formula disj() {
    Formula f = conj();
    while (accept(Tok::Or)) f = Formula::disjunction(f, conj());
    return f;
  }

  Formula conj() {
    Formula f = sup();
    while (accept(Tok::And)) f = Formula::conjunction(f, sup());
    return f;
  }

  Formula sup() {
    Formula f = unary();
    while (accept(Tok::Sup)) f = Formula::sup(f, unary());
    return f;
  }

  Formula unary() {
    if (accept(Tok::Not)) return Formula::negation(unary());
    if (peek().kind == Tok::Forall || peek().kind == Tok::Exists) {
      const FormulaKind kind = toks_[at_++].kind == Tok::Forall ? FormulaKind::Forall : FormulaKind::Exists;
      std::vector<std::string> vars;
      do {
        const Token& v = expect(Tok::Ident);
        if (sig_ && (sig_->constants.count(v.text) || sig_->prop_atoms.count(v.text)))
          throw ParseError("cannot bind declared symbol '" + v.text + "'", v.pos);
        vars.push_back(v.text);
      } while (peek().kind == Tok::Ident);
      expect(Tok::Dot);
      for (const auto& v : vars) bound_.push_back(v);
      Formula body = iff();
      bound_.resize(bound_.size() - vars.size());
      for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = Formula::quantifier(kind, *it, body);
      return body;
    }
    if (accept(Tok::LParen)) {
      Formula f = iff();
      expect(Tok::RParen);
      return f;
    }
    return atom();
  }

  Formula atom() {
    if (peek().kind == Tok::Param) {
      Term lhs = term();
      return equality_rest(lhs);
    }
    const Token& name = expect(Tok::Ident);
    if (peek().kind == Tok::LParen) {
      std::vector<Term> args = arguments();
      if (peek().kind == Tok::Eq) return equality_rest(make_function(name, std::move(args)));
      check_arity(name, sig_ ? find(sig_->predicates, name.text) : -1, args.size(), inferred_.predicates,
                  "predicate");
      return Formula::predicate(name.text, std::move(args));
    }
    if (peek().kind == Tok::Eq) return equality_rest(name_term(name));
    if (sig_) {
      if (!sig_->prop_atoms.count(name.text))
        throw UnknownSymbol("unknown propositional atom '" + name.text + "'", name.pos);
    } else if (is_bound(name.text)) {
      throw ParseError("variable '" + name.text + "' used as a formula", name.pos);
    }
    return Formula::prop(name.text);
  }

  Formula equality_rest(const Term& lhs) {
    expect(Tok::Eq);
    return Formula::equality(lhs, term());
  }

  std::vector<Term> arguments() {
    expect(Tok::LParen);
    std::vector<Term> args{term()};
    while (accept(Tok::Comma)) args.push_back(term());
    expect(Tok::RParen);
    return args;
  }

  Term term() {
    if (peek().kind == Tok::Param) return Term::parameter(toks_[at_++].text);
    const Token& name = expect(Tok::Ident);
    if (peek().kind == Tok::LParen) return make_function(name, arguments());
    return name_term(name);
  }

  Term make_function(const Token& name, std::vector<Term> args) {
    check_arity(name, sig_ ? find(sig_->functions, name.text) : -1, args.size(), inferred_.functions, "function");
    return Term::function(name.text, std::move(args));
  }

  Term name_term(const Token& name) {
    if (is_bound(name.text)) return Term::variable(name.text);
    if (sig_) {
      if (sig_->constants.count(name.text)) return Term::constant(name.text);
      if (variable_name(name.text)) return Term::variable(name.text);
      throw UnknownSymbol("unknown constant '" + name.text + "'", name.pos);
    }
    if (variable_name(name.text)) return Term::variable(name.text);
    return Term::constant(name.text);
  }

  static int find(const std::map<std::string, int>& m, const std::string& k) {
    auto it = m.find(k);
    return it == m.end() ? 0 : it->second;
  }

  void check_arity(const Token& name, int declared, std::size_t used, std::map<std::string, int>& inferred,
                   const char* what) {
    const int n = static_cast<int>(used);
    if (declared == 0) throw UnknownSymbol(std::string("unknown ") + what + " '" + name.text + "'", name.pos);
    if (declared > 0) {
      if (declared != n)
        throw ArityError(std::string(what) + " '" + name.text + "' expects " + std::to_string(declared) +
                             " arguments, got " + std::to_string(n),
                         name.pos);
      return;
    }
    auto [it, fresh] = inferred.emplace(name.text, n);
    if (!fresh && it->second != n)
      throw ArityError(std::string(what) + " '" + name.text + "' used with " + std::to_string(it->second) + " and " +
                           std::to_string(n) + " arguments",
                       name.pos);
  }

  bool is_bound(const std::string& v) const {
    for (const auto& b : bound_)
      if (b == v) return true;
    return false;
  }

  std::vector<Token> toks_;
  std::size_t at_ = 0;
  const Signature* sig_;
  Signature inferred_;
  std::vector<std::string> bound_;
};

// ---------------------------------------------------------------- printing

int precedence(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Iff: return 1;
    case FormulaKind::Implies: return 2;
    case FormulaKind::Or: return 3;
    case FormulaKind::And: return 4;
    case FormulaKind::Sup: return 5;
    case FormulaKind::Not: return 6;
    case FormulaKind::Forall:
    case FormulaKind::Exists: return 0;
    default: return 7;
  }
}

const char* op_text(FormulaKind k) {
  switch (k) {
    case FormulaKind::Iff: return " <-> ";
    case FormulaKind::Implies: return " -> ";
    case FormulaKind::Or: return " \\/ ";
    case FormulaKind::And: return " /\\ ";
    case FormulaKind::Sup: return " sup ";
    default: return " ? ";
  }
}

void print_to(const Term& t, std::string& out) {
  switch (t.kind()) {
    case TermKind::Parameter:
      out += '@';
      out += t.name();
      return;
    case TermKind::Function:
      out += t.name();
      out += '(';
      for (std::size_t i = 0; i < t.args().size(); ++i) {
        if (i) out += ", ";
        print_to(t.args()[i], out);
      }
      out += ')';
      return;
    default:
      out += t.name();
  }
}

void print_to(const Formula& f, std::string& out);

void print_child(const Formula& child, bool parens, std::string& out) {
  if (parens) out += '(';
  print_to(child, out);
  if (parens) out += ')';
}

void print_to(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case FormulaKind::PropAtom:
      out += f.name();
      return;
    case FormulaKind::Predicate:
      out += f.name();
      out += '(';
      for (std::size_t i = 0; i < f.terms().size(); ++i) {
        if (i) out += ", ";
        print_to(f.terms()[i], out);
      }
      out += ')';
      return;
    case FormulaKind::Equality:
      print_to(f.terms()[0], out);
      out += " = ";
      print_to(f.terms()[1], out);
      return;
    case FormulaKind::Not:
      out += '~';
      print_child(f.left(), precedence(f.left()) < 6, out);
      return;
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      out += f.kind() == FormulaKind::Forall ? "forall " : "exists ";
      out += f.var();
      out += ". ";
      print_to(f.body(), out);
      return;
    default:
      break;
  }
  const int p = precedence(f);
  const bool right_assoc = f.kind() == FormulaKind::Implies;
  const int pl = precedence(f.left());
  const int pr = precedence(f.right());
  print_child(f.left(), pl < p || (pl == p && right_assoc), out);
  out += op_text(f.kind());
  print_child(f.right(), pr < p || (pr == p && !right_assoc), out);
}

}  // namespace

Formula parse(std::string_view text, const Signature& sig) { return Parser(text, &sig).formula(); }
Formula parse(std::string_view text) { return Parser(text, nullptr).formula(); }
Term parse_term(std::string_view text) { return Parser(text, nullptr).term_only(); }

std::string print(const Formula& f) {
  std::string out;
  print_to(f, out);
  return out;
}

std::string print(const Term& t) {
  std::string out;
  print_to(t, out);
  return out;
}

}  // namespace supkit
