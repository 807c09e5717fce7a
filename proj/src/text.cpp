#include "ontofit/text.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace ontofit {

ParseError::ParseError(int line, int column, const std::string& msg)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { Ident, Number, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int col = 1;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '#' || c == '\'';
}

// Tokenizes one logical line. '#' starts a comment only at a token boundary,
// so renamed individuals such as a#0 survive.
std::vector<Token> tokenize(std::string_view s, int line, int col0) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    int col = col0 + static_cast<int>(i);
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') break;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), line, col});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Number, std::string(s.substr(i, j - i)), line, col});
      i = j;
      continue;
    }
    if (std::string_view("().,;&|{}:-").find(c) != std::string_view::npos) {
      out.push_back({Tok::Punct, std::string(1, c), line, col});
      ++i;
      continue;
    }
    throw ParseError(line, col, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", line, col0 + static_cast<int>(s.size())});
  return out;
}

const std::set<std::string>& keywords() {
  static const std::set<std::string> k = {"top", "bot", "not", "and", "or", "exists",
                                          "forall", "atmost", "atleast", "sub"};
  return k;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek() const { return toks_[pos_]; }
  bool at_end() const { return peek().kind == Tok::End; }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  bool accept(const std::string& punct_or_kw) {
    if (peek().kind != Tok::End && peek().kind != Tok::Number && peek().text == punct_or_kw) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(const std::string& s) {
    if (!accept(s)) fail("expected '" + s + "'");
  }

  [[noreturn]] void fail(const std::string& msg) const {
    const auto& t = peek();
    throw ParseError(t.line, t.col, msg + (t.kind == Tok::End ? " at end of input" : " near '" + t.text + "'"));
  }

  std::string name() {
    if (peek().kind != Tok::Ident || keywords().count(peek().text)) fail("expected a name");
    return next().text;
  }

  unsigned number() {
    if (peek().kind != Tok::Number) fail("expected a number");
    return static_cast<unsigned>(std::stoul(next().text));
  }

  Role role() {
    Role r{name(), false};
    if (accept("-")) r.inverted = true;
    return r;
  }

  Concept parse_concept_expr() {
    if (accept("top")) return Concept::top();
    if (accept("bot")) return Concept::bottom();
    if (accept("not")) return Concept::negate(parse_concept_expr());
    if (accept("exists")) {
      Role r = role();
      expect(".");
      return Concept::exists(r, parse_concept_expr());
    }
    if (accept("forall")) {
      Role r = role();
      expect(".");
      return Concept::forall(r, parse_concept_expr());
    }
    if (accept("atmost")) {
      unsigned n = number();
      Role r = role();
      return Concept::at_most(n, r, parse_concept_expr());
    }
    if (accept("atleast")) {
      unsigned n = number();
      Role r = role();
      return Concept::at_least(n, r, parse_concept_expr());
    }
    if (accept("(")) {
      Concept c = parse_concept_expr();
      while (true) {
        if (accept("and")) {
          c = Concept::conj(c, parse_concept_expr());
        } else if (accept("or")) {
          c = Concept::disj(c, parse_concept_expr());
        } else {
          break;
        }
      }
      expect(")");
      return c;
    }
    return Concept::name(name());
  }

  // NAME '(' t ')' or NAME '(' t ',' t ')'
  struct RawAtom {
    std::string pred;
    std::vector<std::string> args;
    int line, col;
  };

  RawAtom atom() {
    RawAtom a;
    a.line = peek().line;
    a.col = peek().col;
    a.pred = name();
    expect("(");
    a.args.push_back(name());
    if (accept(",")) a.args.push_back(name());
    expect(")");
    return a;
  }

  ABox abox() {
    ABox out;
    while (!at_end()) {
      if (accept(";")) continue;
      RawAtom a = atom();
      if (a.args.size() == 1)
        out.add(ConceptAssertion{a.pred, a.args[0]});
      else
        out.add(RoleAssertion{a.pred, a.args[0], a.args[1]});
      if (!at_end() && peek().text != ";") fail("expected ';'");
    }
    return out;
  }

  CQ cq() {
    CQ q;
    if (accept("exists")) {
      do {
        q.vars.insert(name());
      } while (accept(","));
      expect(".");
    }
    auto term = [&](const std::string& n) {
      return q.vars.count(n) ? Term::variable(n) : Term::individual(n);
    };
    do {
      RawAtom a = atom();
      if (a.args.size() == 1)
        q.concept_atoms.insert(ConceptAtom{a.pred, term(a.args[0])});
      else
        q.role_atoms.insert(RoleAtom{a.pred, term(a.args[0]), term(a.args[1])});
    } while (accept("&"));
    for (const auto& v : q.vars)
      if (!q.terms().count(Term::variable(v))) fail("variable '" + v + "' occurs in no atom");
    return q;
  }

  UCQ ucq() {
    UCQ u;
    do {
      u.disjuncts.push_back(cq());
    } while (accept("|"));
    if (!at_end()) fail("unexpected trailing input");
    return u;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

struct Line {
  std::string_view text;
  int number;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  int n = 1;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '\n') {
      out.push_back({text.substr(start, i - start), n++});
      start = i + 1;
    }
  }
  return out;
}

// Splits "key: rest" when the line starts with an identifier followed by ':'.
bool split_field(std::string_view line, std::string& key, std::string_view& rest, int& rest_col) {
  std::size_t i = 0;
  while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
  std::size_t j = i;
  while (j < line.size() && ident_char(line[j])) ++j;
  if (j == i || j >= line.size() || line[j] != ':') return false;
  key = std::string(line.substr(i, j - i));
  rest = line.substr(j + 1);
  rest_col = static_cast<int>(j) + 2;
  return true;
}

bool blank(std::string_view line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Concept parse_concept(std::string_view text) {
  Parser p(tokenize(text, 1, 1));
  Concept c = p.parse_concept_expr();
  if (!p.at_end()) p.fail("unexpected trailing input");
  return c;
}

Ontology parse_ontology(std::string_view text) {
  Ontology o;
  std::optional<Logic> declared;
  for (const auto& line : split_lines(text)) {
    if (blank(line.text)) continue;
    std::string key;
    std::string_view rest;
    int col = 1;
    if (split_field(line.text, key, rest, col) && key == "logic") {
      Parser p(tokenize(rest, line.number, col));
      auto tok = p.name();
      declared = logic_from_string(tok);
      if (!declared) throw ParseError(line.number, col, "unknown logic '" + tok + "'");
      continue;
    }
    Parser p(tokenize(line.text, line.number, 1));
    Concept lhs = p.parse_concept_expr();
    p.expect("sub");
    Concept rhs = p.parse_concept_expr();
    if (!p.at_end()) p.fail("unexpected trailing input");
    o.inclusions.push_back({lhs, rhs});
  }
  o.logic = declared ? *declared : minimal_logic(o);
  check_well_formed(o);
  return o;
}

ABox parse_abox(std::string_view text) {
  ABox out;
  for (const auto& line : split_lines(text)) {
    if (blank(line.text)) continue;
    std::string key;
    std::string_view rest = line.text;
    int col = 1;
    std::string_view body = line.text;
    if (split_field(line.text, key, rest, col)) {
      if (key != "abox") throw ParseError(line.number, 1, "expected 'abox:'");
      body = rest;
    } else {
      col = 1;
    }
    Parser p(tokenize(body, line.number, col));
    out.merge(p.abox());
  }
  return out;
}

UCQ parse_ucq(std::string_view text) {
  std::string joined;
  int first_line = 0;
  for (const auto& line : split_lines(text)) {
    if (blank(line.text)) continue;
    if (!first_line) first_line = line.number;
    std::string key;
    std::string_view rest;
    int col = 1;
    if (split_field(line.text, key, rest, col) && key == "query")
      joined += std::string(rest) + " ";
    else
      joined += std::string(line.text) + " ";
  }
  Parser p(tokenize(joined, first_line ? first_line : 1, 1));
  return p.ucq();
}

ExampleCollection parse_collection(std::string_view text) {
  ExampleCollection e;
  bool have_mode = false;
  bool have_logic = false;
  bool in_block = false;
  bool positive_block = false;
  Example cur;
  int block_line = 0;
  bool cur_has_query = false;

  for (const auto& line : split_lines(text)) {
    if (blank(line.text)) continue;
    std::string key;
    std::string_view rest;
    int col = 1;
    if (split_field(line.text, key, rest, col)) {
      Parser p(tokenize(rest, line.number, col));
      if (key == "mode" || key == "logic") {
        if (in_block) throw ParseError(line.number, 1, "'" + key + ":' inside an example block");
        std::string v = p.name();
        if (key == "mode") {
          auto m = mode_from_string(v);
          if (!m) throw ParseError(line.number, col, "unknown mode '" + v + "'");
          e.mode = *m;
          have_mode = true;
        } else {
          auto l = logic_from_string(v);
          if (!l) throw ParseError(line.number, col, "unknown logic '" + v + "'");
          e.logic = *l;
          have_logic = true;
        }
        if (!p.at_end()) p.fail("unexpected trailing input");
        continue;
      }
      if (!in_block) throw ParseError(line.number, 1, "'" + key + ":' outside an example block");
      if (key == "abox") {
        cur.abox.merge(p.abox());
      } else if (key == "query") {
        if (cur_has_query) throw ParseError(line.number, 1, "duplicate query");
        cur.query = p.ucq();
        cur_has_query = true;
      } else {
        throw ParseError(line.number, 1, "unknown field '" + key + "'");
      }
      continue;
    }
    Parser p(tokenize(line.text, line.number, 1));
    if (p.accept("}")) {
      if (!in_block) throw ParseError(line.number, 1, "unmatched '}'");
      if (!p.at_end()) p.fail("unexpected trailing input");
      try {
        check_well_formed(cur, e.mode);
      } catch (const ContractError& err) {
        throw ParseError(block_line, 1, err.what());
      }
      (positive_block ? e.positives : e.negatives).push_back(std::move(cur));
      cur = Example{};
      cur_has_query = false;
      in_block = false;
      continue;
    }
    if (in_block) p.fail("expected 'abox:', 'query:' or '}'");
    std::string kw = p.name();
    if (kw != "positive" && kw != "negative")
      throw ParseError(line.number, 1, "expected 'positive {' or 'negative {'");
    p.expect("{");
    if (!p.at_end()) p.fail("unexpected trailing input");
    in_block = true;
    positive_block = (kw == "positive");
    block_line = line.number;
  }
  if (in_block) throw ParseError(block_line, 1, "unterminated example block");
  if (!have_mode) throw ParseError(1, 1, "missing 'mode:' header");
  if (!have_logic) e.logic = Logic::ALC;
  return e;
}

std::string serialize(const Ontology& o) {
  std::ostringstream out;
  out << "logic: " << to_string(o.logic) << "\n";
  for (const auto& ci : o.inclusions) out << ci.lhs.to_string() << " sub " << ci.rhs.to_string() << "\n";
  return out.str();
}

std::string serialize(const ABox& a) {
  std::string out;
  auto sep = [&] {
    if (!out.empty()) out += "; ";
  };
  for (const auto& c : a.concepts) {
    sep();
    out += c.concept_name + "(" + c.ind + ")";
  }
  for (const auto& r : a.roles) {
    sep();
    out += r.role + "(" + r.from + "," + r.to + ")";
  }
  return out;
}

std::string serialize(const CQ& q) {
  std::string out;
  if (!q.vars.empty()) {
    out += "exists ";
    bool first = true;
    for (const auto& v : q.vars) {
      if (!first) out += ",";
      out += v;
      first = false;
    }
    out += " . ";
  }
  bool first = true;
  auto sep = [&] {
    if (!first) out += " & ";
    first = false;
  };
  for (const auto& c : q.concept_atoms) {
    sep();
    out += c.concept_name + "(" + c.t.name + ")";
  }
  for (const auto& r : q.role_atoms) {
    sep();
    out += r.role + "(" + r.from.name + "," + r.to.name + ")";
  }
  return out;
}

std::string serialize(const UCQ& q) {
  std::string out;
  for (std::size_t i = 0; i < q.disjuncts.size(); ++i) {
    if (i) out += " | ";
    out += serialize(q.disjuncts[i]);
  }
  return out;
}

std::string serialize_collection(const ExampleCollection& e) {
  std::ostringstream out;
  out << "mode: " << to_string(e.mode) << "\n";
  out << "logic: " << to_string(e.logic) << "\n";
  auto block = [&](const Example& x, const char* kw) {
    out << kw << " {\n";
    out << "  abox: " << serialize(x.abox) << "\n";
    if (x.query) out << "  query: " << serialize(*x.query) << "\n";
    out << "}\n";
  };
  for (const auto& x : e.positives) block(x, "positive");
  for (const auto& x : e.negatives) block(x, "negative");
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

}  // namespace ontofit
