#include "dualseq/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <functional>
#include <optional>
#include <set>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "dualseq/barcode.hpp"
#include "dualseq/triang.hpp"

namespace dualseq {

using nlohmann::json;

ParseError::ParseError(int line, int column, const std::string& message)
    : ValidationError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

// ---- lexer ----

struct Token {
  std::string text;
  int line = 0;
  int col = 0;
};

struct Line {
  std::vector<Token> toks;
  int number = 0;
  int eol = 1;
};

bool is_symbol(char c) { return std::strchr("[];:=,", c) != nullptr; }

Line tokenize(const std::string& text, int number) {
  Line out;
  out.number = number;
  std::size_t i = 0;
  auto arrow = [&](std::size_t k) { return text[k] == '-' && k + 1 < text.size() && text[k + 1] == '>'; };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const int col = static_cast<int>(i) + 1;
    if (arrow(i)) {
      out.toks.push_back({"->", number, col});
      i += 2;
    } else if (is_symbol(c)) {
      out.toks.push_back({std::string(1, c), number, col});
      ++i;
    } else {
      std::size_t j = i;
      while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) && !is_symbol(text[j]) &&
             text[j] != '#' && !arrow(j))
        ++j;
      out.toks.push_back({text.substr(i, j - i), number, col});
      i = j;
    }
  }
  out.eol = static_cast<int>(std::min(text.size(), text.find('#'))) + 1;
  return out;
}

class Cursor {
 public:
  explicit Cursor(const Line& l) : line_(l) {}

  bool done() const { return pos_ >= line_.toks.size(); }
  int line() const { return line_.number; }

  [[noreturn]] void fail(const std::string& msg) const {
    if (done()) throw ParseError(line_.number, line_.eol, msg);
    throw ParseError(line_.number, line_.toks[pos_].col, msg);
  }
  [[noreturn]] static void fail_at(const Token& t, const std::string& msg) { throw ParseError(t.line, t.col, msg); }

  const Token& peek() const {
    if (done()) fail("unexpected end of line");
    return line_.toks[pos_];
  }
  Token next() {
    Token t = peek();
    ++pos_;
    return t;
  }
  bool accept(const std::string& s) {
    if (!done() && line_.toks[pos_].text == s) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(const std::string& s) {
    if (done() || peek().text != s) fail("expected '" + s + "'");
    ++pos_;
  }
  std::string name(const char* what) {
    if (done()) fail(std::string("expected ") + what);
    const Token& t = peek();
    bool ok = !t.text.empty() && (std::isalpha(static_cast<unsigned char>(t.text[0])) || t.text[0] == '_');
    for (char c : t.text) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.');
    if (!ok || is_symbol(t.text[0])) fail(std::string("expected ") + what);
    return next().text;
  }
  long long integer(const char* what) {
    if (done()) fail(std::string("expected ") + what);
    const Token& t = peek();
    try {
      std::size_t used = 0;
      long long v = std::stoll(t.text, &used);
      if (used != t.text.size()) throw std::invalid_argument("");
      ++pos_;
      return v;
    } catch (const std::exception&) {
      fail(std::string("expected ") + what);
    }
  }
  int small_int(const char* what) {
    Token t = peek();
    long long v = integer(what);
    if (v < -1000000 || v > 1000000) fail_at(t, std::string(what) + " out of range");
    return static_cast<int>(v);
  }
  std::size_t count(const char* what) {
    Token t = peek();
    long long v = integer(what);
    if (v < 0 || v > 100000) fail_at(t, std::string(what) + " must be a non-negative count");
    return static_cast<std::size_t>(v);
  }
  int endpoint() {
    if (accept("-inf")) return kNegInf;
    if (accept("inf") || accept("+inf")) return kPosInf;
    return small_int("endpoint");
  }
  Tail tail() {
    if (accept("zero")) return Tail::Zero;
    if (accept("iso")) return Tail::Iso;
    fail("expected 'zero' or 'iso'");
  }
  Matrix matrix(const Field& f, std::size_t rows, std::size_t cols) {
    Token open = peek();
    expect("[");
    std::vector<std::vector<Token>> entries(1);
    for (;;) {
      Token t = next();
      if (t.text == "]") break;
      if (t.text == ";") {
        entries.emplace_back();
      } else if (t.text == ",") {
        continue;
      } else if (is_symbol(t.text[0]) || t.text == "->") {
        fail_at(t, "unexpected '" + t.text + "' in matrix");
      } else {
        entries.back().push_back(t);
      }
    }
    bool empty = std::all_of(entries.begin(), entries.end(), [](const auto& r) { return r.empty(); });
    if (empty && rows * cols == 0) return Matrix(f, rows, cols);
    std::string shape = std::to_string(rows) + " x " + std::to_string(cols);
    if (entries.size() != rows) fail_at(open, "expected a " + shape + " matrix");
    Matrix m(f, rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      if (entries[r].size() != cols) fail_at(open, "expected a " + shape + " matrix");
      for (std::size_t c = 0; c < cols; ++c) {
        try {
          m.set(r, c, Scalar::parse(f, entries[r][c].text));
        } catch (const std::invalid_argument& e) {
          fail_at(entries[r][c], e.what());
        }
      }
    }
    return m;
  }
  void finish() {
    if (!done()) fail("unexpected '" + peek().text + "'");
  }

 private:
  const Line& line_;
  std::size_t pos_ = 0;
};

// ---- parser ----

struct Components {
  std::map<int, Matrix> at;
  std::optional<Matrix> left, right;
};

// Element with the listed components, zero elsewhere inside the window and
// the constant tail values beyond it.
GradedHomElement build_element(const Seq& v, const Seq& w, const Components& c) {
  int lo = admissible_lo(v, w, 0), hi = admissible_hi(v, w, 0);
  if (!c.at.empty()) {
    lo = std::min(lo, c.at.begin()->first);
    hi = std::max(hi, c.at.rbegin()->first);
  }
  const Field& f = v.field();
  return GradedHomElement::from_function(v, w, 0, lo, hi, [&](int i) {
    auto it = c.at.find(i);
    if (it != c.at.end()) return it->second;
    if (i < lo && c.left) return *c.left;
    if (i > hi && c.right) return *c.right;
    return Matrix(f, w.dim(i), v.dim(i));
  });
}

// Reads "left M", "right M" or "i M" into c for maps v -> w.
void read_component(Cursor& cur, const Seq& v, const Seq& w, Components& c) {
  const Field& f = v.field();
  int lo = admissible_lo(v, w, 0) - 1000, hi = admissible_hi(v, w, 0) + 1000;
  if (cur.accept("left")) {
    c.left = cur.matrix(f, w.dim(lo), v.dim(lo));
  } else if (cur.accept("right")) {
    c.right = cur.matrix(f, w.dim(hi), v.dim(hi));
  } else {
    Token t = cur.peek();
    int i = cur.small_int("degree");
    if (c.at.count(i)) Cursor::fail_at(t, "degree " + std::to_string(i) + " given twice");
    c.at.emplace(i, cur.matrix(f, w.dim(i), v.dim(i)));
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) {
    std::string s(text);
    std::istringstream is(s);
    std::string l;
    int n = 0;
    while (std::getline(is, l)) lines_.push_back(tokenize(l, ++n));
  }

  Document run() {
    while (pos_ < lines_.size()) {
      const Line& l = lines_[pos_++];
      if (l.toks.empty()) continue;
      statement(l);
    }
    return std::move(doc_);
  }

 private:
  // Lines of a block up to the matching "end".
  std::vector<const Line*> block(const Line& header) {
    std::vector<const Line*> out;
    while (pos_ < lines_.size()) {
      const Line& l = lines_[pos_++];
      if (l.toks.empty()) continue;
      if (l.toks[0].text == "end") {
        Cursor c(l);
        c.next();
        c.finish();
        return out;
      }
      out.push_back(&l);
    }
    throw ParseError(header.number, header.toks[0].col, "missing 'end' for '" + header.toks[0].text + "'");
  }

  void declare(std::set<std::string>& used, const Token& t) {
    if (!used.insert(t.text).second) Cursor::fail_at(t, "duplicate name '" + t.text + "'");
    defined_ = true;
  }

  const Seq& seq(const Token& t) const {
    auto it = doc_.seqs.find(t.text);
    if (it == doc_.seqs.end()) Cursor::fail_at(t, "unknown seq '" + t.text + "'");
    return it->second;
  }

  void statement(const Line& l) {
    Cursor c(l);
    Token kw = c.next();
    if (kw.text == "field") return field(c, kw);
    if (kw.text == "seq") return seq_statement(c, l);
    if (kw.text == "complex") return complex_statement(c, l);
    if (kw.text == "morphism") return morphism_statement(c, l);
    if (kw.text == "diagram") return diagram_statement(c, l);
    if (kw.text == "derivation") return derivation_statement(c, l);
    Cursor::fail_at(kw, "unknown statement '" + kw.text + "'");
  }

  void field(Cursor& c, const Token& kw) {
    if (defined_ || field_set_) Cursor::fail_at(kw, "field must be the first statement");
    Token t = c.peek();
    if (c.accept("Q")) {
      doc_.field = Field::rationals();
    } else {
      long long p = c.integer("a prime or Q");
      try {
        if (p < 2 || p > 2147483647) throw std::invalid_argument("");
        doc_.field = Field::prime(static_cast<std::uint32_t>(p));
      } catch (const std::invalid_argument&) {
        Cursor::fail_at(t, "field characteristic must be a prime below 2^31");
      }
    }
    c.finish();
    field_set_ = true;
  }

  void seq_statement(Cursor& c, const Line& l) {
    Token name = c.peek();
    c.name("seq name");
    declare(names_, name);
    const Field& f = doc_.field;
    if (c.accept("=")) {
      Token kind = c.peek();
      Seq v(f);
      if (c.accept("interval")) {
        Token at = c.peek();
        int a = c.endpoint(), b = c.endpoint();
        try {
          v = Seq::interval(f, a, b);
        } catch (const ValidationError& e) {
          Cursor::fail_at(at, e.what());
        }
      } else if (c.accept("zero")) {
      } else if (c.accept("shift")) {
        Token src = c.next();
        v = shift(seq(src), c.small_int("shift"));
      } else if (c.accept("sum")) {
        Token a = c.next(), b = c.next();
        v = direct_sum(seq(a), seq(b));
      } else {
        Cursor::fail_at(kind, "expected interval, zero, shift or sum");
      }
      c.finish();
      doc_.seqs.emplace(name.text, v);
      return;
    }
    c.finish();
    int lo = 0;
    std::optional<std::vector<std::size_t>> dims;
    std::map<int, Matrix> maps;
    Tail left = Tail::Zero, right = Tail::Zero;
    for (const Line* bl : block(l)) {
      Cursor b(*bl);
      Token key = b.next();
      if (key.text == "lo") {
        if (dims) Cursor::fail_at(key, "lo must come before dims");
        lo = b.small_int("lo");
      } else if (key.text == "dims") {
        dims.emplace();
        while (!b.done()) dims->push_back(b.count("dimension"));
        if (dims->empty()) Cursor::fail_at(key, "dims needs at least one entry");
      } else if (key.text == "map") {
        if (!dims) Cursor::fail_at(key, "dims must come before map");
        Token at = b.peek();
        int i = b.small_int("degree");
        int hi = lo + static_cast<int>(dims->size()) - 1;
        if (i < lo || i >= hi) Cursor::fail_at(at, "map degree outside [lo, hi-1]");
        if (maps.count(i)) Cursor::fail_at(at, "map " + std::to_string(i) + " given twice");
        std::size_t k = static_cast<std::size_t>(i - lo);
        maps.emplace(i, b.matrix(f, (*dims)[k + 1], (*dims)[k]));
      } else if (key.text == "left") {
        left = b.tail();
      } else if (key.text == "right") {
        right = b.tail();
      } else {
        Cursor::fail_at(key, "unknown seq field '" + key.text + "'");
      }
      b.finish();
    }
    if (!dims) throw ParseError(l.number, 1, "seq '" + name.text + "' has no dims");
    std::vector<Matrix> ms;
    for (std::size_t k = 0; k + 1 < dims->size(); ++k) {
      int i = lo + static_cast<int>(k);
      auto it = maps.find(i);
      ms.push_back(it != maps.end() ? it->second : Matrix(f, (*dims)[k + 1], (*dims)[k]));
    }
    try {
      doc_.seqs.emplace(name.text, Seq(f, lo, *dims, ms, left, right));
    } catch (const ValidationError& e) {
      throw ValidationError("seq '" + name.text + "': " + e.what());
    }
  }

  void complex_statement(Cursor& c, const Line& l) {
    Token name = c.peek();
    c.name("complex name");
    declare(names_, name);
    c.finish();
    const Field& f = doc_.field;
    int lo = 0;
    std::optional<std::vector<std::size_t>> ranks;
    std::map<int, Matrix> d1, deps;
    Tail left = Tail::Zero, right = Tail::Zero;
    for (const Line* bl : block(l)) {
      Cursor b(*bl);
      Token key = b.next();
      if (key.text == "lo") {
        if (ranks) Cursor::fail_at(key, "lo must come before ranks");
        lo = b.small_int("lo");
      } else if (key.text == "ranks") {
        ranks.emplace();
        while (!b.done()) ranks->push_back(b.count("rank"));
        if (ranks->empty()) Cursor::fail_at(key, "ranks needs at least one entry");
      } else if (key.text == "d1" || key.text == "deps") {
        if (!ranks) Cursor::fail_at(key, "ranks must come before " + key.text);
        Token at = b.peek();
        int i = b.small_int("degree");
        int hi = lo + static_cast<int>(ranks->size()) - 1;
        if (i < lo || i >= hi) Cursor::fail_at(at, "degree outside [lo, hi-1]");
        auto& target = key.text == "d1" ? d1 : deps;
        if (target.count(i)) Cursor::fail_at(at, key.text + " " + std::to_string(i) + " given twice");
        std::size_t k = static_cast<std::size_t>(i - lo);
        target.emplace(i, b.matrix(f, (*ranks)[k + 1], (*ranks)[k]));
      } else if (key.text == "left") {
        left = b.tail();
      } else if (key.text == "right") {
        right = b.tail();
      } else {
        Cursor::fail_at(key, "unknown complex field '" + key.text + "'");
      }
      b.finish();
    }
    if (!ranks) throw ParseError(l.number, 1, "complex '" + name.text + "' has no ranks");
    std::vector<Matrix> a, e;
    for (std::size_t k = 0; k + 1 < ranks->size(); ++k) {
      int i = lo + static_cast<int>(k);
      Matrix z(f, (*ranks)[k + 1], (*ranks)[k]);
      a.push_back(d1.count(i) ? d1.at(i) : z);
      e.push_back(deps.count(i) ? deps.at(i) : z);
    }
    EpsComplex cx(f, lo, *ranks, a, e, left, right);
    if (auto r = validate(cx); !r.ok) throw ValidationError("complex '" + name.text + "': " + r.message);
    doc_.complexes.emplace(name.text, cx);
  }

  void morphism_statement(Cursor& c, const Line& l) {
    Token name = c.peek();
    c.name("morphism name");
    declare(names_, name);
    c.expect(":");
    Token st = c.next();
    c.expect("->");
    Token tt = c.next();
    const Seq& v = seq(st);
    const Seq& w = seq(tt);
    std::optional<HatMorphism> h;
    if (c.accept("=")) {
      Token kind = c.next();
      if (kind.text == "zero") {
        h = HatMorphism::zero(v, w);
      } else if (kind.text == "identity" || kind.text == "eps-identity") {
        if (!(v == w)) Cursor::fail_at(kind, kind.text + " needs equal source and target");
        h = kind.text == "identity" ? HatMorphism::identity(v) : HatMorphism::eps_identity(v);
      } else {
        Cursor::fail_at(kind, "expected zero, identity or eps-identity");
      }
      c.finish();
    } else {
      c.finish();
      Components one, eps;
      for (const Line* bl : block(l)) {
        Cursor b(*bl);
        Token key = b.next();
        if (key.text == "one") {
          read_component(b, v, w, one);
        } else if (key.text == "eps") {
          read_component(b, v, w, eps);
        } else {
          Cursor::fail_at(key, "expected one or eps");
        }
        b.finish();
      }
      try {
        h = HatMorphism(build_element(v, w, one), build_element(v, w, eps));
      } catch (const ValidationError& e) {
        throw ValidationError("morphism '" + name.text + "': " + e.what());
      }
    }
    doc_.morphisms.emplace(name.text, NamedMorphism{st.text, tt.text, *h});
  }

  void diagram_statement(Cursor& c, const Line& l) {
    Token name = c.peek();
    c.name("diagram name");
    declare(names_, name);
    c.finish();
    Diagram d;
    for (const Line* bl : block(l)) {
      Cursor b(*bl);
      Token key = b.next();
      if (key.text == "generator") {
        Token g = b.peek();
        b.name("generator name");
        b.expect("=");
        Token m = b.next();
        auto it = doc_.morphisms.find(m.text);
        if (it == doc_.morphisms.end()) Cursor::fail_at(m, "unknown morphism '" + m.text + "'");
        if (d.generators.count(g.text)) Cursor::fail_at(g, "duplicate generator '" + g.text + "'");
        const NamedMorphism& nm = it->second;
        d.objects.emplace(nm.source, doc_.seqs.at(nm.source));
        d.objects.emplace(nm.target, doc_.seqs.at(nm.target));
        d.generators[g.text] = {nm.source, nm.target, nm.morphism};
      } else if (key.text == "relation") {
        Diagram::Relation r;
        auto path = [&](std::vector<std::string>& p, bool until_eq) {
          while (!b.done() && !(until_eq && b.peek().text == "=")) {
            Token t = b.next();
            if (!d.generators.count(t.text)) Cursor::fail_at(t, "unknown generator '" + t.text + "'");
            p.push_back(t.text);
          }
          if (p.empty()) b.fail("expected a path");
        };
        path(r.lhs, true);
        b.expect("=");
        path(r.rhs, false);
        d.relations.push_back(std::move(r));
      } else {
        Cursor::fail_at(key, "expected generator or relation");
      }
      b.finish();
    }
    try {
      validate(d);
    } catch (const ValidationError& e) {
      throw ValidationError("diagram '" + name.text + "': " + e.what());
    }
    doc_.diagrams.emplace(name.text, std::move(d));
  }

  void derivation_statement(Cursor& c, const Line& l) {
    Token name = c.peek();
    c.name("derivation name");
    declare(names_, name);
    c.expect("on");
    Token dt = c.next();
    auto it = doc_.diagrams.find(dt.text);
    if (it == doc_.diagrams.end()) Cursor::fail_at(dt, "unknown diagram '" + dt.text + "'");
    c.finish();
    const Diagram& d = it->second;
    std::map<std::string, Components> comps;
    for (const Line* bl : block(l)) {
      Cursor b(*bl);
      Token key = b.next();
      if (key.text != "value") Cursor::fail_at(key, "expected value");
      Token g = b.next();
      auto git = d.generators.find(g.text);
      if (git == d.generators.end()) Cursor::fail_at(g, "unknown generator '" + g.text + "'");
      read_component(b, git->second.morphism.source(), git->second.morphism.target(), comps[g.text]);
      b.finish();
    }
    NamedDerivation nd{dt.text, {}};
    for (const auto& [g, cs] : comps) {
      const auto& gen = d.generators.at(g);
      nd.values[g] = build_element(gen.morphism.source(), gen.morphism.target(), cs);
    }
    doc_.derivations.emplace(name.text, std::move(nd));
  }

  std::vector<Line> lines_;
  std::size_t pos_ = 0;
  Document doc_;
  std::set<std::string> names_;
  bool field_set_ = false;
  bool defined_ = false;
};

// ---- output ----

json scalar_to_json(const Scalar& s) {
  std::string t = s.to_string();
  if (t.find('/') == std::string::npos && t.size() < 18) return std::stoll(t);
  return t;
}

json endpoint_to_json(int e) {
  if (e == kNegInf) return "-inf";
  if (e == kPosInf) return "inf";
  return e;
}

json pattern_to_json(const Matrix& even, const Matrix& odd) {
  return {{"even", matrix_to_json(even)}, {"odd", matrix_to_json(odd)}};
}

std::string component_lines(const std::string& key, const GradedHomElement& g) {
  std::ostringstream os;
  for (int i = g.lo(); i <= g.hi(); ++i)
    if (!g.at(i).is_zero()) os << "  " << key << " " << i << " " << matrix_literal(g.at(i)) << "\n";
  auto tail = [&](int a, int b, const char* side) {
    Matrix x = g.at(a);
    if (!(x == g.at(b))) throw std::logic_error("morphism_to_text: tail is not constant");
    if (!x.is_zero()) os << "  " << key << " " << side << " " << matrix_literal(x) << "\n";
  };
  tail(g.lo() - 1, g.lo() - 2, "left");
  tail(g.hi() + 1, g.hi() + 2, "right");
  return os.str();
}

std::string complex_to_text(const std::string& name, const EpsComplex& c) {
  std::ostringstream os;
  os << "complex " << name << "\n  lo " << c.lo() << "\n  ranks";
  for (int i = c.lo(); i <= c.hi(); ++i) os << " " << c.rank(i);
  os << "\n";
  for (int i = c.lo(); i < c.hi(); ++i) {
    if (!c.d1(i).is_zero()) os << "  d1 " << i << " " << matrix_literal(c.d1(i)) << "\n";
    if (!c.deps(i).is_zero()) os << "  deps " << i << " " << matrix_literal(c.deps(i)) << "\n";
  }
  os << "  left " << to_string(c.left()) << "\n  right " << to_string(c.right()) << "\nend\n";
  return os.str();
}

json barcode_to_json(const Barcode& b) {
  json bars = json::array();
  for (const auto& [j, m] : b.bars) bars.push_back({{"a", endpoint_to_json(j.a)}, {"b", endpoint_to_json(j.b)}, {"multiplicity", m}});
  return bars;
}

json hat_to_json(const HatMorphism& h) { return {{"one", graded_to_json(h.one())}, {"eps", graded_to_json(h.eps())}}; }

json cohomology_to_json(const std::map<int, std::size_t>& h) {
  json out = json::array();
  for (auto [i, d] : h) out.push_back({{"degree", i}, {"dim", d}});
  return out;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

// ---- commands ----

struct Context {
  const Document& doc;
  const std::vector<std::string>& args;
  std::optional<int> depth;
  json report;
  std::ostringstream text;
  int exit_code = 0;
};

const Seq& need_seq(const Document& d, const std::string& name) {
  auto it = d.seqs.find(name);
  if (it == d.seqs.end()) throw ValidationError("unknown seq '" + name + "'");
  return it->second;
}

const NamedMorphism& need_morphism(const Document& d, const std::string& name) {
  auto it = d.morphisms.find(name);
  if (it == d.morphisms.end()) throw ValidationError("unknown morphism '" + name + "'");
  return it->second;
}

const EpsComplex& need_complex(const Document& d, const std::string& name) {
  auto it = d.complexes.find(name);
  if (it == d.complexes.end()) throw ValidationError("unknown complex '" + name + "'");
  return it->second;
}

std::pair<const Diagram*, const Derivation*> need_derivation(const Document& d, const std::string& diag,
                                                             const std::string& der) {
  auto dit = d.diagrams.find(diag);
  if (dit == d.diagrams.end()) throw ValidationError("unknown diagram '" + diag + "'");
  auto eit = d.derivations.find(der);
  if (eit == d.derivations.end()) throw ValidationError("unknown derivation '" + der + "'");
  if (eit->second.diagram != diag)
    throw ValidationError("derivation '" + der + "' is defined on diagram '" + eit->second.diagram + "'");
  return {&dit->second, &eit->second.values};
}

void cmd_decompose(Context& c) {
  const Seq& v = need_seq(c.doc, c.args[0]);
  Barcode b = decompose(v);
  bool ok = b.certificate && is_isomorphism(*b.certificate) && b.certificate->source() == assemble(v.field(), b.bars);
  c.text << "barcode: " << b.to_string() << "\ncertificate: " << (ok ? "verified" : "FAILED") << "\n";
  c.report["barcode"] = barcode_to_json(b);
  c.report["certificate"] = ok ? "verified" : "failed";
}

void cmd_classify(Context& c) {
  Classification k = classify(need_seq(c.doc, c.args[0]));
  c.text << "injective: " << yes_no(k.injective) << "\nacyclic: " << yes_no(k.acyclic)
         << "\nh-projective: " << yes_no(k.h_projective) << "\nbounded: " << to_string(k.bounded_class)
         << "\nfinitely generated degreewise: " << yes_no(k.finitely_generated_degreewise)
         << "\nindecomposable: " << yes_no(k.indecomposable) << "\ncompact: " << yes_no(k.compact) << "\n";
  c.report["classification"] = {{"injective", k.injective},
                                {"acyclic", k.acyclic},
                                {"h_projective", k.h_projective},
                                {"bounded", to_string(k.bounded_class)},
                                {"finitely_generated_degreewise", k.finitely_generated_degreewise},
                                {"indecomposable", k.indecomposable},
                                {"compact", k.compact}};
}

void cmd_hom(Context& c) {
  const Seq& v = need_seq(c.doc, c.args[0]);
  const Seq& w = need_seq(c.doc, c.args[1]);
  HomOptions opt;
  opt.depth = c.depth;
  HomSpace h = hom_complex(v, w, 0, opt);
  c.text << "Hom_S: " << h.cycles_dim() << "\nHom^eps: " << h.quotient_dim() << "\n";
  if (h.certificate()) c.text << "stable from margin " << h.certificate()->margin << "\n";
  json one = json::array(), eps = json::array();
  for (std::size_t k = 0; k < h.cycles().size(); ++k) {
    c.text << "one " << k << ": " << h.cycles()[k].to_string() << "\n";
    one.push_back(graded_to_json(h.cycles()[k]));
  }
  for (std::size_t k = 0; k < h.quotient_basis().size(); ++k) {
    c.text << "eps " << k << ": " << h.quotient_basis()[k].to_string() << "\n";
    eps.push_back(graded_to_json(h.quotient_basis()[k]));
  }
  c.report["hom_s"] = h.cycles_dim();
  c.report["hom_eps"] = h.quotient_dim();
  if (h.certificate()) c.report["margin"] = h.certificate()->margin;
  c.report["basis"] = {{"one", one}, {"eps", eps}};
}

void cmd_cone(Context& c) {
  const NamedMorphism& m = need_morphism(c.doc, c.args[0]);
  Cone k = cone(m.morphism);
  std::string wm = m.target + "[-1]";
  c.text << "barcode: " << barcode_by_ranks(k.u).to_string() << "\n"
         << seq_to_text("U", k.u) << morphism_to_text("f", wm, "U", k.f) << morphism_to_text("g", "U", m.source, k.g);
  c.report["cone"] = seq_to_json(k.u);
  c.report["barcode"] = barcode_to_json(barcode_by_ranks(k.u));
  c.report["f"] = hat_to_json(k.f);
  c.report["g"] = hat_to_json(k.g);
}

void cmd_minimize(Context& c) {
  const EpsComplex& cx = need_complex(c.doc, c.args[0]);
  MinimalModel mm = minimize(cx);
  bool ok = verify(cx, mm.complex, mm.equivalence);
  Seq s = to_seq(mm.complex);
  std::string model = s.is_zero() ? "0" : barcode_by_ranks(s).to_string();
  c.text << "minimal model: " << model << "; certificates: " << (ok ? "OK" : "FAILED") << "\n";
  if (!s.is_zero()) c.text << complex_to_text("M", mm.complex);
  c.report["minimal"] = complex_to_json(mm.complex);
  c.report["sequence"] = seq_to_json(s);
  c.report["barcode"] = barcode_to_json(barcode_by_ranks(s));
  c.report["certificates"] = ok ? "OK" : "FAILED";
  if (!ok) c.exit_code = 1;
}

void cmd_cohomology(Context& c) {
  const std::string& n = c.args[0];
  std::map<int, std::size_t> h;
  if (c.doc.seqs.count(n)) {
    h = cohomology(c.doc.seqs.at(n));
  } else {
    h = cohomology(need_complex(c.doc, n));
  }
  c.text << cohomology_to_string(h) << "\n";
  c.report["cohomology"] = cohomology_to_json(h);
}

void cmd_phantom(Context& c) {
  const NamedMorphism& m = need_morphism(c.doc, c.args[0]);
  int depth = c.depth.value_or(default_phantom_depth(m.morphism.source(), m.morphism.target()));
  PhantomVerdict r = is_phantom(m.morphism, depth);
  c.text << "phantom: " << yes_no(r.phantom) << " (" << r.reason << ")\n";
  c.report["phantom"] = r.phantom;
  c.report["reason"] = r.reason;
  if (r.certificate) {
    json levels = json::array();
    c.text << "levels:";
    for (auto [n, d] : r.certificate->dims) {
      c.text << " " << n << ":" << d;
      levels.push_back({{"level", n}, {"dim", d}});
    }
    c.text << "\nstable at level " << r.certificate->stable_level << "\n";
    c.report["certificate"] = {{"depth", r.certificate->depth}, {"levels", levels}, {"stable_level", r.certificate->stable_level}};
  }
}

void cmd_truncate(Context& c) {
  const std::string& name = c.args[0];
  const Seq& v = need_seq(c.doc, name);
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(c.args[1], &used);
    if (used != c.args[1].size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw ValidationError("truncate: level must be an integer, got '" + c.args[1] + "'");
  }
  Triangle t = truncation_triangle(v, n);
  std::string ge = name + "_ge", lt = name + "_lt";
  c.text << seq_to_text(ge, t.a) << seq_to_text(lt, t.c) << "connecting class: " << (t.w.is_zero() ? "zero" : "nonzero")
         << "\n";
  if (!t.w.is_zero()) c.text << morphism_to_text("eps", lt, ge + "[1]", t.w);
  c.report["level"] = n;
  c.report["above"] = seq_to_json(t.a);
  c.report["below"] = seq_to_json(t.c);
  c.report["connecting"] = hat_to_json(t.w);
  c.report["connecting_zero"] = t.w.is_zero();
}

void cmd_derivation_check(Context& c) {
  auto [d, der] = need_derivation(c.doc, c.args[0], c.args[1]);
  DerivationCheck r = check_derivation(*d, *der);
  if (r.ok) {
    c.text << "derivation: ok\n";
  } else {
    c.text << "derivation: violated (" << r.message << ")\n";
    c.exit_code = 1;
  }
  c.report["ok"] = r.ok;
  if (!r.ok) {
    c.report["relation"] = r.relation;
    c.report["message"] = r.message;
  }
}

void cmd_inner_solve(Context& c) {
  auto [d, der] = need_derivation(c.doc, c.args[0], c.args[1]);
  auto theta = solve_inner(*d, *der);
  c.report["inner"] = theta.has_value();
  if (!theta) {
    c.text << "inner: no\n";
    return;
  }
  c.text << "inner: yes\n";
  json th = json::object();
  for (const auto& [obj, g] : *theta) {
    c.text << "theta " << obj << ": " << g.to_string() << "\n";
    th[obj] = graded_to_json(g);
  }
  c.report["theta"] = th;
}

void cmd_show(Context& c) {
  const std::string& n = c.args[0];
  if (auto it = c.doc.seqs.find(n); it != c.doc.seqs.end()) {
    c.text << seq_to_text(n, it->second);
    c.report["seq"] = seq_to_json(it->second);
  } else if (auto ct = c.doc.complexes.find(n); ct != c.doc.complexes.end()) {
    c.text << complex_to_text(n, ct->second);
    c.report["complex"] = complex_to_json(ct->second);
  } else {
    const NamedMorphism& m = need_morphism(c.doc, n);
    c.text << morphism_to_text(n, m.source, m.target, m.morphism);
    c.report["morphism"] = {{"source", m.source}, {"target", m.target}, {"value", hat_to_json(m.morphism)}};
  }
}

struct Command {
  const char* name;
  std::size_t nargs;
  const char* args_help;
  const char* help;
  std::function<void(Context&)> run;
};

const std::vector<Command>& commands() {
  static const std::vector<Command> list{
      {"decompose", 1, "SEQ", "interval decomposition with certificate", cmd_decompose},
      {"classify", 1, "SEQ", "classification predicates", cmd_classify},
      {"hom", 2, "SRC DST", "Hom_S and Hom^eps dimensions and bases", cmd_hom},
      {"cone", 1, "MORPHISM", "cone of a morphism", cmd_cone},
      {"minimize", 1, "COMPLEX", "minimal model with homotopy certificate", cmd_minimize},
      {"cohomology", 1, "SEQ|COMPLEX", "cohomology dimensions", cmd_cohomology},
      {"phantom", 1, "MORPHISM", "phantom test over truncation levels", cmd_phantom},
      {"truncate", 2, "SEQ N", "truncation triangle at level N", cmd_truncate},
      {"derivation-check", 2, "DIAGRAM DERIVATION", "Leibniz rule on every relation", cmd_derivation_check},
      {"inner-solve", 2, "DIAGRAM DERIVATION", "solve for an inner presentation", cmd_inner_solve},
      {"show", 1, "NAME", "print an object in document or JSON form", cmd_show},
  };
  return list;
}

}  // namespace

Document parse_document(std::string_view text) { return Parser(text).run(); }

std::string matrix_literal(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return "[]";
  return m.to_string();
}

std::string seq_to_text(const std::string& name, const Seq& v) {
  std::ostringstream os;
  os << "seq " << name << "\n  lo " << v.lo() << "\n  dims";
  for (auto d : v.window_dims()) os << " " << d;
  os << "\n";
  for (int i = v.lo(); i < v.hi(); ++i)
    if (!v.map(i).is_zero()) os << "  map " << i << " " << matrix_literal(v.map(i)) << "\n";
  os << "  left " << to_string(v.left()) << "\n  right " << to_string(v.right()) << "\nend\n";
  return os.str();
}

std::string morphism_to_text(const std::string& name, const std::string& source, const std::string& target,
                             const HatMorphism& h) {
  return "morphism " + name + " : " + source + " -> " + target + "\n" + component_lines("one", h.one()) +
         component_lines("eps", h.eps()) + "end\n";
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m.at(r, c)));
    rows.push_back(row);
  }
  return rows;
}

Matrix matrix_from_json(const json& j, const Field& f, std::size_t rows, std::size_t cols) {
  Matrix m(f, rows, cols);
  if (rows * cols == 0) return m;
  if (!j.is_array() || j.size() != rows) throw ValidationError("json matrix: wrong row count");
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw ValidationError("json matrix: wrong column count");
    for (std::size_t c = 0; c < cols; ++c) {
      const json& e = j[r][c];
      std::string s = e.is_string() ? e.get<std::string>() : std::to_string(e.get<long long>());
      m.set(r, c, Scalar::parse(f, s));
    }
  }
  return m;
}

json seq_to_json(const Seq& v) {
  json maps = json::array();
  for (const Matrix& m : v.window_maps()) maps.push_back(matrix_to_json(m));
  return {{"field", v.field().name()}, {"lo", v.lo()},
          {"dims", v.window_dims()},   {"maps", maps},
          {"left", to_string(v.left())}, {"right", to_string(v.right())}};
}

Seq seq_from_json(const json& j, const Field& f) {
  int lo = j.at("lo").get<int>();
  auto dims = j.at("dims").get<std::vector<std::size_t>>();
  std::vector<Matrix> maps;
  const json& ms = j.at("maps");
  if (ms.size() + 1 != dims.size()) throw ValidationError("json seq: expected one map per adjacent pair");
  for (std::size_t k = 0; k < ms.size(); ++k) maps.push_back(matrix_from_json(ms[k], f, dims[k + 1], dims[k]));
  auto tail = [](const json& t) { return t.get<std::string>() == "iso" ? Tail::Iso : Tail::Zero; };
  return Seq(f, lo, dims, maps, tail(j.at("left")), tail(j.at("right")));
}

json graded_to_json(const GradedHomElement& g) {
  json comps = json::array();
  for (int i = g.lo(); i <= g.hi(); ++i) comps.push_back(matrix_to_json(g.at(i)));
  auto pattern = [&](int a) {
    // a even or odd; report by parity.
    int e = a % 2 == 0 ? a : a - 1, o = a % 2 == 0 ? a - 1 : a;
    return pattern_to_json(g.at(e), g.at(o));
  };
  auto rpattern = [&](int a) {
    int e = a % 2 == 0 ? a : a + 1, o = a % 2 == 0 ? a + 1 : a;
    return pattern_to_json(g.at(e), g.at(o));
  };
  return {{"degree", g.degree()}, {"lo", g.lo()}, {"components", comps}, {"left", pattern(g.lo() - 1)},
          {"right", rpattern(g.hi() + 1)}};
}

GradedHomElement graded_from_json(const json& j, const Seq& source, const Seq& target) {
  const Field& f = source.field();
  int n = j.at("degree").get<int>(), lo = j.at("lo").get<int>();
  const json& cs = j.at("components");
  std::vector<Matrix> comps;
  for (std::size_t k = 0; k < cs.size(); ++k) {
    int i = lo + static_cast<int>(k);
    comps.push_back(matrix_from_json(cs[k], f, target.dim(n + i), source.dim(i)));
  }
  int hi = lo + static_cast<int>(cs.size()) - 1;
  auto pattern = [&](const json& p, int deg) {
    return TailPattern{matrix_from_json(p.at("even"), f, target.dim(n + deg), source.dim(deg)),
                       matrix_from_json(p.at("odd"), f, target.dim(n + deg), source.dim(deg))};
  };
  return GradedHomElement(source, target, n, lo, std::move(comps), pattern(j.at("left"), lo - 1),
                          pattern(j.at("right"), hi + 1));
}

json complex_to_json(const EpsComplex& c) {
  json ranks = json::array(), d1 = json::array(), deps = json::array();
  for (int i = c.lo(); i <= c.hi(); ++i) ranks.push_back(c.rank(i));
  for (int i = c.lo(); i < c.hi(); ++i) {
    d1.push_back(matrix_to_json(c.d1(i)));
    deps.push_back(matrix_to_json(c.deps(i)));
  }
  return {{"field", c.field().name()}, {"lo", c.lo()},   {"ranks", ranks},
          {"d1", d1},                  {"deps", deps},   {"left", to_string(c.left())},
          {"right", to_string(c.right())}};
}

EpsComplex complex_from_json(const json& j, const Field& f) {
  int lo = j.at("lo").get<int>();
  auto ranks = j.at("ranks").get<std::vector<std::size_t>>();
  std::vector<Matrix> d1, deps;
  for (std::size_t k = 0; k + 1 < ranks.size(); ++k) {
    d1.push_back(matrix_from_json(j.at("d1")[k], f, ranks[k + 1], ranks[k]));
    deps.push_back(matrix_from_json(j.at("deps")[k], f, ranks[k + 1], ranks[k]));
  }
  auto tail = [](const json& t) { return t.get<std::string>() == "iso" ? Tail::Iso : Tail::Zero; };
  return EpsComplex(f, lo, ranks, d1, deps, tail(j.at("left")), tail(j.at("right")));
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sequences, dual-number complexes and their triangulated structure."};
  app.name("dualseq");
  app.require_subcommand(1);
  bool as_json = false;
  std::optional<int> depth;
  std::string path;
  std::vector<std::string> names;
  app.add_flag("--json", as_json, "print a JSON report");
  app.add_option("--depth", depth, "stabilization depth")->check(CLI::NonNegativeNumber);
  std::map<CLI::App*, const Command*> by_app;
  for (const Command& c : commands()) {
    CLI::App* sc = app.add_subcommand(c.name, c.help);
    sc->fallthrough();
    sc->add_option("document", path, "input document")->required();
    sc->add_option("args", names, c.args_help)->required()->expected(static_cast<int>(c.nargs));
    by_app[sc] = &c;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }
  const Command* cmd = nullptr;
  for (auto [sc, c] : by_app)
    if (sc->parsed()) cmd = c;

  auto fail = [&](int code, const std::string& kind, const std::string& msg, json extra = json::object()) {
    if (as_json) {
      json e = {{"kind", kind}, {"message", msg}};
      e.update(extra);
      out << json{{"schema", kJsonSchema}, {"command", cmd->name}, {"error", e}}.dump(2) << "\n";
    }
    err << "error: " << msg << "\n";
    return code;
  };

  std::ifstream in(path);
  if (!in) return fail(1, "io", "cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    Document doc = parse_document(buf.str());
    Context ctx{doc, names, depth, json::object(), {}, 0};
    ctx.report["schema"] = kJsonSchema;
    ctx.report["command"] = cmd->name;
    cmd->run(ctx);
    if (as_json) {
      out << ctx.report.dump(2) << "\n";
    } else {
      out << ctx.text.str();
    }
    return ctx.exit_code;
  } catch (const ParseError& e) {
    return fail(1, "parse", e.what(), {{"line", e.line()}, {"column", e.column()}});
  } catch (const ValidationError& e) {
    return fail(1, "validation", e.what());
  } catch (const StabilizationDepthExceeded& e) {
    return fail(2, "stabilization", e.what());
  } catch (const std::invalid_argument& e) {
    return fail(1, "validation", e.what());
  }
}

}  // namespace dualseq
