#include "twirl/ctbl_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>
#include <sstream>

#include "twirl/errors.hpp"

namespace twirl {

namespace {

using std::int64_t;

constexpr int64_t kMaxExprOrder = 100000000;  // mirrors the cyclotomic ceiling
constexpr int kMaxClasses = 4096;
constexpr int kMaxMatDim = 4096;

// ---------------------------------------------------------------------------
// Cyclotomic expression parsing.

class ExprParser {
 public:
  explicit ExprParser(const std::string& s) : s_(s) {}

  Cyclotomic parse() {
    skip();
    Cyclotomic acc;
    bool neg = false;
    if (!eof() && (peek() == '+' || peek() == '-')) neg = (next() == '-');
    acc += term(neg);
    skip();
    while (!eof()) {
      char op = peek();
      if (op != '+' && op != '-') fail("expected '+' or '-'");
      next();
      acc += term(op == '-');
      skip();
    }
    return acc;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, 1, pos_ + 1);
  }
  bool eof() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  char next() { return s_[pos_++]; }
  void skip() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) next();
  }
  void expect(char c) {
    skip();
    if (eof() || peek() != c) fail(std::string("expected '") + c + "'");
    next();
  }

  Integer digits() {
    skip();
    std::string d;
    while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) d.push_back(next());
    if (d.empty()) fail("expected a number");
    return Integer(d);
  }

  Rational rational() {
    skip();
    bool neg = false;
    if (!eof() && peek() == '-') {
      next();
      neg = true;
    }
    Integer num = digits();
    Integer den = 1;
    skip();
    if (!eof() && peek() == '/') {
      next();
      den = digits();
      if (den == 0) fail("zero denominator");
    }
    Rational r(num, den);
    r.canonicalize();
    return neg ? Rational(-r) : r;
  }

  Cyclotomic atom_pow() {
    expect('E');
    expect('(');
    skip();
    std::size_t at = pos_;
    bool neg_order = false;
    if (!eof() && peek() == '-') {
      next();
      neg_order = true;
    }
    Integer n_big = digits();
    expect(')');
    if (neg_order || n_big == 0) throw ParseError("cyclotomic order must be positive", 1, at + 1);
    if (!n_big.fits_slong_p() || n_big.get_si() > kMaxExprOrder) {
      throw ParseError("cyclotomic order too large", 1, at + 1);
    }
    int64_t n = n_big.get_si();
    int64_t e = 1;
    skip();
    if (!eof() && peek() == '^') {
      next();
      skip();
      bool neg_exp = false;
      if (!eof() && peek() == '-') {
        next();
        neg_exp = true;
      }
      Integer e_big = digits();
      // Exponents act mod the order, so arbitrary integers are fine.
      e = static_cast<int64_t>(mpz_fdiv_ui(e_big.get_mpz_t(), static_cast<unsigned long>(n)));
      if (neg_exp) e = (n - e) % n;
    }
    return Cyclotomic::zeta(n, e);
  }

  Cyclotomic term(bool neg) {
    skip();
    if (eof()) fail("expected a term");
    if (peek() == 'E') {
      Cyclotomic z = atom_pow();
      return neg ? -z : z;
    }
    Rational r = rational();
    if (neg) r = -r;
    skip();
    if (!eof() && peek() == '*') {
      next();
      skip();
      if (eof() || peek() != 'E') fail("expected E(...) after '*'");
      return Cyclotomic(r) * atom_pow();
    }
    return Cyclotomic(r);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Line-oriented reading shared by the three formats.

std::string strip(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

class LineReader {
 public:
  explicit LineReader(const std::string& text) {
    std::string cur;
    for (char ch : text) {
      if (ch == '\n') {
        lines_.push_back(std::move(cur));
        cur.clear();
      } else if (ch != '\r') {
        cur.push_back(ch);
      }
    }
    if (!cur.empty()) lines_.push_back(std::move(cur));
    advance();
  }

  bool eof() const { return idx_ >= lines_.size(); }
  std::size_t lineno() const { return idx_ + 1; }
  const std::string& peek() const {
    static const std::string empty;
    return eof() ? empty : lines_[idx_];
  }
  std::string next() {
    if (eof()) throw ParseError("unexpected end of input", lines_.size() + 1);
    std::string out = lines_[idx_++];
    advance();
    return out;
  }

 private:
  // Blank lines and '#' comments are insignificant everywhere.
  void advance() {
    while (idx_ < lines_.size()) {
      std::string t = strip(lines_[idx_]);
      if (!t.empty() && t[0] != '#') break;
      ++idx_;
    }
  }
  std::vector<std::string> lines_;
  std::size_t idx_ = 0;
};

// Consumes a line that must start with `key` followed by whitespace (or the
// end of line); returns the trimmed remainder.
std::string expect_key(LineReader& lr, const std::string& key) {
  std::size_t at = lr.lineno();
  if (lr.eof()) throw ParseError("expected '" + key + "' line", at);
  std::string line = lr.next();
  if (line.compare(0, key.size(), key) != 0 ||
      (line.size() > key.size() && !std::isspace(static_cast<unsigned char>(line[key.size()])))) {
    throw ParseError("expected '" + key + "' line", at);
  }
  return strip(line.substr(std::min(line.size(), key.size() + 1)));
}

void expect_magic(LineReader& lr, const std::string& magic) {
  std::size_t at = lr.lineno();
  if (lr.eof() || strip(lr.next()) != magic) {
    throw ParseError("expected '" + magic + "' header", at);
  }
}

void expect_eof(LineReader& lr) {
  if (!lr.eof()) throw ParseError("unexpected trailing content", lr.lineno());
}

Integer parse_big(const std::string& text, std::size_t line, const char* what) {
  std::string t = strip(text);
  if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
      })) {
    throw ParseError(std::string("expected a nonnegative integer for ") + what, line);
  }
  return Integer(t);
}

int64_t parse_int(const std::string& text, std::size_t line, const char* what, int64_t lo,
                  int64_t hi) {
  Integer v = parse_big(text, line, what);
  if (!v.fits_slong_p() || v.get_si() < lo || v.get_si() > hi) {
    throw ParseError(std::string(what) + " out of range", line);
  }
  return v.get_si();
}

std::vector<int64_t> parse_int_list(const std::string& text, std::size_t line, const char* what,
                                    int expected, int64_t lo, int64_t hi) {
  std::istringstream in(text);
  std::vector<int64_t> out;
  std::string tok;
  while (in >> tok) out.push_back(parse_int(tok, line, what, lo, hi));
  if (static_cast<int>(out.size()) != expected) {
    throw ParseError(std::string("expected ") + std::to_string(expected) + " entries for " + what,
                     line);
  }
  return out;
}

std::vector<Cyclotomic> parse_value_row(const std::string& text, std::size_t line, int expected) {
  std::vector<Cyclotomic> out;
  std::size_t start = 0;
  while (true) {
    std::size_t semi = text.find(';', start);
    std::string piece = text.substr(start, semi == std::string::npos ? semi : semi - start);
    try {
      out.push_back(parse_cyclotomic(piece));
    } catch (const ParseError& e) {
      throw ParseError(std::string("value ") + std::to_string(out.size() + 1) + ": " + e.what(),
                       line, e.column);
    }
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  if (static_cast<int>(out.size()) != expected) {
    throw ParseError("expected " + std::to_string(expected) + " values", line);
  }
  return out;
}

std::vector<int64_t> primes_of(int64_t n) {
  std::vector<int64_t> ps;
  for (int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      ps.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

std::string join_ints(const std::vector<int64_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(v[i]);
  }
  return out;
}

}  // namespace

Cyclotomic parse_cyclotomic(const std::string& text) { return ExprParser(text).parse(); }

TableDocument parse_table(const std::string& text, bool validate_table) {
  LineReader lr(text);
  expect_magic(lr, "CTBL v1");
  TableDocument doc;
  CharacterTable& t = doc.table;
  t.name = expect_key(lr, "group");
  while (!lr.eof() && lr.peek().compare(0, 6, "alias ") == 0) {
    doc.aliases.push_back(expect_key(lr, "alias"));
  }
  std::size_t ln = lr.lineno();
  t.order = parse_big(expect_key(lr, "order"), ln, "order");
  if (t.order == 0) throw ParseError("order must be positive", ln);
  ln = lr.lineno();
  t.exponent = parse_int(expect_key(lr, "exponent"), ln, "exponent", 1, kMaxExprOrder);
  ln = lr.lineno();
  int k = static_cast<int>(parse_int(expect_key(lr, "classes"), ln, "classes", 1, kMaxClasses));
  ln = lr.lineno();
  t.class_sizes =
      parse_int_list(expect_key(lr, "sizes"), ln, "sizes", k, 1, std::numeric_limits<int64_t>::max());
  ln = lr.lineno();
  t.element_orders = parse_int_list(expect_key(lr, "orders"), ln, "orders", k, 1, t.exponent);
  for (int c = 0; c < k; ++c) {
    if (t.exponent % t.element_orders[c] != 0) {
      throw ParseError("element order does not divide the exponent", ln);
    }
  }
  std::vector<int64_t> want_primes = primes_of(t.exponent);
  while (!lr.eof() && lr.peek().compare(0, 9, "powermap ") == 0) {
    ln = lr.lineno();
    std::string rest = expect_key(lr, "powermap");
    std::size_t colon = rest.find(':');
    if (colon == std::string::npos) throw ParseError("expected ':' in powermap line", ln);
    int64_t p = parse_int(rest.substr(0, colon), ln, "powermap prime", 2, kMaxExprOrder);
    std::vector<int64_t> m = parse_int_list(rest.substr(colon + 1), ln, "powermap", k, 1, k);
    if (t.power_maps.count(p)) throw ParseError("duplicate powermap line", ln);
    std::vector<int> mm(k);
    for (int c = 0; c < k; ++c) mm[c] = static_cast<int>(m[c] - 1);
    t.power_maps.emplace(p, std::move(mm));
  }
  {
    std::vector<int64_t> got;
    for (const auto& [p, m] : t.power_maps) got.push_back(p);
    if (got != want_primes) {
      throw ParseError("powermap lines must cover exactly the primes dividing the exponent",
                       lr.lineno());
    }
  }
  ln = lr.lineno();
  std::string inv_line = expect_key(lr, "inverse:");
  std::vector<int64_t> inv = parse_int_list(inv_line, ln, "inverse", k, 1, k);
  t.inverse_map.resize(k);
  for (int c = 0; c < k; ++c) t.inverse_map[c] = static_cast<int>(inv[c] - 1);
  for (int c = 0; c < k; ++c) {
    if (t.inverse_map[t.inverse_map[c]] != c) {
      throw ParseError("inverse map is not an involution", ln);
    }
  }
  if (t.class_sizes[0] != 1 || t.element_orders[0] != 1) {
    throw ParseError("first class must be the identity", lr.lineno());
  }
  t.characters.reserve(k);
  for (int i = 1; i <= k; ++i) {
    ln = lr.lineno();
    std::string rest = expect_key(lr, "char");
    std::size_t colon = rest.find(':');
    if (colon == std::string::npos) throw ParseError("expected ':' in char line", ln);
    if (parse_int(rest.substr(0, colon), ln, "char index", 1, k) != i) {
      throw ParseError("character rows must be numbered consecutively from 1", ln);
    }
    t.characters.push_back(parse_value_row(rest.substr(colon + 1), ln, k));
  }
  expect_eof(lr);
  if (validate_table) {
    t.validate();
    doc.validated = true;
  } else {
    doc.validated = false;
  }
  return doc;
}

std::string write_table(const CharacterTable& t) {
  std::string out = "CTBL v1\n";
  out += "group " + (t.name.empty() ? std::string("unnamed") : t.name) + "\n";
  out += "order " + t.order.get_str() + "\n";
  out += "exponent " + std::to_string(t.exponent) + "\n";
  out += "classes " + std::to_string(t.num_classes()) + "\n";
  out += "sizes " + join_ints(t.class_sizes) + "\n";
  out += "orders " + join_ints(t.element_orders) + "\n";
  for (const auto& [p, m] : t.power_maps) {
    std::vector<int64_t> shifted(m.size());
    for (std::size_t c = 0; c < m.size(); ++c) shifted[c] = m[c] + 1;
    out += "powermap " + std::to_string(p) + ": " + join_ints(shifted) + "\n";
  }
  {
    std::vector<int64_t> shifted(t.inverse_map.size());
    for (std::size_t c = 0; c < t.inverse_map.size(); ++c) shifted[c] = t.inverse_map[c] + 1;
    out += "inverse: " + join_ints(shifted) + "\n";
  }
  for (int i = 0; i < t.num_characters(); ++i) {
    out += "char " + std::to_string(i + 1) + ": ";
    for (int c = 0; c < t.num_classes(); ++c) {
      if (c) out += " ; ";
      out += t.characters[i][c].to_string();
    }
    out += "\n";
  }
  return out;
}

PermGroup parse_permgroup(const std::string& text) {
  LineReader lr(text);
  expect_magic(lr, "PERMGROUP v1");
  std::string name = expect_key(lr, "name");
  std::size_t ln = lr.lineno();
  int degree = static_cast<int>(parse_int(expect_key(lr, "degree"), ln, "degree", 1, 65535));
  std::vector<Permutation> gens;
  while (!lr.eof() && (lr.peek().compare(0, 4, "gen ") == 0 || strip(lr.peek()) == "gen")) {
    ln = lr.lineno();
    std::string cycles = expect_key(lr, "gen");
    try {
      gens.push_back(Permutation::from_cycles(cycles, degree));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), ln, e.column);
    }
  }
  if (gens.empty()) throw ParseError("expected at least one 'gen' line", lr.lineno());
  expect_eof(lr);
  return PermGroup(degree, std::move(gens), std::move(name));
}

std::string write_permgroup(const PermGroup& g) {
  std::string out = "PERMGROUP v1\n";
  out += "name " + g.name() + "\n";
  out += "degree " + std::to_string(g.degree()) + "\n";
  for (const Permutation& p : g.generators()) out += "gen " + p.to_cycles() + "\n";
  return out;
}

MatRep parse_matrep(const std::string& text) {
  LineReader lr(text);
  expect_magic(lr, "MATREP v1");
  MatRep m;
  m.name = expect_key(lr, "name");
  std::size_t ln = lr.lineno();
  m.dim = static_cast<int>(parse_int(expect_key(lr, "dim"), ln, "dim", 1, kMaxMatDim));
  ln = lr.lineno();
  m.order = parse_big(expect_key(lr, "order"), ln, "order");
  if (m.order == 0) throw ParseError("order must be positive", ln);
  while (!lr.eof() && strip(lr.peek()) == "gen") {
    lr.next();
    std::vector<std::vector<Cyclotomic>> rows;
    for (int r = 0; r < m.dim; ++r) {
      ln = lr.lineno();
      if (lr.eof()) throw ParseError("unexpected end of generator block", ln);
      rows.push_back(parse_value_row(lr.next(), ln, m.dim));
    }
    m.generators.push_back(std::move(rows));
  }
  if (m.generators.empty()) throw ParseError("expected at least one 'gen' block", lr.lineno());
  expect_eof(lr);
  return m;
}

std::string write_matrep(const MatRep& m) {
  std::string out = "MATREP v1\n";
  out += "name " + m.name + "\n";
  out += "dim " + std::to_string(m.dim) + "\n";
  out += "order " + m.order.get_str() + "\n";
  for (const auto& gen : m.generators) {
    out += "gen\n";
    for (const auto& row : gen) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) out += " ; ";
        out += row[c].to_string();
      }
      out += "\n";
    }
  }
  return out;
}

DocKind sniff_format(const std::string& text) {
  LineReader lr(text);
  if (lr.eof()) throw ParseError("empty input", 1);
  std::string magic = strip(lr.next());
  if (magic == "CTBL v1") return DocKind::Table;
  if (magic == "PERMGROUP v1") return DocKind::PermGroup;
  if (magic == "MATREP v1") return DocKind::MatRep;
  throw ParseError("unrecognized input format", 1);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace twirl
