#include "grd/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace grd {

namespace {

struct LineReader {
  std::istream& in;
  int lineno = 0;

  // next content line as tokens; comments and blanks skipped
  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in, line)) {
      lineno++;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ss(line);
      tokens.clear();
      std::string t;
      while (ss >> t) tokens.push_back(t);
      if (!tokens.empty()) return true;
    }
    return false;
  }
};

long parse_long(const std::string& s, const LineReader& r) {
  long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw ParseError(r.lineno, "expected an integer, got '" + s + "'");
  return v;
}

Rational parse_rational(const std::string& s, const LineReader& r) {
  try {
    return Rational::parse(s);
  } catch (const std::exception&) {
    throw ParseError(r.lineno, "expected a rational, got '" + s + "'");
  }
}

int read_header(LineReader& r, const std::string& tag, long max_n) {
  std::vector<std::string> tok;
  if (!r.next(tok)) throw ParseError(r.lineno, "missing '" + tag + " <n>' header");
  if (tok.size() != 2 || tok[0] != tag)
    throw ParseError(r.lineno, "expected '" + tag + " <n>' header");
  long n = parse_long(tok[1], r);
  if (n < 0 || n > max_n)
    throw ParseError(r.lineno, "node count " + tok[1] + " out of range");
  return (int)n;
}

void want_tokens(const std::vector<std::string>& tok, size_t n, const LineReader& r) {
  if (tok.size() != n)
    throw ParseError(r.lineno, "expected " + std::to_string(n) + " fields, got " +
                                   std::to_string(tok.size()));
}

std::ifstream open_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return in;
}

std::ofstream create_file(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot create '" + path + "'");
  return out;
}

}  // namespace

PBFTable read_pbf(std::istream& in) {
  LineReader r{in};
  int n = read_header(r, "pbf", 62);
  uint64_t total = pow2(n);
  if (total > enum_bound())
    throw ParseError(r.lineno, "2^n exceeds the enumeration bound");
  PBFTable f(n);
  std::vector<uint8_t> seen(total, 0);
  std::vector<std::string> tok;
  while (r.next(tok)) {
    want_tokens(tok, 2, r);
    if ((int)tok[0].size() != n)
      throw ParseError(r.lineno, "bitstring length " + std::to_string(tok[0].size()) +
                                     ", expected " + std::to_string(n));
    BinaryLabeling x;
    try {
      x = BinaryLabeling::parse(tok[0]);
    } catch (const std::exception&) {
      throw ParseError(r.lineno, "bad bitstring '" + tok[0] + "'");
    }
    if (seen[x.rank()]) throw ParseError(r.lineno, "duplicate labeling " + tok[0]);
    seen[x.rank()] = 1;
    f.values[x.rank()] = parse_rational(tok[1], r);
  }
  for (uint64_t k = 0; k < total; ++k)
    if (!seen[k])
      throw ParseError(r.lineno, "missing labeling " + BinaryLabeling(n, k).str());
  return f;
}

QuadraticPBF read_qpbf(std::istream& in) {
  LineReader r{in};
  int n = read_header(r, "qpbf", 1000000);
  QuadraticPBF f(n);
  bool saw_constant = false;
  std::vector<uint8_t> saw_unary(n, 0);
  std::vector<std::string> tok;
  auto node = [&](const std::string& s) {
    long i = parse_long(s, r);
    if (i < 1 || i > n) throw ParseError(r.lineno, "node " + s + " out of range");
    return (int)(i - 1);
  };
  while (r.next(tok)) {
    if (tok[0] == "c") {
      want_tokens(tok, 2, r);
      if (saw_constant) throw ParseError(r.lineno, "duplicate constant row");
      saw_constant = true;
      f.constant() = parse_rational(tok[1], r);
    } else if (tok[0] == "u") {
      want_tokens(tok, 4, r);
      int i = node(tok[1]);
      if (saw_unary[i]) throw ParseError(r.lineno, "duplicate unary row for node " + tok[1]);
      saw_unary[i] = 1;
      f.unary(i) = {parse_rational(tok[2], r), parse_rational(tok[3], r)};
    } else if (tok[0] == "e") {
      want_tokens(tok, 7, r);
      int i = node(tok[1]), j = node(tok[2]);
      if (i >= j) throw ParseError(r.lineno, "edge rows need i < j");
      PairwiseTable t;
      t.v[0][0] = parse_rational(tok[3], r);
      t.v[0][1] = parse_rational(tok[4], r);
      t.v[1][0] = parse_rational(tok[5], r);
      t.v[1][1] = parse_rational(tok[6], r);
      try {
        f.set_edge(i, j, t);
      } catch (const std::exception&) {
        throw ParseError(r.lineno, "duplicate edge row " + tok[1] + " " + tok[2]);
      }
    } else {
      throw ParseError(r.lineno, "unknown row tag '" + tok[0] + "'");
    }
  }
  return f;
}

HalfFunction read_hif(std::istream& in) {
  LineReader r{in};
  int n = read_header(r, "hif", 39);
  uint64_t total = pow3(n);
  if (total > enum_bound())
    throw ParseError(r.lineno, "3^n exceeds the enumeration bound");
  HalfFunction f(n);
  std::vector<uint8_t> seen(total, 0);
  std::vector<std::string> tok;
  while (r.next(tok)) {
    want_tokens(tok, 2, r);
    if ((int)tok[0].size() != n)
      throw ParseError(r.lineno, "tritstring length " + std::to_string(tok[0].size()) +
                                     ", expected " + std::to_string(n));
    HalfLabeling x;
    try {
      x = HalfLabeling::parse(tok[0]);
    } catch (const std::exception&) {
      throw ParseError(r.lineno, "bad tritstring '" + tok[0] + "'");
    }
    if (seen[x.rank()]) throw ParseError(r.lineno, "duplicate labeling " + tok[0]);
    seen[x.rank()] = 1;
    f.values[x.rank()] = parse_rational(tok[1], r);
  }
  for (uint64_t k = 0; k < total; ++k)
    if (!seen[k])
      throw ParseError(r.lineno, "missing labeling " + HalfLabeling(n, k).str());
  return f;
}

CardinalityFn read_card(std::istream& in) {
  LineReader r{in};
  int n = read_header(r, "card", 10000);
  CardinalityFn f(n);
  std::vector<std::vector<uint8_t>> seen(n + 1, std::vector<uint8_t>(n + 1, 0));
  std::vector<std::string> tok;
  while (r.next(tok)) {
    want_tokens(tok, 3, r);
    long a = parse_long(tok[0], r), b = parse_long(tok[1], r);
    if (a < 0 || b < 0 || a + b > n)
      throw ParseError(r.lineno, "(" + tok[0] + ", " + tok[1] + ") outside the triangle");
    if (seen[a][b])
      throw ParseError(r.lineno, "duplicate entry (" + tok[0] + ", " + tok[1] + ")");
    seen[a][b] = 1;
    f.at((int)a, (int)b) = parse_rational(tok[2], r);
  }
  for (int a = 0; a <= n; ++a)
    for (int b = 0; a + b <= n; ++b)
      if (!seen[a][b])
        throw ParseError(r.lineno, "missing entry (" + std::to_string(a) + ", " +
                                       std::to_string(b) + ")");
  return f;
}

PBFTable read_pbf(const std::string& path) {
  auto in = open_file(path);
  return read_pbf(in);
}
QuadraticPBF read_qpbf(const std::string& path) {
  auto in = open_file(path);
  return read_qpbf(in);
}
HalfFunction read_hif(const std::string& path) {
  auto in = open_file(path);
  return read_hif(in);
}
CardinalityFn read_card(const std::string& path) {
  auto in = open_file(path);
  return read_card(in);
}

void write_pbf(std::ostream& out, const PBFTable& f) {
  out << "pbf " << f.n << "\n";
  for (uint64_t r = 0; r < pow2(f.n); ++r)
    out << BinaryLabeling(f.n, r).str() << " " << f.values[r].str() << "\n";
}

void write_qpbf(std::ostream& out, const QuadraticPBF& f) {
  out << "qpbf " << f.size() << "\n";
  if (!f.constant().is_zero()) out << "c " << f.constant().str() << "\n";
  for (int i = 0; i < f.size(); ++i)
    out << "u " << i + 1 << " " << f.unary(i)[0].str() << " " << f.unary(i)[1].str() << "\n";
  for (const auto& [key, t] : f.edges())
    out << "e " << key.first + 1 << " " << key.second + 1 << " " << t.v[0][0].str() << " "
        << t.v[0][1].str() << " " << t.v[1][0].str() << " " << t.v[1][1].str() << "\n";
}

void write_hif(std::ostream& out, const HalfFunction& f) {
  out << "hif " << f.n << "\n";
  for (uint64_t r = 0; r < pow3(f.n); ++r)
    out << HalfLabeling(f.n, r).str() << " " << f.values[r].str() << "\n";
}

void write_card(std::ostream& out, const CardinalityFn& f) {
  out << "card " << f.size() << "\n";
  for (int a = 0; a <= f.size(); ++a)
    for (int b = 0; a + b <= f.size(); ++b)
      out << a << " " << b << " " << f.at(a, b).str() << "\n";
}

void write_pbf(const std::string& path, const PBFTable& f) {
  auto out = create_file(path);
  write_pbf(out, f);
}
void write_qpbf(const std::string& path, const QuadraticPBF& f) {
  auto out = create_file(path);
  write_qpbf(out, f);
}
void write_hif(const std::string& path, const HalfFunction& f) {
  auto out = create_file(path);
  write_hif(out, f);
}
void write_card(const std::string& path, const CardinalityFn& f) {
  auto out = create_file(path);
  write_card(out, f);
}

std::string sniff_format(const std::string& path) {
  auto in = open_file(path);
  LineReader r{in};
  std::vector<std::string> tok;
  if (!r.next(tok)) throw ParseError(1, "empty file");
  return tok[0];
}

void Report::add(const std::string& key, const std::string& value) {
  lines_.push_back({key, value});
}
void Report::add(const std::string& key, const Rational& value) { add(key, value.str()); }
void Report::add(const std::string& key, long value) { add(key, std::to_string(value)); }
void Report::add(const std::string& key, bool value) {
  add(key, std::string(value ? "true" : "false"));
}

std::string Report::str() const {
  std::string out;
  for (const auto& [k, v] : lines_) {
    out += k;
    out += " = ";
    out += v;
    out += "\n";
  }
  return out;
}

}  // namespace grd
