#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "grd/bisub.hpp"
#include "grd/cardfn.hpp"
#include "grd/pbf.hpp"
#include "grd/rational.hpp"

namespace grd {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_ = 0;
};

// Formats share the shape "<tag> <n>" then one row per entry; '#' starts
// a comment, blank lines are skipped. Readers demand complete domain
// coverage and reject duplicates; writers emit the canonical row order.
//
//   pbf n    <bitstring>  <rational>             all 2^n labelings
//   qpbf n   c <rational>                        optional constant
//            u <i> <f0> <f1>                     1-based node
//            e <i> <j> <f00> <f01> <f10> <f11>   1-based, i < j
//   hif n    <tritstring over 0,h,1>  <rational> all 3^n labelings
//   card n   <a> <b> <rational>                  all a, b >= 0, a+b <= n
//
// Bit/trit strings put node 1 first.

PBFTable read_pbf(std::istream& in);
QuadraticPBF read_qpbf(std::istream& in);
HalfFunction read_hif(std::istream& in);
CardinalityFn read_card(std::istream& in);

PBFTable read_pbf(const std::string& path);
QuadraticPBF read_qpbf(const std::string& path);
HalfFunction read_hif(const std::string& path);
CardinalityFn read_card(const std::string& path);

void write_pbf(std::ostream& out, const PBFTable& f);
void write_qpbf(std::ostream& out, const QuadraticPBF& f);
void write_hif(std::ostream& out, const HalfFunction& f);
void write_card(std::ostream& out, const CardinalityFn& f);

void write_pbf(const std::string& path, const PBFTable& f);
void write_qpbf(const std::string& path, const QuadraticPBF& f);
void write_hif(const std::string& path, const HalfFunction& f);
void write_card(const std::string& path, const CardinalityFn& f);

// tag of the header line ("pbf", "qpbf", "hif", "card")
std::string sniff_format(const std::string& path);

// ordered "key = value" lines; identical inputs give identical bytes
class Report {
 public:
  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, const Rational& value);
  void add(const std::string& key, long value);
  void add(const std::string& key, bool value);
  std::string str() const;

 private:
  std::vector<std::pair<std::string, std::string>> lines_;
};

}  // namespace grd
