#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "grd/rational.hpp"

namespace grd {

uint64_t pow2(int n);
uint64_t pow3(int n);

// Returns the enumeration budget (number of states brute-force scans may
// visit). Defaults to 3^12 = 531441, override with env GRD_ENUM_BOUND.
uint64_t enum_bound();
void require_enumerable(uint64_t states, const char* what);

// 0/1 labeling of nodes 1..n (stored 0-based). Ranks are lexicographic
// with node 1 as the most significant position.
class BinaryLabeling {
 public:
  BinaryLabeling() = default;
  explicit BinaryLabeling(int n) : bits_(n, 0) {}
  BinaryLabeling(int n, uint64_t rank);
  static BinaryLabeling parse(const std::string& s);

  int size() const { return (int)bits_.size(); }
  uint8_t at(int i) const { return bits_[i]; }
  void set(int i, uint8_t b) { bits_[i] = b; }
  uint64_t rank() const;
  std::string str() const;
  BinaryLabeling complement() const;

  friend bool operator==(const BinaryLabeling&, const BinaryLabeling&) = default;

 private:
  std::vector<uint8_t> bits_;
};

// {0, 1/2, 1} labeling; trit values 0 = zero, 1 = half, 2 = one,
// printed as '0', 'h', '1'. Ranks are base-3, node 1 most significant.
class HalfLabeling {
 public:
  static constexpr uint8_t kZero = 0, kHalf = 1, kOne = 2;

  HalfLabeling() = default;
  explicit HalfLabeling(int n) : trits_(n, kZero) {}
  HalfLabeling(int n, uint64_t rank);
  static HalfLabeling parse(const std::string& s);
  static HalfLabeling from_binary(const BinaryLabeling& x);

  int size() const { return (int)trits_.size(); }
  uint8_t at(int i) const { return trits_[i]; }
  void set(int i, uint8_t t) { trits_[i] = t; }
  uint64_t rank() const;
  std::string str() const;
  bool is_integral() const;
  BinaryLabeling to_binary() const;  // requires is_integral()
  Rational coord(int i) const;       // 0, 1/2 or 1

  friend bool operator==(const HalfLabeling&, const HalfLabeling&) = default;

 private:
  std::vector<uint8_t> trits_;
};

// 0/1 labeling of the doubled node set: bits 0..n-1 are the original
// nodes, bit k+n is the mate of bit k. Ranks are lexicographic over the
// 2n-bit string with bit 0 most significant.
class PairLabeling {
 public:
  PairLabeling() = default;
  explicit PairLabeling(int n) : n_(n), bits_(2 * n, 0) {}
  PairLabeling(int n, uint64_t rank);
  static PairLabeling parse(const std::string& s);

  int classes() const { return n_; }
  int bits() const { return 2 * n_; }
  uint8_t at(int k) const { return bits_[k]; }
  void set(int k, uint8_t b) { bits_[k] = b; }
  int mate(int k) const { return k < n_ ? k + n_ : k - n_; }
  int cls(int k) const { return k < n_ ? k : k - n_; }
  uint64_t rank() const;
  std::string str() const;
  PairLabeling with_one(int k) const;  // copy with bit k set to 1

  friend bool operator==(const PairLabeling&, const PairLabeling&) = default;

 private:
  int n_ = 0;
  std::vector<uint8_t> bits_;
};

// Lattice operations on {0, 1/2, 1}: meet maps any two distinct values
// to 1/2; join keeps the integral value against 1/2 and maps the clash
// of 0 with 1 to 1/2.
uint8_t half_meet(uint8_t a, uint8_t b);
uint8_t half_join(uint8_t a, uint8_t b);
HalfLabeling meet(const HalfLabeling& x, const HalfLabeling& y);
HalfLabeling join(const HalfLabeling& x, const HalfLabeling& y);

enum class DomainClass { Xminus, Xplus, Xcircle, Xstar, Outside };

// Xminus: no class has both bits 1. Xplus: no class has both bits 0.
// Xcircle is their intersection, Xstar the union, Outside the rest.
DomainClass classify(const PairLabeling& u);
bool in_xminus(const PairLabeling& u);
bool in_xplus(const PairLabeling& u);
bool in_xstar(const PairLabeling& u);

// Encoding of K^{1/2} into Xminus: 0 -> (0,1), 1 -> (1,0), 1/2 -> (0,0).
PairLabeling encode_half(const HalfLabeling& x);
HalfLabeling decode_pair(const PairLabeling& u);  // requires u in Xminus

// u'_k = 1 - u_{mate(k)}; swaps Xminus and Xplus, fixes Xcircle.
PairLabeling mate_flip(const PairLabeling& u);
// Rewrites every (1,1) class to (0,0); projects Xplus onto Xminus.
PairLabeling reduce_pairs(const PairLabeling& u);

// Componentwise AND, and reduced componentwise OR. On encoded points
// these agree with meet/join on K^{1/2}.
PairLabeling pair_meet(const PairLabeling& u, const PairLabeling& v);
PairLabeling pair_join(const PairLabeling& u, const PairLabeling& v);

struct MinScan {
  Rational value;
  std::vector<uint64_t> argmins;  // ranks in scan order
};

template <class F>
MinScan min_over(uint64_t states, F&& value_of) {
  MinScan r;
  for (uint64_t k = 0; k < states; ++k) {
    Rational v = value_of(k);
    if (r.argmins.empty() || v < r.value) {
      r.value = v;
      r.argmins.assign(1, k);
    } else if (v == r.value) {
      r.argmins.push_back(k);
    }
  }
  return r;
}

}  // namespace grd
