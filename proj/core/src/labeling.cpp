#include "grd/labeling.hpp"

#include <cstdlib>
#include <stdexcept>

namespace grd {

uint64_t pow2(int n) { return uint64_t(1) << n; }

uint64_t pow3(int n) {
  uint64_t r = 1;
  while (n-- > 0) r *= 3;
  return r;
}

uint64_t enum_bound() {
  if (const char* s = std::getenv("GRD_ENUM_BOUND")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 531441;  // 3^12
}

void require_enumerable(uint64_t states, const char* what) {
  if (states > enum_bound())
    throw std::length_error(std::string(what) + ": " + std::to_string(states) +
                            " states exceeds enumeration bound " + std::to_string(enum_bound()));
}

BinaryLabeling::BinaryLabeling(int n, uint64_t rank) : bits_(n, 0) {
  for (int i = n - 1; i >= 0; --i) {
    bits_[i] = rank & 1;
    rank >>= 1;
  }
}

BinaryLabeling BinaryLabeling::parse(const std::string& s) {
  BinaryLabeling x((int)s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '0') x.bits_[i] = 0;
    else if (s[i] == '1') x.bits_[i] = 1;
    else throw std::invalid_argument("bad binary labeling '" + s + "'");
  }
  return x;
}

uint64_t BinaryLabeling::rank() const {
  uint64_t r = 0;
  for (uint8_t b : bits_) r = (r << 1) | b;
  return r;
}

std::string BinaryLabeling::str() const {
  std::string s(bits_.size(), '0');
  for (size_t i = 0; i < bits_.size(); ++i) s[i] = bits_[i] ? '1' : '0';
  return s;
}

BinaryLabeling BinaryLabeling::complement() const {
  BinaryLabeling y(size());
  for (int i = 0; i < size(); ++i) y.bits_[i] = 1 - bits_[i];
  return y;
}

HalfLabeling::HalfLabeling(int n, uint64_t rank) : trits_(n, 0) {
  for (int i = n - 1; i >= 0; --i) {
    trits_[i] = rank % 3;
    rank /= 3;
  }
}

HalfLabeling HalfLabeling::parse(const std::string& s) {
  HalfLabeling x((int)s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '0') x.trits_[i] = kZero;
    else if (s[i] == 'h') x.trits_[i] = kHalf;
    else if (s[i] == '1') x.trits_[i] = kOne;
    else throw std::invalid_argument("bad half labeling '" + s + "'");
  }
  return x;
}

HalfLabeling HalfLabeling::from_binary(const BinaryLabeling& x) {
  HalfLabeling y(x.size());
  for (int i = 0; i < x.size(); ++i) y.trits_[i] = x.at(i) ? kOne : kZero;
  return y;
}

uint64_t HalfLabeling::rank() const {
  uint64_t r = 0;
  for (uint8_t t : trits_) r = r * 3 + t;
  return r;
}

std::string HalfLabeling::str() const {
  std::string s(trits_.size(), '0');
  for (size_t i = 0; i < trits_.size(); ++i) s[i] = "0h1"[trits_[i]];
  return s;
}

bool HalfLabeling::is_integral() const {
  for (uint8_t t : trits_)
    if (t == kHalf) return false;
  return true;
}

BinaryLabeling HalfLabeling::to_binary() const {
  BinaryLabeling x(size());
  for (int i = 0; i < size(); ++i) {
    if (trits_[i] == kHalf) throw std::logic_error("to_binary on non-integral labeling");
    x.set(i, trits_[i] == kOne ? 1 : 0);
  }
  return x;
}

Rational HalfLabeling::coord(int i) const {
  switch (trits_[i]) {
    case kZero: return Rational(0);
    case kHalf: return Rational(1, 2);
    default: return Rational(1);
  }
}

PairLabeling::PairLabeling(int n, uint64_t rank) : n_(n), bits_(2 * n, 0) {
  for (int i = 2 * n - 1; i >= 0; --i) {
    bits_[i] = rank & 1;
    rank >>= 1;
  }
}

PairLabeling PairLabeling::parse(const std::string& s) {
  if (s.size() % 2 != 0) throw std::invalid_argument("bad pair labeling '" + s + "'");
  PairLabeling u((int)s.size() / 2);
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '0') u.bits_[i] = 0;
    else if (s[i] == '1') u.bits_[i] = 1;
    else throw std::invalid_argument("bad pair labeling '" + s + "'");
  }
  return u;
}

uint64_t PairLabeling::rank() const {
  uint64_t r = 0;
  for (uint8_t b : bits_) r = (r << 1) | b;
  return r;
}

std::string PairLabeling::str() const {
  std::string s(bits_.size(), '0');
  for (size_t i = 0; i < bits_.size(); ++i) s[i] = bits_[i] ? '1' : '0';
  return s;
}

PairLabeling PairLabeling::with_one(int k) const {
  PairLabeling u = *this;
  u.bits_[k] = 1;
  return u;
}

uint8_t half_meet(uint8_t a, uint8_t b) {
  return a == b ? a : HalfLabeling::kHalf;
}

uint8_t half_join(uint8_t a, uint8_t b) {
  if (a == b) return a;
  if (a == HalfLabeling::kHalf) return b;
  if (b == HalfLabeling::kHalf) return a;
  return HalfLabeling::kHalf;  // 0 against 1
}

HalfLabeling meet(const HalfLabeling& x, const HalfLabeling& y) {
  HalfLabeling z(x.size());
  for (int i = 0; i < x.size(); ++i) z.set(i, half_meet(x.at(i), y.at(i)));
  return z;
}

HalfLabeling join(const HalfLabeling& x, const HalfLabeling& y) {
  HalfLabeling z(x.size());
  for (int i = 0; i < x.size(); ++i) z.set(i, half_join(x.at(i), y.at(i)));
  return z;
}

DomainClass classify(const PairLabeling& u) {
  bool has11 = false, has00 = false;
  for (int i = 0; i < u.classes(); ++i) {
    uint8_t a = u.at(i), b = u.at(i + u.classes());
    if (a && b) has11 = true;
    if (!a && !b) has00 = true;
  }
  if (!has11 && !has00) return DomainClass::Xcircle;
  if (!has11) return DomainClass::Xminus;
  if (!has00) return DomainClass::Xplus;
  return DomainClass::Outside;
}

bool in_xminus(const PairLabeling& u) {
  DomainClass c = classify(u);
  return c == DomainClass::Xminus || c == DomainClass::Xcircle;
}

bool in_xplus(const PairLabeling& u) {
  DomainClass c = classify(u);
  return c == DomainClass::Xplus || c == DomainClass::Xcircle;
}

bool in_xstar(const PairLabeling& u) {
  return classify(u) != DomainClass::Outside;
}

PairLabeling encode_half(const HalfLabeling& x) {
  int n = x.size();
  PairLabeling u(n);
  for (int i = 0; i < n; ++i) {
    switch (x.at(i)) {
      case HalfLabeling::kZero: u.set(i, 0); u.set(i + n, 1); break;
      case HalfLabeling::kOne:  u.set(i, 1); u.set(i + n, 0); break;
      default:                  u.set(i, 0); u.set(i + n, 0); break;
    }
  }
  return u;
}

HalfLabeling decode_pair(const PairLabeling& u) {
  int n = u.classes();
  HalfLabeling x(n);
  for (int i = 0; i < n; ++i) {
    uint8_t a = u.at(i), b = u.at(i + n);
    if (a && b) throw std::invalid_argument("decode_pair: labeling not in Xminus");
    if (a) x.set(i, HalfLabeling::kOne);
    else if (b) x.set(i, HalfLabeling::kZero);
    else x.set(i, HalfLabeling::kHalf);
  }
  return x;
}

PairLabeling mate_flip(const PairLabeling& u) {
  PairLabeling v(u.classes());
  for (int k = 0; k < u.bits(); ++k) v.set(k, 1 - u.at(u.mate(k)));
  return v;
}

PairLabeling reduce_pairs(const PairLabeling& u) {
  PairLabeling v = u;
  for (int i = 0; i < u.classes(); ++i) {
    int j = i + u.classes();
    if (u.at(i) && u.at(j)) {
      v.set(i, 0);
      v.set(j, 0);
    }
  }
  return v;
}

static void require_xminus(const PairLabeling& u, const PairLabeling& v, const char* op) {
  if (u.classes() != v.classes())
    throw std::invalid_argument(std::string(op) + ": dimension mismatch");
  if (!in_xminus(u) || !in_xminus(v))
    throw std::invalid_argument(std::string(op) + ": argument outside Xminus");
}

PairLabeling pair_meet(const PairLabeling& u, const PairLabeling& v) {
  require_xminus(u, v, "pair_meet");
  PairLabeling w(u.classes());
  for (int k = 0; k < u.bits(); ++k) w.set(k, u.at(k) & v.at(k));
  return w;
}

PairLabeling pair_join(const PairLabeling& u, const PairLabeling& v) {
  require_xminus(u, v, "pair_join");
  PairLabeling w(u.classes());
  for (int k = 0; k < u.bits(); ++k) w.set(k, u.at(k) | v.at(k));
  return reduce_pairs(w);
}

}  // namespace grd
