#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ckh {

using Int = mpz_class;

// Sparse integer vector keyed by generator index.
using Chain = std::map<int, Int>;

inline void chain_add(Chain& c, int key, const Int& v) {
  if (v == 0) return;
  auto [it, inserted] = c.try_emplace(key, v);
  if (!inserted) {
    it->second += v;
    if (it->second == 0) c.erase(it);
  }
}

inline void chain_axpy(Chain& c, const Int& a, const Chain& x) {
  if (a == 0) return;
  for (const auto& [k, v] : x) chain_add(c, k, a * v);
}

inline Chain chain_scaled(const Chain& x, const Int& a) {
  Chain r;
  if (a == 0) return r;
  for (const auto& [k, v] : x) r.emplace(k, v * a);
  return r;
}

inline int parity_sign(long long e) { return (e & 1) ? -1 : 1; }

struct Bigrading {
  int h = 0;
  int q2 = 0;
  auto operator<=>(const Bigrading&) const = default;
};

inline Bigrading operator+(Bigrading a, Bigrading b) { return {a.h + b.h, a.q2 + b.q2}; }

// Exact rational rendering of a doubled quantum grading.
inline std::string q2_string(int q2) {
  if (q2 % 2 == 0) return std::to_string(q2 / 2);
  return std::to_string(q2) + "/2";
}

struct CheckReport {
  bool ok = true;
  long checked = 0;
  std::string first_failure;
  void fail(const std::string& what) {
    if (ok) first_failure = what;
    ok = false;
  }
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AlgebraError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ckh
