#pragma once

#include "ckh/homology.hpp"
#include "ckh/structures.hpp"
#include "ckh/tangle.hpp"
#include "ckh/type_a.hpp"

#include <array>
#include <map>
#include <vector>

namespace ckh {

struct BoxComplex {
  BigradedComplex complex;
  std::vector<std::pair<int, int>> pairs;  // (type A generator, type D generator)
};

BoxComplex box(const AModule& M, const DModule& N);

struct OrientationMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Khovanov complex of the closed diagram obtained by gluing an inside and an outside tangle.
class KhovanovOracle {
 public:
  KhovanovOracle(const TangleDiagram& inside, const TangleDiagram& outside, int crossing_cap = 20);

  const BigradedComplex& complex() const { return C_; }
  // Oracle generator matching a pair of tangle states.
  int generator_of(const TangleComplex& Tin, int x, const TangleComplex& Tout, int y) const;

 private:
  struct Res {
    std::vector<int> comp;
    std::vector<std::pair<int, int>> keys;  // sorted circle keys
    std::map<int, int> circle_of_comp;
  };
  int nin_ = 0, nout_ = 0, cin_ = 0, ctotal_ = 0;
  std::vector<std::array<int, 4>> ports_;  // L0,H0,L1,H1 in glued numbering
  std::vector<bool> turnback_;
  std::vector<Res> res_;
  std::vector<int> offset_;
  BigradedComplex C_;
};

// Entry-by-entry comparison of the box complex with the oracle under the state bijection.
CheckReport compare_with_oracle(const BoxComplex& B, const TangleComplex& Tin, const TangleComplex& Tout,
                                const KhovanovOracle& O);

}  // namespace ckh
