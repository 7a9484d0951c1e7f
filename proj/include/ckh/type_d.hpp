#pragma once

#include "ckh/structures.hpp"
#include "ckh/tangle.hpp"
#include "ckh/type_a.hpp"

namespace ckh {

// Type D structure of an outside tangle.
class TypeD : public DModule {
 public:
  explicit TypeD(const TangleComplex& T);

  const Algebra& algebra() const override { return T_.algebra(); }
  const TangleComplex& tangle() const { return T_; }
  int size() const override { return static_cast<int>(T_.states().size()); }
  int idem(int y) const override { return T_.states()[y].idem; }
  Bigrading grading(int y) const override { return T_.grading(y); }
  int parity(int y) const override { return T_.raw_h(y) & 1; }
  std::string label(int y) const override { return T_.state_label(y); }
  const std::vector<DTerm>& delta(int y) const override { return delta_[y]; }

 private:
  const TangleComplex& T_;
  std::vector<std::vector<DTerm>> delta_;
};

CheckReport verify_typeD_equation(const DModule& N);

struct DeltaTerm {
  std::vector<int> word;  // algebra basis elements a_1..a_k
  int y;
  Int c;
};
// Delta_k(y): k-fold iterate of delta; words containing idempotents are dropped when k >= 2.
std::vector<DeltaTerm> delta_iterate(const DModule& N, int y, int k);

TableDModule to_table(const DModule& N);

}  // namespace ckh
