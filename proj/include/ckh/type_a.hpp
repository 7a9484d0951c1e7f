#pragma once

#include "ckh/structures.hpp"
#include "ckh/tangle.hpp"

#include <map>
#include <mutex>

namespace ckh {

// Type A structure of an inside tangle: d_APS plus the action of algebra generators.
class TypeA : public AModule {
 public:
  explicit TypeA(const TangleComplex& T);

  const Algebra& algebra() const override { return T_.algebra(); }
  const TangleComplex& tangle() const { return T_; }
  int size() const override { return static_cast<int>(T_.states().size()); }
  int idem(int x) const override { return T_.states()[x].idem; }
  Bigrading grading(int x) const override { return T_.grading(x); }
  std::string label(int x) const override { return T_.state_label(x); }
  const Chain& m1(int x) const override { return d_[x]; }
  Chain act(int x, const std::vector<int>& as) const override;
  int max_arity() const override { return 1; }
  using AModule::act;
  using AModule::m1;

  Chain m2_gen(int x, int g) const;
  Chain m2_word(int x, const std::vector<int>& word) const;

 private:
  const TangleComplex& T_;
  std::vector<Chain> d_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<int, int>, Chain> cache_;
  Chain compute_m2(int x, int g) const;
};

// Internal differential of a tangle (shared with the outside tangle).
std::vector<Chain> d_aps(const TangleComplex& T);

CheckReport verify_typeA_relations(const TypeA& M);
// A-infinity module relations up to total arity n_max on words of non-idempotent basis elements.
CheckReport verify_ainf(const AModule& M, int n_max);

}  // namespace ckh
