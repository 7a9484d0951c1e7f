#pragma once

#include "ckh/structures.hpp"
#include "ckh/type_a.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>

namespace ckh {

struct Cancellation {
  int x, y;  // original generator keys, m1(x) contains u*y
  int u;
};

// Composite chain-level reduction data: pi*iota = I, iota*pi - I = dH + Hd, H*iota = 0, pi*H = 0, H^2 = 0.
struct Reduction {
  std::vector<int> survivors;  // reduced index -> original key
  std::vector<Chain> d;        // reduced differential
  std::vector<Chain> iota;     // reduced -> original
  std::vector<Chain> pi;       // original -> reduced
  std::vector<Chain> H;        // original -> original
  std::vector<Cancellation> log;
};

// Cancels unit entries of d, lowest (h, q2, key) pivot first. With check_steps, every single
// cancellation is checked against its own hypothesis identities.
Reduction reduce_complex(const std::vector<Chain>& d, const std::vector<Bigrading>& gr, bool check_steps = false);

CheckReport check_reduction(const std::vector<Chain>& d, const Reduction& R);

// Type A structure transferred along a reduction; higher actions are evaluated lazily.
class SimplifiedA : public AModule {
 public:
  SimplifiedA(const AModule& M, Reduction R);

  const Algebra& algebra() const override { return M_.algebra(); }
  const AModule& original() const { return M_; }
  const Reduction& reduction() const { return R_; }
  int size() const override { return static_cast<int>(R_.survivors.size()); }
  int idem(int x) const override { return M_.idem(R_.survivors[x]); }
  Bigrading grading(int x) const override { return M_.grading(R_.survivors[x]); }
  std::string label(int x) const override { return M_.label(R_.survivors[x]); }
  const Chain& m1(int x) const override { return R_.d[x]; }
  Chain act(int x, const std::vector<int>& as) const override;
  int max_arity() const override { return static_cast<int>(R_.log.size()) + 1; }
  using AModule::act;
  using AModule::m1;

  // Sigma_n applied to (v, a_1..a_k), v a chain of the original module.
  Chain sigma(const Chain& v, const std::vector<int>& as) const;
  Chain apply_H(const Chain& v) const;
  Chain apply_pi(const Chain& v) const;
  Chain apply_iota(const Chain& v) const;
  // pi * Sigma_n * (iota (x) I) without the unit shortcut.
  Chain formula_act(int x, const std::vector<int>& as) const;

  // Component maps of the equivalence morphisms and the homotopy, n = as.size() + 1.
  Chain pi_n(int m, const std::vector<int>& as) const;
  Chain omega_n(int x, const std::vector<int>& as) const;
  Chain lambda_n(int m, const std::vector<int>& as) const;

 private:
  const AModule& M_;
  Reduction R_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<int, std::vector<int>>, Chain> cache_;
  int letter_deg(int b) const { return algebra().basis()[b].gr.h; }
};

std::unique_ptr<SimplifiedA> simplify_typeA(const AModule& M, bool check_steps = false);

// Morphism identities on all generators and composable non-idempotent words up to total arity n_max:
// Pi * Omega = identity and Omega * Pi - identity = boundary of Lambda.
CheckReport verify_equivalence(const SimplifiedA& S, int n_max);

// Strict unitality of the reduced actions on every generator.
CheckReport verify_unital(const SimplifiedA& S);

struct SimplifiedD {
  TableDModule module;
  Reduction reduction;
};

// Cancels unit idempotent components of delta and transfers the rest by the perturbation series.
SimplifiedD simplify_typeD(const DModule& N, bool check_steps = false);

}  // namespace ckh
