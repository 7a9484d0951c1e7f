#pragma once

#include "ckh/algebra.hpp"
#include "ckh/common.hpp"

#include <string>
#include <vector>

namespace ckh {

// Right A-infinity module over the cleaved algebra, finitely generated over Z.
class AModule {
 public:
  virtual ~AModule() = default;
  virtual const Algebra& algebra() const = 0;
  virtual int size() const = 0;
  virtual int idem(int x) const = 0;
  virtual Bigrading grading(int x) const = 0;
  virtual std::string label(int x) const { return "x" + std::to_string(x); }
  virtual const Chain& m1(int x) const = 0;
  // m_{k+1}(x, a_1, ..., a_k) on basis elements, k >= 1
  virtual Chain act(int x, const std::vector<int>& as) const = 0;
  // largest k with m_{k+1} possibly nonzero
  virtual int max_arity() const = 0;

  Chain act(const Chain& xs, const std::vector<int>& as) const {
    Chain r;
    for (const auto& [x, c] : xs) chain_axpy(r, c, act(x, as));
    return r;
  }
  Chain m1(const Chain& xs) const {
    Chain r;
    for (const auto& [x, c] : xs) chain_axpy(r, c, m1(x));
    return r;
  }
};

struct DTerm {
  int a;  // algebra basis element
  int y;  // target generator
  Int c;
};

// Type D structure over the cleaved algebra.
class DModule {
 public:
  virtual ~DModule() = default;
  virtual const Algebra& algebra() const = 0;
  virtual int size() const = 0;
  virtual int idem(int y) const = 0;
  virtual Bigrading grading(int y) const = 0;
  virtual int parity(int y) const = 0;  // Koszul parity of the generator
  virtual std::string label(int y) const { return "y" + std::to_string(y); }
  virtual const std::vector<DTerm>& delta(int y) const = 0;
};

// Tables of a finished structure, usable as either side of a pairing.
class TableAModule : public AModule {
 public:
  const Algebra* alg = nullptr;
  std::vector<int> idems;
  std::vector<Bigrading> gradings;
  std::vector<std::string> labels;
  std::vector<Chain> d;
  std::map<std::pair<int, std::vector<int>>, Chain> higher;  // (x, word) -> m_{k+1}
  int arity = 1;

  const Algebra& algebra() const override { return *alg; }
  int size() const override { return static_cast<int>(idems.size()); }
  int idem(int x) const override { return idems[x]; }
  Bigrading grading(int x) const override { return gradings[x]; }
  std::string label(int x) const override { return labels[x]; }
  const Chain& m1(int x) const override { return d[x]; }
  Chain act(int x, const std::vector<int>& as) const override;
  int max_arity() const override { return arity; }
  using AModule::act;
  using AModule::m1;
};

class TableDModule : public DModule {
 public:
  const Algebra* alg = nullptr;
  std::vector<int> idems;
  std::vector<Bigrading> gradings;
  std::vector<int> parities;
  std::vector<std::string> labels;
  std::vector<std::vector<DTerm>> deltas;

  const Algebra& algebra() const override { return *alg; }
  int size() const override { return static_cast<int>(idems.size()); }
  int idem(int y) const override { return idems[y]; }
  Bigrading grading(int y) const override { return gradings[y]; }
  int parity(int y) const override { return parities[y]; }
  std::string label(int y) const override { return labels[y]; }
  const std::vector<DTerm>& delta(int y) const override { return deltas[y]; }
};

}  // namespace ckh
