#pragma once

#include "ckh/common.hpp"

#include <map>
#include <vector>

namespace ckh {

using DenseMatrix = std::vector<std::vector<Int>>;

struct SmithResult {
  std::vector<Int> invariant_factors;  // nonzero diagonal entries, positive, d_i | d_{i+1}
  DenseMatrix U, V;                    // U * A * V = D (only when transforms requested)
  DenseMatrix D;
};

SmithResult smith_normal_form(const DenseMatrix& A, bool with_transforms = false);

DenseMatrix mat_mul(const DenseMatrix& A, const DenseMatrix& B);
Int determinant(DenseMatrix A);

// Cochain complex: d raises h by one and preserves q2.
struct BigradedComplex {
  std::vector<Bigrading> grading;
  std::vector<std::string> labels;
  std::vector<Chain> d;

  int size() const { return static_cast<int>(grading.size()); }
  int add(Bigrading g, std::string label = {}) {
    grading.push_back(g);
    labels.push_back(std::move(label));
    d.emplace_back();
    return size() - 1;
  }
};

struct HomologyGroup {
  int free_rank = 0;
  std::vector<Int> torsion;
  bool operator==(const HomologyGroup& o) const {
    return free_rank == o.free_rank && torsion == o.torsion;
  }
};

using HomologyTable = std::map<Bigrading, HomologyGroup>;

struct DifferentialError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Throws DifferentialError unless d∘d = 0.
HomologyTable bigraded_homology(const BigradedComplex& C);

// True when d∘d = 0.
bool is_differential(const BigradedComplex& C);

std::string homology_to_string(const HomologyTable& t);

}  // namespace ckh
