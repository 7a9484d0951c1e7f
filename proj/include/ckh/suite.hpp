#pragma once

#include "ckh/homology.hpp"
#include "ckh/links.hpp"
#include "ckh/structures.hpp"
#include "ckh/type_a.hpp"

#include <string>
#include <vector>

namespace ckh {

struct SuiteOptions {
  int ainf_arity = 3;          // A-infinity relations on the unreduced type A side
  int reduced_ainf_arity = 4;  // and on the reduced one
  int equivalence_arity = 3;   // morphism identities of the reduction
  bool check_steps = true;     // per-cancellation identities
  int crossing_cap = 20;
};

struct SuiteEntry {
  std::string name;
  CheckReport report;
};

struct SplitResult {
  std::string link;
  int cut = 0, n = 0;
  std::vector<SuiteEntry> entries;
  bool oracle_match = true;  // box homology and chain isomorphism against the oracle
  bool ok() const;
};

// All invariant checks for one axis split; oracle comparisons are recorded separately in oracle_match.
SplitResult verify_split(const std::string& link, const AxisSplit& s, const SuiteOptions& opt = {});

// Homology of the pairing of an inside and an outside tangle, optionally after reducing both sides.
HomologyTable pair_homology(const TangleDiagram& inside, const TangleDiagram& outside, bool simplify,
                            int crossing_cap = 20);
HomologyTable oracle_homology(const TangleDiagram& inside, const TangleDiagram& outside, int crossing_cap = 20);

// Split of a closed diagram with at most nmax arcs on the axis whose halves are most balanced.
AxisSplit balanced_split(const TangleDiagram& closed, int nmax = 2);

// Per-bidegree comparison; failures name the first differing bidegree.
CheckReport compare_tables(const HomologyTable& expected, const HomologyTable& got);

}  // namespace ckh
