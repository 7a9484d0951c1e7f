#pragma once

#include "ckh/common.hpp"
#include "ckh/matching.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace ckh {

enum class Side { Left, Right };
enum class GenKind { DecRight, DecLeft, BridgeRight, BridgeLeft };

inline bool is_left(GenKind k) { return k == GenKind::DecLeft || k == GenKind::BridgeLeft; }

struct Link {
  int left = 0, right = 0;
  Circles circ;
  int first_idem = 0;
};

struct Idempotent {
  int link = 0;
  unsigned sigma = 0;  // bit k set: circle k labelled +
};

struct Generator {
  GenKind kind;
  int src = 0, tgt = 0;
  int circle = -1;  // decoration generators: circle index in the source link
  Bridge bridge;    // bridge generators: bridge of the source half-matching
  Bigrading gr;
};

struct BasisElement {
  int src = 0, tgt = 0;
  Bigrading gr;
  std::vector<int> word;  // empty for idempotents
};

struct RelationInstance {
  std::string family;
  std::vector<std::pair<std::vector<int>, Int>> terms;
};

constexpr int kAlgebraCap = 3;

// The cleaved algebra on 2n boundary points, presented by generators and relations
// and realised on a basis of normal-form words.
class Algebra {
 public:
  explicit Algebra(int n);
  // Cached instance; throws CapError above kAlgebraCap.
  static const Algebra& get(int n);

  int n() const { return n_; }
  const MatchingSet& matchings() const { return ms_; }

  int link_index(int left, int right) const { return left * ms_.size() + right; }
  const std::vector<Link>& links() const { return links_; }
  const std::vector<Idempotent>& idempotents() const { return idems_; }
  int idem_index(int link, unsigned sigma) const { return links_[link].first_idem + static_cast<int>(sigma); }
  int idem_iota(int i) const;

  const std::vector<Generator>& generators() const { return gens_; }
  int dec_gen(int src, GenKind kind, int circle) const;
  std::vector<int> bridge_gens(int src, Side side, Bridge g) const;
  int bridge_gen(int src, Side side, Bridge g, int tgt) const;

  const std::vector<BasisElement>& basis() const { return basis_; }
  int idem_basis(int i) const { return idem_basis_[i]; }
  int gen_basis(int g) const;  // basis index when the generator is itself a basis word, else -1

  // Coordinates of a composable word (empty word not allowed).
  const Chain& word_coords(const std::vector<int>& word) const;
  Chain mul(int a, int b) const;
  Chain mul(const Chain& a, const Chain& b) const;
  const Chain& d(int a) const { return d_[a]; }
  Chain d(const Chain& a) const;

  const std::vector<RelationInstance>& base_relations() const { return base_rel_; }
  // d applied to a word (Leibniz over the generator differentials), as word terms.
  std::vector<std::pair<std::vector<int>, Int>> d_word(const std::vector<int>& w) const;
  const std::vector<std::pair<std::vector<int>, Int>>& d_generator(int g) const { return dgen_[g]; }

  std::string gen_name(int g) const;
  std::string basis_name(int b) const;

  int word_count() const { return static_cast<int>(words_.size()); }
  int relation_row_count() const { return relation_rows_; }

 private:
  int n_;
  MatchingSet ms_;
  std::vector<Link> links_;
  std::vector<Idempotent> idems_;
  std::vector<Generator> gens_;
  std::vector<std::vector<int>> gens_from_;
  std::map<std::tuple<int, int, int>, int> dec_lookup_;
  std::map<std::tuple<int, int, int, int, int>, int> bridge_lookup_;

  std::vector<std::vector<int>> words_;
  std::map<std::vector<int>, int> word_id_;
  std::vector<Chain> word_coord_;
  std::vector<BasisElement> basis_;
  std::vector<int> idem_basis_;
  std::vector<Chain> d_;
  std::vector<std::vector<std::pair<std::vector<int>, Int>>> dgen_;
  std::vector<RelationInstance> base_rel_;
  int relation_rows_ = 0;

  void build_links();
  void build_generators();
  void build_words();
  void build_relations();
  void build_quotient();
  void build_differential();

  std::vector<std::pair<int, int>> paths2(int i, Side s1, Bridge g, Side s2, Bridge e) const;
  int surgered_link(int link, Side s, Bridge g) const;
  Bridge dagger(int link, Side s, Bridge g) const;
  void add_rel(const std::string& fam, std::vector<std::pair<std::vector<int>, Int>> terms);
};

// Orthogonality, relation consistency, d^2 = 0, Leibniz, associativity and grading additivity.
CheckReport verify_algebra(const Algebra& A);

}  // namespace ckh
