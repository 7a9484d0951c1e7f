#pragma once

#include "ckh/algebra.hpp"
#include "ckh/common.hpp"

#include <bit>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace ckh {

enum class HalfSide { Inside, Outside };

struct Slice {
  enum Kind { Cap, Cup, Cross } kind;
  int pos = 0;          // 0-based lower strand position
  bool low_over = true;  // crossings: strand entering at pos passes over
  int claimed_sign = 0;  // crossings: explicit sign token, 0 if none
  int cup_dir = 0;       // cups: direction of the lower strand if given
};

// Smoothing at a crossing: which ports are joined.
struct Crossing {
  int slice = 0;
  int pos = 0;
  int L0, H0, L1, H1;  // node ids of the four ports
  int sign = 0;
  bool zero_turnback = false;  // 0-smoothing joins L0-H0 and L1-H1
};

// A tangle diagram in one half-plane, read as slices moving away from the axis.
class TangleDiagram {
 public:
  HalfSide side = HalfSide::Inside;
  int n = 0;
  std::vector<Slice> slices;
  std::vector<int> orient;  // per axis point: +1 away from the axis, -1 toward

  int num_nodes = 0;
  std::vector<std::pair<int, int>> pieces;  // fixed strand pieces between nodes
  std::vector<int> piece_dir;               // orientation relative to the piece's start node
  std::vector<Crossing> crossings;
  int n_plus = 0, n_minus = 0;

  int crossing_count() const { return static_cast<int>(crossings.size()); }
  std::string to_string() const;
};

TangleDiagram parse_tangle(const std::string& text);
// Builds the node structure from side, n, slices and optional orientation.
TangleDiagram build_tangle(HalfSide side, int n, std::vector<Slice> slices, std::vector<int> orient = {});

struct ResolutionInfo {
  std::vector<int> comp_of_node;
  std::vector<int> free_ids;           // free circle ids (smallest node), sorted
  std::map<int, int> free_index;       // component -> index into free_ids
  Matching arcs;                       // the tangle's own matching
  std::map<int, int> arc_of_comp;      // arc component -> its smaller axis point
};

struct State {
  unsigned rho = 0;
  int closure = 0;
  unsigned free_bits = 0;
  int idem = 0;
  auto operator<=>(const State&) const = default;
};

// Tangle with its cube of resolutions, states and boundary data.
class TangleComplex {
 public:
  TangleComplex(TangleDiagram t, int crossing_cap = 20);

  const TangleDiagram& diagram() const { return t_; }
  const Algebra& algebra() const { return *alg_; }
  HalfSide side() const { return t_.side; }
  int n() const { return t_.n; }

  const ResolutionInfo& resolution(unsigned rho) const { return res_[rho]; }
  int tangle_matching(unsigned rho) const { return tangle_match_[rho]; }
  int link_of(unsigned rho, int closure) const;

  const std::vector<State>& states() const { return states_; }
  int state_index(const State& s) const;
  int find_state(const State& s) const;  // -1 when absent
  Bigrading grading(int x) const;
  int raw_h(int x) const;

  // Cleaved circle (index in the boundary link) through a tangle arc.
  int cleaved_circle(unsigned rho, int closure, int arc_point) const;

  std::string state_label(int x) const;

  // Feet of the active arc at a 0-resolved crossing.
  struct Foot {
    bool is_free;
    int idx;  // free circle index, or smallest axis point of the arc
  };
  std::pair<Foot, Foot> feet(unsigned rho, int c) const;
  // Free circles after resolving c to 1: untouched labels carried, new circles listed.
  struct Surgered {
    unsigned rho;
    unsigned carried;
    std::vector<int> fresh;
  };
  Surgered surger(unsigned rho, unsigned free_bits, int c) const;
  int sign_after(unsigned rho, int c) const { return parity_sign(std::popcount(rho >> (c + 1))); }

 private:
  TangleDiagram t_;
  const Algebra* alg_;
  std::vector<ResolutionInfo> res_;
  std::vector<int> tangle_match_;
  std::vector<State> states_;
  std::map<State, int> index_;
};

}  // namespace ckh
