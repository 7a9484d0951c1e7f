#pragma once

#include "ckh/common.hpp"

#include <array>
#include <map>
#include <optional>
#include <vector>

namespace ckh {

// Non-crossing perfect matching on axis points 0..2n-1; partner[i] is the mate of i.
using Matching = std::vector<int>;

// Arcs are named by their smaller endpoint.  A bridge joins two distinct arcs
// that bound a common region of the half-plane.
struct Bridge {
  int a = -1, b = -1;  // a < b
  auto operator<=>(const Bridge&) const = default;
};

inline Bridge make_bridge(int x, int y) { return x < y ? Bridge{x, y} : Bridge{y, x}; }

enum class BridgeClass { Same, Disjoint, Sharing, Other, Pitchfork };

struct Segment {
  int arc, in, out;
};

std::vector<Matching> enumerate_matchings(int n);
bool is_noncrossing(const Matching& m);

std::vector<int> arcs_of(const Matching& m);
int parent_arc(const Matching& m, int arc);  // -1 for the outer region
// Region shared by the two arcs of a bridge, or nullopt when they share none.
std::optional<int> shared_region(const Matching& m, int x, int y);
std::vector<Segment> region_sequence(const Matching& m, int region);
std::vector<Bridge> bridges_of(const Matching& m);

struct SurgeryResult {
  Matching m;
  Bridge dagger;
  std::array<int, 2> x_arc;  // new arc on the side between the feet (in cyclic order)
  std::array<int, 2> y_arc;
};

SurgeryResult surgery(const Matching& m, Bridge g);

BridgeClass classify(const Matching& m, Bridge g, Bridge e);
// Image of a bridge in B_d or B_s under surgery along g.
Bridge pushforward(const Matching& m, Bridge g, Bridge e);
// Bridges of m_g sharing an arc with g-dagger whose pushforward is e.
std::vector<Bridge> lifts(const Matching& m, Bridge g, Bridge e);

// Matchings of a fixed n with indices, bridge lists and cached surgery.
class MatchingSet {
 public:
  explicit MatchingSet(int n);
  int n() const { return n_; }
  int size() const { return static_cast<int>(all_.size()); }
  const Matching& at(int i) const { return all_[i]; }
  int index(const Matching& m) const;
  const std::vector<Bridge>& bridges(int i) const { return bridges_[i]; }
  // index of the surgered matching and the dagger bridge
  std::pair<int, Bridge> surgered(int i, Bridge g) const;

 private:
  int n_;
  std::vector<Matching> all_;
  std::map<Matching, int> idx_;
  std::vector<std::vector<Bridge>> bridges_;
  std::vector<std::map<Bridge, std::pair<int, Bridge>>> surg_;
};

// Circles of the union of a left and a right matching, ordered by smallest point.
struct Circles {
  std::vector<int> of_point;
  int count = 0;
  std::vector<int> min_point;
};

Circles circles_of(const Matching& left, const Matching& right);

}  // namespace ckh
