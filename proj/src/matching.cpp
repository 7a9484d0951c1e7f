#include "ckh/matching.hpp"

#include <algorithm>
#include <functional>

namespace ckh {

std::vector<Matching> enumerate_matchings(int n) {
  std::vector<Matching> out;
  Matching m(2 * n, -1);
  std::function<void(int)> rec = [&](int start) {
    while (start < 2 * n && m[start] >= 0) ++start;
    if (start == 2 * n) {
      out.push_back(m);
      return;
    }
    // partner must leave an even number of free points between
    for (int j = start + 1; j < 2 * n; j += 2) {
      bool ok = true;
      for (int k = start + 1; k < j; ++k)
        if (m[k] >= 0) ok = false;
      if (!ok || m[j] >= 0) continue;
      m[start] = j;
      m[j] = start;
      rec(start + 1);
      m[start] = m[j] = -1;
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_noncrossing(const Matching& m) {
  int N = static_cast<int>(m.size());
  for (int i = 0; i < N; ++i) {
    if (m[i] < 0 || m[i] >= N || m[m[i]] != i || m[i] == i) return false;
    int a = std::min(i, m[i]), b = std::max(i, m[i]);
    for (int k = a + 1; k < b; ++k)
      if (m[k] < a || m[k] > b) return false;
  }
  return true;
}

std::vector<int> arcs_of(const Matching& m) {
  std::vector<int> r;
  for (int i = 0; i < static_cast<int>(m.size()); ++i)
    if (m[i] > i) r.push_back(i);
  return r;
}

int parent_arc(const Matching& m, int arc) {
  for (int p = arc - 1; p >= 0; --p)
    if (m[p] > p && m[p] > m[arc]) return p;
  return -1;
}

std::optional<int> shared_region(const Matching& m, int x, int y) {
  if (x == y) return std::nullopt;
  int px = parent_arc(m, x), py = parent_arc(m, y);
  if (px == py) return px;
  if (px == y) return y;
  if (py == x) return x;
  return std::nullopt;
}

std::vector<Segment> region_sequence(const Matching& m, int region) {
  std::vector<Segment> seq;
  if (region >= 0) seq.push_back({region, m[region], region});
  for (int a : arcs_of(m))
    if (parent_arc(m, a) == region) seq.push_back({a, a, m[a]});
  return seq;
}

std::vector<Bridge> bridges_of(const Matching& m) {
  std::vector<Bridge> r;
  auto arcs = arcs_of(m);
  for (size_t i = 0; i < arcs.size(); ++i)
    for (size_t j = i + 1; j < arcs.size(); ++j)
      if (shared_region(m, arcs[i], arcs[j])) r.push_back({arcs[i], arcs[j]});
  return r;
}

namespace {

int seq_pos(const std::vector<Segment>& seq, int arc) {
  for (size_t i = 0; i < seq.size(); ++i)
    if (seq[i].arc == arc) return static_cast<int>(i);
  return -1;
}

}  // namespace

SurgeryResult surgery(const Matching& m, Bridge g) {
  auto reg = shared_region(m, g.a, g.b);
  if (!reg) throw std::invalid_argument("not a bridge");
  auto seq = region_sequence(m, *reg);
  int i = seq_pos(seq, g.a), j = seq_pos(seq, g.b);
  if (i > j) std::swap(i, j);
  SurgeryResult r;
  r.m = m;
  int x0 = seq[i].out, x1 = seq[j].in, y0 = seq[j].out, y1 = seq[i].in;
  r.m[x0] = x1;
  r.m[x1] = x0;
  r.m[y0] = y1;
  r.m[y1] = y0;
  r.x_arc = {std::min(x0, x1), std::max(x0, x1)};
  r.y_arc = {std::min(y0, y1), std::max(y0, y1)};
  r.dagger = make_bridge(r.x_arc[0], r.y_arc[0]);
  if (!shared_region(r.m, r.dagger.a, r.dagger.b)) throw std::logic_error("dagger is not a bridge");
  return r;
}

BridgeClass classify(const Matching& m, Bridge g, Bridge e) {
  if (g == e) return BridgeClass::Same;
  auto rg = *shared_region(m, g.a, g.b);
  auto re = *shared_region(m, e.a, e.b);
  int shared = (g.a == e.a || g.a == e.b) + (g.b == e.a || g.b == e.b);
  if (shared == 1) return rg == re ? BridgeClass::Sharing : BridgeClass::Other;
  if (rg != re) return BridgeClass::Disjoint;
  auto seq = region_sequence(m, rg);
  int i = seq_pos(seq, g.a), j = seq_pos(seq, g.b);
  if (i > j) std::swap(i, j);
  int k = seq_pos(seq, e.a), l = seq_pos(seq, e.b);
  bool ki = i < k && k < j, li = i < l && l < j;
  return ki != li ? BridgeClass::Pitchfork : BridgeClass::Disjoint;
}

Bridge pushforward(const Matching& m, Bridge g, Bridge e) {
  auto cls = classify(m, g, e);
  auto s = surgery(m, g);
  if (cls == BridgeClass::Disjoint) {
    if (!shared_region(s.m, e.a, e.b)) throw std::logic_error("disjoint image lost");
    return e;
  }
  if (cls != BridgeClass::Sharing) throw std::invalid_argument("pushforward needs B_d or B_s");
  int rg = *shared_region(m, g.a, g.b);
  auto seq = region_sequence(m, rg);
  int i = seq_pos(seq, g.a), j = seq_pos(seq, g.b);
  if (i > j) std::swap(i, j);
  int other = (e.a == g.a || e.a == g.b) ? e.b : e.a;
  int k = seq_pos(seq, other);
  int foot = (i < k && k < j) ? s.x_arc[0] : s.y_arc[0];
  Bridge r = make_bridge(foot, other);
  if (!shared_region(s.m, r.a, r.b)) throw std::logic_error("sharing image lost");
  return r;
}

std::vector<Bridge> lifts(const Matching& m, Bridge g, Bridge e) {
  auto s = surgery(m, g);
  std::vector<Bridge> r;
  for (const auto& d : bridges_of(s.m)) {
    if (classify(s.m, s.dagger, d) != BridgeClass::Sharing) continue;
    if (pushforward(s.m, s.dagger, d) == e) r.push_back(d);
  }
  return r;
}

MatchingSet::MatchingSet(int n) : n_(n), all_(enumerate_matchings(n)) {
  for (int i = 0; i < size(); ++i) idx_[all_[i]] = i;
  bridges_.resize(all_.size());
  surg_.resize(all_.size());
  for (int i = 0; i < size(); ++i) {
    bridges_[i] = bridges_of(all_[i]);
    for (const auto& g : bridges_[i]) {
      auto s = surgery(all_[i], g);
      surg_[i][g] = {idx_.at(s.m), s.dagger};
    }
  }
}

int MatchingSet::index(const Matching& m) const {
  auto it = idx_.find(m);
  if (it == idx_.end()) throw std::invalid_argument("unknown matching");
  return it->second;
}

std::pair<int, Bridge> MatchingSet::surgered(int i, Bridge g) const { return surg_[i].at(g); }

Circles circles_of(const Matching& left, const Matching& right) {
  int N = static_cast<int>(left.size());
  Circles c;
  c.of_point.assign(N, -1);
  for (int s = 0; s < N; ++s) {
    if (c.of_point[s] >= 0) continue;
    int id = c.count++;
    c.min_point.push_back(s);
    int p = s;
    bool use_left = true;
    do {
      c.of_point[p] = id;
      p = use_left ? left[p] : right[p];
      c.of_point[p] = id;
      use_left = !use_left;
    } while (p != s);
  }
  return c;
}

}  // namespace ckh
