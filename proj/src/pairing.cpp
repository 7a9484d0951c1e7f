#include "ckh/pairing.hpp"

#include "ckh/type_d.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

namespace ckh {

BoxComplex box(const AModule& M, const DModule& N) {
  const auto& A = M.algebra();
  BoxComplex B;
  std::map<std::pair<int, int>, int> index;
  std::vector<std::vector<int>> ys_by_idem(A.idempotents().size());
  for (int y = 0; y < N.size(); ++y) ys_by_idem[N.idem(y)].push_back(y);
  for (int x = 0; x < M.size(); ++x)
    for (int y : ys_by_idem[M.idem(x)]) {
      index[{x, y}] = B.complex.add(M.grading(x) + N.grading(y), M.label(x) + " | " + N.label(y));
      B.pairs.push_back({x, y});
    }
  // deltas[y][k-1] = Delta_k(y). Iterates are run until they vanish, which bounds N.
  const int guard = 2 * N.size() + 2;
  const int kmax = M.max_arity();
  std::vector<std::vector<std::vector<DeltaTerm>>> deltas(N.size());
  for (int y = 0; y < N.size(); ++y) {
    deltas[y].push_back(delta_iterate(N, y, 1));
    std::vector<DeltaTerm> cur{{{}, y, 1}};
    for (int k = 1; !cur.empty(); ++k) {
      if (k > guard) throw AlgebraError("type D structure is not bounded");
      std::map<std::pair<std::vector<int>, int>, Int> acc;
      for (const auto& t : cur)
        for (const auto& d : N.delta(t.y)) {
          if (A.basis()[d.a].word.empty()) continue;
          auto w = t.word;
          w.push_back(d.a);
          acc[{std::move(w), d.y}] += t.c * d.c;
        }
      cur.clear();
      for (auto& [key, v] : acc)
        if (v != 0) cur.push_back({key.first, key.second, v});
      if (k >= 2 && k <= kmax && !cur.empty()) deltas[y].push_back(cur);
    }
  }
  for (int g = 0; g < B.complex.size(); ++g) {
    auto [x, y] = B.pairs[g];
    auto& out = B.complex.d[g];
    Int sy = parity_sign(N.parity(y));
    for (const auto& [x2, c] : M.m1(x)) chain_add(out, index.at({x2, y}), sy * c);
    for (int k = 1; k <= static_cast<int>(deltas[y].size()); ++k)
      for (const auto& t : deltas[y][k - 1]) {
        Chain v = M.act(x, t.word);
        if (v.empty()) continue;
        Int s = t.c * parity_sign(static_cast<long long>(k + 1) * N.parity(t.y));
        for (const auto& [x2, c] : v) chain_add(out, index.at({x2, t.y}), s * c);
      }
  }
  return B;
}

KhovanovOracle::KhovanovOracle(const TangleDiagram& in, const TangleDiagram& out, int crossing_cap) {
  if (in.side != HalfSide::Inside || out.side != HalfSide::Outside) throw std::invalid_argument("oracle sides");
  if (in.n != out.n) throw std::invalid_argument("boundary sizes differ");
  for (int k = 0; k < 2 * in.n; ++k)
    if (in.orient[k] != -out.orient[k]) throw OrientationMismatch("endpoint orientations do not glue");
  nin_ = in.num_nodes;
  nout_ = out.num_nodes;
  cin_ = in.crossing_count();
  ctotal_ = cin_ + out.crossing_count();
  if (ctotal_ > crossing_cap) throw CapError("crossing count exceeds cap");
  int n2 = 2 * in.n;
  int N = nin_ + nout_;
  std::vector<std::pair<int, int>> edges;
  for (auto [a, b] : in.pieces) edges.push_back({a, b});
  for (auto [a, b] : out.pieces) edges.push_back({a + nin_, b + nin_});
  for (int k = 0; k < n2; ++k) edges.push_back({k, nin_ + k});
  for (const auto& c : in.crossings) {
    ports_.push_back({c.L0, c.H0, c.L1, c.H1});
    turnback_.push_back(c.zero_turnback);
  }
  for (const auto& c : out.crossings) {
    ports_.push_back({c.L0 + nin_, c.H0 + nin_, c.L1 + nin_, c.H1 + nin_});
    turnback_.push_back(c.zero_turnback);
  }
  int npos = in.n_plus + out.n_plus, nneg = in.n_minus + out.n_minus;
  unsigned R = 1u << ctotal_;
  res_.resize(R);
  offset_.resize(R + 1);
  offset_[0] = 0;
  for (unsigned rho = 0; rho < R; ++rho) {
    std::vector<int> par(N);
    std::iota(par.begin(), par.end(), 0);
    auto find = [&](int x) {
      while (par[x] != x) x = par[x] = par[par[x]];
      return x;
    };
    auto unite = [&](int a, int b) {
      a = find(a);
      b = find(b);
      if (a != b) par[std::max(a, b)] = std::min(a, b);
    };
    for (auto [a, b] : edges) unite(a, b);
    for (int c = 0; c < ctotal_; ++c) {
      const auto& p = ports_[c];
      bool turn = turnback_[c] != static_cast<bool>(rho >> c & 1u);
      if (turn) {
        unite(p[0], p[1]);
        unite(p[2], p[3]);
      } else {
        unite(p[0], p[3]);
        unite(p[1], p[2]);
      }
    }
    auto& r = res_[rho];
    r.comp.resize(N);
    for (int v = 0; v < N; ++v) r.comp[v] = find(v);
    std::map<int, std::pair<int, int>> key_of;
    for (int v = N - 1; v >= 0; --v) {
      int c = r.comp[v];
      std::pair<int, int> k;
      if (v < n2) k = {0, v};
      else if (v < nin_) k = {1, v};
      else if (v < nin_ + n2) k = {0, v - nin_};
      else k = {2, v - nin_};
      auto it = key_of.find(c);
      if (it == key_of.end() || k < it->second) key_of[c] = k;
    }
    for (const auto& [c, k] : key_of) r.keys.push_back(k);
    std::sort(r.keys.begin(), r.keys.end());
    for (const auto& [c, k] : key_of)
      r.circle_of_comp[c] = static_cast<int>(std::lower_bound(r.keys.begin(), r.keys.end(), k) - r.keys.begin());
    offset_[rho + 1] = offset_[rho] + (1 << r.keys.size());
  }
  for (unsigned rho = 0; rho < R; ++rho) {
    int h = std::popcount(rho);
    int nc = static_cast<int>(res_[rho].keys.size());
    for (unsigned b = 0; b < (1u << nc); ++b) {
      int q = h + 2 * std::popcount(b) - nc + npos - 2 * nneg;
      std::string lab = "R=" + std::to_string(rho) + " L=" + std::to_string(b);
      C_.add({h - nneg, 2 * q}, lab);
    }
  }
  for (unsigned rho = 0; rho < R; ++rho) {
    const auto& r = res_[rho];
    int nc = static_cast<int>(r.keys.size());
    for (int c = 0; c < ctotal_; ++c) {
      if (rho >> c & 1u) continue;
      unsigned rho2 = rho | 1u << c;
      const auto& r2 = res_[rho2];
      const auto& p = ports_[c];
      int fa = r.circle_of_comp.at(r.comp[p[0]]);
      int fb = r.circle_of_comp.at(r.comp[turnback_[c] ? p[2] : p[1]]);
      std::set<int> touched2;
      for (int v : p) touched2.insert(r2.circle_of_comp.at(r2.comp[v]));
      // untouched circles keep their keys
      std::vector<int> map_old(nc, -1);
      for (int i = 0; i < nc; ++i) {
        if (i == fa || i == fb) continue;
        auto it = std::lower_bound(r2.keys.begin(), r2.keys.end(), r.keys[i]);
        map_old[i] = static_cast<int>(it - r2.keys.begin());
      }
      std::vector<int> fresh(touched2.begin(), touched2.end());
      Int sign = parity_sign(std::popcount(rho >> (c + 1)));
      for (unsigned b = 0; b < (1u << nc); ++b) {
        unsigned base = 0;
        for (int i = 0; i < nc; ++i)
          if (map_old[i] >= 0 && (b >> i & 1u)) base |= 1u << map_old[i];
        int src = offset_[rho] + static_cast<int>(b);
        auto add = [&](unsigned bits) { chain_add(C_.d[src], offset_[rho2] + static_cast<int>(bits), sign); };
        bool la = b >> fa & 1u, lb = b >> fb & 1u;
        if (fa != fb) {
          if (fresh.size() != 1) throw std::logic_error("oracle merge");
          if (la && lb) add(base | 1u << fresh[0]);
          else if (la || lb) add(base);
        } else {
          if (fresh.size() != 2) throw std::logic_error("oracle split");
          if (la) {
            add(base | 1u << fresh[0]);
            add(base | 1u << fresh[1]);
          } else {
            add(base);
          }
        }
      }
    }
  }
}

int KhovanovOracle::generator_of(const TangleComplex& Tin, int x, const TangleComplex& Tout, int y) const {
  const auto& sx = Tin.states()[x];
  const auto& sy = Tout.states()[y];
  if (sx.idem != sy.idem) throw std::invalid_argument("boundaries differ");
  unsigned rho = sx.rho | (sy.rho << cin_);
  const auto& r = res_[rho];
  auto pos = [&](std::pair<int, int> k) {
    auto it = std::lower_bound(r.keys.begin(), r.keys.end(), k);
    if (it == r.keys.end() || *it != k) throw std::logic_error("bijection lost a circle");
    return static_cast<int>(it - r.keys.begin());
  };
  unsigned bits = 0;
  const auto& rx = Tin.resolution(sx.rho);
  for (size_t i = 0; i < rx.free_ids.size(); ++i)
    if (sx.free_bits >> i & 1u) bits |= 1u << pos({1, rx.free_ids[i]});
  const auto& ry = Tout.resolution(sy.rho);
  for (size_t i = 0; i < ry.free_ids.size(); ++i)
    if (sy.free_bits >> i & 1u) bits |= 1u << pos({2, ry.free_ids[i]});
  const auto& A = Tin.algebra();
  const auto& I = A.idempotents()[sx.idem];
  const auto& L = A.links()[I.link];
  for (int c = 0; c < L.circ.count; ++c)
    if (I.sigma >> c & 1u) bits |= 1u << pos({0, L.circ.min_point[c]});
  if (static_cast<int>(bits) >= offset_[rho + 1] - offset_[rho]) throw std::logic_error("bad label");
  return offset_[rho] + static_cast<int>(bits);
}

CheckReport compare_with_oracle(const BoxComplex& B, const TangleComplex& Tin, const TangleComplex& Tout,
                                const KhovanovOracle& O) {
  CheckReport rep;
  const auto& C = O.complex();
  if (C.size() != B.complex.size()) {
    rep.fail("generator counts differ: box " + std::to_string(B.complex.size()) + " oracle " +
             std::to_string(C.size()));
    return rep;
  }
  std::vector<int> to(B.complex.size());
  std::vector<char> hit(C.size(), 0);
  for (int g = 0; g < B.complex.size(); ++g) {
    to[g] = O.generator_of(Tin, B.pairs[g].first, Tout, B.pairs[g].second);
    if (hit[to[g]]) {
      rep.fail("bijection not injective");
      return rep;
    }
    hit[to[g]] = 1;
    if (C.grading[to[g]] != B.complex.grading[g]) rep.fail("grading differs at " + B.complex.labels[g]);
  }
  for (int g = 0; g < B.complex.size(); ++g) {
    Chain mapped;
    for (const auto& [t, v] : B.complex.d[g]) chain_add(mapped, to[t], v);
    ++rep.checked;
    if (mapped != C.d[to[g]]) rep.fail("differential differs at " + B.complex.labels[g]);
  }
  return rep;
}

}  // namespace ckh
