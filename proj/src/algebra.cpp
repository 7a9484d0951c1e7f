#include "ckh/algebra.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <mutex>
#include <set>
#include <sstream>

namespace ckh {

namespace {

using Terms = std::vector<std::pair<std::vector<int>, Int>>;

std::vector<int> concat(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

bool word_less(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

Algebra::Algebra(int n) : n_(n), ms_(n) {
  build_links();
  build_generators();
  build_words();
  build_relations();
  build_quotient();
  build_differential();
}

const Algebra& Algebra::get(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<Algebra>> cache;
  if (n < 0) throw ParseError("negative n");
  if (n > kAlgebraCap) throw CapError("n = " + std::to_string(n) + " exceeds the algebra cap " + std::to_string(kAlgebraCap));
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Algebra>(n);
  return *slot;
}

int Algebra::idem_iota(int i) const {
  const auto& id = idems_[i];
  return 2 * std::popcount(id.sigma) - links_[id.link].circ.count;
}

void Algebra::build_links() {
  int M = ms_.size();
  for (int l = 0; l < M; ++l)
    for (int r = 0; r < M; ++r) {
      Link L;
      L.left = l;
      L.right = r;
      L.circ = circles_of(ms_.at(l), ms_.at(r));
      L.first_idem = static_cast<int>(idems_.size());
      int li = static_cast<int>(links_.size());
      for (unsigned s = 0; s < (1u << L.circ.count); ++s) idems_.push_back({li, s});
      links_.push_back(std::move(L));
    }
}

int Algebra::surgered_link(int link, Side s, Bridge g) const {
  const auto& L = links_[link];
  if (s == Side::Left) return link_index(ms_.surgered(L.left, g).first, L.right);
  return link_index(L.left, ms_.surgered(L.right, g).first);
}

Bridge Algebra::dagger(int link, Side s, Bridge g) const {
  const auto& L = links_[link];
  return ms_.surgered(s == Side::Left ? L.left : L.right, g).second;
}

void Algebra::build_generators() {
  gens_from_.resize(idems_.size());
  auto add = [&](Generator g) {
    int id = static_cast<int>(gens_.size());
    gens_.push_back(g);
    gens_from_[g.src].push_back(id);
    if (g.kind == GenKind::DecRight || g.kind == GenKind::DecLeft)
      dec_lookup_[{g.src, static_cast<int>(g.kind), g.circle}] = id;
    else
      bridge_lookup_[{g.src, g.kind == GenKind::BridgeLeft ? 0 : 1, g.bridge.a, g.bridge.b, g.tgt}] = id;
  };
  for (int i = 0; i < static_cast<int>(idems_.size()); ++i) {
    const auto& I = idems_[i];
    const auto& L = links_[I.link];
    for (int c = 0; c < L.circ.count; ++c) {
      if (!(I.sigma >> c & 1u)) continue;
      int t = idem_index(I.link, I.sigma & ~(1u << c));
      add({GenKind::DecRight, i, t, c, {}, {0, -2}});
      add({GenKind::DecLeft, i, t, c, {}, {1, 2}});
    }
    for (Side side : {Side::Left, Side::Right}) {
      int mi = side == Side::Left ? L.left : L.right;
      for (const auto& g : ms_.bridges(mi)) {
        int l2 = surgered_link(I.link, side, g);
        const auto& L2 = links_[l2];
        Bridge dag = dagger(I.link, side, g);
        int ca = L.circ.of_point[g.a], cb = L.circ.of_point[g.b];
        unsigned base = 0;
        for (int c = 0; c < L.circ.count; ++c) {
          if (c == ca || c == cb) continue;
          int c2 = L2.circ.of_point[L.circ.min_point[c]];
          if (I.sigma >> c & 1u) base |= 1u << c2;
        }
        std::vector<unsigned> targets;
        bool pa = I.sigma >> ca & 1u, pb = I.sigma >> cb & 1u;
        if (ca != cb) {
          int c2 = L2.circ.of_point[dag.a];
          if (c2 != L2.circ.of_point[dag.b]) throw std::logic_error("merge did not merge");
          if (pa && pb) targets.push_back(base | 1u << c2);
          else if (pa || pb) targets.push_back(base);
        } else {
          int c1 = L2.circ.of_point[dag.a], c2 = L2.circ.of_point[dag.b];
          if (c1 == c2) throw std::logic_error("fission did not split");
          if (pa) {
            targets.push_back(base | 1u << c1);
            targets.push_back(base | 1u << c2);
          } else {
            targets.push_back(base);
          }
        }
        Bigrading gr = side == Side::Left ? Bigrading{1, 1} : Bigrading{0, -1};
        GenKind k = side == Side::Left ? GenKind::BridgeLeft : GenKind::BridgeRight;
        for (unsigned s2 : targets) add({k, i, idem_index(l2, s2), -1, g, gr});
      }
    }
  }
}

int Algebra::dec_gen(int src, GenKind kind, int circle) const {
  auto it = dec_lookup_.find({src, static_cast<int>(kind), circle});
  return it == dec_lookup_.end() ? -1 : it->second;
}

std::vector<int> Algebra::bridge_gens(int src, Side side, Bridge g) const {
  std::vector<int> r;
  GenKind k = side == Side::Left ? GenKind::BridgeLeft : GenKind::BridgeRight;
  for (int id : gens_from_[src])
    if (gens_[id].kind == k && gens_[id].bridge == g) r.push_back(id);
  return r;
}

int Algebra::bridge_gen(int src, Side side, Bridge g, int tgt) const {
  auto it = bridge_lookup_.find({src, side == Side::Left ? 0 : 1, g.a, g.b, tgt});
  return it == bridge_lookup_.end() ? -1 : it->second;
}

void Algebra::build_words() {
  std::function<void(std::vector<int>&, int)> rec = [&](std::vector<int>& w, int at) {
    for (int g : gens_from_[at]) {
      w.push_back(g);
      word_id_[w] = static_cast<int>(words_.size());
      words_.push_back(w);
      rec(w, gens_[g].tgt);
      w.pop_back();
    }
  };
  for (int i = 0; i < static_cast<int>(idems_.size()); ++i) {
    std::vector<int> w;
    rec(w, i);
  }
}

std::vector<std::pair<int, int>> Algebra::paths2(int i, Side s1, Bridge g, Side s2, Bridge e) const {
  std::vector<std::pair<int, int>> r;
  for (int g1 : bridge_gens(i, s1, g))
    for (int g2 : bridge_gens(gens_[g1].tgt, s2, e)) r.push_back({g1, g2});
  return r;
}

void Algebra::add_rel(const std::string& fam, Terms terms) {
  std::map<std::vector<int>, Int> acc;
  for (auto& [w, c] : terms) acc[w] += c;
  RelationInstance R;
  R.family = fam;
  for (auto& [w, c] : acc)
    if (c != 0) R.terms.push_back({w, c});
  if (!R.terms.empty()) base_rel_.push_back(std::move(R));
}

void Algebra::build_relations() {
  const auto GL = GenKind::DecLeft, GR = GenKind::DecRight;
  for (int i = 0; i < static_cast<int>(idems_.size()); ++i) {
    const auto& I = idems_[i];
    const auto& L = links_[I.link];
    auto plus = [&](int c) { return (I.sigma >> c & 1u) != 0; };
    auto tgt = [&](int g) { return gens_[g].tgt; };

    // distinct decorations graded-commute
    for (int c = 0; c < L.circ.count; ++c)
      for (int e = c + 1; e < L.circ.count; ++e) {
        if (!plus(c) || !plus(e)) continue;
        for (GenKind k1 : {GR, GL})
          for (GenKind k2 : {GR, GL}) {
            int a = dec_gen(i, k1, c), b = dec_gen(tgt(a), k2, e);
            int a2 = dec_gen(i, k2, e), b2 = dec_gen(tgt(a2), k1, c);
            int s = (is_left(k1) && is_left(k2)) ? -1 : 1;
            add_rel("commute-dec", {{{a, b}, 1}, {{a2, b2}, -s}});
          }
      }

    std::vector<std::pair<Side, Bridge>> all_bridges;
    for (Side side : {Side::Left, Side::Right})
      for (const auto& g : ms_.bridges(side == Side::Left ? L.left : L.right)) all_bridges.push_back({side, g});

    for (const auto& [side, g] : all_bridges) {
      int ca = L.circ.of_point[g.a], cb = L.circ.of_point[g.b];
      int l2 = surgered_link(I.link, side, g);
      const auto& L2 = links_[l2];
      Bridge dag = dagger(I.link, side, g);
      bool left = side == Side::Left;

      // bridge and decoration away from the support graded-commute
      for (int b : bridge_gens(i, side, g))
        for (int c = 0; c < L.circ.count; ++c) {
          if (c == ca || c == cb || !plus(c)) continue;
          int c2 = L2.circ.of_point[L.circ.min_point[c]];
          for (GenKind k : {GR, GL}) {
            int d1 = dec_gen(tgt(b), k, c2);
            int d0 = dec_gen(i, k, c);
            int tb = idem_index(l2, idems_[tgt(b)].sigma & ~(1u << c2));
            int b2 = bridge_gen(tgt(d0), side, g, tb);
            if (d1 < 0 || d0 < 0 || b2 < 0) throw std::logic_error("missing commuting partner");
            int s = (left && is_left(k)) ? -1 : 1;
            add_rel("commute-bridge-dec", {{{b, d1}, 1}, {{d0, b2}, -s}});
          }
        }

      // decoration relations at a merge or fission
      auto dec_after = [&](int b, GenKind k, int circ2) { return dec_gen(tgt(b), k, circ2); };
      if (ca != cb) {
        int c2 = L2.circ.of_point[dag.a];
        if (plus(ca) && plus(cb)) {
          for (int b : bridge_gens(i, side, g)) {
            // b: ++ -> +
            int da = dec_gen(i, GR, ca), db = dec_gen(i, GR, cb);
            int t_minus = idem_index(l2, idems_[tgt(b)].sigma & ~(1u << c2));
            int ma = bridge_gen(tgt(da), side, g, t_minus), mb = bridge_gen(tgt(db), side, g, t_minus);
            int e = dec_after(b, GR, c2);
            add_rel("right-dec-merge", {{{da, ma}, 1}, {{b, e}, -1}});
            add_rel("right-dec-merge", {{{db, mb}, 1}, {{b, e}, -1}});
            int la = dec_gen(i, GL, ca), lb = dec_gen(i, GL, cb);
            int el = dec_after(b, GL, c2);
            if (left)
              add_rel("left-dec-merge", {{{la, ma}, 1}, {{lb, mb}, 1}, {{b, el}, 1}});
            else
              add_rel("left-dec-merge", {{{b, el}, 1}, {{la, ma}, -1}, {{lb, mb}, -1}});
          }
        }
      } else if (plus(ca)) {
        int c1 = L2.circ.of_point[dag.a], c2 = L2.circ.of_point[dag.b];
        int dC = dec_gen(i, GR, ca), lC = dec_gen(i, GL, ca);
        auto bs = bridge_gens(i, side, g);
        unsigned both_minus = idems_[tgt(bs.at(0))].sigma & ~(1u << c1) & ~(1u << c2);
        int fmm_tgt = idem_index(l2, both_minus);
        int fr = bridge_gen(tgt(dC), side, g, fmm_tgt);
        int fl = bridge_gen(tgt(lC), side, g, fmm_tgt);
        if (fr < 0 || fl < 0) throw std::logic_error("missing fission partner");
        Terms left_terms{{{lC, fl}, 1}};
        Terms right_terms{{{lC, fl}, 1}};
        for (int b : bs) {
          unsigned s2 = idems_[tgt(b)].sigma;
          int cp = (s2 >> c1 & 1u) ? c1 : c2;
          int e = dec_after(b, GR, cp);
          add_rel("right-dec-fission", {{{dC, fr}, 1}, {{b, e}, -1}});
          int el = dec_after(b, GL, cp);
          left_terms.push_back({{b, el}, 1});
          right_terms.push_back({{b, el}, -1});
        }
        add_rel("left-dec-fission", left ? left_terms : right_terms);
      }
    }

    // pairs of bridges with disjoint support commute
    for (size_t x = 0; x < all_bridges.size(); ++x)
      for (size_t y = x + 1; y < all_bridges.size(); ++y) {
        auto [s1, g] = all_bridges[x];
        auto [s2, e] = all_bridges[y];
        if (s1 == s2) {
          const auto& m = ms_.at(s1 == Side::Left ? L.left : L.right);
          if (classify(m, g, e) != BridgeClass::Disjoint) continue;
        }
        int s = (s1 == Side::Left && s2 == Side::Left) ? -1 : 1;
        auto P = paths2(i, s1, g, s2, e), Q = paths2(i, s2, e, s1, g);
        for (auto [p1, p2] : P)
          for (auto [q1, q2] : Q)
            if (tgt(p2) == tgt(q2)) add_rel("commute-bridges", {{{p1, p2}, 1}, {{q1, q2}, -s}});
      }

    const auto& ml = ms_.at(L.left);

    // right bridges: all two-step paths to the same link agree
    {
      const auto& rb = ms_.bridges(L.right);
      for (size_t x = 0; x < rb.size(); ++x)
        for (size_t y = x + 1; y < rb.size(); ++y) {
          int rg = ms_.surgered(L.right, rb[x]).first;
          int re = ms_.surgered(L.right, rb[y]).first;
          for (const auto& d : ms_.bridges(rg))
            for (const auto& w : ms_.bridges(re)) {
              if (ms_.surgered(rg, d).first != ms_.surgered(re, w).first) continue;
              auto P = paths2(i, Side::Right, rb[x], Side::Right, d);
              auto Q = paths2(i, Side::Right, rb[y], Side::Right, w);
              for (auto [p1, p2] : P)
                for (auto [q1, q2] : Q)
                  if (tgt(p2) == tgt(q2)) add_rel("right-square", {{{p1, p2}, 1}, {{q1, q2}, -1}});
            }
        }
    }

    // right bridge followed by its dagger is the decoration of the active circle
    for (const auto& g : ms_.bridges(L.right)) {
      Bridge dag = dagger(I.link, Side::Right, g);
      for (auto [p1, p2] : paths2(i, Side::Right, g, Side::Right, dag)) {
        const auto& J = idems_[tgt(p2)];
        if (J.link != I.link) throw std::logic_error("dagger did not return");
        unsigned diff = I.sigma ^ J.sigma;
        if (std::popcount(diff) != 1 || !(I.sigma & diff)) throw std::logic_error("active circle not unique");
        int c = std::countr_zero(diff);
        add_rel("active-circle", {{{p1, p2}, 1}, {{dec_gen(i, GR, c)}, -1}});
      }
    }

    const auto& lb = ms_.bridges(L.left);
    // left bridges sharing an arc across regions
    for (size_t x = 0; x < lb.size(); ++x)
      for (size_t y = x + 1; y < lb.size(); ++y) {
        Bridge g = lb[x], e = lb[y];
        if (classify(ml, g, e) != BridgeClass::Other) continue;
        int lg = ms_.surgered(L.left, g).first, le = ms_.surgered(L.left, e).first;
        for (const auto& d : lifts(ml, g, e))
          for (const auto& w : lifts(ml, e, g)) {
            if (ms_.surgered(lg, d).first != ms_.surgered(le, w).first) continue;
            auto P = paths2(i, Side::Left, g, Side::Left, d);
            auto Q = paths2(i, Side::Left, e, Side::Left, w);
            for (auto [p1, p2] : P)
              for (auto [q1, q2] : Q)
                if (tgt(p2) == tgt(q2)) add_rel("left-other", {{{p1, p2}, 1}, {{q1, q2}, 1}});
          }
      }

    // pitchfork
    for (const auto& g : lb) {
      auto [lg, dag] = ms_.surgered(L.left, g);
      const auto& m2 = ms_.at(lg);
      for (const auto& e : ms_.bridges(lg)) {
        if (classify(m2, dag, e) != BridgeClass::Pitchfork) continue;
        for (auto [p1, p2] : paths2(i, Side::Left, g, Side::Left, e)) add_rel("pitchfork", {{{p1, p2}, 1}});
      }
    }

    // triple slide: three arcs in one region
    {
      auto arcs = arcs_of(ml);
      std::set<int> regions;
      for (int a : arcs) regions.insert(parent_arc(ml, a));
      for (int a : arcs) regions.insert(a);
      for (int reg : regions) {
        auto seq = region_sequence(ml, reg);
        std::vector<int> ra;
        for (const auto& s : seq) ra.push_back(s.arc);
        std::sort(ra.begin(), ra.end());
        for (size_t p = 0; p < ra.size(); ++p)
          for (size_t q = p + 1; q < ra.size(); ++q)
            for (size_t r = q + 1; r < ra.size(); ++r) {
              Bridge gam{ra[p], ra[q]}, alp{ra[p], ra[r]}, bet{ra[q], ra[r]};
              Bridge del = pushforward(ml, gam, alp), zet = pushforward(ml, bet, alp),
                     eta = pushforward(ml, alp, bet);
              if (pushforward(ml, gam, bet) != del || pushforward(ml, bet, gam) != zet ||
                  pushforward(ml, alp, gam) != eta)
                throw std::logic_error("triple slide pushforwards disagree");
              int f1 = ms_.surgered(ms_.surgered(L.left, alp).first, eta).first;
              int f2 = ms_.surgered(ms_.surgered(L.left, bet).first, zet).first;
              int f3 = ms_.surgered(ms_.surgered(L.left, gam).first, del).first;
              if (f1 != f2 || f2 != f3) throw std::logic_error("triple slide targets disagree");
              auto P1 = paths2(i, Side::Left, alp, Side::Left, eta);
              auto P2 = paths2(i, Side::Left, bet, Side::Left, zet);
              auto P3 = paths2(i, Side::Left, gam, Side::Left, del);
              for (auto [a1, a2] : P1)
                for (auto [b1, b2] : P2)
                  for (auto [c1, c2] : P3)
                    if (tgt(a2) == tgt(b2) && tgt(b2) == tgt(c2))
                      add_rel("triple-slide", {{{a1, a2}, 1}, {{b1, b2}, 1}, {{c1, c2}, 1}});
            }
      }
    }
  }
}

void Algebra::build_quotient() {
  using BlockKey = std::tuple<int, int, int, int>;
  auto key_of = [&](const std::vector<int>& w) {
    Bigrading g{};
    for (int x : w) g = g + gens_[x].gr;
    return BlockKey{gens_[w.front()].src, gens_[w.back()].tgt, g.h, g.q2};
  };
  std::map<BlockKey, std::vector<int>> blocks;
  for (int w = 0; w < static_cast<int>(words_.size()); ++w) blocks[key_of(words_[w])].push_back(w);
  std::vector<int> col_of(words_.size());
  std::vector<BlockKey> block_of(words_.size());
  for (auto& [k, ws] : blocks) {
    std::sort(ws.begin(), ws.end(), [&](int a, int b) { return word_less(words_[a], words_[b]); });
    for (size_t c = 0; c < ws.size(); ++c) {
      col_of[ws[c]] = static_cast<int>(c);
      block_of[ws[c]] = k;
    }
  }

  std::vector<std::vector<int>> ending(idems_.size()), starting(idems_.size());
  for (int w = 0; w < static_cast<int>(words_.size()); ++w) {
    ending[gens_[words_[w].back()].tgt].push_back(w);
    starting[gens_[words_[w].front()].src].push_back(w);
  }

  std::map<BlockKey, std::vector<Chain>> rows;
  static const std::vector<int> empty;
  for (const auto& R : base_rel_) {
    int s = gens_[R.terms[0].first.front()].src;
    int t = gens_[R.terms[0].first.back()].tgt;
    std::vector<const std::vector<int>*> us{&empty}, vs{&empty};
    for (int w : ending[s]) us.push_back(&words_[w]);
    for (int w : starting[t]) vs.push_back(&words_[w]);
    for (auto* u : us)
      for (auto* v : vs) {
        Chain row;
        BlockKey bk{};
        for (const auto& [w, c] : R.terms) {
          int id = word_id_.at(concat(concat(*u, w), *v));
          chain_add(row, col_of[id], c);
          bk = block_of[id];
        }
        if (!row.empty()) rows[bk].push_back(std::move(row));
      }
  }

  idem_basis_.resize(idems_.size());
  for (int i = 0; i < static_cast<int>(idems_.size()); ++i) {
    idem_basis_[i] = static_cast<int>(basis_.size());
    basis_.push_back({i, i, {0, 0}, {}});
  }
  word_coord_.assign(words_.size(), {});

  for (auto& [bk, ws] : blocks) {
    auto& rs = rows[bk];
    relation_rows_ += static_cast<int>(rs.size());
    std::map<int, Chain> pivot;  // column -> row with coefficient 1 at column
    auto reduce = [&](Chain& r) {
      for (;;) {
        int hit = -1;
        for (const auto& [c, v] : r)
          if (pivot.count(c)) {
            hit = c;
            break;
          }
        if (hit < 0) return;
        Int f = r[hit];
        chain_axpy(r, -f, pivot[hit]);
      }
    };
    std::vector<Chain> pending = std::move(rs);
    bool progress = true;
    while (progress && !pending.empty()) {
      progress = false;
      std::vector<Chain> still;
      for (auto& r : pending) {
        reduce(r);
        if (r.empty()) continue;
        int pc = -1;
        for (auto it = r.rbegin(); it != r.rend(); ++it)
          if (abs(it->second) == 1) {
            pc = it->first;
            break;
          }
        if (pc < 0) {
          still.push_back(std::move(r));
          continue;
        }
        if (r[pc] == -1) r = chain_scaled(r, -1);
        pivot[pc] = std::move(r);
        progress = true;
      }
      pending = std::move(still);
    }
    for (auto& r : pending) reduce(r);
    for (const auto& r : pending)
      if (!r.empty()) throw AlgebraError("relation ideal has non-unit content in a block");

    std::map<int, int> basis_of_col;
    for (size_t c = 0; c < ws.size(); ++c) {
      if (pivot.count(static_cast<int>(c))) continue;
      int b = static_cast<int>(basis_.size());
      const auto& w = words_[ws[c]];
      basis_.push_back({std::get<0>(bk), std::get<1>(bk), {std::get<2>(bk), std::get<3>(bk)}, w});
      basis_of_col[static_cast<int>(c)] = b;
    }
    std::map<int, Chain> memo;
    std::function<const Chain&(int)> coords = [&](int c) -> const Chain& {
      auto it = memo.find(c);
      if (it != memo.end()) return it->second;
      Chain out;
      auto bit = basis_of_col.find(c);
      if (bit != basis_of_col.end()) {
        out[bit->second] = 1;
      } else {
        for (const auto& [c2, v] : pivot.at(c))
          if (c2 != c) chain_axpy(out, -v, coords(c2));
      }
      return memo[c] = std::move(out);
    };
    for (size_t c = 0; c < ws.size(); ++c) word_coord_[ws[c]] = coords(static_cast<int>(c));
  }
}

const Chain& Algebra::word_coords(const std::vector<int>& word) const {
  return word_coord_[word_id_.at(word)];
}

int Algebra::gen_basis(int g) const {
  const auto& c = word_coords({g});
  if (c.size() != 1 || c.begin()->second != 1) return -1;
  int b = c.begin()->first;
  return basis_[b].word == std::vector<int>{g} ? b : -1;
}

Chain Algebra::mul(int a, int b) const {
  const auto& A = basis_[a];
  const auto& B = basis_[b];
  if (A.tgt != B.src) return {};
  if (A.word.empty()) return {{b, 1}};
  if (B.word.empty()) return {{a, 1}};
  return word_coords(concat(A.word, B.word));
}

Chain Algebra::mul(const Chain& a, const Chain& b) const {
  Chain r;
  for (const auto& [x, u] : a)
    for (const auto& [y, v] : b) chain_axpy(r, u * v, mul(x, y));
  return r;
}

std::vector<std::pair<std::vector<int>, Int>> Algebra::d_word(const std::vector<int>& w) const {
  Terms out;
  for (size_t i = 0; i < w.size(); ++i) {
    int tail = 0;
    for (size_t j = i + 1; j < w.size(); ++j) tail += gens_[w[j]].gr.h;
    for (const auto& [t, c] : dgen_[w[i]]) {
      std::vector<int> nw(w.begin(), w.begin() + static_cast<long>(i));
      nw.insert(nw.end(), t.begin(), t.end());
      nw.insert(nw.end(), w.begin() + static_cast<long>(i) + 1, w.end());
      out.push_back({nw, c * parity_sign(tail)});
    }
  }
  return out;
}

void Algebra::build_differential() {
  dgen_.assign(gens_.size(), {});
  for (int g = 0; g < static_cast<int>(gens_.size()); ++g) {
    const auto& G = gens_[g];
    if (G.kind != GenKind::DecLeft) continue;
    const auto& L = links_[idems_[G.src].link];
    for (const auto& b : ms_.bridges(L.left)) {
      Bridge dag = dagger(idems_[G.src].link, Side::Left, b);
      for (auto [p1, p2] : paths2(G.src, Side::Left, b, Side::Left, dag))
        if (gens_[p2].tgt == G.tgt) dgen_[g].push_back({{p1, p2}, -1});
    }
  }
  d_.assign(basis_.size(), {});
  for (int b = 0; b < static_cast<int>(basis_.size()); ++b) {
    if (basis_[b].word.empty()) continue;
    for (const auto& [w, c] : d_word(basis_[b].word)) chain_axpy(d_[b], c, word_coords(w));
  }
}

Chain Algebra::d(const Chain& a) const {
  Chain r;
  for (const auto& [x, u] : a) chain_axpy(r, u, d_[x]);
  return r;
}

std::string Algebra::gen_name(int g) const {
  const auto& G = gens_[g];
  std::ostringstream os;
  switch (G.kind) {
    case GenKind::DecRight: os << "eR[c" << G.circle << "]"; break;
    case GenKind::DecLeft: os << "eL[c" << G.circle << "]"; break;
    case GenKind::BridgeRight: os << "bR[" << G.bridge.a << "," << G.bridge.b << "]"; break;
    case GenKind::BridgeLeft: os << "bL[" << G.bridge.a << "," << G.bridge.b << "]"; break;
  }
  os << ":" << G.src << ">" << G.tgt;
  return os.str();
}

std::string Algebra::basis_name(int b) const {
  const auto& B = basis_[b];
  if (B.word.empty()) return "I" + std::to_string(B.src);
  std::string s;
  for (size_t i = 0; i < B.word.size(); ++i) {
    if (i) s += "*";
    s += gen_name(B.word[i]);
  }
  return s;
}

CheckReport verify_algebra(const Algebra& A) {
  CheckReport rep;
  const int nb = static_cast<int>(A.basis().size());
  const int ni = static_cast<int>(A.idempotents().size());
  for (int i = 0; i < ni; ++i)
    for (int j = 0; j < ni; ++j) {
      auto p = A.mul(A.idem_basis(i), A.idem_basis(j));
      ++rep.checked;
      if (i == j ? p != Chain{{A.idem_basis(i), 1}} : !p.empty())
        rep.fail("idempotent product I" + std::to_string(i) + "*I" + std::to_string(j));
    }
  for (const auto& R : A.base_relations()) {
    Chain s, ds;
    for (const auto& [w, c] : R.terms) {
      chain_axpy(s, c, A.word_coords(w));
      for (const auto& [w2, c2] : A.d_word(w)) chain_axpy(ds, c * c2, A.word_coords(w2));
    }
    ++rep.checked;
    if (!s.empty()) rep.fail("relation " + R.family + " does not vanish");
    if (!ds.empty()) rep.fail("differential of relation " + R.family + " does not vanish");
  }
  for (int b = 0; b < nb; ++b) {
    ++rep.checked;
    if (!A.d(A.d(b)).empty()) rep.fail("d^2 at " + A.basis_name(b));
    for (const auto& [c, v] : A.d(b))
      if (A.basis()[c].gr != Bigrading{A.basis()[b].gr.h + 1, A.basis()[b].gr.q2})
        rep.fail("d does not raise h by one at " + A.basis_name(b));
  }
  std::vector<std::vector<int>> from(ni);
  for (int b = 0; b < nb; ++b) from[A.basis()[b].src].push_back(b);
  for (int a = 0; a < nb; ++a)
    for (int b : from[A.basis()[a].tgt]) {
      auto ab = A.mul(a, b);
      ++rep.checked;
      for (const auto& [c, v] : ab)
        if (A.basis()[c].gr != A.basis()[a].gr + A.basis()[b].gr)
          rep.fail("grading not additive on " + A.basis_name(a) + "*" + A.basis_name(b));
      Chain rhs = chain_scaled(A.mul(A.d(Chain{{a, 1}}), Chain{{b, 1}}), parity_sign(A.basis()[b].gr.h));
      chain_axpy(rhs, 1, A.mul(Chain{{a, 1}}, A.d(Chain{{b, 1}})));
      if (A.d(ab) != rhs) rep.fail("Leibniz on " + A.basis_name(a) + "*" + A.basis_name(b));
      if (ab.empty()) continue;
      for (int c : from[A.basis()[b].tgt])
        if (A.mul(ab, Chain{{c, 1}}) != A.mul(Chain{{a, 1}}, A.mul(b, c)))
          rep.fail("associativity on " + A.basis_name(a) + "*" + A.basis_name(b) + "*" + A.basis_name(c));
    }
  return rep;
}

}  // namespace ckh
