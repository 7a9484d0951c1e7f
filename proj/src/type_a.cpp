#include "ckh/type_a.hpp"

#include <bit>
#include <functional>

namespace ckh {

std::vector<Chain> d_aps(const TangleComplex& T) {
  std::vector<Chain> d(T.states().size());
  for (int x = 0; x < static_cast<int>(T.states().size()); ++x) {
    const auto& s = T.states()[x];
    for (int c = 0; c < T.diagram().crossing_count(); ++c) {
      if (s.rho >> c & 1u) continue;
      auto [A, B] = T.feet(s.rho, c);
      auto sg = T.surger(s.rho, s.free_bits, c);
      Int sign = T.sign_after(s.rho, c);
      auto add = [&](unsigned bits) { chain_add(d[x], T.state_index({sg.rho, s.closure, bits, s.idem}), sign); };
      if (A.is_free && B.is_free) {
        bool a = s.free_bits >> A.idx & 1u, b = s.free_bits >> B.idx & 1u;
        if (A.idx != B.idx) {
          if (sg.fresh.size() != 1) throw std::logic_error("free merge");
          if (a && b) add(sg.carried | 1u << sg.fresh[0]);
          else if (a || b) add(sg.carried);
        } else {
          if (sg.fresh.size() != 2) throw std::logic_error("free split");
          if (a) {
            add(sg.carried | 1u << sg.fresh[0]);
            add(sg.carried | 1u << sg.fresh[1]);
          } else {
            add(sg.carried);
          }
        }
      } else if (!A.is_free && !B.is_free) {
        if (A.idx != B.idx) continue;
        if (sg.fresh.size() != 1) throw std::logic_error("arc split");
        add(sg.carried);
      } else {
        const auto& F = A.is_free ? A : B;
        if (!sg.fresh.empty()) throw std::logic_error("arc absorb");
        if (s.free_bits >> F.idx & 1u) add(sg.carried);
      }
    }
  }
  return d;
}

TypeA::TypeA(const TangleComplex& T) : T_(T) {
  if (T.side() != HalfSide::Inside) throw std::invalid_argument("type A needs an inside tangle");
  d_ = d_aps(T);
}

Chain TypeA::m2_gen(int x, int g) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find({x, g});
    if (it != cache_.end()) return it->second;
  }
  Chain r = compute_m2(x, g);
  std::lock_guard<std::mutex> lock(mu_);
  cache_[{x, g}] = r;
  return r;
}

Chain TypeA::compute_m2(int x, int g) const {
  const auto& A = algebra();
  const auto& G = A.generators()[g];
  const auto& s = T_.states()[x];
  Chain r;
  if (G.src != s.idem) return r;
  int tlink = A.idempotents()[G.tgt].link;
  switch (G.kind) {
    case GenKind::DecRight:
      r[T_.state_index({s.rho, s.closure, s.free_bits, G.tgt})] = 1;
      break;
    case GenKind::DecLeft:
      for (int c = 0; c < T_.diagram().crossing_count(); ++c) {
        if (s.rho >> c & 1u) continue;
        auto [F1, F2] = T_.feet(s.rho, c);
        if (F1.is_free && F2.is_free) continue;
        Int sign = T_.sign_after(s.rho, c);
        if (!F1.is_free && !F2.is_free) {
          if (F1.idx != F2.idx || T_.cleaved_circle(s.rho, s.closure, F1.idx) != G.circle) continue;
          auto sg = T_.surger(s.rho, s.free_bits, c);
          chain_add(r, T_.state_index({sg.rho, s.closure, sg.carried | 1u << sg.fresh.at(0), G.tgt}), sign);
        } else {
          const auto& Arc = F1.is_free ? F2 : F1;
          const auto& Fr = F1.is_free ? F1 : F2;
          if (T_.cleaved_circle(s.rho, s.closure, Arc.idx) != G.circle || (s.free_bits >> Fr.idx & 1u)) continue;
          auto sg = T_.surger(s.rho, s.free_bits, c);
          chain_add(r, T_.state_index({sg.rho, s.closure, sg.carried, G.tgt}), sign);
        }
      }
      break;
    case GenKind::BridgeLeft:
      for (int c = 0; c < T_.diagram().crossing_count(); ++c) {
        if (s.rho >> c & 1u) continue;
        auto [F1, F2] = T_.feet(s.rho, c);
        if (F1.is_free || F2.is_free || F1.idx == F2.idx) continue;
        if (make_bridge(F1.idx, F2.idx) != G.bridge) continue;
        auto sg = T_.surger(s.rho, s.free_bits, c);
        if (!sg.fresh.empty() || T_.link_of(sg.rho, s.closure) != tlink) throw std::logic_error("left bridge image");
        chain_add(r, T_.state_index({sg.rho, s.closure, sg.carried, G.tgt}), T_.sign_after(s.rho, c));
      }
      break;
    case GenKind::BridgeRight: {
      int m2 = A.matchings().surgered(s.closure, G.bridge).first;
      if (T_.link_of(s.rho, m2) != tlink) throw std::logic_error("right bridge image");
      r[T_.state_index({s.rho, m2, s.free_bits, G.tgt})] = 1;
      break;
    }
  }
  return r;
}

Chain TypeA::m2_word(int x, const std::vector<int>& word) const {
  Chain cur{{x, 1}};
  for (int g : word) {
    Chain nxt;
    for (const auto& [y, c] : cur) chain_axpy(nxt, c, m2_gen(y, g));
    cur = std::move(nxt);
    if (cur.empty()) break;
  }
  return cur;
}

Chain TypeA::act(int x, const std::vector<int>& as) const {
  if (as.size() != 1) return {};
  const auto& B = algebra().basis()[as[0]];
  if (B.src != idem(x)) return {};
  if (B.word.empty()) return {{x, 1}};
  return m2_word(x, B.word);
}

CheckReport verify_typeA_relations(const TypeA& M) {
  CheckReport rep;
  const auto& A = M.algebra();
  int N = M.size();
  for (int x = 0; x < N; ++x) {
    ++rep.checked;
    if (!M.m1(M.m1(x)).empty()) rep.fail("d^2 at " + M.label(x));
  }
  std::vector<std::vector<int>> by_idem(A.idempotents().size());
  for (int x = 0; x < N; ++x) by_idem[M.idem(x)].push_back(x);
  for (const auto& R : A.base_relations()) {
    int src = A.generators()[R.terms[0].first.front()].src;
    for (int x : by_idem[src]) {
      Chain s;
      for (const auto& [w, c] : R.terms) chain_axpy(s, c, M.m2_word(x, w));
      ++rep.checked;
      if (!s.empty()) rep.fail("relation " + R.family + " at " + M.label(x));
    }
  }
  return rep;
}

namespace {

struct AinfEval {
  const AModule& M;
  const Algebra& A;

  int deg(int b) const { return A.basis()[b].gr.h; }

  // m_i applied to a chain and a list of algebra chains
  Chain apply(const Chain& xs, const std::vector<Chain>& as) const {
    if (as.empty()) return M.m1(xs);
    Chain out;
    std::vector<int> word(as.size());
    std::function<void(size_t, Int)> rec = [&](size_t k, Int coef) {
      if (k == as.size()) {
        chain_axpy(out, coef, M.act(xs, word));
        return;
      }
      for (const auto& [b, c] : as[k]) {
        word[k] = b;
        rec(k + 1, coef * c);
      }
    };
    rec(0, 1);
    return out;
  }
};

}  // namespace

CheckReport verify_ainf(const AModule& M, int n_max) {
  CheckReport rep;
  const auto& A = M.algebra();
  AinfEval ev{M, A};
  std::vector<std::vector<int>> from(A.idempotents().size());
  for (int b = 0; b < static_cast<int>(A.basis().size()); ++b)
    if (!A.basis()[b].word.empty()) from[A.basis()[b].src].push_back(b);
  for (int x = 0; x < M.size(); ++x) {
    std::vector<int> a;
    std::function<void(int)> rec = [&](int at) {
      int n = static_cast<int>(a.size()) + 1;
      // relation with inputs (x, a_1..a_{n-1})
      Chain total;
      auto sgn_tail = [&](size_t from_idx, int j) {
        int e = 0;
        for (size_t l = from_idx; l < a.size(); ++l) e += j * ev.deg(a[l]);
        return parity_sign(e);
      };
      for (int j = 1; j <= n; ++j) {
        int i = n + 1 - j;
        std::vector<Chain> first, rest;
        for (int l = 0; l < j - 1; ++l) first.push_back({{a[l], 1}});
        Chain v = ev.apply({{x, 1}}, first);
        if (v.empty()) continue;
        for (size_t l = j - 1; l < a.size(); ++l) rest.push_back({{a[l], 1}});
        int s = parity_sign(static_cast<long long>(j) * (i + 1)) * sgn_tail(j - 1, j);
        chain_axpy(total, s, ev.apply(v, rest));
      }
      for (int j = 1; j <= 2; ++j)
        for (int k = 1; k + j - 1 <= n - 1; ++k) {
          int i = n + 1 - j;
          Chain mu;
          if (j == 1) mu = A.d(a[k - 1]);
          else mu = A.mul(a[k - 1], a[k]);
          if (mu.empty()) continue;
          std::vector<Chain> ins;
          for (int l = 0; l < k - 1; ++l) ins.push_back({{a[l], 1}});
          ins.push_back(mu);
          for (size_t l = k - 1 + j; l < a.size(); ++l) ins.push_back({{a[l], 1}});
          int s = parity_sign(static_cast<long long>(k) * (j + 1) + static_cast<long long>(j) * (i + 1)) *
                  sgn_tail(k - 1 + j, j);
          chain_axpy(total, s, ev.apply({{x, 1}}, ins));
        }
      ++rep.checked;
      if (!total.empty()) {
        std::string w;
        for (int b : a) w += " " + A.basis_name(b);
        rep.fail("A-infinity relation n=" + std::to_string(n) + " at " + M.label(x) + " :" + w);
      }
      if (n >= n_max) return;
      for (int b : from[at]) {
        a.push_back(b);
        rec(A.basis()[b].tgt);
        a.pop_back();
      }
    };
    for (int b : from[M.idem(x)]) {
      a.push_back(b);
      rec(A.basis()[b].tgt);
      a.pop_back();
    }
  }
  return rep;
}

}  // namespace ckh
