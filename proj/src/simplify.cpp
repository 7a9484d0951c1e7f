#include "ckh/simplify.hpp"

#include <functional>
#include <set>
#include <tuple>

namespace ckh {

namespace {

using LinMap = std::function<Chain(int)>;

Chain apply_lin(const LinMap& f, const Chain& v) {
  Chain r;
  for (const auto& [k, c] : v) chain_axpy(r, c, f(k));
  return r;
}

Chain minus(Chain a, const Chain& b) {
  chain_axpy(a, -1, b);
  return a;
}

// Strong deformation retraction identities between a big and a small complex.
CheckReport check_sdr(const std::vector<int>& big, const LinMap& dB, const std::vector<int>& small, const LinMap& dS,
                      const LinMap& iota, const LinMap& pi, const LinMap& H) {
  CheckReport rep;
  for (int s : small) {
    Chain is = iota(s);
    ++rep.checked;
    if (apply_lin(pi, is) != Chain{{s, 1}}) rep.fail("pi iota != I at " + std::to_string(s));
    if (!apply_lin(H, is).empty()) rep.fail("H iota != 0 at " + std::to_string(s));
    if (apply_lin(dB, is) != apply_lin(iota, dS(s))) rep.fail("iota not a chain map at " + std::to_string(s));
  }
  for (int b : big) {
    Chain hb = H(b), db = dB(b);
    ++rep.checked;
    Chain lhs = minus(apply_lin(iota, pi(b)), Chain{{b, 1}});
    Chain rhs = apply_lin(dB, hb);
    chain_axpy(rhs, 1, apply_lin(H, db));
    if (lhs != rhs) rep.fail("iota pi - I != dH + Hd at " + std::to_string(b));
    if (!apply_lin(pi, hb).empty()) rep.fail("pi H != 0 at " + std::to_string(b));
    if (!apply_lin(H, hb).empty()) rep.fail("H^2 != 0 at " + std::to_string(b));
    if (apply_lin(pi, db) != apply_lin(dS, pi(b))) rep.fail("pi not a chain map at " + std::to_string(b));
  }
  return rep;
}

}  // namespace

Reduction reduce_complex(const std::vector<Chain>& d0, const std::vector<Bigrading>& gr, bool check_steps) {
  const int N = static_cast<int>(d0.size());
  std::vector<Chain> d = d0, iota(N), pi(N), H(N);
  std::vector<std::set<int>> in(N), pi_in(N);
  for (int a = 0; a < N; ++a) {
    for (const auto& [k, v] : d[a]) in[k].insert(a);
    iota[a] = {{a, 1}};
    pi[a] = {{a, 1}};
    pi_in[a].insert(a);
  }
  std::vector<char> alive(N, 1);
  auto d_axpy = [&](int a, const Int& f, const Chain& v) {
    for (const auto& [k, c] : v) {
      chain_add(d[a], k, f * c);
      if (d[a].count(k)) in[k].insert(a);
      else in[k].erase(a);
    }
  };
  auto pi_axpy = [&](int m, const Int& f, const Chain& v) {
    for (const auto& [k, c] : v) {
      chain_add(pi[m], k, f * c);
      if (pi[m].count(k)) pi_in[k].insert(m);
      else pi_in[k].erase(m);
    }
  };
  using Key = std::tuple<int, int, int>;
  auto key = [&](int x) { return Key{gr[x].h, gr[x].q2, x}; };
  std::set<Key> cand;
  for (int x = 0; x < N; ++x) cand.insert(key(x));
  Reduction R;
  while (!cand.empty()) {
    int x = std::get<2>(*cand.begin());
    cand.erase(cand.begin());
    if (!alive[x]) continue;
    int y = -1;
    for (const auto& [k, v] : d[x])
      if (abs(v) == 1) {
        y = k;
        break;
      }
    if (y < 0) continue;
    int u = d[x].at(y).get_si();
    std::map<int, Chain> before;
    if (check_steps) {
      std::set<int> touched{x, y};
      for (int a : in[y]) {
        touched.insert(a);
        touched.insert(in[a].begin(), in[a].end());
      }
      touched.insert(in[x].begin(), in[x].end());
      for (int b : touched) before.emplace(b, d[b]);
    }
    Chain dx = d[x];
    Chain rest = dx;
    rest.erase(y);
    std::vector<int> preds(in[y].begin(), in[y].end());
    for (int a : preds) {
      if (a == x) continue;
      Int f = -d[a].at(y) * u;
      d_axpy(a, f, dx);
      chain_axpy(iota[a], f, iota[x]);
      cand.insert(key(a));
    }
    std::vector<int> py(pi_in[y].begin(), pi_in[y].end());
    for (int m : py) {
      Int p = pi[m].at(y);
      chain_axpy(H[m], -u * p, iota[x]);
      pi_axpy(m, -u * p, rest);
      pi_axpy(m, -p, Chain{{y, 1}});
    }
    std::vector<int> px(pi_in[x].begin(), pi_in[x].end());
    for (int m : px) pi_axpy(m, -pi[m].at(x), Chain{{x, 1}});
    for (int z : {x, y}) {
      std::vector<int> ps(in[z].begin(), in[z].end());
      for (int b : ps) d_axpy(b, -d[b].at(z), Chain{{z, 1}});
      d_axpy(z, -1, Chain(d[z]));
      alive[z] = 0;
    }
    R.log.push_back({x, y, u});
    if (check_steps) {
      // rows outside the touched set have identity iota, pi and zero H
      std::vector<int> big, small;
      for (const auto& [b, row] : before) {
        big.push_back(b);
        if (alive[b]) small.push_back(b);
      }
      auto coef_y = [&](int a) -> Int {
        auto r = before.find(a);
        if (r == before.end()) return 0;
        auto it = r->second.find(y);
        return it == r->second.end() ? Int(0) : it->second;
      };
      LinMap dB = [&](int b) { return before.at(b); };
      LinMap dS = [&](int b) { return d[b]; };
      LinMap io = [&](int a) {
        Chain r{{a, 1}};
        chain_add(r, x, -coef_y(a) * u);
        return r;
      };
      LinMap pr = [&](int b) -> Chain {
        if (b == x) return {};
        if (b == y) return chain_scaled(rest, -u);
        return {{b, 1}};
      };
      LinMap h = [&](int b) -> Chain { return b == y ? Chain{{x, -u}} : Chain{}; };
      auto rep = check_sdr(big, dB, small, dS, io, pr, h);
      if (!rep.ok) throw std::logic_error("cancellation step identities: " + rep.first_failure);
    }
  }
  std::vector<int> to_reduced(N, -1);
  for (int a = 0; a < N; ++a)
    if (alive[a]) {
      to_reduced[a] = static_cast<int>(R.survivors.size());
      R.survivors.push_back(a);
    }
  auto remap = [&](const Chain& c) {
    Chain r;
    for (const auto& [k, v] : c) r.emplace(to_reduced[k], v);
    return r;
  };
  for (int a : R.survivors) {
    R.d.push_back(remap(d[a]));
    R.iota.push_back(iota[a]);
  }
  for (int m = 0; m < N; ++m) R.pi.push_back(remap(pi[m]));
  R.H = std::move(H);
  return R;
}

CheckReport check_reduction(const std::vector<Chain>& d, const Reduction& R) {
  std::vector<int> big(d.size()), small(R.survivors.size());
  for (size_t i = 0; i < big.size(); ++i) big[i] = static_cast<int>(i);
  for (size_t i = 0; i < small.size(); ++i) small[i] = static_cast<int>(i);
  return check_sdr(
      big, [&](int b) { return d[b]; }, small, [&](int s) { return R.d[s]; }, [&](int s) { return R.iota[s]; },
      [&](int b) { return R.pi[b]; }, [&](int b) { return R.H[b]; });
}

SimplifiedA::SimplifiedA(const AModule& M, Reduction R) : M_(M), R_(std::move(R)) {}

Chain SimplifiedA::apply_H(const Chain& v) const {
  Chain r;
  for (const auto& [k, c] : v) chain_axpy(r, c, R_.H[k]);
  return r;
}

Chain SimplifiedA::apply_pi(const Chain& v) const {
  Chain r;
  for (const auto& [k, c] : v) chain_axpy(r, c, R_.pi[k]);
  return r;
}

Chain SimplifiedA::apply_iota(const Chain& v) const {
  Chain r;
  for (const auto& [k, c] : v) chain_axpy(r, c, R_.iota[k]);
  return r;
}

Chain SimplifiedA::sigma(const Chain& v0, const std::vector<int>& as) const {
  const int len = static_cast<int>(as.size());
  std::vector<int> tail(len + 1, 0);
  for (int l = len - 1; l >= 0; --l) tail[l] = tail[l + 1] + letter_deg(as[l]);
  const int imax = M_.max_arity() + 1;
  std::function<Chain(const Chain&, int)> rec = [&](const Chain& v, int p) {
    Chain out;
    for (int i = 2; i <= imax && p + i - 1 <= len; ++i) {
      int e = p + i - 1;
      Chain t = M_.act(v, std::vector<int>(as.begin() + p, as.begin() + e));
      if (t.empty()) continue;
      int s = parity_sign(static_cast<long long>(i) * tail[e] + static_cast<long long>(i - 1) * (len - e));
      if (e == len) {
        chain_axpy(out, s, t);
      } else {
        Chain h = apply_H(t);
        if (!h.empty()) chain_axpy(out, s * parity_sign(tail[e]), rec(h, e));
      }
    }
    return out;
  };
  return rec(v0, 0);
}

Chain SimplifiedA::act(int x, const std::vector<int>& as) const {
  if (as.empty()) return R_.d[x];
  const auto& B = algebra().basis();
  for (int b : as)
    if (B[b].word.empty()) {
      if (as.size() == 1 && B[b].src == idem(x)) return {{x, 1}};
      return {};
    }
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find({x, as});
    if (it != cache_.end()) return it->second;
  }
  Chain r = formula_act(x, as);
  std::lock_guard<std::mutex> lock(mu_);
  cache_[{x, as}] = r;
  return r;
}

Chain SimplifiedA::formula_act(int x, const std::vector<int>& as) const {
  return apply_pi(sigma(R_.iota[x], as));
}

namespace {
int total_deg(const Algebra& A, const std::vector<int>& as) {
  int t = 0;
  for (int b : as) t += A.basis()[b].gr.h;
  return t;
}
}  // namespace

Chain SimplifiedA::pi_n(int m, const std::vector<int>& as) const {
  if (as.empty()) return R_.pi[m];
  Chain h = chain_scaled(R_.H[m], parity_sign(total_deg(algebra(), as)));
  return chain_scaled(apply_pi(sigma(h, as)), parity_sign(static_cast<long long>(as.size())));
}

Chain SimplifiedA::omega_n(int x, const std::vector<int>& as) const {
  if (as.empty()) return R_.iota[x];
  return apply_H(sigma(R_.iota[x], as));
}

Chain SimplifiedA::lambda_n(int m, const std::vector<int>& as) const {
  if (as.empty()) return R_.H[m];
  Chain h = chain_scaled(R_.H[m], parity_sign(total_deg(algebra(), as)));
  return chain_scaled(apply_H(sigma(h, as)), parity_sign(static_cast<long long>(as.size())));
}

std::unique_ptr<SimplifiedA> simplify_typeA(const AModule& M, bool check_steps) {
  std::vector<Chain> d(M.size());
  std::vector<Bigrading> gr(M.size());
  for (int x = 0; x < M.size(); ++x) {
    d[x] = M.m1(x);
    gr[x] = M.grading(x);
  }
  return std::make_unique<SimplifiedA>(M, reduce_complex(d, gr, check_steps));
}

namespace {

// Multilinear evaluation of a map taking a generator and a word of basis letters.
using WordMap = std::function<Chain(int, const std::vector<int>&)>;

Chain eval(const WordMap& f, const Chain& xs, const std::vector<Chain>& as) {
  Chain out;
  std::vector<int> word(as.size());
  std::function<void(size_t, const Int&)> rec = [&](size_t k, const Int& coef) {
    if (k == as.size()) {
      for (const auto& [x, c] : xs) chain_axpy(out, coef * c, f(x, word));
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

std::vector<Chain> letters(const std::vector<int>& a, size_t from, size_t to) {
  std::vector<Chain> r;
  for (size_t l = from; l < to; ++l) r.push_back({{a[l], 1}});
  return r;
}

// Visits every composable word of non-idempotent basis letters starting at idempotent i, up to max_len.
void for_words(const Algebra& A, int i, int max_len, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<std::vector<int>> from(A.idempotents().size());
  for (int b = 0; b < static_cast<int>(A.basis().size()); ++b)
    if (!A.basis()[b].word.empty()) from[A.basis()[b].src].push_back(b);
  std::vector<int> w;
  std::function<void(int)> rec = [&](int at) {
    visit(w);
    if (static_cast<int>(w.size()) >= max_len) return;
    for (int b : from[at]) {
      w.push_back(b);
      rec(A.basis()[b].tgt);
      w.pop_back();
    }
  };
  rec(i);
}

}  // namespace

CheckReport verify_equivalence(const SimplifiedA& S, int n_max) {
  CheckReport rep;
  const auto& A = S.algebra();
  const auto& M = S.original();
  auto deg_sum = [&](const std::vector<int>& a, size_t from) {
    int t = 0;
    for (size_t l = from; l < a.size(); ++l) t += A.basis()[a[l]].gr.h;
    return t;
  };
  WordMap pi_f = [&](int m, const std::vector<int>& w) { return S.pi_n(m, w); };
  WordMap om_f = [&](int x, const std::vector<int>& w) { return S.omega_n(x, w); };
  WordMap la_f = [&](int m, const std::vector<int>& w) { return S.lambda_n(m, w); };
  WordMap m_f = [&](int m, const std::vector<int>& w) { return w.empty() ? M.m1(m) : M.act(m, w); };
  // (F * G)_n on (x, a)
  auto compose = [&](const WordMap& F, const WordMap& G, int x, const std::vector<int>& a) {
    int n = static_cast<int>(a.size()) + 1;
    Chain out;
    for (int j = 1; j <= n; ++j) {
      int i = n + 1 - j;
      Chain v = G(x, std::vector<int>(a.begin(), a.begin() + (j - 1)));
      if (v.empty()) continue;
      int s = parity_sign(static_cast<long long>(i + 1) * (j + 1) + static_cast<long long>(j + 1) * deg_sum(a, j - 1));
      chain_axpy(out, s, eval(F, v, letters(a, j - 1, a.size())));
    }
    return out;
  };
  for (int x = 0; x < S.size(); ++x)
    for_words(A, S.idem(x), n_max - 1, [&](const std::vector<int>& a) {
      Chain lhs = compose(pi_f, om_f, x, a);
      Chain expect = a.empty() ? Chain{{x, 1}} : Chain{};
      ++rep.checked;
      if (lhs != expect) rep.fail("Pi*Omega != I at " + S.label(x) + " arity " + std::to_string(a.size() + 1));
    });
  for (int m = 0; m < M.size(); ++m)
    for_words(A, M.idem(m), n_max - 1, [&](const std::vector<int>& a) {
      int n = static_cast<int>(a.size()) + 1;
      Chain lhs = compose(om_f, pi_f, m, a);
      if (a.empty()) chain_add(lhs, m, -1);
      Chain rhs;
      for (int j = 1; j <= n; ++j) {
        int i = n + 1 - j;
        int s = parity_sign(static_cast<long long>(i + 1) * j + static_cast<long long>(j) * deg_sum(a, j - 1));
        std::vector<int> head(a.begin(), a.begin() + (j - 1));
        Chain v = S.lambda_n(m, head);
        if (!v.empty()) chain_axpy(rhs, s, eval(m_f, v, letters(a, j - 1, a.size())));
        Chain w = m_f(m, head);
        if (!w.empty()) chain_axpy(rhs, s, eval(la_f, w, letters(a, j - 1, a.size())));
      }
      for (int j = 1; j <= 2; ++j)
        for (int k = 1; k + j - 1 <= n - 1; ++k) {
          int i = n + 1 - j;
          Chain mu = j == 1 ? A.d(a[k - 1]) : A.mul(a[k - 1], a[k]);
          if (mu.empty()) continue;
          std::vector<Chain> ins = letters(a, 0, k - 1);
          ins.push_back(mu);
          for (size_t l = k - 1 + j; l < a.size(); ++l) ins.push_back({{a[l], 1}});
          int s = parity_sign(static_cast<long long>(k) * (j + 1) + static_cast<long long>(j) * (i + 1) +
                              static_cast<long long>(j) * deg_sum(a, k - 1 + j));
          chain_axpy(rhs, s, eval(la_f, {{m, 1}}, ins));
        }
      ++rep.checked;
      if (lhs != rhs) rep.fail("Omega*Pi - I != boundary of Lambda at " + M.label(m) + " arity " + std::to_string(n));
    });
  return rep;
}

CheckReport verify_unital(const SimplifiedA& S) {
  CheckReport rep;
  const auto& A = S.algebra();
  for (int x = 0; x < S.size(); ++x) {
    int e = A.idem_basis(S.idem(x));
    ++rep.checked;
    if (S.formula_act(x, {e}) != Chain{{x, 1}}) rep.fail("unit does not act as identity at " + S.label(x));
    for_words(A, S.idem(x), 1, [&](const std::vector<int>& a) {
      if (a.empty()) return;
      int f = A.idem_basis(A.basis()[a[0]].tgt);
      ++rep.checked;
      if (!S.formula_act(x, {e, a[0]}).empty() || !S.formula_act(x, {a[0], f}).empty())
        rep.fail("higher action with a unit at " + S.label(x));
    });
  }
  return rep;
}

SimplifiedD simplify_typeD(const DModule& N, bool check_steps) {
  const auto& A = N.algebra();
  const int S = N.size();
  std::vector<Chain> d0(S);
  std::vector<std::vector<DTerm>> plus(S);
  std::vector<Bigrading> gr(S);
  for (int y = 0; y < S; ++y) {
    gr[y] = N.grading(y);
    for (const auto& t : N.delta(y)) {
      if (A.basis()[t.a].word.empty()) chain_add(d0[y], t.y, t.c);
      else plus[y].push_back(t);
    }
  }
  SimplifiedD out;
  out.reduction = reduce_complex(d0, gr, check_steps);
  const auto& R = out.reduction;
  auto& T = out.module;
  T.alg = &A;
  for (int z : R.survivors) {
    T.idems.push_back(N.idem(z));
    T.gradings.push_back(N.grading(z));
    T.parities.push_back(N.parity(z));
    T.labels.push_back(N.label(z));
  }
  using Terms = std::map<std::pair<int, int>, Int>;
  auto prune = [](Terms& t) { std::erase_if(t, [](const auto& kv) { return kv.second == 0; }); };
  for (int yb = 0; yb < static_cast<int>(R.survivors.size()); ++yb) {
    Terms acc;
    for (const auto& [z, c] : R.d[yb]) acc[{A.idem_basis(T.idems[z]), z}] += c;
    Terms cur;
    for (const auto& [z, c] : R.iota[yb])
      for (const auto& t : plus[z]) cur[{t.a, t.y}] += c * t.c;
    prune(cur);
    int guard = 0;
    while (!cur.empty()) {
      for (const auto& [k, c] : cur)
        for (const auto& [zb, p] : R.pi[k.second]) acc[{k.first, zb}] += c * p;
      Terms nxt;
      for (const auto& [k, c] : cur) {
        auto [a, z] = k;
        for (const auto& [w, h] : R.H[z]) {
          Int ch = c * h;
          for (const auto& t : plus[w])
            for (const auto& [b, cb] : A.mul(a, t.a)) nxt[{b, t.y}] += ch * t.c * cb;
          Int s = parity_sign(N.parity(w));
          for (const auto& [b, cb] : A.d(a)) nxt[{b, w}] += s * ch * cb;
        }
      }
      prune(nxt);
      cur = std::move(nxt);
      if (++guard > 2 * S + 2) throw AlgebraError("perturbation series does not terminate");
    }
    T.deltas.emplace_back();
    for (const auto& [k, v] : acc)
      if (v != 0) T.deltas.back().push_back({k.first, k.second, v});
  }
  return out;
}

}  // namespace ckh
