#include "ckh/io.hpp"
#include "ckh/links.hpp"
#include "ckh/pairing.hpp"
#include "ckh/simplify.hpp"
#include "ckh/suite.hpp"
#include "ckh/type_a.hpp"
#include "ckh/type_d.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

using namespace ckh;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;

void criterion(int k, const char* title, double limit_s, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (o.ok && dt > limit_s) {
    o.ok = false;
    o.detail = "time limit exceeded";
  }
  if (!o.ok) ++failures;
  std::printf("criterion %d %s: %s [%.2fs / %.0fs]%s%s\n", k, title, o.ok ? "PASS" : "FAIL", dt, limit_s,
              o.detail.empty() ? "" : " ", o.detail.c_str());
  std::fflush(stdout);
}

struct Arrow {
  int x, b, y;
  Int c;
};

std::vector<Arrow> arrows(const AModule& M) {
  const auto& A = M.algebra();
  std::vector<Arrow> r;
  for (int x = 0; x < M.size(); ++x)
    for (int b = 0; b < static_cast<int>(A.basis().size()); ++b) {
      if (A.basis()[b].word.empty() || A.basis()[b].src != M.idem(x)) continue;
      for (const auto& [y, c] : M.act(x, {b})) r.push_back({x, b, y, c});
    }
  return r;
}

bool is_generator(const Algebra& A, int b, GenKind kind) {
  const auto& w = A.basis()[b].word;
  return w.size() == 1 && A.generators()[w[0]].kind == kind;
}

std::multiset<Bigrading> gradings(const AModule& M) {
  std::multiset<Bigrading> r;
  for (int x = 0; x < M.size(); ++x) r.insert(M.grading(x));
  return r;
}

bool zero_m1(const AModule& M) {
  for (int x = 0; x < M.size(); ++x)
    if (!M.m1(x).empty()) return false;
  return true;
}

// Matches generators by (idempotent, grading) and compares every m_2 term.
bool same_structure(const AModule& P, const AModule& Q) {
  if (P.size() != Q.size() || !zero_m1(P) || !zero_m1(Q)) return false;
  std::map<std::pair<int, Bigrading>, int> at;
  for (int y = 0; y < Q.size(); ++y)
    if (!at.emplace(std::pair{Q.idem(y), Q.grading(y)}, y).second) return false;
  std::vector<int> to(P.size());
  for (int x = 0; x < P.size(); ++x) {
    auto it = at.find({P.idem(x), P.grading(x)});
    if (it == at.end()) return false;
    to[x] = it->second;
  }
  const auto& A = P.algebra();
  for (int x = 0; x < P.size(); ++x)
    for (int b = 0; b < static_cast<int>(A.basis().size()); ++b) {
      Chain mapped;
      for (const auto& [y, c] : P.act(x, {b})) chain_add(mapped, to[y], c);
      if (mapped != Q.act(to[x], {b})) return false;
    }
  return true;
}

std::string str(Bigrading g) { return "(" + std::to_string(g.h) + "," + q2_string(g.q2) + ")"; }

GoldenTable golden(const std::string& name) {
  return golden_from_json(read_json_file(std::string(CKH_DATA_DIR) + "/golden/" + name + ".json"));
}

Outcome golden_on_all_splits(const std::string& name) {
  Outcome o;
  auto g = golden(name);
  int splits = 0;
  for (const auto& s : axis_splits(parse_tangle(g.diagram), 2)) {
    ++splits;
    auto c = compare_tables(g.table, pair_homology(s.inside, s.outside, true));
    o.require(c.ok, "cut " + std::to_string(s.cut) + ": " + c.first_failure);
  }
  o.require(splits > 0, "no splits");
  if (o.ok) o.detail = std::to_string(splits) + " splits";
  return o;
}

Outcome algebra_audit() {
  Outcome o;
  const auto& A = Algebra::get(1);
  o.require(A.idempotents().size() == 2, "idempotent count " + std::to_string(A.idempotents().size()));
  o.require(A.generators().size() == 2, "generator count " + std::to_string(A.generators().size()));
  int left = 0, right = 0;
  for (const auto& G : A.generators()) {
    if (G.kind == GenKind::DecLeft) {
      ++left;
      o.require(G.gr == Bigrading{1, 2}, "e_left at " + str(G.gr));
    }
    if (G.kind == GenKind::DecRight) {
      ++right;
      o.require(G.gr == Bigrading{0, -2}, "e_right at " + str(G.gr));
    }
  }
  o.require(left == 1 && right == 1, "expected one generator of each decoration kind");
  const int nb = static_cast<int>(A.basis().size());
  for (int a = 0; a < nb; ++a) {
    o.require(A.d(a).empty(), "nonzero differential on " + A.basis_name(a));
    for (int b = 0; b < nb; ++b)
      if (!A.basis()[a].word.empty() && !A.basis()[b].word.empty())
        o.require(A.mul(a, b).empty(), "nonzero product " + A.basis_name(a) + "*" + A.basis_name(b));
  }
  return o;
}

Outcome algebra_consistency() {
  Outcome o;
  long checks = 0;
  for (int n : {0, 1, 2}) {
    auto r = verify_algebra(Algebra::get(n));
    o.require(r.ok, "n=" + std::to_string(n) + ": " + r.first_failure);
    checks += r.checked;
  }
  if (o.ok) o.detail = std::to_string(checks) + " checks";
  return o;
}

Outcome reidemeister() {
  Outcome o;
  {
    TangleComplex T(parse_tangle("inside n=1: cross(1,+), cap(1)"));
    TypeA M(T);
    auto S = simplify_typeA(M);
    o.require(S->size() == 2, "R_I: " + std::to_string(S->size()) + " generators");
    o.require(gradings(*S) == std::multiset<Bigrading>{{0, 1}, {0, -1}}, "R_I gradings");
    o.require(zero_m1(*S), "R_I: nonzero m_1");
    auto ar = arrows(*S);
    o.require(ar.size() == 1, "R_I: " + std::to_string(ar.size()) + " actions");
    if (ar.size() == 1) {
      o.require(is_generator(S->algebra(), ar[0].b, GenKind::DecRight), "R_I: action is not e_right");
      o.require(S->grading(ar[0].x) == Bigrading{0, 1} && S->grading(ar[0].y) == Bigrading{0, -1}, "R_I: arrow direction");
      o.require(abs(ar[0].c) == 1, "R_I: coefficient");
    }
  }
  for (auto [twist, plain] : {std::pair{"inside n=2: cross(2), crossneg(2), cap(1), cap(1)", "inside n=2: cap(1), cap(1)"},
                              std::pair{"inside n=2: cross(1), crossneg(1), cap(2), cap(1)", "inside n=2: cap(2), cap(1)"}}) {
    TangleComplex T(parse_tangle(twist)), U(parse_tangle(plain));
    TypeA M(T), MU(U);
    auto S = simplify_typeA(M);
    o.require(same_structure(*S, MU), std::string("R_II: ") + twist);
  }
  int closures_checked = 0;
  for (auto [before, after] :
       {std::pair{"inside n=2: cross(1), cross(2), cross(1), cap(1), cap(1)", "inside n=2: cross(2), cross(1), cross(2), cap(1), cap(1)"},
        std::pair{"inside n=2: crossneg(2), crossneg(3), crossneg(2), cap(1), cap(1)",
                  "inside n=2: crossneg(3), crossneg(2), crossneg(3), cap(1), cap(1)"}}) {
    TangleComplex Tb(parse_tangle(before)), Ta(parse_tangle(after));
    TypeA Mb(Tb), Ma(Ta);
    auto Sb = simplify_typeA(Mb), Sa = simplify_typeA(Ma);
    o.require(gradings(*Sb) == gradings(*Sa), std::string("R_III graded counts: ") + before);
    for (const auto& out : outside_closures(Tb.diagram().orient, 2)) {
      TangleComplex To(out);
      TypeD N(To);
      auto D = simplify_typeD(N);
      o.require(bigraded_homology(box(*Sb, D.module).complex) == bigraded_homology(box(*Sa, D.module).complex),
                "R_III pairing against " + out.to_string());
      ++closures_checked;
    }
  }
  o.require(closures_checked > 0, "no closures");
  if (o.ok) o.detail = "R_III against " + std::to_string(closures_checked) + " closures";
  return o;
}

Outcome hopf() {
  Outcome o;
  TangleComplex T(parse_tangle("inside n=1: cup(2,-), cross(1), cross(1), cap(2), cap(1)"));
  o.require(T.diagram().n_plus == 2, "tangle is not positive");
  TypeA M(T);
  auto S = simplify_typeA(M);
  o.require(gradings(*S) == std::multiset<Bigrading>{{0, 3}, {0, 1}, {2, 11}, {2, 9}}, "gradings");
  o.require(zero_m1(*S), "nonzero m_1");
  auto ar = arrows(*S);
  o.require(ar.size() == 2, std::to_string(ar.size()) + " actions");
  for (const auto& a : ar) o.require(is_generator(S->algebra(), a.b, GenKind::DecRight), "action is not e_right");
  return o;
}

Outcome left_trefoil() {
  Outcome o;
  auto g = golden("trefoil-left");
  auto in = parse_tangle(read_diagram_file(std::string(CKH_DATA_DIR) + "/tangles/unknot-half.tangle"));
  auto out = parse_tangle(read_diagram_file(std::string(CKH_DATA_DIR) + "/tangles/trefoil.tangle"));
  auto c = compare_tables(g.table, pair_homology(in, out, true));
  o.require(c.ok, c.first_failure);
  return o;
}

Outcome corpus_oracle() {
  Outcome o;
  int splits = 0;
  for (const auto& L : load_corpus(std::string(CKH_DATA_DIR) + "/links")) {
    auto closed = parse_tangle(L.word);
    o.require(closed.crossing_count() <= 8, L.name + " has more than 8 crossings");
    for (const auto& s : axis_splits(closed, 2)) {
      ++splits;
      std::string at = L.name + " cut " + std::to_string(s.cut) + ": ";
      TangleComplex Tin(s.inside), Tout(s.outside);
      TypeA M(Tin);
      TypeD D(Tout);
      KhovanovOracle O(s.inside, s.outside);
      auto iso = compare_with_oracle(box(M, D), Tin, Tout, O);
      o.require(iso.ok, at + iso.first_failure);
      auto SA = simplify_typeA(M);
      auto SD = simplify_typeD(D);
      auto c = compare_tables(bigraded_homology(O.complex()), bigraded_homology(box(*SA, SD.module).complex));
      o.require(c.ok, at + c.first_failure);
    }
  }
  if (o.ok) o.detail = std::to_string(splits) + " splits";
  return o;
}

Outcome structural() {
  Outcome o;
  int splits = 0;
  long checks = 0;
  for (const auto& L : load_corpus(std::string(CKH_DATA_DIR) + "/links"))
    for (const auto& s : axis_splits(parse_tangle(L.word), 2)) {
      ++splits;
      auto r = verify_split(L.name, s);
      for (const auto& e : r.entries) {
        checks += e.report.checked;
        o.require(e.report.ok, L.name + " cut " + std::to_string(s.cut) + ": " + e.name + ": " + e.report.first_failure);
      }
    }
  if (o.ok) o.detail = std::to_string(splits) + " splits, " + std::to_string(checks) + " checks";
  return o;
}

}  // namespace

int main() {
  criterion(1, "algebra n=1 audit", 1, algebra_audit);
  criterion(2, "algebra consistency n<=2", 60, algebra_consistency);
  criterion(3, "Reidemeister reductions", 60, reidemeister);
  criterion(4, "positive Hopf tangle reduction", 10, hopf);
  criterion(5, "left trefoil homology", 5, left_trefoil);
  criterion(6, "Hopf # left trefoil homology", 60, [] { return golden_on_all_splits("hopf-sum-trefoil-left"); });
  criterion(7, "left trefoil # right trefoil homology", 60, [] { return golden_on_all_splits("trefoil-left-sum-right"); });
  criterion(8, "oracle equivalence on the corpus", 120, corpus_oracle);
  criterion(9, "structural suites", 600, structural);
  std::printf("%d of 9 criteria passed\n", 9 - failures);
  return failures == 0 ? 0 : 1;
}
