#include "ckh/links.hpp"
#include "ckh/pairing.hpp"
#include "ckh/simplify.hpp"
#include "ckh/type_d.hpp"

#include <doctest.h>

#include <set>

using namespace ckh;

namespace {

struct Arrow {
  int x, b, y;
  Int c;
};

// All nonzero m_2 terms on non-idempotent basis letters.
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

bool single_generator(const Algebra& A, int b, GenKind kind) {
  const auto& w = A.basis()[b].word;
  return w.size() == 1 && A.generators()[w[0]].kind == kind;
}

long nonzero_m3(const AModule& M) {
  const auto& A = M.algebra();
  long n = 0;
  for (int x = 0; x < M.size(); ++x)
    for (int b = 0; b < static_cast<int>(A.basis().size()); ++b) {
      if (A.basis()[b].word.empty() || A.basis()[b].src != M.idem(x)) continue;
      for (int c = 0; c < static_cast<int>(A.basis().size()); ++c) {
        if (A.basis()[c].word.empty() || A.basis()[c].src != A.basis()[b].tgt) continue;
        if (!M.act(x, {b, c}).empty()) ++n;
      }
    }
  return n;
}

std::multiset<Bigrading> gradings(const AModule& M) {
  std::multiset<Bigrading> r;
  for (int x = 0; x < M.size(); ++x) r.insert(M.grading(x));
  return r;
}

std::vector<Chain> differential(const AModule& M) {
  std::vector<Chain> d(M.size());
  for (int x = 0; x < M.size(); ++x) d[x] = M.m1(x);
  return d;
}

// Generator bijection by idempotent and grading, then equality of all m_2 terms.
bool same_structure(const AModule& P, const AModule& Q) {
  if (P.size() != Q.size()) return false;
  std::map<std::pair<int, Bigrading>, int> at;
  for (int y = 0; y < Q.size(); ++y)
    if (!at.emplace(std::pair{Q.idem(y), Q.grading(y)}, y).second) return false;
  std::vector<int> to(P.size());
  for (int x = 0; x < P.size(); ++x) {
    auto it = at.find({P.idem(x), P.grading(x)});
    if (it == at.end()) return false;
    to[x] = it->second;
    if (!P.m1(x).empty() || !Q.m1(to[x]).empty()) return false;
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

const char* kSmallInside[] = {
    "inside n=1: cap(1)",
    "inside n=1: cross(1,+), cap(1)",
    "inside n=2: cap(2), cap(1)",
    "inside n=2: cross(2), cap(1), cap(1)",
    "inside n=2: cross(2), cross(2), cap(1), cap(1)",
    "inside n=2: cross(2), crossneg(2), cap(1), cap(1)",
    "inside n=2: cross(1), cross(2), cross(1), cap(1), cap(1)",
    "inside n=1: cup(2,-), cross(1), cross(1), cap(2), cap(1)",
    "inside n=2: cross(1), cross(3), cross(2), crossneg(2), cap(1), cap(1)",
};

// Five-crossing tangle whose reduction carries nonzero m_3.
const char* kHigher = "inside n=2: crossneg(2), cross(1), cross(2), cross(2), cap(3), crossneg(1), cup(3), cup(2), cap(3), cap(2), cap(1)";

}  // namespace

TEST_CASE("two-generator acyclic complex cancels to nothing") {
  std::vector<Chain> d{{{1, 1}}, {}};
  auto R = reduce_complex(d, {{0, 0}, {1, 0}}, true);
  CHECK(R.survivors.empty());
  CHECK(R.log.size() == 1);
  CHECK(check_reduction(d, R).ok);
}

TEST_CASE("non-unit entries survive cancellation") {
  std::vector<Chain> d{{{1, 2}}, {}};
  auto R = reduce_complex(d, {{0, 0}, {1, 0}});
  CHECK(R.survivors.size() == 2);
  CHECK(R.d[0] == Chain{{1, 2}});
}

TEST_CASE("structure with zero differential is unchanged") {
  TangleComplex T(parse_tangle("inside n=2: cap(2), cap(1)"));
  TypeA M(T);
  auto S = simplify_typeA(M);
  CHECK(S->size() == M.size());
  CHECK(S->reduction().log.empty());
  CHECK(same_structure(*S, M));
}

TEST_CASE("cancellation identities hold per step and for the composite") {
  for (const char* s : kSmallInside) {
    CAPTURE(s);
    TangleComplex T(parse_tangle(s));
    TypeA M(T);
    auto S = simplify_typeA(M, true);
    auto rep = check_reduction(differential(M), S->reduction());
    CHECK_MESSAGE(rep.ok, rep.first_failure);
  }
}

TEST_CASE("pivot order is lowest bigrading first and only unit pivots are used") {
  TangleComplex T(parse_tangle("inside n=2: cross(1), cross(2), cross(1), cap(1), cap(1)"));
  TypeA M(T);
  auto S = simplify_typeA(M);
  const auto& log = S->reduction().log;
  REQUIRE(!log.empty());
  for (const auto& c : log) {
    CHECK((c.u == 1 || c.u == -1));
    CHECK(M.grading(c.y).h == M.grading(c.x).h + 1);
  }
  CHECK(M.grading(log.front().x) <= M.grading(log.back().x));
  auto again = simplify_typeA(M);
  REQUIRE(again->reduction().log.size() == log.size());
  for (size_t i = 0; i < log.size(); ++i) CHECK(again->reduction().log[i].x == log[i].x);
}

TEST_CASE("reduced structures are strictly unital A-infinity modules") {
  for (const char* s : kSmallInside) {
    CAPTURE(s);
    TangleComplex T(parse_tangle(s));
    TypeA M(T);
    auto S = simplify_typeA(M);
    auto u = verify_unital(*S);
    CHECK_MESSAGE(u.ok, u.first_failure);
    auto a = verify_ainf(*S, 4);
    CHECK_MESSAGE(a.ok, a.first_failure);
  }
}

TEST_CASE("equivalence morphisms compose to the identity up to the homotopy") {
  for (const char* s : kSmallInside) {
    CAPTURE(s);
    TangleComplex T(parse_tangle(s));
    TypeA M(T);
    auto S = simplify_typeA(M);
    auto e = verify_equivalence(*S, 3);
    CHECK_MESSAGE(e.ok, e.first_failure);
  }
}

TEST_CASE("higher actions appear and satisfy the relations") {
  TangleComplex T(parse_tangle(kHigher));
  TypeA M(T);
  auto S = simplify_typeA(M);
  CHECK(nonzero_m3(*S) > 0);
  CHECK(check_reduction(differential(M), S->reduction()).ok);
  auto a = verify_ainf(*S, 4);
  CHECK_MESSAGE(a.ok, a.first_failure);
  auto e = verify_equivalence(*S, 4);
  CHECK_MESSAGE(e.ok, e.first_failure);
  // pairing with higher actions still reproduces the closed homology
  for (const auto& out : outside_closures(T.diagram().orient, 1)) {
    CAPTURE(out.to_string());
    TangleComplex To(out);
    TypeD N(To);
    auto D = simplify_typeD(N);
    auto B = box(*S, D.module);
    CHECK(is_differential(B.complex));
    CHECK(bigraded_homology(B.complex) == bigraded_homology(KhovanovOracle(T.diagram(), out).complex()));
  }
}

TEST_CASE("R_I reduces to the two-generator structure") {
  TangleComplex T(parse_tangle("inside n=1: cross(1,+), cap(1)"));
  TypeA M(T);
  auto S = simplify_typeA(M);
  REQUIRE(S->size() == 2);
  CHECK(gradings(*S) == std::multiset<Bigrading>{{0, 1}, {0, -1}});
  auto ar = arrows(*S);
  REQUIRE(ar.size() == 1);
  CHECK(single_generator(S->algebra(), ar[0].b, GenKind::DecRight));
  CHECK(S->grading(ar[0].x) == Bigrading{0, 1});
  CHECK(S->grading(ar[0].y) == Bigrading{0, -1});
  CHECK(ar[0].c == 1);
  CHECK(nonzero_m3(*S) == 0);
  TangleComplex U(parse_tangle("inside n=1: cap(1)"));
  TypeA MU(U);
  CHECK(same_structure(*S, MU));
}

TEST_CASE("R_II reduces to the crossingless matching with zero shift") {
  for (auto [twist, plain] : {std::pair{"inside n=2: cross(2), crossneg(2), cap(1), cap(1)", "inside n=2: cap(1), cap(1)"},
                              std::pair{"inside n=2: crossneg(2), cross(2), cap(1), cap(1)", "inside n=2: cap(1), cap(1)"},
                              std::pair{"inside n=2: cross(1), crossneg(1), cap(2), cap(1)", "inside n=2: cap(2), cap(1)"}}) {
    CAPTURE(twist);
    TangleComplex T(parse_tangle(twist)), U(parse_tangle(plain));
    CHECK(T.diagram().n_plus == 1);
    CHECK(T.diagram().n_minus == 1);
    TypeA M(T), MU(U);
    auto S = simplify_typeA(M);
    CHECK(same_structure(*S, MU));
    CHECK(nonzero_m3(*S) == 0);
  }
}

TEST_CASE("R_III sides agree against every small closure") {
  for (auto [before, after] :
       {std::pair{"inside n=2: cross(1), cross(2), cross(1), cap(1), cap(1)", "inside n=2: cross(2), cross(1), cross(2), cap(1), cap(1)"},
        std::pair{"inside n=2: crossneg(2), crossneg(3), crossneg(2), cap(1), cap(1)",
                  "inside n=2: crossneg(3), crossneg(2), crossneg(3), cap(1), cap(1)"}}) {
    CAPTURE(before);
    TangleComplex Tb(parse_tangle(before)), Ta(parse_tangle(after));
    REQUIRE(Tb.diagram().orient == Ta.diagram().orient);
    TypeA Mb(Tb), Ma(Ta);
    auto Sb = simplify_typeA(Mb), Sa = simplify_typeA(Ma);
    CHECK(gradings(*Sb) == gradings(*Sa));
    auto closures = outside_closures(Tb.diagram().orient, 2);
    CHECK(closures.size() > 10);
    for (const auto& out : closures) {
      CAPTURE(out.to_string());
      TangleComplex To(out);
      TypeD N(To);
      auto D = simplify_typeD(N);
      auto hb = bigraded_homology(box(*Sb, D.module).complex);
      CHECK(hb == bigraded_homology(box(*Sa, D.module).complex));
      CHECK(hb == bigraded_homology(KhovanovOracle(Tb.diagram(), out).complex()));
    }
  }
}

TEST_CASE("Hopf tangle reductions") {
  TangleComplex T(parse_tangle("inside n=1: cup(2,-), cross(1), cross(1), cap(2), cap(1)"));
  REQUIRE(T.diagram().n_plus == 2);
  TypeA M(T);
  auto S = simplify_typeA(M);
  CHECK(gradings(*S) == std::multiset<Bigrading>{{0, 3}, {0, 1}, {2, 11}, {2, 9}});
  auto ar = arrows(*S);
  REQUIRE(ar.size() == 2);
  for (const auto& a : ar) {
    CHECK(single_generator(S->algebra(), a.b, GenKind::DecRight));
    CHECK(S->grading(a.x).h == S->grading(a.y).h);
    CHECK(S->grading(a.x).q2 == S->grading(a.y).q2 + 2);
  }
  TangleComplex Tn(parse_tangle("inside n=1: cup(2), cross(1), cross(1), cap(2), cap(1)"));
  REQUIRE(Tn.diagram().n_minus == 2);
  TypeA Mn(Tn);
  auto Sn = simplify_typeA(Mn);
  CHECK(gradings(*Sn) == std::multiset<Bigrading>{{-2, -11}, {-2, -9}, {0, -3}, {0, -1}});
}

TEST_CASE("right trefoil type A reduces to the six-generator table") {
  auto sp = split_at(parse_tangle("outside n=0: cup(1), cup(3), cross(2), cross(2), cross(2), cap(1), cap(1)"), 6);
  TangleComplex T(sp.inside);
  TypeA M(T);
  auto S = simplify_typeA(M);
  CHECK(gradings(*S) == std::multiset<Bigrading>{{0, 5}, {2, 13}, {3, 17}, {0, 3}, {2, 11}, {3, 15}});
  int right = 0, left = 0;
  for (const auto& a : arrows(*S)) {
    if (single_generator(S->algebra(), a.b, GenKind::DecRight)) {
      ++right;
      CHECK(a.c == 1);
    } else {
      ++left;
      CHECK(single_generator(S->algebra(), a.b, GenKind::DecLeft));
      CHECK(S->grading(a.x) == Bigrading{2, 13});
      CHECK(S->grading(a.y) == Bigrading{3, 15});
      CHECK(abs(a.c) == 2);
    }
  }
  CHECK(right == 3);
  CHECK(left == 1);
}

TEST_CASE("left trefoil type D reduces to the six-generator table") {
  auto sp = split_at(parse_tangle("outside n=0: cup(1), cup(3), crossneg(2), crossneg(2), crossneg(2), cap(1), cap(1)"), 1);
  TangleComplex T(sp.outside);
  TypeD N(T);
  auto D = simplify_typeD(N, true);
  const auto& R = D.module;
  const auto& A = R.algebra();
  REQUIRE(R.size() == 6);
  std::map<Bigrading, int> at;
  for (int y = 0; y < R.size(); ++y) at[R.grading(y)] = y;
  for (Bigrading g : {Bigrading{-3, -17}, {-3, -15}, {-2, -13}, {-2, -11}, {0, -5}, {0, -3}}) CHECK(at.count(g));
  // y -> {(generator kind, target grading, coefficient)}
  using Row = std::set<std::tuple<int, Bigrading, long>>;
  auto row = [&](Bigrading g) {
    Row r;
    for (const auto& t : R.delta(at.at(g)))
      r.insert({static_cast<int>(A.generators()[A.basis()[t.a].word.at(0)].kind), R.grading(t.y), t.c.get_si()});
    return r;
  };
  int eR = static_cast<int>(GenKind::DecRight), eL = static_cast<int>(GenKind::DecLeft);
  CHECK(row({-3, -15}) == Row{{eR, {-2, -13}, 2}, {eL, {-3, -17}, 1}});
  CHECK(row({-2, -11}) == Row{{eL, {-2, -13}, -1}});
  CHECK(row({0, -3}) == Row{{eL, {0, -5}, -1}});
  CHECK(row({-3, -17}).empty());
  CHECK(row({-2, -13}).empty());
  CHECK(row({0, -5}).empty());
  CHECK(verify_typeD_equation(R).ok);
  for (int y = 0; y < R.size(); ++y) CHECK(delta_iterate(R, y, 2).empty());
  CHECK(check_reduction(
            [&] {
              std::vector<Chain> d(N.size());
              for (int y = 0; y < N.size(); ++y)
                for (const auto& t : N.delta(y))
                  if (A.basis()[t.a].word.empty()) chain_add(d[y], t.y, t.c);
              return d;
            }(),
            D.reduction)
            .ok);
}

TEST_CASE("crossingless outside half is unchanged by type D reduction") {
  TangleComplex T(parse_tangle("outside n=1: cap(1)"));
  TypeD N(T);
  auto D = simplify_typeD(N);
  CHECK(D.module.size() == N.size());
  for (int y = 0; y < N.size(); ++y) CHECK(D.module.delta(y).size() == N.delta(y).size());
}

TEST_CASE("fault-injected reduction is caught by the pairing oracle") {
  auto closed = parse_tangle("outside n=0: cup(1), cup(3), crossneg(2), crossneg(2), crossneg(2), cap(1), cap(1)");
  auto sp = split_at(closed, 1);
  TangleComplex Ti(sp.inside), To(sp.outside);
  TypeA M(Ti);
  TypeD N(To);
  auto D = simplify_typeD(N);
  auto truth = bigraded_homology(KhovanovOracle(sp.inside, sp.outside).complex());
  CHECK(bigraded_homology(box(M, D.module).complex) == truth);
  auto bad = D.module;
  bool changed = false;
  for (auto& row : bad.deltas)
    for (auto& t : row)
      if (abs(t.c) == 2 && !changed) {
        t.c = 1;
        changed = true;
      }
  REQUIRE(changed);
  auto B = box(M, bad);
  CHECK((!is_differential(B.complex) || bigraded_homology(B.complex) != truth));
}

TEST_CASE("simplified pairing matches the oracle on small corpus links") {
  for (const char* w : {"outside n=0: cup(1), cup(3), cross(2), cross(2), cap(1), cap(1)",
                        "outside n=0: cup(1), cup(3), cross(2), cross(2), crossneg(1), cross(2), cap(1), cap(1)"}) {
    CAPTURE(w);
    for (const auto& sp : axis_splits(parse_tangle(w), 2)) {
      TangleComplex Ti(sp.inside), To(sp.outside);
      TypeA M(Ti);
      TypeD N(To);
      auto S = simplify_typeA(M);
      auto D = simplify_typeD(N);
      auto truth = bigraded_homology(KhovanovOracle(sp.inside, sp.outside).complex());
      auto B = box(*S, D.module);
      CHECK(is_differential(B.complex));
      CHECK(bigraded_homology(B.complex) == truth);
      CHECK(bigraded_homology(box(M, D.module).complex) == truth);
      CHECK(bigraded_homology(box(*S, N).complex) == truth);
    }
  }
}
