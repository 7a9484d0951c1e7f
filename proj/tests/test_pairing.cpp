#include "ckh/links.hpp"
#include "ckh/pairing.hpp"
#include "ckh/simplify.hpp"
#include "ckh/suite.hpp"
#include "ckh/type_d.hpp"

#include <doctest.h>

#include <random>

using namespace ckh;

namespace {

const char* kLeftTrefoil = "outside n=0: cup(1), cup(3), crossneg(2), crossneg(2), crossneg(2), cap(1), cap(1)";

std::vector<TangleDiagram> small_outsides() {
  std::vector<TangleDiagram> r;
  for (const auto& orient : std::vector<std::vector<int>>{{1, -1}, {-1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}})
    for (auto& t : outside_closures(orient, 3)) r.push_back(std::move(t));
  return r;
}

}  // namespace

TEST_CASE("crossingless outside unknot half") {
  TangleComplex T(parse_tangle("outside n=1: cap(1)"));
  TypeD D(T);
  const auto& A = D.algebra();
  REQUIRE(D.size() == 2);
  int plus = D.grading(0).q2 > D.grading(1).q2 ? 0 : 1, minus = 1 - plus;
  REQUIRE(D.delta(plus).size() == 1);
  const auto& t = D.delta(plus)[0];
  CHECK(t.y == minus);
  CHECK(t.c == 1);
  REQUIRE(A.basis()[t.a].word.size() == 1);
  CHECK(A.generators()[A.basis()[t.a].word[0]].kind == GenKind::DecLeft);
  CHECK(D.delta(minus).empty());
}

TEST_CASE("delta terms are graded and idempotent compatible") {
  for (const auto& L : load_corpus(std::string(CKH_DATA_DIR) + "/links"))
    for (const auto& s : axis_splits(parse_tangle(L.word), 2)) {
      CAPTURE(L.name);
      CAPTURE(s.cut);
      TangleComplex T(s.outside);
      TypeD D(T);
      const auto& A = D.algebra();
      bool ok = true;
      for (int y = 0; y < D.size(); ++y)
        for (const auto& t : D.delta(y)) {
          const auto& b = A.basis()[t.a];
          ok = ok && b.src == D.idem(y) && b.tgt == D.idem(t.y);
          ok = ok && b.gr + D.grading(t.y) == D.grading(y) + Bigrading{1, 0};
        }
      CHECK(ok);
    }
}

TEST_CASE("structure equation on every small outside tangle") {
  auto outs = small_outsides();
  CHECK(outs.size() > 100);
  for (const auto& o : outs) {
    CAPTURE(o.to_string());
    TangleComplex T(o);
    TypeD D(T);
    auto r = verify_typeD_equation(D);
    CHECK_MESSAGE(r.ok, r.first_failure);
  }
}

TEST_CASE("fault-injected sign in delta is detected") {
  TangleComplex T(parse_tangle("outside n=2: cross(2), cross(2), cap(1), cap(1)"));
  TypeD D(T);
  REQUIRE(verify_typeD_equation(D).ok);
  auto base = to_table(D);
  int detected = 0, tried = 0;
  for (int y = 0; y < base.size(); ++y)
    for (size_t i = 0; i < base.deltas[y].size(); ++i) {
      auto bad = base;
      bad.deltas[y][i].c = -bad.deltas[y][i].c;
      ++tried;
      detected += !verify_typeD_equation(bad).ok;
    }
  CHECK(tried > 0);
  CHECK(detected > 0);
}

TEST_CASE("delta iterates") {
  auto sp = split_at(parse_tangle(kLeftTrefoil), 1);
  TangleComplex T(sp.outside);
  TypeD D(T);
  for (int y = 0; y < D.size(); ++y) {
    auto d0 = delta_iterate(D, y, 0);
    REQUIRE(d0.size() == 1);
    CHECK(d0[0].word.empty());
    CHECK(d0[0].y == y);
    CHECK(d0[0].c == 1);
    auto d1 = delta_iterate(D, y, 1);
    CHECK(d1.size() == D.delta(y).size());
    for (const auto& t : d1) {
      bool found = false;
      for (const auto& u : D.delta(y)) found = found || (t.word == std::vector<int>{u.a} && t.y == u.y && t.c == u.c);
      CHECK(found);
    }
    CHECK(delta_iterate(D, y, D.size() + 1).empty());
  }
  auto S = simplify_typeD(D);
  for (int y = 0; y < S.module.size(); ++y) CHECK(delta_iterate(S.module, y, 2).empty());
}

TEST_CASE("delta iterates vanish past the generator count on the corpus") {
  for (const auto& L : load_corpus(std::string(CKH_DATA_DIR) + "/links")) {
    auto closed = parse_tangle(L.word);
    if (closed.crossing_count() > 4) continue;
    for (const auto& s : axis_splits(closed, 2)) {
      TangleComplex T(s.outside);
      TypeD D(T);
      for (int y = 0; y < D.size(); ++y) CHECK(delta_iterate(D, y, D.size() + 1).empty());
    }
  }
}

TEST_CASE("unknot half paired with the reduced left trefoil") {
  auto sp = split_at(parse_tangle(kLeftTrefoil), 1);
  TangleComplex Tin(sp.inside), Tout(sp.outside);
  TypeA M(Tin);
  TypeD N(Tout);
  auto S = simplify_typeD(N);
  auto B = box(M, S.module);
  CHECK(B.complex.size() == 6);
  int entries = 0;
  for (int g = 0; g < B.complex.size(); ++g)
    for (const auto& [h, c] : B.complex.d[g]) {
      ++entries;
      auto [x, y] = B.pairs[g];
      auto [x2, y2] = B.pairs[h];
      CHECK(abs(c) == 2);
      CHECK(M.grading(x) == Bigrading{0, 1});
      CHECK(S.module.grading(y) == Bigrading{-3, -15});
      CHECK(M.grading(x2) == Bigrading{0, -1});
      CHECK(S.module.grading(y2) == Bigrading{-2, -13});
    }
  CHECK(entries == 1);
}

TEST_CASE("reduced Hopf tangle paired with the reduced left trefoil") {
  TangleComplex Th(parse_tangle("inside n=1: cup(2,-), cross(1), cross(1), cap(2), cap(1)"));
  auto sp = split_at(parse_tangle(kLeftTrefoil), 1);
  TangleComplex Tout(sp.outside);
  TypeA M(Th);
  TypeD N(Tout);
  auto SA = simplify_typeA(M);
  auto SD = simplify_typeD(N);
  auto B = box(*SA, SD.module);
  CHECK(B.complex.size() == 12);
  int entries = 0;
  for (int g = 0; g < B.complex.size(); ++g)
    for (const auto& [h, c] : B.complex.d[g]) {
      ++entries;
      CHECK(abs(c) == 2);
    }
  CHECK(entries == 2);
  HomologyTable expect;
  for (Bigrading g : {Bigrading{-3, -16}, {-2, -8}, {-1, -8}, {0, -4}, {2, 4}, {2, 8}}) expect[g].free_rank = 1;
  expect[{0, 0}].free_rank = 2;
  expect[{-2, -12}].torsion = {2};
  expect[{0, -4}].torsion = {2};
  auto cmp = compare_tables(expect, bigraded_homology(B.complex));
  CHECK_MESSAGE(cmp.ok, cmp.first_failure);
}

TEST_CASE("module without actions pairs to d_APS tensor identity") {
  auto sp = split_at(parse_tangle(kLeftTrefoil), 3);
  TangleComplex Tin(sp.inside), Tout(sp.outside);
  TypeA M(Tin);
  TypeD N(Tout);
  TableAModule bare;
  bare.alg = &M.algebra();
  for (int x = 0; x < M.size(); ++x) {
    bare.idems.push_back(M.idem(x));
    bare.gradings.push_back(M.grading(x));
    bare.labels.push_back(M.label(x));
    bare.d.push_back(M.m1(x));
  }
  auto B = box(bare, N);
  for (int g = 0; g < B.complex.size(); ++g) {
    auto [x, y] = B.pairs[g];
    Chain expect;
    for (const auto& [x2, c] : M.m1(x))
      for (int h = 0; h < B.complex.size(); ++h)
        if (B.pairs[h] == std::pair{x2, y}) chain_add(expect, h, c * parity_sign(N.parity(y)));
    for (const auto& t : N.delta(y))
      if (N.algebra().basis()[t.a].word.empty())
        for (int h = 0; h < B.complex.size(); ++h)
          if (B.pairs[h] == std::pair{x, t.y}) chain_add(expect, h, t.c);
    CHECK(B.complex.d[g] == expect);
  }
}

TEST_CASE("box generators match the Khovanov cube per bidegree") {
  for (const auto& L : load_corpus(std::string(CKH_DATA_DIR) + "/links")) {
    auto closed = parse_tangle(L.word);
    if (closed.crossing_count() > 5) continue;
    for (const auto& s : axis_splits(closed, 2)) {
      CAPTURE(L.name);
      CAPTURE(s.cut);
      TangleComplex Tin(s.inside), Tout(s.outside);
      TypeA M(Tin);
      TypeD N(Tout);
      auto B = box(M, N);
      KhovanovOracle O(s.inside, s.outside);
      std::map<Bigrading, int> a, b;
      for (auto g : B.complex.grading) a[g]++;
      for (auto g : O.complex().grading) b[g]++;
      CHECK(a == b);
      CHECK(is_differential(B.complex));
      auto iso = compare_with_oracle(B, Tin, Tout, O);
      CHECK_MESSAGE(iso.ok, iso.first_failure);
    }
  }
}

TEST_CASE("homology does not depend on where the diagram is split") {
  for (const auto& L : load_corpus(std::string(CKH_DATA_DIR) + "/links")) {
    auto closed = parse_tangle(L.word);
    if (closed.crossing_count() > 6) continue;
    CAPTURE(L.name);
    auto splits = axis_splits(closed, 2);
    REQUIRE(!splits.empty());
    auto ref = oracle_homology(splits[0].inside, splits[0].outside);
    for (const auto& s : splits) {
      CHECK(oracle_homology(s.inside, s.outside) == ref);
      CHECK(pair_homology(s.inside, s.outside, true) == ref);
    }
  }
}

TEST_CASE("unknot oracle") {
  auto sp = split_at(parse_tangle("outside n=0: cup(1), cap(1)"), 0);
  HomologyTable expect;
  expect[{0, 2}].free_rank = 1;
  expect[{0, -2}].free_rank = 1;
  CHECK(oracle_homology(sp.inside, sp.outside) == expect);
}

TEST_CASE("mismatched n is rejected by the oracle") {
  auto in = parse_tangle("inside n=1: cap(1)");
  auto out = parse_tangle("outside n=2: cap(1), cap(1)");
  CHECK_THROWS(KhovanovOracle(in, out));
}
