#include "doctest.h"

#include "ckh/algebra.hpp"

using namespace ckh;

TEST_CASE("matchings are counted by Catalan numbers") {
  CHECK(enumerate_matchings(0).size() == 1);
  CHECK(enumerate_matchings(1).size() == 1);
  CHECK(enumerate_matchings(2).size() == 2);
  CHECK(enumerate_matchings(3).size() == 5);
  CHECK(enumerate_matchings(4).size() == 14);
  for (const auto& m : enumerate_matchings(4)) CHECK(is_noncrossing(m));
}

TEST_CASE("surgery twice is the identity") {
  for (int n = 1; n <= 4; ++n)
    for (const auto& m : enumerate_matchings(n))
      for (const auto& g : bridges_of(m)) {
        auto s = surgery(m, g);
        CHECK(is_noncrossing(s.m));
        auto back = surgery(s.m, s.dagger);
        CHECK(back.m == m);
        CHECK(back.dagger == g);
      }
}

TEST_CASE("sharing bridges push forward two to one onto other bridges") {
  for (int n = 2; n <= 4; ++n)
    for (const auto& m : enumerate_matchings(n))
      for (const auto& g : bridges_of(m)) {
        auto s = surgery(m, g);
        std::map<Bridge, int> hits;
        for (const auto& e : bridges_of(m))
          if (classify(m, g, e) == BridgeClass::Sharing) hits[pushforward(m, g, e)]++;
        std::map<Bridge, int> expect;
        for (const auto& e : bridges_of(s.m))
          if (classify(s.m, s.dagger, e) == BridgeClass::Other) expect[e] = 2;
        CHECK(hits == expect);
      }
}

TEST_CASE("idempotent counts") {
  CHECK(Algebra::get(1).idempotents().size() == 2);
  CHECK(Algebra::get(2).idempotents().size() == 12);
}

TEST_CASE("n=1 algebra is four-dimensional with zero products") {
  const auto& A = Algebra::get(1);
  CHECK(A.basis().size() == 4);
  int nr = 0, nl = 0;
  for (const auto& g : A.generators()) {
    if (g.kind == GenKind::DecRight) {
      ++nr;
      CHECK(g.gr == Bigrading{0, -2});
    }
    if (g.kind == GenKind::DecLeft) {
      ++nl;
      CHECK(g.gr == Bigrading{1, 2});
    }
  }
  CHECK(nr == 1);
  CHECK(nl == 1);
  for (int a = 0; a < 4; ++a) {
    CHECK(A.d(a).empty());
    for (int b = 0; b < 4; ++b) {
      if (A.basis()[a].word.empty() || A.basis()[b].word.empty()) continue;
      CHECK(A.mul(a, b).empty());
    }
  }
}

namespace {

void check_algebra(const Algebra& A) {
  int nb = static_cast<int>(A.basis().size());
  // idempotent orthogonality and unit laws
  for (int i = 0; i < static_cast<int>(A.idempotents().size()); ++i)
    for (int j = 0; j < static_cast<int>(A.idempotents().size()); ++j) {
      auto p = A.mul(A.idem_basis(i), A.idem_basis(j));
      if (i == j) CHECK(p == Chain{{A.idem_basis(i), 1}});
      else CHECK(p.empty());
    }
  // relations vanish
  for (const auto& R : A.base_relations()) {
    Chain s;
    for (const auto& [w, c] : R.terms) chain_axpy(s, c, A.word_coords(w));
    CHECK_MESSAGE(s.empty(), R.family);
    Chain ds;
    for (const auto& [w, c] : R.terms)
      for (const auto& [w2, c2] : A.d_word(w)) chain_axpy(ds, c * c2, A.word_coords(w2));
    CHECK_MESSAGE(ds.empty(), R.family);
  }
  // d^2 = 0
  for (int b = 0; b < nb; ++b) CHECK(A.d(A.d(b)).empty());
  // associativity and Leibniz with the word-tail sign
  for (int a = 0; a < nb; ++a)
    for (int b = 0; b < nb; ++b) {
      auto ab = A.mul(a, b);
      if (ab.empty()) continue;
      int gb = A.basis()[b].gr.h;
      Chain lhs = A.d(ab);
      Chain rhs = chain_scaled(A.mul(A.d(Chain{{a, 1}}), Chain{{b, 1}}), parity_sign(gb));
      chain_axpy(rhs, 1, A.mul(Chain{{a, 1}}, A.d(Chain{{b, 1}})));
      CHECK(lhs == rhs);
      for (int c = 0; c < nb; ++c) {
        auto l = A.mul(ab, Chain{{c, 1}});
        auto r = A.mul(Chain{{a, 1}}, A.mul(b, c));
        CHECK(l == r);
      }
    }
}

}  // namespace

TEST_CASE("algebra consistency n=1,2") {
  check_algebra(Algebra::get(1));
  check_algebra(Algebra::get(2));
  for (int n : {1, 2}) {
    auto r = verify_algebra(Algebra::get(n));
    CHECK_MESSAGE(r.ok, r.first_failure);
  }
}

TEST_CASE("algebra size cap") {
  CHECK_THROWS_AS(Algebra::get(kAlgebraCap + 1), CapError);
}
