#include "ckh/type_d.hpp"

#include <bit>

namespace ckh {

namespace {

void push(std::map<std::pair<int, int>, Int>& acc, int a, int y, const Int& c) { acc[{a, y}] += c; }

}  // namespace

TypeD::TypeD(const TangleComplex& T) : T_(T) {
  if (T.side() != HalfSide::Outside) throw std::invalid_argument("type D needs an outside tangle");
  const auto& A = algebra();
  auto internal = d_aps(T);
  delta_.resize(T.states().size());
  for (int y = 0; y < size(); ++y) {
    const auto& s = T.states()[y];
    std::map<std::pair<int, int>, Int> acc;
    int I = A.idem_basis(s.idem);
    for (const auto& [z, c] : internal[y]) push(acc, I, z, c);
    for (int c = 0; c < T.diagram().crossing_count(); ++c) {
      if (s.rho >> c & 1u) continue;
      auto [F1, F2] = T.feet(s.rho, c);
      if (F1.is_free && F2.is_free) continue;
      Int sign = T.sign_after(s.rho, c);
      if (!F1.is_free && !F2.is_free && F1.idx != F2.idx) {
        Bridge br = make_bridge(F1.idx, F2.idx);
        auto sg = T.surger(s.rho, s.free_bits, c);
        for (int g : A.bridge_gens(s.idem, Side::Right, br)) {
          int tg = A.generators()[g].tgt;
          if (T.link_of(sg.rho, s.closure) != A.idempotents()[tg].link) throw std::logic_error("right bridge image");
          push(acc, A.gen_basis(g), T.state_index({sg.rho, s.closure, sg.carried, tg}), sign);
        }
        continue;
      }
      const auto& I2 = A.idempotents()[s.idem];
      if (!F1.is_free && !F2.is_free) {
        int C = T.cleaved_circle(s.rho, s.closure, F1.idx);
        if (!(I2.sigma >> C & 1u)) continue;
        int g = A.dec_gen(s.idem, GenKind::DecRight, C);
        auto sg = T.surger(s.rho, s.free_bits, c);
        push(acc, A.gen_basis(g),
             T.state_index({sg.rho, s.closure, sg.carried | 1u << sg.fresh.at(0), A.generators()[g].tgt}), sign);
      } else {
        const auto& Arc = F1.is_free ? F2 : F1;
        const auto& Fr = F1.is_free ? F1 : F2;
        int C = T.cleaved_circle(s.rho, s.closure, Arc.idx);
        if (!(I2.sigma >> C & 1u) || (s.free_bits >> Fr.idx & 1u)) continue;
        int g = A.dec_gen(s.idem, GenKind::DecRight, C);
        auto sg = T.surger(s.rho, s.free_bits, c);
        push(acc, A.gen_basis(g), T.state_index({sg.rho, s.closure, sg.carried, A.generators()[g].tgt}),
             sign);
      }
    }
    Int hs = parity_sign(T.raw_h(y));
    int li = A.idempotents()[s.idem].link;
    for (const auto& br : A.matchings().bridges(A.links()[li].left)) {
      int m2 = A.matchings().surgered(s.closure, br).first;
      for (int g : A.bridge_gens(s.idem, Side::Left, br)) {
        int tg = A.generators()[g].tgt;
        if (T.link_of(s.rho, m2) != A.idempotents()[tg].link) throw std::logic_error("left bridge image");
        push(acc, A.gen_basis(g), T.state_index({s.rho, m2, s.free_bits, tg}), hs);
      }
    }
    for (int C = 0; C < A.links()[li].circ.count; ++C) {
      int g = A.dec_gen(s.idem, GenKind::DecLeft, C);
      if (g < 0) continue;
      push(acc, A.gen_basis(g), T.state_index({s.rho, s.closure, s.free_bits, A.generators()[g].tgt}), hs);
    }
    for (const auto& [k, v] : acc)
      if (v != 0) delta_[y].push_back({k.first, k.second, v});
  }
}

CheckReport verify_typeD_equation(const DModule& N) {
  CheckReport rep;
  const auto& A = N.algebra();
  for (int y = 0; y < N.size(); ++y) {
    std::map<std::pair<int, int>, Int> acc;
    for (const auto& t1 : N.delta(y)) {
      for (const auto& t2 : N.delta(t1.y))
        for (const auto& [b, c] : A.mul(t1.a, t2.a)) acc[{b, t2.y}] += t1.c * t2.c * c;
      Int s = parity_sign(N.parity(t1.y));
      for (const auto& [b, c] : A.d(t1.a)) acc[{b, t1.y}] += s * t1.c * c;
    }
    ++rep.checked;
    for (const auto& [k, v] : acc)
      if (v != 0) {
        rep.fail("structure equation at " + N.label(y) + " coefficient of " + A.basis_name(k.first) + " (x) " +
                 N.label(k.second));
        break;
      }
  }
  return rep;
}

std::vector<DeltaTerm> delta_iterate(const DModule& N, int y, int k) {
  const auto& A = N.algebra();
  std::vector<DeltaTerm> cur{{{}, y, 1}};
  for (int step = 0; step < k; ++step) {
    std::map<std::pair<std::vector<int>, int>, Int> acc;
    for (const auto& t : cur)
      for (const auto& d : N.delta(t.y)) {
        if (k >= 2 && A.basis()[d.a].word.empty()) continue;
        auto w = t.word;
        w.push_back(d.a);
        acc[{w, d.y}] += t.c * d.c;
      }
    cur.clear();
    for (auto& [key, v] : acc)
      if (v != 0) cur.push_back({key.first, key.second, v});
  }
  return cur;
}

TableDModule to_table(const DModule& N) {
  TableDModule t;
  t.alg = &N.algebra();
  for (int y = 0; y < N.size(); ++y) {
    t.idems.push_back(N.idem(y));
    t.gradings.push_back(N.grading(y));
    t.parities.push_back(N.parity(y));
    t.labels.push_back(N.label(y));
    t.deltas.push_back(N.delta(y));
  }
  return t;
}

}  // namespace ckh
