#include "ckh/suite.hpp"

#include "ckh/pairing.hpp"
#include "ckh/simplify.hpp"
#include "ckh/type_d.hpp"

#include <cstdlib>

namespace ckh {

bool SplitResult::ok() const {
  if (!oracle_match) return false;
  for (const auto& e : entries)
    if (!e.report.ok) return false;
  return true;
}

namespace {

CheckReport single(bool ok, const std::string& what) {
  CheckReport r;
  r.checked = 1;
  if (!ok) r.fail(what);
  return r;
}

CheckReport d_squared(const std::vector<Chain>& d, const std::string& what) {
  CheckReport r;
  for (size_t x = 0; x < d.size(); ++x) {
    ++r.checked;
    Chain dd;
    for (const auto& [y, c] : d[x]) chain_axpy(dd, c, d[y]);
    if (!dd.empty()) r.fail(what + " at " + std::to_string(x));
  }
  return r;
}

}  // namespace

SplitResult verify_split(const std::string& link, const AxisSplit& s, const SuiteOptions& opt) {
  SplitResult out;
  out.link = link;
  out.cut = s.cut;
  out.n = s.inside.n;
  auto add = [&](const std::string& name, CheckReport r) { out.entries.push_back({name, std::move(r)}); };

  TangleComplex Tin(s.inside, opt.crossing_cap), Tout(s.outside, opt.crossing_cap);
  TypeA M(Tin);
  TypeD D(Tout);
  add("inside d_APS^2 = 0", d_squared(d_aps(Tin), "d_APS^2"));
  add("outside d_APS^2 = 0", d_squared(d_aps(Tout), "d_APS^2"));
  add("m2 respects relations", verify_typeA_relations(M));
  add("type A A-infinity relations", verify_ainf(M, opt.ainf_arity));
  add("type D structure equation", verify_typeD_equation(D));

  auto B = box(M, D);
  add("box differential squares to zero", single(is_differential(B.complex), "d_box^2 != 0"));
  KhovanovOracle O(s.inside, s.outside, opt.crossing_cap);
  auto iso = compare_with_oracle(B, Tin, Tout, O);
  auto oracle = bigraded_homology(O.complex());

  CheckReport steps;
  std::unique_ptr<SimplifiedA> SA;
  SimplifiedD SD;
  try {
    SA = simplify_typeA(M, opt.check_steps);
    SD = simplify_typeD(D, opt.check_steps);
    steps.checked = static_cast<long>(SA->reduction().log.size() + SD.reduction.log.size());
  } catch (const std::logic_error& e) {
    steps.fail(e.what());
    add("cancellation step identities", steps);
    out.oracle_match = iso.ok;
    return out;
  }
  add("cancellation step identities", steps);
  std::vector<Chain> m1(M.size());
  for (int x = 0; x < M.size(); ++x) m1[x] = M.m1(x);
  add("type A composite reduction", check_reduction(m1, SA->reduction()));
  std::vector<Chain> d0(D.size());
  for (int y = 0; y < D.size(); ++y)
    for (const auto& t : D.delta(y))
      if (D.algebra().basis()[t.a].word.empty()) chain_add(d0[y], t.y, t.c);
  add("type D composite reduction", check_reduction(d0, SD.reduction));
  add("reduced type A unital", verify_unital(*SA));
  add("reduced type A A-infinity relations", verify_ainf(*SA, opt.reduced_ainf_arity));
  add("reduction equivalence morphisms", verify_equivalence(*SA, opt.equivalence_arity));
  add("reduced type D structure equation", verify_typeD_equation(SD.module));

  auto SB = box(*SA, SD.module);
  add("reduced box differential squares to zero", single(is_differential(SB.complex), "d_box^2 != 0"));
  bool hom_ok = is_differential(SB.complex) && bigraded_homology(SB.complex) == oracle;
  auto mixed1 = box(*SA, D), mixed2 = box(M, SD.module);
  hom_ok = hom_ok && is_differential(mixed1.complex) && bigraded_homology(mixed1.complex) == oracle;
  hom_ok = hom_ok && is_differential(mixed2.complex) && bigraded_homology(mixed2.complex) == oracle;
  hom_ok = hom_ok && bigraded_homology(B.complex) == oracle;
  add("box chain isomorphic to the oracle", iso);
  add("homology equals the oracle", single(hom_ok, "homology differs from the oracle"));
  out.oracle_match = iso.ok && hom_ok;
  return out;
}

HomologyTable pair_homology(const TangleDiagram& inside, const TangleDiagram& outside, bool simplify, int crossing_cap) {
  TangleComplex Tin(inside, crossing_cap), Tout(outside, crossing_cap);
  TypeA M(Tin);
  TypeD D(Tout);
  if (!simplify) return bigraded_homology(box(M, D).complex);
  auto SA = simplify_typeA(M);
  auto SD = simplify_typeD(D);
  return bigraded_homology(box(*SA, SD.module).complex);
}

HomologyTable oracle_homology(const TangleDiagram& inside, const TangleDiagram& outside, int crossing_cap) {
  return bigraded_homology(KhovanovOracle(inside, outside, crossing_cap).complex());
}

AxisSplit balanced_split(const TangleDiagram& closed, int nmax) {
  auto splits = axis_splits(closed, nmax);
  if (splits.empty()) throw CapError("no split with at most " + std::to_string(nmax) + " arcs on the axis");
  const AxisSplit* best = &splits.front();
  auto score = [](const AxisSplit& s) { return std::abs(s.inside.crossing_count() - s.outside.crossing_count()); };
  for (const auto& s : splits)
    if (score(s) < score(*best)) best = &s;
  return *best;
}

CheckReport compare_tables(const HomologyTable& expected, const HomologyTable& got) {
  CheckReport r;
  auto describe = [](Bigrading g, const HomologyGroup* hg) {
    std::string s = "(" + std::to_string(g.h) + "," + q2_string(g.q2) + "): ";
    if (!hg) return s + "0";
    s += "Z^" + std::to_string(hg->free_rank);
    for (const auto& t : hg->torsion) s += " + Z/" + t.get_str();
    return s;
  };
  std::map<Bigrading, int> keys;
  for (const auto& [g, h] : expected) keys[g] = 1;
  for (const auto& [g, h] : got) keys[g] = 1;
  for (const auto& [g, unused] : keys) {
    ++r.checked;
    auto e = expected.find(g);
    auto o = got.find(g);
    const HomologyGroup* pe = e == expected.end() ? nullptr : &e->second;
    const HomologyGroup* po = o == got.end() ? nullptr : &o->second;
    if (pe && po && *pe == *po) continue;
    r.fail("expected " + describe(g, pe) + ", got " + describe(g, po));
  }
  return r;
}

}  // namespace ckh
