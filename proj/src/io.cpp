#include "ckh/io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace ckh {

namespace {

json header(const std::string& schema) { return json{{"schema", schema}, {"version", kSchemaVersion}}; }

json coef(const Int& c) {
  if (c.fits_slong_p()) return c.get_si();
  return c.get_str();
}

Int coef_from(const json& j) {
  if (j.is_string()) return Int(j.get<std::string>());
  return Int(j.get<long>());
}

void put_grading(json& o, Bigrading g) {
  o["h"] = g.h;
  o["q"] = q2_string(g.q2);
  o["q2"] = g.q2;
}

Bigrading get_grading(const json& o) {
  Bigrading g;
  g.h = o.at("h").get<int>();
  g.q2 = o.contains("q2") ? o.at("q2").get<int>() : parse_q2(o.at("q").get<std::string>());
  return g;
}

void require_schema(const json& j, const std::string& schema) {
  if (!j.is_object() || j.value("schema", "") != schema) throw ParseError("expected schema " + schema);
  if (j.value("version", 0) != kSchemaVersion) throw ParseError("unsupported " + schema + " version");
}

const char* kind_name(GenKind k) {
  switch (k) {
    case GenKind::DecRight: return "eR";
    case GenKind::DecLeft: return "eL";
    case GenKind::BridgeRight: return "bR";
    case GenKind::BridgeLeft: return "bL";
  }
  return "?";
}

// act on a word of generators, expanded letter by letter into basis coordinates
Chain act_on_generators(const AModule& M, int x, const std::vector<int>& gens) {
  const auto& A = M.algebra();
  Chain r;
  std::vector<int> word(gens.size());
  std::function<void(size_t, Int)> rec = [&](size_t i, Int c) {
    if (i == gens.size()) {
      chain_axpy(r, c, M.act(x, word));
      return;
    }
    for (const auto& [b, v] : A.word_coords({gens[i]})) {
      word[i] = b;
      rec(i + 1, c * v);
    }
  };
  rec(0, 1);
  return r;
}

}  // namespace

int parse_q2(const std::string& q) {
  try {
    size_t slash = q.find('/');
    if (slash == std::string::npos) return 2 * std::stoi(q);
    if (q.substr(slash + 1) != "2") throw ParseError("q must be an integer or a half-integer: " + q);
    int num = std::stoi(q.substr(0, slash));
    if (num % 2 == 0) throw ParseError("half-integer q with even numerator: " + q);
    return num;
  } catch (const std::logic_error&) {
    throw ParseError("bad q value: " + q);
  }
}

json algebra_json(const Algebra& A) {
  json j = header("ckh.algebra");
  j["n"] = A.n();
  json idems = json::array();
  for (int i = 0; i < static_cast<int>(A.idempotents().size()); ++i) {
    const auto& I = A.idempotents()[i];
    const auto& L = A.links()[I.link];
    idems.push_back({{"index", i}, {"left", L.left}, {"right", L.right}, {"sigma", I.sigma}});
  }
  j["idempotents"] = idems;
  json gens = json::array();
  for (int g = 0; g < static_cast<int>(A.generators().size()); ++g) {
    const auto& G = A.generators()[g];
    json o{{"index", g}, {"name", A.gen_name(g)}, {"kind", kind_name(G.kind)}, {"source", G.src}, {"target", G.tgt}};
    put_grading(o, G.gr);
    gens.push_back(o);
  }
  j["generators"] = gens;
  const int nb = static_cast<int>(A.basis().size());
  json basis = json::array();
  std::map<std::tuple<int, int, int, int>, int> blocks;
  for (int b = 0; b < nb; ++b) {
    const auto& B = A.basis()[b];
    json o{{"index", b}, {"name", A.basis_name(b)}, {"source", B.src}, {"target", B.tgt}, {"word", B.word}};
    put_grading(o, B.gr);
    basis.push_back(o);
    blocks[{B.src, B.tgt, B.gr.h, B.gr.q2}]++;
  }
  j["basis"] = basis;
  json jb = json::array();
  for (const auto& [k, dim] : blocks) {
    auto [s, t, h, q2] = k;
    json o{{"source", s}, {"target", t}, {"dim", dim}};
    put_grading(o, {h, q2});
    jb.push_back(o);
  }
  j["blocks"] = jb;
  auto terms = [](const Chain& c) {
    json t = json::array();
    for (const auto& [k, v] : c) t.push_back({k, coef(v)});
    return t;
  };
  std::vector<std::vector<int>> from(A.idempotents().size());
  for (int b = 0; b < nb; ++b)
    if (!A.basis()[b].word.empty()) from[A.basis()[b].src].push_back(b);
  json mul = json::array();
  for (int a = 0; a < nb; ++a) {
    if (A.basis()[a].word.empty()) continue;
    for (int b : from[A.basis()[a].tgt]) {
      auto p = A.mul(a, b);
      if (!p.empty()) mul.push_back({a, b, terms(p)});
    }
  }
  j["multiplication"] = mul;
  json d = json::array();
  for (int b = 0; b < nb; ++b)
    if (!A.d(b).empty()) d.push_back({b, terms(A.d(b))});
  j["differential"] = d;
  return j;
}

json typeA_json(const AModule& M, int max_word) {
  const auto& A = M.algebra();
  json j = header("ckh.type-a");
  j["n"] = A.n();
  json gens = json::array();
  for (int x = 0; x < M.size(); ++x) {
    json o{{"index", x}, {"key", M.label(x)}, {"idempotent", M.idem(x)}};
    put_grading(o, M.grading(x));
    gens.push_back(o);
  }
  j["generators"] = gens;
  json m1 = json::array();
  for (int x = 0; x < M.size(); ++x)
    for (const auto& [y, c] : M.m1(x)) m1.push_back({x, y, coef(c)});
  j["m1"] = m1;
  std::vector<std::vector<int>> gens_from(A.idempotents().size());
  for (int g = 0; g < static_cast<int>(A.generators().size()); ++g) gens_from[A.generators()[g].src].push_back(g);
  json m2 = json::array();
  for (int x = 0; x < M.size(); ++x)
    for (int g : gens_from[M.idem(x)])
      for (const auto& [y, c] : act_on_generators(M, x, {g}))
        m2.push_back({{"source", x}, {"algebra", A.gen_name(g)}, {"target", y}, {"coefficient", coef(c)}});
  j["m2"] = m2;
  json higher = json::array();
  int top = std::min(max_word, M.max_arity());
  for (int x = 0; x < M.size(); ++x) {
    std::vector<int> word;
    std::function<void(int)> rec = [&](int at) {
      if (static_cast<int>(word.size()) >= 2) {
        std::vector<std::string> names;
        for (int g : word) names.push_back(A.gen_name(g));
        for (const auto& [y, c] : act_on_generators(M, x, word))
          higher.push_back({{"arity", word.size() + 1}, {"source", x}, {"algebra", names}, {"target", y},
                            {"coefficient", coef(c)}});
      }
      if (static_cast<int>(word.size()) == top) return;
      for (int g : gens_from[at]) {
        word.push_back(g);
        rec(A.generators()[g].tgt);
        word.pop_back();
      }
    };
    rec(M.idem(x));
  }
  j["higher"] = higher;
  return j;
}

json typeD_json(const DModule& N) {
  const auto& A = N.algebra();
  json j = header("ckh.type-d");
  j["n"] = A.n();
  json gens = json::array();
  for (int y = 0; y < N.size(); ++y) {
    json o{{"index", y}, {"key", N.label(y)}, {"idempotent", N.idem(y)}, {"parity", N.parity(y)}};
    put_grading(o, N.grading(y));
    gens.push_back(o);
  }
  j["generators"] = gens;
  json delta = json::array();
  for (int y = 0; y < N.size(); ++y) {
    auto terms = N.delta(y);
    std::sort(terms.begin(), terms.end(), [](const DTerm& a, const DTerm& b) { return std::tie(a.y, a.a) < std::tie(b.y, b.a); });
    for (const auto& t : terms)
      delta.push_back({{"source", y}, {"algebra", A.basis_name(t.a)}, {"coefficient", coef(t.c)}, {"target", t.y}});
  }
  j["delta"] = delta;
  return j;
}

json reduction_log_json(const Reduction& R, const std::function<std::string(int)>& label) {
  json log = json::array();
  for (const auto& c : R.log) log.push_back({{"x", label(c.x)}, {"y", label(c.y)}, {"unit", c.u}});
  return log;
}

json complex_json(const BigradedComplex& C) {
  json j = header("ckh.complex");
  json gens = json::array();
  for (int i = 0; i < C.size(); ++i) {
    json o{{"index", i}, {"key", C.labels[i]}};
    put_grading(o, C.grading[i]);
    gens.push_back(o);
  }
  j["generators"] = gens;
  json d = json::array();
  for (int i = 0; i < C.size(); ++i)
    for (const auto& [k, v] : C.d[i]) d.push_back({i, k, coef(v)});
  j["differential"] = d;
  return j;
}

BigradedComplex complex_from_json(const json& j) {
  require_schema(j, "ckh.complex");
  BigradedComplex C;
  try {
    for (const auto& g : j.at("generators")) C.add(get_grading(g), g.value("key", ""));
    for (const auto& t : j.at("differential")) {
      int s = t.at(0).get<int>(), k = t.at(1).get<int>();
      if (s < 0 || s >= C.size() || k < 0 || k >= C.size()) throw ParseError("differential index out of range");
      chain_add(C.d[s], k, coef_from(t.at(2)));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed complex: ") + e.what());
  }
  return C;
}

json homology_json(const HomologyTable& t) {
  json j = header("ckh.homology");
  json rows = json::array();
  for (const auto& [g, hg] : t) {
    json tor = json::array();
    for (const auto& f : hg.torsion) tor.push_back(coef(f));
    rows.push_back({{"h", g.h}, {"q", q2_string(g.q2)}, {"free_rank", hg.free_rank}, {"torsion", tor}});
  }
  j["table"] = rows;
  return j;
}

HomologyTable homology_from_json(const json& j) {
  require_schema(j, "ckh.homology");
  HomologyTable t;
  try {
    for (const auto& r : j.at("table")) {
      Bigrading g{r.at("h").get<int>(), parse_q2(r.at("q").get<std::string>())};
      HomologyGroup hg;
      hg.free_rank = r.value("free_rank", 0);
      for (const auto& f : r.value("torsion", json::array())) hg.torsion.push_back(coef_from(f));
      std::sort(hg.torsion.begin(), hg.torsion.end());
      if (t.count(g)) throw ParseError("duplicate bidegree in homology table");
      if (hg.free_rank != 0 || !hg.torsion.empty()) t[g] = hg;
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed homology table: ") + e.what());
  }
  return t;
}

GoldenTable golden_from_json(const json& j) {
  require_schema(j, "ckh.golden");
  GoldenTable g;
  try {
    g.name = j.at("name").get<std::string>();
    g.diagram = j.at("diagram").get<std::string>();
    g.table = homology_from_json(j.at("homology"));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed golden file: ") + e.what());
  }
  return g;
}

std::vector<GoldenTable> load_golden(const std::string& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<GoldenTable> r;
  for (const auto& f : files) r.push_back(golden_from_json(read_json_file(f.string())));
  return r;
}

std::string read_diagram_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::string line, word;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (!word.empty()) word += " ";
    word += line;
  }
  return word;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string to_text(const json& j) { return j.dump(2) + "\n"; }

}  // namespace ckh
