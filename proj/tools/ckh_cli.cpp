#include "ckh/io.hpp"
#include "ckh/links.hpp"
#include "ckh/pairing.hpp"
#include "ckh/simplify.hpp"
#include "ckh/suite.hpp"
#include "ckh/type_a.hpp"
#include "ckh/type_d.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace ckh;

namespace {

enum Exit { kOk = 0, kError = 1, kParse = 2, kCap = 3, kVerify = 4, kOracle = 5 };

struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct OracleFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct JobConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::string left, right;
  int n = 1;
  bool simplify = false;
  bool homology = false;
  bool against_oracle = false;
  bool audit = false;
  std::string output;
  std::string golden = std::string(CKH_DATA_DIR) + "/golden";
  int cap = 20;
  int max_word = 2;
};

// Positional key=value arguments, e.g. n=1 left=a.tangle right=b.tangle.
void absorb_positionals(JobConfig& cfg, const std::vector<std::string>& args) {
  for (const auto& a : args) {
    auto eq = a.find('=');
    if (eq == std::string::npos) {
      cfg.inputs.push_back(a);
      continue;
    }
    std::string k = a.substr(0, eq), v = a.substr(eq + 1);
    try {
      if (k == "n") cfg.n = std::stoi(v);
      else if (k == "left") cfg.left = v;
      else if (k == "right") cfg.right = v;
      else if (k == "out") cfg.output = v;
      else if (k == "cap") cfg.cap = std::stoi(v);
      else throw ParseError("unknown argument " + a);
    } catch (const std::logic_error&) {
      throw ParseError("bad value in " + a);
    }
  }
}

void emit(const JobConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + cfg.output);
  out << text;
}

TangleDiagram load_diagram(const std::string& path, int cap) {
  auto t = parse_tangle(read_diagram_file(path));
  if (t.crossing_count() > cap)
    throw CapError(path + ": " + std::to_string(t.crossing_count()) + " crossings exceed the cap " + std::to_string(cap));
  return t;
}

std::string single_input(const JobConfig& cfg, const std::string& fallback) {
  if (!fallback.empty()) return fallback;
  if (cfg.inputs.size() != 1) throw ParseError(cfg.command + " expects exactly one input file");
  return cfg.inputs[0];
}

int run_algebra(const JobConfig& cfg) {
  const auto& A = Algebra::get(cfg.n);
  if (!cfg.audit) {
    emit(cfg, to_text(algebra_json(A)));
    return kOk;
  }
  std::ostringstream os;
  os << "algebra n=" << A.n() << "\n";
  os << "idempotents: " << A.idempotents().size() << "\n";
  os << "generators: " << A.generators().size() << "\n";
  std::map<std::string, int> kinds;
  for (int g = 0; g < static_cast<int>(A.generators().size()); ++g) {
    const auto& G = A.generators()[g];
    if (A.n() == 1)
      os << "  " << A.gen_name(g) << " (" << G.gr.h << "," << q2_string(G.gr.q2) << ")\n";
    kinds[A.gen_name(g).substr(0, 2)]++;
  }
  if (A.n() != 1)
    for (const auto& [k, c] : kinds) os << "  " << k << ": " << c << "\n";
  os << "basis: " << A.basis().size() << "\n";
  os << "e_right grading: (0,-1) used; alternative reading (0,-1/2)\n";
  long products = 0;
  for (int a = 0; a < static_cast<int>(A.basis().size()); ++a)
    for (int b = 0; b < static_cast<int>(A.basis().size()); ++b)
      if (!A.basis()[a].word.empty() && !A.basis()[b].word.empty() && A.basis()[a].tgt == A.basis()[b].src &&
          !A.mul(a, b).empty())
        ++products;
  os << "nonzero products of non-idempotent basis elements: " << products << "\n";
  long dnz = 0;
  for (int b = 0; b < static_cast<int>(A.basis().size()); ++b) dnz += !A.d(b).empty();
  os << "basis elements with nonzero differential: " << dnz << (dnz == 0 ? " (d = 0)" : "") << "\n";
  auto rep = verify_algebra(A);
  os << "consistency: " << (rep.ok ? "ok" : "FAILED: " + rep.first_failure) << " (" << rep.checked << " checks)\n";
  emit(cfg, os.str());
  if (!rep.ok) throw VerificationFailure(rep.first_failure);
  return kOk;
}

int run_type_a(const JobConfig& cfg) {
  auto t = load_diagram(single_input(cfg, cfg.left), cfg.cap);
  if (t.side != HalfSide::Inside) throw ParseError("type-a expects an inside tangle");
  TangleComplex T(t, cfg.cap);
  TypeA M(T);
  if (!cfg.simplify) {
    emit(cfg, to_text(typeA_json(M, cfg.max_word)));
    return kOk;
  }
  auto S = simplify_typeA(M);
  auto j = typeA_json(*S, cfg.max_word);
  j["reduction_log"] = reduction_log_json(S->reduction(), [&](int x) { return M.label(x); });
  emit(cfg, to_text(j));
  return kOk;
}

int run_type_d(const JobConfig& cfg) {
  auto t = load_diagram(single_input(cfg, cfg.right), cfg.cap);
  if (t.side != HalfSide::Outside) throw ParseError("type-d expects an outside tangle");
  TangleComplex T(t, cfg.cap);
  TypeD D(T);
  if (!cfg.simplify) {
    emit(cfg, to_text(typeD_json(D)));
    return kOk;
  }
  auto S = simplify_typeD(D);
  auto j = typeD_json(S.module);
  j["reduction_log"] = reduction_log_json(S.reduction, [&](int y) { return D.label(y); });
  emit(cfg, to_text(j));
  return kOk;
}

int run_pair(const JobConfig& cfg) {
  std::string lp = cfg.left, rp = cfg.right;
  if (lp.empty() && rp.empty() && cfg.inputs.size() == 2) lp = cfg.inputs[0], rp = cfg.inputs[1];
  if (lp.empty() || rp.empty()) throw ParseError("pair needs left=<inside tangle> and right=<outside tangle>");
  auto in = load_diagram(lp, cfg.cap), out = load_diagram(rp, cfg.cap);
  if (in.side != HalfSide::Inside || out.side != HalfSide::Outside)
    throw ParseError("pair expects an inside tangle on the left and an outside tangle on the right");
  if (in.n != out.n) throw ParseError("paired tangles have different n");
  if (in.crossing_count() + out.crossing_count() > cfg.cap) throw CapError("total crossing count exceeds the cap");
  TangleComplex Tin(in, cfg.cap), Tout(out, cfg.cap);
  TypeA M(Tin);
  TypeD D(Tout);
  std::unique_ptr<SimplifiedA> SA;
  SimplifiedD SD;
  BoxComplex B;
  if (cfg.simplify) {
    SA = simplify_typeA(M);
    SD = simplify_typeD(D);
    B = box(*SA, SD.module);
  } else {
    B = box(M, D);
  }
  if (!is_differential(B.complex)) throw VerificationFailure("box differential does not square to zero");
  auto H = bigraded_homology(B.complex);
  emit(cfg, to_text(cfg.homology ? homology_json(H) : complex_json(B.complex)));
  if (cfg.against_oracle) {
    KhovanovOracle O(in, out, cfg.cap);
    auto cmp = compare_tables(bigraded_homology(O.complex()), H);
    if (!cmp.ok) throw OracleFailure("homology differs from the oracle: " + cmp.first_failure);
    if (!cfg.simplify) {
      auto iso = compare_with_oracle(B, Tin, Tout, O);
      if (!iso.ok) throw OracleFailure("box complex differs from the oracle: " + iso.first_failure);
    }
    std::cerr << "oracle: match\n";
  }
  return kOk;
}

int run_homology(const JobConfig& cfg) {
  auto path = single_input(cfg, "");
  if (std::filesystem::path(path).extension() == ".json") {
    emit(cfg, to_text(homology_json(bigraded_homology(complex_from_json(read_json_file(path))))));
    return kOk;
  }
  auto closed = load_diagram(path, cfg.cap);
  if (closed.n != 0) throw ParseError("homology expects a closed diagram (n=0) or a complex file");
  auto s = balanced_split(closed);
  emit(cfg, to_text(homology_json(pair_homology(s.inside, s.outside, cfg.simplify, cfg.cap))));
  return kOk;
}

int run_oracle(const JobConfig& cfg) {
  auto closed = load_diagram(single_input(cfg, ""), cfg.cap);
  if (closed.n != 0) throw ParseError("oracle expects a closed diagram (n=0)");
  auto s = split_at(closed, 0);
  KhovanovOracle O(s.inside, s.outside, cfg.cap);
  emit(cfg, to_text(cfg.homology ? homology_json(bigraded_homology(O.complex())) : complex_json(O.complex())));
  return kOk;
}

int run_verify(const JobConfig& cfg) {
  auto dir = single_input(cfg, "");
  if (!std::filesystem::is_directory(dir)) throw ParseError(dir + " is not a directory");
  SuiteOptions opt;
  opt.crossing_cap = cfg.cap;
  bool structural = true, oracle = true;
  json report = {{"schema", "ckh.verify-report"}, {"version", kSchemaVersion}};
  json links = json::array();
  for (const auto& L : load_corpus(dir)) {
    auto closed = parse_tangle(L.word);
    if (closed.crossing_count() > cfg.cap) throw CapError(L.name + " exceeds the crossing cap");
    json jl = {{"name", L.name}, {"splits", json::array()}};
    long checks = 0;
    int nsplits = 0;
    std::string first;
    for (const auto& s : axis_splits(closed, 2)) {
      auto r = verify_split(L.name, s, opt);
      ++nsplits;
      json js = {{"cut", r.cut}, {"n", r.n}, {"ok", r.ok()}, {"checks", json::array()}};
      for (const auto& e : r.entries) {
        checks += e.report.checked;
        json je = {{"name", e.name}, {"ok", e.report.ok}, {"checked", e.report.checked}};
        if (!e.report.ok) {
          je["failure"] = e.report.first_failure;
          if (first.empty()) first = "cut " + std::to_string(r.cut) + ": " + e.name + ": " + e.report.first_failure;
          bool oracle_check = e.name.find("oracle") != std::string::npos;
          (oracle_check ? oracle : structural) = false;
        }
        js["checks"].push_back(je);
      }
      jl["splits"].push_back(js);
    }
    std::cout << L.name << ": " << nsplits << " splits, " << checks << " checks, "
              << (first.empty() ? "ok" : "FAILED " + first) << "\n";
    links.push_back(jl);
  }
  report["links"] = links;
  json goldens = json::array();
  if (!cfg.golden.empty() && std::filesystem::is_directory(cfg.golden)) {
    for (const auto& g : load_golden(cfg.golden)) {
      auto closed = parse_tangle(g.diagram);
      std::string first;
      int nsplits = 0;
      for (const auto& s : axis_splits(closed, 2)) {
        ++nsplits;
        for (bool simp : {false, true}) {
          auto c = compare_tables(g.table, pair_homology(s.inside, s.outside, simp, cfg.cap));
          if (!c.ok && first.empty()) first = "cut " + std::to_string(s.cut) + ": " + c.first_failure;
        }
      }
      std::cout << "golden " << g.name << ": " << nsplits << " splits, " << (first.empty() ? "ok" : "FAILED " + first)
                << "\n";
      if (!first.empty()) oracle = false;
      goldens.push_back({{"name", g.name}, {"ok", first.empty()}});
    }
  }
  report["golden"] = goldens;
  report["ok"] = structural && oracle;
  if (!cfg.output.empty()) emit(cfg, to_text(report));
  if (!structural) throw VerificationFailure("invariant suite failed");
  if (!oracle) throw OracleFailure("oracle or golden table mismatch");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Khovanov homology by pairing type A and type D tangle structures"};
  app.require_subcommand(1);
  JobConfig cfg;
  app.add_option("--cap", cfg.cap, "crossing cap")->check(CLI::PositiveNumber);
  std::vector<std::string> args;
  auto common = [&](CLI::App* sub, bool with_simplify) {
    sub->add_option("args", args, "input files and key=value arguments");
    sub->add_option("-o,--output", cfg.output, "output file (default stdout)");
    if (with_simplify) sub->add_flag("--simplify", cfg.simplify, "reduce by cancellation first");
    return sub;
  };
  auto* alg = common(app.add_subcommand("algebra", "build and dump the algebra"), false);
  alg->add_option("-n", cfg.n, "number of arcs on the axis");
  alg->add_flag("--audit", cfg.audit, "print a human-readable audit");
  auto* ta = common(app.add_subcommand("type-a", "type A structure of an inside tangle"), true);
  ta->add_option("--max-word", cfg.max_word, "longest algebra word dumped for higher actions");
  common(app.add_subcommand("type-d", "type D structure of an outside tangle"), true);
  auto* pr = common(app.add_subcommand("pair", "box tensor product of an inside and an outside tangle"), true);
  pr->add_option("--left", cfg.left, "inside tangle file");
  pr->add_option("--right", cfg.right, "outside tangle file");
  pr->add_flag("--homology", cfg.homology, "print homology instead of the complex");
  pr->add_flag("--against-oracle", cfg.against_oracle, "compare with the Khovanov complex of the glued diagram");
  common(app.add_subcommand("homology", "homology of a closed diagram or a complex file"), true);
  auto* orc = common(app.add_subcommand("oracle", "Khovanov complex of a closed diagram"), false);
  orc->add_flag("--homology", cfg.homology, "print homology instead of the complex");
  auto* ver = common(app.add_subcommand("verify", "run the invariant suites on every .link file in a directory"), false);
  ver->add_option("--golden", cfg.golden, "directory of golden homology tables (empty to skip)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  try {
    absorb_positionals(cfg, args);
    if (cfg.command == "algebra") return run_algebra(cfg);
    if (cfg.command == "type-a") return run_type_a(cfg);
    if (cfg.command == "type-d") return run_type_d(cfg);
    if (cfg.command == "pair") return run_pair(cfg);
    if (cfg.command == "homology") return run_homology(cfg);
    if (cfg.command == "oracle") return run_oracle(cfg);
    if (cfg.command == "verify") return run_verify(cfg);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const CapError& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kCap;
  } catch (const OracleFailure& e) {
    std::cerr << "oracle mismatch: " << e.what() << "\n";
    return kOracle;
  } catch (const OrientationMismatch& e) {
    std::cerr << "oracle mismatch: " << e.what() << "\n";
    return kOracle;
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kVerify;
  } catch (const DifferentialError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kVerify;
  } catch (const AlgebraError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kVerify;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
