#pragma once

#include "ckh/homology.hpp"
#include "ckh/simplify.hpp"
#include "ckh/structures.hpp"

#include "json.hpp"

#include <string>

namespace ckh {

using json = nlohmann::json;

constexpr int kSchemaVersion = 1;

json algebra_json(const Algebra& A);
// Type A dump; higher actions m_{k+1} on generator words of length 2..max_word when the module has them.
json typeA_json(const AModule& M, int max_word = 2);
json typeD_json(const DModule& N);
json reduction_log_json(const Reduction& R, const std::function<std::string(int)>& label);
// Shared by box and oracle complexes.
json complex_json(const BigradedComplex& C);
json homology_json(const HomologyTable& t);

HomologyTable homology_from_json(const json& j);
BigradedComplex complex_from_json(const json& j);

struct GoldenTable {
  std::string name;
  std::string diagram;  // closed slice word
  HomologyTable table;
};
GoldenTable golden_from_json(const json& j);
std::vector<GoldenTable> load_golden(const std::string& dir);

// Slice word from a file; blank lines and lines starting with '#' are skipped.
std::string read_diagram_file(const std::string& path);
json read_json_file(const std::string& path);
// Two-space indented dump with a trailing newline.
std::string to_text(const json& j);

// "3/2" -> 3, "-2" -> -4
int parse_q2(const std::string& q);

}  // namespace ckh
