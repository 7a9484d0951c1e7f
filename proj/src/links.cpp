#include "ckh/links.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>

namespace ckh {

namespace {

// Open piece ids at every level, replaying the construction order of build_tangle.
std::vector<std::vector<int>> open_pieces(const TangleDiagram& t) {
  std::vector<std::vector<int>> levels;
  std::vector<int> open;
  int next = 0;
  for (int k = 0; k < 2 * t.n; ++k) open.push_back(next++);
  levels.push_back(open);
  for (const auto& s : t.slices) {
    int i = s.pos;
    if (s.kind == Slice::Cap) {
      open.erase(open.begin() + i, open.begin() + i + 2);
    } else if (s.kind == Slice::Cup) {
      int a = next++, b = next++;
      open.insert(open.begin() + i, {a, b});
    } else {
      int nl = next++, nh = next++;
      open[i] = nh;
      open[i + 1] = nl;
    }
    levels.push_back(open);
  }
  return levels;
}

}  // namespace

AxisSplit split_at(const TangleDiagram& closed, int cut) {
  if (closed.n != 0 || closed.side != HalfSide::Outside) throw std::invalid_argument("closed diagram must be an outside n=0 word");
  auto levels = open_pieces(closed);
  const auto& at = levels[cut];
  int n2 = static_cast<int>(at.size());
  std::vector<int> out_orient, in_orient;
  for (int p : at) {
    int d = closed.piece_dir[p];
    out_orient.push_back(d);
    in_orient.push_back(-d);
  }
  auto global_dir = [&](int piece) { return closed.piece_dir[piece]; };
  std::vector<Slice> ins, outs;
  for (int j = cut - 1; j >= 0; --j) {
    Slice s = closed.slices[j];
    Slice r = s;
    if (s.kind == Slice::Cap) {
      r.kind = Slice::Cup;
      // lower strand entering the cap, read inward
      r.cup_dir = -global_dir(levels[j][s.pos]);
    } else if (s.kind == Slice::Cup) {
      r.kind = Slice::Cap;
      r.cup_dir = 0;
    } else {
      r.low_over = !s.low_over;
      r.claimed_sign = 0;
    }
    ins.push_back(r);
  }
  for (size_t j = cut; j < closed.slices.size(); ++j) {
    Slice s = closed.slices[j];
    if (s.kind == Slice::Cup) s.cup_dir = global_dir(levels[j + 1][s.pos]);
    if (s.kind == Slice::Cross) s.claimed_sign = 0;
    outs.push_back(s);
  }
  AxisSplit r;
  r.cut = cut;
  r.inside = build_tangle(HalfSide::Inside, n2 / 2, ins, in_orient);
  r.outside = build_tangle(HalfSide::Outside, n2 / 2, outs, out_orient);
  return r;
}

std::vector<AxisSplit> axis_splits(const TangleDiagram& closed, int nmax) {
  auto levels = open_pieces(closed);
  std::vector<AxisSplit> r;
  for (int k = 0; k < static_cast<int>(levels.size()); ++k)
    if (static_cast<int>(levels[k].size()) <= 2 * nmax) r.push_back(split_at(closed, k));
  return r;
}

TangleDiagram mirror(const TangleDiagram& t) {
  auto s = t.slices;
  for (auto& x : s)
    if (x.kind == Slice::Cross) {
      x.low_over = !x.low_over;
      x.claimed_sign = -x.claimed_sign;
    }
  return build_tangle(t.side, t.n, s, t.orient);
}

std::vector<TangleDiagram> outside_closures(const std::vector<int>& inside_orient, int max_crossings) {
  int n2 = static_cast<int>(inside_orient.size());
  std::vector<int> orient(n2);
  for (int k = 0; k < n2; ++k) orient[k] = -inside_orient[k];
  std::vector<TangleDiagram> r;
  std::vector<Slice> word;
  std::function<void(int, int)> rec = [&](int points, int crossings) {
    if (points == 0) {
      try {
        r.push_back(build_tangle(HalfSide::Outside, n2 / 2, word, orient));
      } catch (const ParseError&) {
      }
      return;
    }
    for (int i = 0; i + 1 < points; ++i) {
      word.push_back({Slice::Cap, i});
      rec(points - 2, crossings);
      word.pop_back();
      if (crossings == max_crossings) continue;
      for (bool over : {true, false}) {
        word.push_back({Slice::Cross, i, over});
        rec(points, crossings + 1);
        word.pop_back();
      }
    }
  };
  rec(n2, 0);
  return r;
}

std::vector<CorpusLink> load_corpus(const std::string& dir) {
  std::vector<CorpusLink> r;
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".link") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    std::ifstream in(f);
    std::string line, word;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      word += line;
    }
    r.push_back({f.stem().string(), word});
  }
  return r;
}

}  // namespace ckh
