#pragma once

#include "ckh/tangle.hpp"

#include <string>
#include <vector>

namespace ckh {

struct AxisSplit {
  int cut = 0;  // number of slices placed inside
  TangleDiagram inside, outside;
};

// Every cut of a closed diagram (an n=0 word) where the strand count is at most 2*nmax.
std::vector<AxisSplit> axis_splits(const TangleDiagram& closed, int nmax);
AxisSplit split_at(const TangleDiagram& closed, int cut);

TangleDiagram mirror(const TangleDiagram& t);

// Outside cup-free diagrams with at most max_crossings crossings whose endpoint orientations glue to
// an inside diagram with endpoint orientations inside_orient.
std::vector<TangleDiagram> outside_closures(const std::vector<int>& inside_orient, int max_crossings);

struct CorpusLink {
  std::string name;
  std::string word;
};

std::vector<CorpusLink> load_corpus(const std::string& dir);

}  // namespace ckh
