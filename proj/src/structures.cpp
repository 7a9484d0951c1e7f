#include "ckh/structures.hpp"

namespace ckh {

Chain TableAModule::act(int x, const std::vector<int>& as) const {
  if (as.size() == 1 && alg->basis()[as[0]].word.empty())
    return alg->basis()[as[0]].src == idems[x] ? Chain{{x, 1}} : Chain{};
  auto it = higher.find({x, as});
  return it == higher.end() ? Chain{} : it->second;
}

}  // namespace ckh
