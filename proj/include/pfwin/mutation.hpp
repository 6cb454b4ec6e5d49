#pragma once

// Replays the five-collection chain: mutate a sink E of the Hom-digraph
// leftwards through the whole collection, which replaces it with E(-7).

#include "pfwin/klattice.hpp"

#include <set>
#include <string>
#include <vector>

namespace pfwin {

struct MutationStep {
  std::string from, to;   ///< collection labels
  SBundle mutated;        ///< object moved to the far left
  WindowTuple expected{}; ///< window the result should equal
  bool is_sink = false;   ///< no Ext from the object into the rest
  bool set_equal = false;
  bool serre_identity = false;
  [[nodiscard]] bool ok() const { return is_sink && set_equal && serre_identity; }
};

struct MutationChain {
  std::vector<std::pair<std::string, WindowTuple>> collections;
  std::vector<MutationStep> steps;
  bool d_is_a_twisted = false; ///< D = A (x) O(-1)
  [[nodiscard]] bool ok() const {
    return d_is_a_twisted && std::all_of(steps.begin(), steps.end(), [](const auto &s) { return s.ok(); });
  }
};

inline MutationStep mutate_window(const std::string &from, const WindowTuple &src, SBundle obj,
                                  const std::string &to, const WindowTuple &dst) {
  MutationStep st{from, to, obj, dst};
  const auto w = build_window(src);
  if (!w.contains(obj)) throw InvalidInput(obj.to_string() + " is not in collection " + from);
  st.is_sink = true;
  for (auto g : w.generators)
    if (g != obj && !ext_g(obj, g).empty()) st.is_sink = false;

  std::set<SBundle> mutated(w.generators.begin(), w.generators.end());
  mutated.erase(obj);
  mutated.insert(obj.twisted(-7));
  const auto target = build_window(dst);
  st.set_equal = mutated == std::set<SBundle>(target.generators.begin(), target.generators.end());

  // exceptional order with obj last; the rest keep their derived order
  auto order = check_exceptionality(w).order;
  order.erase(std::find(order.begin(), order.end(), obj));
  order.push_back(obj);
  st.serre_identity = is_exceptional_order(order) && KTheory::instance().serre_mutation_identity(order);
  return st;
}

inline MutationChain mutation_chain() {
  MutationChain c;
  const WindowTuple A{0, 0, 0}, B{-1, 0, 0}, C{-1, -1, 0}, D{-1, -1, -1}, E{-2, -1, 0};
  c.collections = {{"A", A}, {"B", B}, {"C", C}, {"D", D}, {"E", E}};
  c.steps.push_back(mutate_window("A", A, {0, 0}, "B", B));
  c.steps.push_back(mutate_window("B", B, {1, 0}, "C", C));
  c.steps.push_back(mutate_window("C", C, {2, 0}, "D", D));
  c.steps.push_back(mutate_window("C", C, {0, -1}, "E", E));
  std::vector<SBundle> a_twisted;
  for (auto g : build_window(A).generators) a_twisted.push_back(g.twisted(-1));
  c.d_is_a_twisted = a_twisted == build_window(D).generators;
  return c;
}

} // namespace pfwin
