#pragma once

#include <functional>
#include <map>
#include <set>
#include <vector>

#include "ccp/syntax.hpp"

namespace ccp {

struct Transition {
  Configuration source;
  ConstraintId label;
  Configuration target;
  friend constexpr bool operator==(const Transition&, const Transition&) = default;
  friend constexpr auto operator<=>(const Transition&, const Transition&) = default;
};

enum class LtsKind { Plain, MilnerSaturated, LubSaturated };

// A finite slice of a transition relation: the reachable states, the
// transitions between them, and the initial states it was built from.
struct Lts {
  LtsKind kind = LtsKind::Plain;
  std::set<Configuration> states;
  std::set<Transition> transitions;
  std::vector<Configuration> initials;

  std::map<Configuration, std::vector<Transition>> outgoing() const;
};

using StepFn = std::function<std::vector<Transition>(const Configuration&)>;

// One-step reducts (tell fires unconditionally, ask fires when the guard is
// entailed by the store, parallel/choice on both sides).
std::vector<Configuration> reduce(const Configuration& gamma, const ConstraintSystem& cs,
                                  TermPool& pool);

// Labeled steps: each label is a minimal constraint the environment must
// supply for the step to fire; tell steps are labeled true. Sorted, deduped.
std::vector<Transition> labeled_steps(const Configuration& gamma, const ConstraintSystem& cs,
                                      TermPool& pool);

inline ConstraintId barb_store(const Configuration& gamma) { return gamma.store; }
inline bool satisfies_barb(const Configuration& gamma, ConstraintId e,
                           const ConstraintSystem& cs) {
  return cs.leq(e, gamma.store);
}

// Step generators for reachable(); both capture cs and pool by reference.
StepFn labeled_step_fn(const ConstraintSystem& cs, TermPool& pool);
StepFn reduction_step_fn(const ConstraintSystem& cs, TermPool& pool);  // true-labeled

// Breadth-first closure of the initial configurations under `step`.
// Throws StateCapExceeded when the state set would grow past `cap`.
Lts reachable(const std::vector<Configuration>& initials, const StepFn& step, std::size_t cap);

// Union of the down-sets of the stores reachable from gamma through
// true-labeled transitions of `lts` (including gamma itself), as a
// characteristic vector over the constraint universe.
std::vector<bool> weak_barb_set(const Configuration& gamma, const Lts& lts,
                                const ConstraintSystem& cs);

}  // namespace ccp
