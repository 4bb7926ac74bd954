#include "ccp/saturation.hpp"

#include <deque>

namespace ccp {

namespace {

// Worklist closure over a composition rule. `compose` returns the label of
// the combined transition, or nullopt when the pair does not compose.
// Duplicate (source,label,target) triples collapse in the global set, which
// is what bounds the fixpoint.
using ComposeFn = std::optional<ConstraintId> (*)(const ConstraintSystem&, ConstraintId,
                                                  ConstraintId);

Lts close(const Lts& lts, const ConstraintSystem& cs, ComposeFn compose, LtsKind kind) {
  Lts out;
  out.kind = kind;
  out.states = lts.states;
  out.initials = lts.initials;

  std::map<Configuration, std::vector<Transition>> bySource, byTarget;
  std::deque<Transition> work;
  auto add = [&](const Transition& t) {
    if (!out.transitions.insert(t).second) return;
    bySource[t.source].push_back(t);
    byTarget[t.target].push_back(t);
    work.push_back(t);
  };

  for (const Configuration& g : lts.states) add(Transition{g, cs.true_id(), g});
  for (const Transition& t : lts.transitions) add(t);

  while (!work.empty()) {
    Transition t = work.front();
    work.pop_front();
    // t ; u
    for (const Transition& u : std::vector<Transition>(bySource[t.target])) {
      if (auto label = compose(cs, t.label, u.label)) {
        add(Transition{t.source, *label, u.target});
      }
    }
    // u ; t
    for (const Transition& u : std::vector<Transition>(byTarget[t.source])) {
      if (auto label = compose(cs, u.label, t.label)) {
        add(Transition{u.source, *label, t.target});
      }
    }
  }
  return out;
}

std::optional<ConstraintId> milner_compose(const ConstraintSystem& cs, ConstraintId a,
                                           ConstraintId b) {
  // Only true-steps may be absorbed; composing two labeled steps is exactly
  // what Milner's method does not do.
  if (a == cs.true_id()) return b;
  if (b == cs.true_id()) return a;
  return std::nullopt;
}

std::optional<ConstraintId> lub_compose(const ConstraintSystem& cs, ConstraintId a,
                                        ConstraintId b) {
  return cs.lub(a, b);
}

}  // namespace

Lts saturate_milner(const Lts& lts, const ConstraintSystem& cs) {
  return close(lts, cs, milner_compose, LtsKind::MilnerSaturated);
}

Lts saturate_lub(const Lts& lts, const ConstraintSystem& cs) {
  return close(lts, cs, lub_compose, LtsKind::LubSaturated);
}

}  // namespace ccp
