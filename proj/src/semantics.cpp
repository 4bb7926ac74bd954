#include "ccp/semantics.hpp"

#include <algorithm>
#include <deque>

#include "ccp/errors.hpp"

namespace ccp {

std::map<Configuration, std::vector<Transition>> Lts::outgoing() const {
  std::map<Configuration, std::vector<Transition>> out;
  for (const Configuration& s : states) out[s];
  for (const Transition& t : transitions) out[t.source].push_back(t);
  return out;
}

std::vector<Configuration> reduce(const Configuration& gamma, const ConstraintSystem& cs,
                                  TermPool& pool) {
  std::vector<Configuration> result;
  const TermId p = gamma.process;
  switch (pool.kind(p)) {
    case TermKind::Stop:
      break;
    case TermKind::Tell:
      result.push_back(Configuration{pool.stop(), cs.lub(gamma.store, pool.constraint(p))});
      break;
    case TermKind::Ask:
      if (cs.leq(pool.constraint(p), gamma.store)) {
        result.push_back(Configuration{pool.left(p), gamma.store});
      }
      break;
    case TermKind::Par: {
      const TermId l = pool.left(p);
      const TermId r = pool.right(p);
      for (const Configuration& g : reduce(Configuration{l, gamma.store}, cs, pool)) {
        result.push_back(Configuration{pool.par(g.process, r), g.store});
      }
      for (const Configuration& g : reduce(Configuration{r, gamma.store}, cs, pool)) {
        result.push_back(Configuration{pool.par(l, g.process), g.store});
      }
      break;
    }
    case TermKind::Sum:
      for (const Configuration& g : reduce(Configuration{pool.left(p), gamma.store}, cs, pool)) {
        result.push_back(g);
      }
      for (const Configuration& g : reduce(Configuration{pool.right(p), gamma.store}, cs, pool)) {
        result.push_back(g);
      }
      break;
  }
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

std::vector<Transition> labeled_steps(const Configuration& gamma, const ConstraintSystem& cs,
                                      TermPool& pool) {
  std::vector<Transition> result;
  const TermId p = gamma.process;
  switch (pool.kind(p)) {
    case TermKind::Stop:
      break;
    case TermKind::Tell:
      result.push_back(Transition{
          gamma, cs.true_id(),
          Configuration{pool.stop(), cs.lub(gamma.store, pool.constraint(p))}});
      break;
    case TermKind::Ask:
      for (ConstraintId alpha : cs.minimal_enablers(pool.constraint(p), gamma.store)) {
        result.push_back(
            Transition{gamma, alpha, Configuration{pool.left(p), cs.lub(gamma.store, alpha)}});
      }
      break;
    case TermKind::Par: {
      const TermId l = pool.left(p);
      const TermId r = pool.right(p);
      for (const Transition& t : labeled_steps(Configuration{l, gamma.store}, cs, pool)) {
        result.push_back(Transition{
            gamma, t.label, Configuration{pool.par(t.target.process, r), t.target.store}});
      }
      for (const Transition& t : labeled_steps(Configuration{r, gamma.store}, cs, pool)) {
        result.push_back(Transition{
            gamma, t.label, Configuration{pool.par(l, t.target.process), t.target.store}});
      }
      break;
    }
    case TermKind::Sum:
      for (const Transition& t : labeled_steps(Configuration{pool.left(p), gamma.store}, cs, pool)) {
        result.push_back(Transition{gamma, t.label, t.target});
      }
      for (const Transition& t :
           labeled_steps(Configuration{pool.right(p), gamma.store}, cs, pool)) {
        result.push_back(Transition{gamma, t.label, t.target});
      }
      break;
  }
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

StepFn labeled_step_fn(const ConstraintSystem& cs, TermPool& pool) {
  return [&cs, &pool](const Configuration& gamma) { return labeled_steps(gamma, cs, pool); };
}

StepFn reduction_step_fn(const ConstraintSystem& cs, TermPool& pool) {
  return [&cs, &pool](const Configuration& gamma) {
    std::vector<Transition> out;
    for (const Configuration& g : reduce(gamma, cs, pool)) {
      out.push_back(Transition{gamma, cs.true_id(), g});
    }
    return out;
  };
}

Lts reachable(const std::vector<Configuration>& initials, const StepFn& step, std::size_t cap) {
  if (cap == 0) throw StateCapExceeded(0);
  Lts lts;
  std::deque<Configuration> queue;
  for (const Configuration& g : initials) {
    if (lts.states.insert(g).second) {
      lts.initials.push_back(g);
      queue.push_back(g);
    }
  }
  while (!queue.empty()) {
    Configuration gamma = queue.front();
    queue.pop_front();
    for (const Transition& t : step(gamma)) {
      lts.transitions.insert(t);
      if (lts.states.insert(t.target).second) {
        if (lts.states.size() > cap) throw StateCapExceeded(cap);
        queue.push_back(t.target);
      }
    }
  }
  return lts;
}

std::vector<bool> weak_barb_set(const Configuration& gamma, const Lts& lts,
                                const ConstraintSystem& cs) {
  if (lts.states.find(gamma) == lts.states.end()) {
    throw MissingDerivedState("weak_barb_set: configuration not in the LTS");
  }
  std::map<Configuration, std::vector<Configuration>> trueSucc;
  for (const Transition& t : lts.transitions) {
    if (t.label == cs.true_id()) trueSucc[t.source].push_back(t.target);
  }
  std::vector<bool> barbs(cs.size(), false);
  std::set<Configuration> seen{gamma};
  std::deque<Configuration> queue{gamma};
  while (!queue.empty()) {
    Configuration g = queue.front();
    queue.pop_front();
    std::vector<bool> down = cs.down_set(g.store);
    for (std::size_t i = 0; i < down.size(); ++i) barbs[i] = barbs[i] || down[i];
    auto it = trueSucc.find(g);
    if (it == trueSucc.end()) continue;
    for (const Configuration& next : it->second) {
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return barbs;
}

}  // namespace ccp
