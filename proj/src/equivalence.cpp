#include "ccp/equivalence.hpp"

#include <algorithm>
#include <deque>

#include "ccp/errors.hpp"

namespace ccp {

Partition::Partition(std::map<Configuration, std::uint32_t> blocks) {
  // Renumber so ids are dense and ordered by each block's smallest member.
  std::map<std::uint32_t, std::uint32_t> renumber;
  for (const auto& [gamma, raw] : blocks) {
    auto [it, fresh] = renumber.emplace(raw, static_cast<std::uint32_t>(renumber.size()));
    blocks_.emplace(gamma, it->second);
    (void)fresh;
  }
  blockCount_ = renumber.size();
}

std::uint32_t Partition::block_of(const Configuration& gamma) const {
  auto it = blocks_.find(gamma);
  if (it == blocks_.end()) {
    throw MissingDerivedState("partition does not cover a queried configuration");
  }
  return it->second;
}

std::optional<std::uint32_t> Partition::try_block_of(const Configuration& gamma) const {
  auto it = blocks_.find(gamma);
  if (it == blocks_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::vector<Configuration>> Partition::blocks() const {
  std::vector<std::vector<Configuration>> out(blockCount_);
  for (const auto& [gamma, id] : blocks_) out[id].push_back(gamma);
  return out;
}

bool derives(const Transition& t, ConstraintId beta, ConstraintId targetStore,
             const ConstraintSystem& cs) {
  for (std::uint32_t i = 0; i < cs.size(); ++i) {
    ConstraintId e{i};
    if (cs.lub(t.label, e) == beta && cs.lub(t.target.store, e) == targetStore) return true;
  }
  return false;
}

bool dominates_wrt(const Transition& t, const Transition& t2, const Partition& part,
                   const ConstraintSystem& cs) {
  if (t.source != t2.source || t.label == t2.label) return false;
  std::uint32_t targetBlock = part.block_of(t2.target);
  for (std::uint32_t i = 0; i < cs.size(); ++i) {
    ConstraintId e{i};
    if (cs.lub(t.label, e) != t2.label) continue;
    Configuration lifted{t.target.process, cs.lub(t.target.store, e)};
    if (part.block_of(lifted) == targetBlock) return true;
  }
  return false;
}

namespace {

// All configurations Def-8 style domination checks may look up, given the
// current transition set.
std::set<Configuration> derived_states(const Lts& lts, const ConstraintSystem& cs) {
  std::set<Configuration> result;
  auto out = lts.outgoing();
  for (const auto& [gamma, ts] : out) {
    for (const Transition& t : ts) {
      for (const Transition& t2 : ts) {
        if (t.label == t2.label) continue;
        for (std::uint32_t i = 0; i < cs.size(); ++i) {
          ConstraintId e{i};
          if (cs.lub(t.label, e) != t2.label) continue;
          result.insert(Configuration{t.target.process, cs.lub(t.target.store, e)});
        }
      }
    }
  }
  return result;
}

}  // namespace

Lts extend_for_redundancy(const Lts& lts, const ConstraintSystem& cs, const StepFn& plainStep,
                          std::size_t cap) {
  // Plain transition slice over a growing state set. For a saturated input
  // the plain transitions are regenerated from the step function; targets
  // of plain steps are always states of a well-formed input.
  std::set<Configuration> states = lts.states;
  std::set<Transition> plain;
  auto close_plain_from = [&](std::vector<Configuration> frontier) {
    std::deque<Configuration> queue(frontier.begin(), frontier.end());
    while (!queue.empty()) {
      Configuration gamma = queue.front();
      queue.pop_front();
      for (const Transition& t : plainStep(gamma)) {
        plain.insert(t);
        if (states.insert(t.target).second) {
          if (states.size() > cap) throw StateCapExceeded(cap);
          queue.push_back(t.target);
        }
      }
    }
  };
  close_plain_from({states.begin(), states.end()});

  for (;;) {
    Lts current;
    current.kind = lts.kind;
    current.states = states;
    current.transitions = plain;
    current.initials = lts.initials;
    switch (lts.kind) {
      case LtsKind::Plain: break;
      case LtsKind::MilnerSaturated: current = saturate_milner(current, cs); break;
      case LtsKind::LubSaturated: current = saturate_lub(current, cs); break;
    }

    std::vector<Configuration> fresh;
    for (const Configuration& gamma : derived_states(current, cs)) {
      if (states.find(gamma) == states.end()) fresh.push_back(gamma);
    }
    if (fresh.empty()) return current;

    for (const Configuration& gamma : fresh) {
      states.insert(gamma);
      if (states.size() > cap) throw StateCapExceeded(cap);
    }
    close_plain_from(fresh);
  }
}

Partition initial_partition_strong(const Lts& lts) {
  std::map<Configuration, std::uint32_t> blocks;
  std::map<ConstraintId, std::uint32_t> byStore;
  for (const Configuration& gamma : lts.states) {
    auto [it, fresh] = byStore.emplace(gamma.store, static_cast<std::uint32_t>(byStore.size()));
    (void)fresh;
    blocks.emplace(gamma, it->second);
  }
  return Partition(std::move(blocks));
}

Partition initial_partition_weak(const Lts& lts, const ConstraintSystem& cs) {
  std::map<Configuration, std::uint32_t> blocks;
  std::map<std::vector<bool>, std::uint32_t> byBarbs;
  for (const Configuration& gamma : lts.states) {
    std::vector<bool> barbs = weak_barb_set(gamma, lts, cs);
    auto [it, fresh] = byBarbs.emplace(std::move(barbs), static_cast<std::uint32_t>(byBarbs.size()));
    (void)fresh;
    blocks.emplace(gamma, it->second);
  }
  return Partition(std::move(blocks));
}

namespace {

using Sig = std::set<std::pair<ConstraintId, std::uint32_t>>;  // (label, target block)

struct Sigs {
  std::map<Configuration, Sig> full;
  std::map<Configuration, Sig> irredundant;
};

// Per-state transition signatures w.r.t. the current partition. When `cs`
// is given, also the signature restricted to irredundant transitions.
Sigs signatures(const std::map<Configuration, std::vector<Transition>>& out, const Partition& cur,
                const ConstraintSystem* cs) {
  Sigs sigs;
  for (const auto& [gamma, ts] : out) {
    Sig& full = sigs.full[gamma];
    for (const Transition& t : ts) full.insert({t.label, cur.block_of(t.target)});
    if (!cs) continue;
    Sig& irr = sigs.irredundant[gamma];
    for (const Transition& t : ts) {
      bool redundant = false;
      for (const Transition& t2 : ts) {
        if (dominates_wrt(t2, t, cur, *cs)) {
          redundant = true;
          break;
        }
      }
      if (!redundant) irr.insert({t.label, cur.block_of(t.target)});
    }
  }
  return sigs;
}

bool subset(const Sig& a, const Sig& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// The matching condition of the refinement functions, both directions:
// every (irredundant) move of one state is answered by the other with the
// same label into the same current block, plus any extra pair condition.
bool matches(const Sigs& sigs, const Configuration& a, const Configuration& b,
             bool irredundantOnly, const PairCondition& extra, const Partition& cur) {
  const auto& requireA = irredundantOnly ? sigs.irredundant.at(a) : sigs.full.at(a);
  const auto& requireB = irredundantOnly ? sigs.irredundant.at(b) : sigs.full.at(b);
  if (!subset(requireA, sigs.full.at(b)) || !subset(requireB, sigs.full.at(a))) return false;
  return !extra || extra(a, b, cur);
}

// One refinement pass: inside each block, group states by their set of
// still-matching block-mates. Grouping by neighborhood keeps the result a
// partition even when the pairwise condition is not transitive, and at the
// fixpoint every pair sharing a block satisfies the condition directly.
Partition refine_step(const Lts& lts, const Partition& cur, const Sigs& sigs,
                      bool irredundantOnly, const PairCondition& extra) {
  std::map<std::vector<Configuration>, std::uint32_t> byNeighborhood;
  std::map<Configuration, std::uint32_t> next;
  std::map<std::uint32_t, std::vector<Configuration>> members;
  for (const Configuration& gamma : lts.states) members[cur.block_of(gamma)].push_back(gamma);
  for (const auto& [block, states] : members) {
    (void)block;
    for (const Configuration& gamma : states) {
      std::vector<Configuration> neighborhood;
      for (const Configuration& other : states) {
        if (matches(sigs, gamma, other, irredundantOnly, extra, cur)) {
          neighborhood.push_back(other);
        }
      }
      auto [it, fresh] = byNeighborhood.emplace(std::move(neighborhood),
                                                static_cast<std::uint32_t>(byNeighborhood.size()));
      (void)fresh;
      next.emplace(gamma, it->second);
    }
  }
  return Partition(std::move(next));
}

// Shared driver: refine until two consecutive partitions coincide. Each
// pass only splits blocks, so the pass count is bounded by the state count.
Partition refine_loop(const Lts& lts, Partition cur, const ConstraintSystem* cs,
                      RefineTrace* trace, const PairCondition& extra) {
  auto out = lts.outgoing();
  std::size_t iterations = 0;
  for (;;) {
    Sigs sigs = signatures(out, cur, cs);
    Partition next = refine_step(lts, cur, sigs, cs != nullptr, extra);
    ++iterations;
    if (trace && trace->onIteration) trace->onIteration(iterations, next);
    if (next == cur) break;
    cur = std::move(next);
  }
  if (trace) trace->iterations = iterations;
  return cur;
}

}  // namespace

Partition refine_standard(const Lts& lts, RefineTrace* trace) {
  std::map<Configuration, std::uint32_t> single;
  for (const Configuration& gamma : lts.states) single.emplace(gamma, 0);
  return refine_loop(lts, Partition(std::move(single)), nullptr, trace, {});
}

Partition refine_ccp(const Lts& lts, const Partition& initial, const ConstraintSystem& cs,
                     RefineTrace* trace, const PairCondition& extra) {
  return refine_loop(lts, initial, &cs, trace, extra);
}

namespace {

enum class Mode { Strong, Weak, WeakMilner };

// Closure of the two configurations under joining any lattice element onto
// the store and under reduction. This set is also closed under labeled
// steps and under the lifted targets of domination checks, so the weak
// pipeline and the oracles can both work inside it.
std::vector<Configuration> closure_universe(const Configuration& left, const Configuration& right,
                                            const ConstraintSystem& cs, TermPool& pool,
                                            std::size_t cap) {
  std::set<Configuration> seen;
  std::deque<Configuration> queue;
  auto push = [&](const Configuration& g) {
    if (seen.insert(g).second) {
      if (seen.size() > cap) throw StateCapExceeded(cap);
      queue.push_back(g);
    }
  };
  push(left);
  push(right);
  while (!queue.empty()) {
    Configuration gamma = queue.front();
    queue.pop_front();
    for (std::uint32_t a = 0; a < cs.size(); ++a) {
      push(Configuration{gamma.process, cs.lub(gamma.store, ConstraintId{a})});
    }
    for (const Configuration& g : reduce(gamma, cs, pool)) push(g);
  }
  return {seen.begin(), seen.end()};
}

// First constraint on which the two weak-barb sets disagree.
std::optional<ConstraintId> barb_difference(const std::vector<bool>& a,
                                            const std::vector<bool>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return ConstraintId{static_cast<std::uint32_t>(i)};
  }
  return std::nullopt;
}

Witness transition_witness(const Lts& lts, const Partition& before, const ConstraintSystem& cs,
                           const Configuration& left, const Configuration& right,
                           std::size_t iteration, TermPool& pool, bool upwardClosed) {
  auto out = lts.outgoing();
  Sigs sigs = signatures(out, before, &cs);
  auto unmatched = [&](const Configuration& a,
                       const Configuration& b) -> std::optional<Transition> {
    const Sig& fullB = sigs.full.at(b);
    for (const Transition& t : out.at(a)) {
      std::pair<ConstraintId, std::uint32_t> key{t.label, before.block_of(t.target)};
      if (sigs.irredundant.at(a).count(key) && !fullB.count(key)) return t;
    }
    return std::nullopt;
  };
  Witness w;
  w.iteration = iteration;
  if (auto t = unmatched(left, right)) {
    w.kind = Witness::Kind::UnmatchedTransition;
    w.transition = *t;
    w.description = pretty_config(left, pool, cs) + " has the irredundant transition --[" +
                    cs.name(t->label) + "]--> " + pretty_config(t->target, pool, cs) + " which " +
                    pretty_config(right, pool, cs) + " cannot match";
    return w;
  }
  if (auto t2 = unmatched(right, left)) {
    w.kind = Witness::Kind::UnmatchedTransition;
    w.transition = *t2;
    w.description = pretty_config(right, pool, cs) + " has the irredundant transition --[" +
                    cs.name(t2->label) + "]--> " + pretty_config(t2->target, pool, cs) +
                    " which " + pretty_config(left, pool, cs) + " cannot match";
    return w;
  }
  if (upwardClosed) {
    for (std::uint32_t e = 0; e < cs.size(); ++e) {
      ConstraintId ce{e};
      Configuration bl{left.process, cs.lub(left.store, ce)};
      Configuration br{right.process, cs.lub(right.store, ce)};
      if (before.try_block_of(bl) && before.try_block_of(br) &&
          before.block_of(bl) != before.block_of(br)) {
        w.kind = Witness::Kind::ContextSplit;
        w.barb = ce;
        w.description = "joining " + cs.name(ce) + " onto both stores separates them: " +
                        pretty_config(bl, pool, cs) + " and " + pretty_config(br, pool, cs) +
                        " are already distinguished";
        return w;
      }
    }
  }
  w.kind = Witness::Kind::IndirectSplit;
  w.description = "the configurations were separated through a block-mate they no longer agree on (iteration " +
                  std::to_string(iteration) + ")";
  return w;
}

Verdict check_impl(const Configuration& left, const Configuration& right,
                   const ConstraintSystem& cs, TermPool& pool, Mode mode,
                   const CheckOptions& opts) {
  StepFn step = labeled_step_fn(cs, pool);

  // The weak equivalences are upward closed (joining any constraint onto
  // both stores must preserve the relation), so the weak pipelines work
  // over the store-boost closure of the two configurations and refine with
  // the matching upward condition. The strong pipeline stays on the
  // reachable slice, whose initial partition already separates stores.
  Lts lts;
  PairCondition upward;
  if (mode == Mode::Strong) {
    lts = reachable({left, right}, step, opts.maxStates);
  } else {
    lts.kind = LtsKind::Plain;
    lts.initials = {left, right};
    if (right == left) lts.initials.pop_back();
    for (const Configuration& g : closure_universe(left, right, cs, pool, opts.maxStates)) {
      lts.states.insert(g);
      for (const Transition& t : step(g)) lts.transitions.insert(t);
    }
    upward = [&cs](const Configuration& a, const Configuration& b, const Partition& cur) {
      for (std::uint32_t e = 0; e < cs.size(); ++e) {
        ConstraintId ce{e};
        if (cur.block_of(Configuration{a.process, cs.lub(a.store, ce)}) !=
            cur.block_of(Configuration{b.process, cs.lub(b.store, ce)})) {
          return false;
        }
      }
      return true;
    };
  }
  switch (mode) {
    case Mode::Strong: break;
    case Mode::Weak: lts = saturate_lub(lts, cs); break;
    case Mode::WeakMilner: lts = saturate_milner(lts, cs); break;
  }
  lts = extend_for_redundancy(lts, cs, step, opts.maxStates);
  Partition initial = mode == Mode::Strong ? initial_partition_strong(lts)
                                           : initial_partition_weak(lts, cs);

  Verdict verdict;
  verdict.exploredStates = lts.states.size();
  if (opts.onIteration) opts.onIteration(0, initial);

  // Track the iteration at which the two configurations first part ways,
  // and the partition in force just before, for witness extraction.
  bool splitSeen = initial.block_of(left) != initial.block_of(right);
  std::size_t splitIteration = 0;
  Partition beforeSplit = initial;
  Partition previous = initial;

  RefineTrace trace;
  trace.onIteration = [&](std::size_t iteration, const Partition& p) {
    if (!splitSeen && p.block_of(left) != p.block_of(right)) {
      splitSeen = true;
      splitIteration = iteration;
      beforeSplit = previous;
    }
    previous = p;
    if (opts.onIteration) opts.onIteration(iteration, p);
  };
  verdict.finalPartition = refine_ccp(lts, initial, cs, &trace, upward);
  verdict.iterations = trace.iterations;
  verdict.equivalent = verdict.finalPartition.same_block(left, right);

  if (!verdict.equivalent) {
    if (splitIteration == 0) {
      Witness w;
      w.kind = Witness::Kind::BarbMismatch;
      w.iteration = 0;
      if (mode == Mode::Strong) {
        w.barb = cs.leq(left.store, right.store) ? right.store : left.store;
        w.description = "the configurations satisfy different barbs (stores " +
                        cs.name(left.store) + " vs " + cs.name(right.store) + ")";
      } else {
        auto diff = barb_difference(weak_barb_set(left, lts, cs), weak_barb_set(right, lts, cs));
        w.barb = diff;
        w.description = "the configurations have different weak barbs" +
                        (diff ? " (e.g. " + cs.name(*diff) + ")" : std::string());
      }
      verdict.witness = w;
    } else {
      verdict.witness = transition_witness(lts, beforeSplit, cs, left, right, splitIteration,
                                           pool, mode != Mode::Strong);
    }
  }
  return verdict;
}

}  // namespace

Verdict check_strong(const Configuration& left, const Configuration& right,
                     const ConstraintSystem& cs, TermPool& pool, const CheckOptions& opts) {
  return check_impl(left, right, cs, pool, Mode::Strong, opts);
}

Verdict check_weak(const Configuration& left, const Configuration& right,
                   const ConstraintSystem& cs, TermPool& pool, const CheckOptions& opts) {
  return check_impl(left, right, cs, pool, Mode::Weak, opts);
}

Verdict check_weak_milner(const Configuration& left, const Configuration& right,
                          const ConstraintSystem& cs, TermPool& pool, const CheckOptions& opts) {
  return check_impl(left, right, cs, pool, Mode::WeakMilner, opts);
}

namespace {

OracleResult oracle_impl(const Configuration& left, const Configuration& right,
                         const ConstraintSystem& cs, TermPool& pool, bool weak,
                         std::size_t cap) {
  const std::vector<Configuration> universe = closure_universe(left, right, cs, pool, cap);
  const std::size_t n = universe.size();
  std::map<Configuration, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(universe[i], i);

  // One-step reducts and their reflexive-transitive closure.
  std::vector<std::vector<std::size_t>> reducts(n), star(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const Configuration& g : reduce(universe[i], cs, pool)) {
      reducts[i].push_back(index.at(g));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> seen(n, false);
    std::deque<std::size_t> queue{i};
    seen[i] = true;
    while (!queue.empty()) {
      std::size_t j = queue.front();
      queue.pop_front();
      star[i].push_back(j);
      for (std::size_t k : reducts[j]) {
        if (!seen[k]) {
          seen[k] = true;
          queue.push_back(k);
        }
      }
    }
  }

  // Weak barbs straight from the definition: stores reachable through
  // reductions, downward closed.
  std::vector<std::vector<bool>> weakBarbs;
  if (weak) {
    weakBarbs.resize(n, std::vector<bool>(cs.size(), false));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j : star[i]) {
        std::vector<bool> down = cs.down_set(universe[j].store);
        for (std::size_t e = 0; e < down.size(); ++e) {
          weakBarbs[i][e] = weakBarbs[i][e] || down[e];
        }
      }
    }
  }

  // Store-extension table for the upward-closure condition.
  std::vector<std::vector<std::size_t>> up(cs.size(), std::vector<std::size_t>(n));
  for (std::uint32_t a = 0; a < cs.size(); ++a) {
    for (std::size_t i = 0; i < n; ++i) {
      up[a][i] =
          index.at(Configuration{universe[i].process, cs.lub(universe[i].store, ConstraintId{a})});
    }
  }

  // Greatest fixpoint: start from barb agreement, delete violating pairs.
  std::vector<std::vector<char>> related(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      related[i][j] = weak ? weakBarbs[i] == weakBarbs[j]
                           : universe[i].store == universe[j].store;
    }
  }

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (!related[i][j]) continue;
        bool ok = true;
        const std::vector<std::size_t>& moves = weak ? star[i] : reducts[i];
        const std::vector<std::size_t>& replies = weak ? star[j] : reducts[j];
        for (std::size_t i2 : moves) {
          bool answered = false;
          for (std::size_t j2 : replies) {
            if (related[i2][j2]) {
              answered = true;
              break;
            }
          }
          if (!answered) {
            ok = false;
            break;
          }
        }
        if (ok) {
          for (std::uint32_t a = 0; a < cs.size() && ok; ++a) {
            if (!related[up[a][i]][up[a][j]]) ok = false;
          }
        }
        if (!ok) {
          related[i][j] = related[j][i] = 0;
          changed = true;
        }
      }
    }
  }

  OracleResult result;
  result.pairUniverse = n;
  result.equivalent = related[index.at(left)][index.at(right)] != 0;
  return result;
}

}  // namespace

OracleResult oracle_strong(const Configuration& left, const Configuration& right,
                           const ConstraintSystem& cs, TermPool& pool, std::size_t maxStates) {
  return oracle_impl(left, right, cs, pool, false, maxStates);
}

OracleResult oracle_weak(const Configuration& left, const Configuration& right,
                         const ConstraintSystem& cs, TermPool& pool, std::size_t maxStates) {
  return oracle_impl(left, right, cs, pool, true, maxStates);
}

}  // namespace ccp
