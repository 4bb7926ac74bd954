#pragma once

// Shared helpers for the test suites: fixture loading, a pool of small
// lattices, random program generation, and the property checkers behind
// the labeled-semantics and saturation law suites. The checkers here are
// written straight from the definitions (enumeration and breadth-first
// search over reduce) so they stay independent of the code they check.

#include <algorithm>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "ccp/equivalence.hpp"
#include "ccp/specfile.hpp"

namespace ccptest {

using namespace ccp;

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(CCP_FIXTURE_DIR) / name;
}

inline Workspace load_fixture(const std::string& name) {
  return load_spec_file(fixture(name));
}

// --- small lattice pool (every universe has at most 16 elements) ---------

inline ConstraintSystem bounds_chain() {
  return build_bounds_lattice({{"x", 0, 4}},
                              {{"x<1", "x", CmpOp::Lt, 1},
                               {"x<2", "x", CmpOp::Lt, 2},
                               {"x<3", "x", CmpOp::Lt, 3},
                               {"x<4", "x", CmpOp::Lt, 4}});
}

inline ConstraintSystem bounds_grid() {
  return build_bounds_lattice({{"x", 0, 2}, {"y", 0, 2}},
                              {{"x<1", "x", CmpOp::Lt, 1},
                               {"x<2", "x", CmpOp::Lt, 2},
                               {"y=0", "y", CmpOp::Eq, 0}});
}

// Three incomparable elements whose pairwise joins are all false.
inline ConstraintSystem table_m3() {
  return build_table_lattice({"true", "a", "b", "c", "false"}, {},
                             {{"a", "b", "false"}, {"a", "c", "false"}, {"b", "c", "false"}});
}

// Pentagon: true < a < c < false and true < b < false with a,b and b,c
// incomparable.
inline ConstraintSystem table_n5() {
  return build_table_lattice({"true", "a", "b", "c", "false"}, {{"a", "c"}},
                             {{"a", "b", "false"}, {"b", "c", "false"}});
}

inline const std::vector<ConstraintSystem>& lattice_pool() {
  static const std::vector<ConstraintSystem> pool = [] {
    std::vector<ConstraintSystem> v;
    v.push_back(build_atoms_lattice({"a", "b"}));       // 5 elements
    v.push_back(build_atoms_lattice({"a", "b", "c"}));  // 9 elements
    v.push_back(bounds_chain());                        // 6 elements
    v.push_back(bounds_grid());                         // 7 elements
    v.push_back(table_m3());
    v.push_back(table_n5());
    return v;
  }();
  return pool;
}

// --- random programs ------------------------------------------------------

inline ConstraintId random_constraint(std::mt19937& rng, const ConstraintSystem& cs) {
  return ConstraintId{
      std::uniform_int_distribution<std::uint32_t>(0, static_cast<std::uint32_t>(cs.size()) - 1)(
          rng)};
}

// Uniform-ish term with at most `budget` AST nodes (budget >= 1).
inline TermId random_term(std::mt19937& rng, const ConstraintSystem& cs, TermPool& pool,
                          int budget) {
  int maxChoice = budget >= 3 ? 4 : (budget >= 2 ? 2 : 1);
  switch (std::uniform_int_distribution<int>(0, maxChoice)(rng)) {
    case 0:
      return pool.stop();
    case 1:
      return pool.tell(random_constraint(rng, cs));
    case 2:
      return pool.ask(random_constraint(rng, cs), random_term(rng, cs, pool, budget - 1));
    case 3: {
      int left = std::uniform_int_distribution<int>(1, budget - 2)(rng);
      return pool.par(random_term(rng, cs, pool, left),
                      random_term(rng, cs, pool, budget - 1 - left));
    }
    default: {
      int left = std::uniform_int_distribution<int>(1, budget - 2)(rng);
      return pool.sum(random_term(rng, cs, pool, left),
                      random_term(rng, cs, pool, budget - 1 - left));
    }
  }
}

inline Configuration random_config(std::mt19937& rng, const ConstraintSystem& cs, TermPool& pool,
                                   int budget = 4) {
  return Configuration{random_term(rng, cs, pool, budget), random_constraint(rng, cs)};
}

// --- property checkers ----------------------------------------------------

template <typename T>
bool contains(const std::vector<T>& v, const T& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

// Soundness of the labeled semantics at one configuration: every labeled
// step fires as a reduction once its label is added to the store.
inline std::size_t labeled_soundness_violations(const Configuration& gamma,
                                                const ConstraintSystem& cs, TermPool& pool) {
  std::size_t bad = 0;
  for (const Transition& t : labeled_steps(gamma, cs, pool)) {
    Configuration boosted{gamma.process, cs.lub(gamma.store, t.label)};
    if (!contains(reduce(boosted, cs, pool), t.target)) ++bad;
  }
  return bad;
}

// Completeness: every reduction of the store-extended configuration is
// covered by some labeled step plus a leftover constraint.
inline std::size_t labeled_completeness_violations(const Configuration& gamma,
                                                   const ConstraintSystem& cs, TermPool& pool) {
  std::size_t bad = 0;
  std::vector<Transition> steps = labeled_steps(gamma, cs, pool);
  for (std::uint32_t ai = 0; ai < cs.size(); ++ai) {
    ConstraintId a{ai};
    Configuration boosted{gamma.process, cs.lub(gamma.store, a)};
    for (const Configuration& reduct : reduce(boosted, cs, pool)) {
      bool covered = false;
      for (const Transition& t : steps) {
        if (t.target.process != reduct.process) continue;
        for (std::uint32_t bi = 0; bi < cs.size() && !covered; ++bi) {
          ConstraintId b{bi};
          covered = cs.lub(t.label, b) == a && cs.lub(t.target.store, b) == reduct.store;
        }
        if (covered) break;
      }
      if (!covered) ++bad;
    }
  }
  return bad;
}

// Reduction reachability (over reduce directly, not over any Lts), used as
// the independent side of the Lemma-2 and weak-barb comparisons.
inline std::vector<Configuration> reduction_closure(const Configuration& gamma,
                                                    const ConstraintSystem& cs, TermPool& pool) {
  std::vector<Configuration> order{gamma};
  std::set<Configuration> seen{gamma};
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (const Configuration& next : reduce(order[i], cs, pool)) {
      if (seen.insert(next).second) order.push_back(next);
    }
  }
  return order;
}

inline std::vector<bool> weak_barbs_by_reduction(const Configuration& gamma,
                                                 const ConstraintSystem& cs, TermPool& pool) {
  std::vector<bool> barbs(cs.size(), false);
  for (const Configuration& g : reduction_closure(gamma, cs, pool)) {
    std::vector<bool> down = cs.down_set(g.store);
    for (std::size_t i = 0; i < down.size(); ++i) barbs[i] = barbs[i] || down[i];
  }
  return barbs;
}

// Lemma-2 shape: gamma ->* gamma' holds exactly when the saturated relation
// has a true-labeled edge between them. Returns the number of ordered state
// pairs on which the two sides disagree.
inline std::size_t true_closure_mismatches(const Lts& plain, const Lts& saturated,
                                           const ConstraintSystem& cs, TermPool& pool) {
  std::size_t bad = 0;
  for (const Configuration& from : plain.states) {
    std::set<Configuration> byReduction;
    for (const Configuration& g : reduction_closure(from, cs, pool)) byReduction.insert(g);
    for (const Configuration& to : plain.states) {
      bool viaSat = saturated.transitions.count(Transition{from, cs.true_id(), to}) != 0;
      if (viaSat != (byReduction.count(to) != 0)) ++bad;
    }
  }
  return bad;
}

using Saturator = Lts (*)(const Lts&, const ConstraintSystem&);

// Soundness of a saturation: a saturated step with label alpha can be taken
// silently once alpha is added to the source store. The target relation is
// the saturation of the slice rebuilt from the boosted configuration.
inline std::size_t saturation_soundness_violations(const Configuration& gamma,
                                                   const ConstraintSystem& cs, TermPool& pool,
                                                   Saturator saturate) {
  std::size_t bad = 0;
  StepFn step = labeled_step_fn(cs, pool);
  Lts sat = saturate(reachable({gamma}, step, 10'000), cs);
  for (const Transition& t : sat.transitions) {
    Configuration boosted{t.source.process, cs.lub(t.source.store, t.label)};
    Lts satBoosted = saturate(reachable({boosted}, step, 10'000), cs);
    if (!satBoosted.transitions.count(Transition{boosted, cs.true_id(), t.target})) ++bad;
  }
  return bad;
}

// Completeness of a saturation at gamma = <P, c>: for every a and every
// silent saturated step of <P, c lub a>, some saturated step of <P, c>
// explains it with a leftover b. Milner's saturation violates this.
inline std::size_t saturation_completeness_violations(const Configuration& gamma,
                                                      const ConstraintSystem& cs, TermPool& pool,
                                                      Saturator saturate) {
  std::size_t bad = 0;
  StepFn step = labeled_step_fn(cs, pool);
  Lts sat = saturate(reachable({gamma}, step, 10'000), cs);
  std::vector<Transition> fromGamma;
  for (const Transition& t : sat.transitions) {
    if (t.source == gamma) fromGamma.push_back(t);
  }
  for (std::uint32_t ai = 0; ai < cs.size(); ++ai) {
    ConstraintId a{ai};
    Configuration boosted{gamma.process, cs.lub(gamma.store, a)};
    Lts satBoosted = saturate(reachable({boosted}, step, 10'000), cs);
    for (const Transition& t : satBoosted.transitions) {
      if (t.source != boosted || t.label != cs.true_id()) continue;
      bool covered = false;
      for (const Transition& u : fromGamma) {
        if (u.target.process != t.target.process) continue;
        for (std::uint32_t bi = 0; bi < cs.size() && !covered; ++bi) {
          ConstraintId b{bi};
          covered = cs.lub(u.label, b) == a && cs.lub(u.target.store, b) == t.target.store;
        }
        if (covered) break;
      }
      if (!covered) ++bad;
    }
  }
  return bad;
}

}  // namespace ccptest
