#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ccp/saturation.hpp"

namespace ccp {

// An equivalence relation over a state set, represented as a total map from
// configuration to block id. Block ids are dense naturals, renumbered so
// that blocks appear in the order of their smallest member.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::map<Configuration, std::uint32_t> blocks);

  std::uint32_t block_of(const Configuration& gamma) const;  // throws MissingDerivedState
  std::optional<std::uint32_t> try_block_of(const Configuration& gamma) const;
  bool same_block(const Configuration& a, const Configuration& b) const {
    return block_of(a) == block_of(b);
  }
  std::size_t state_count() const { return blocks_.size(); }
  std::size_t block_count() const { return blockCount_; }

  // Blocks in id order, members in configuration order.
  std::vector<std::vector<Configuration>> blocks() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::map<Configuration, std::uint32_t> blocks_;
  std::size_t blockCount_ = 0;
};

// t derives the transition with label `beta` and target store `targetStore`
// (same source and target process): some e lifts t's label and store there.
bool derives(const Transition& t, ConstraintId beta, ConstraintId targetStore,
             const ConstraintSystem& cs);

// t dominates t2 w.r.t. the partition: the labels differ, some witness e
// turns t's label into t2's, and the lifted target of t lands in t2's
// target block. Throws MissingDerivedState when a lifted target is unknown
// to the partition (i.e. extend_for_redundancy was not run).
bool dominates_wrt(const Transition& t, const Transition& t2, const Partition& part,
                   const ConstraintSystem& cs);

// Adds every configuration the redundancy check may query: for each state
// with transitions t, t2 of distinct labels and each witness e with
// label(t) lub e = label(t2), the lifted target of t becomes a state. New
// states are closed under the plain step function and, for saturated
// inputs, the whole transition set is re-saturated; repeats to fixpoint.
Lts extend_for_redundancy(const Lts& lts, const ConstraintSystem& cs, const StepFn& plainStep,
                          std::size_t cap);

// One block per distinct store (configurations with equal stores satisfy
// exactly the same barbs).
Partition initial_partition_strong(const Lts& lts);

// One block per distinct weak-barb set, computed over the given
// (lub-saturated) transition system.
Partition initial_partition_weak(const Lts& lts, const ConstraintSystem& cs);

struct RefineTrace {
  std::size_t iterations = 0;
  // Called after every refinement step with the freshly computed partition.
  std::function<void(std::size_t iteration, const Partition&)> onIteration;
};

// Extra pairwise requirement for two states to share a block, evaluated
// against the current partition. Used by the weak pipeline to enforce
// upward closure (joining any constraint onto both stores must land in a
// common block).
using PairCondition =
    std::function<bool(const Configuration&, const Configuration&, const Partition&)>;

// Kanellakis-Smolka refinement: split by full transition signatures until
// stable. Decides strong bisimilarity over the given transition set.
Partition refine_standard(const Lts& lts, RefineTrace* trace = nullptr);

// ccp partition refinement: only transitions that are irredundant w.r.t.
// the current partition must be matched, with equal label, into the same
// block. Requires an LTS already extended by extend_for_redundancy and an
// initial partition that groups states by barbs.
Partition refine_ccp(const Lts& lts, const Partition& initial, const ConstraintSystem& cs,
                     RefineTrace* trace = nullptr, const PairCondition& extra = {});

struct Witness {
  enum class Kind { BarbMismatch, UnmatchedTransition, ContextSplit, IndirectSplit };
  Kind kind = Kind::BarbMismatch;
  std::size_t iteration = 0;  // 0: the initial barb partition already separates
  std::optional<Transition> transition;  // unmatched irredundant transition
  std::optional<ConstraintId> barb;      // barb or distinguishing context
  std::string description;
};

struct Verdict {
  bool equivalent = false;
  Partition finalPartition;
  std::size_t iterations = 0;
  std::optional<Witness> witness;  // present iff !equivalent
  std::size_t exploredStates = 0;
};

struct CheckOptions {
  std::size_t maxStates = 10'000;
  std::function<void(std::size_t iteration, const Partition&)> onIteration;
};

// Decides (strong) saturated barbed bisimilarity of the two configurations.
Verdict check_strong(const Configuration& left, const Configuration& right,
                     const ConstraintSystem& cs, TermPool& pool, const CheckOptions& opts = {});

// Decides weak saturated barbed bisimilarity via the lub-closure saturation.
Verdict check_weak(const Configuration& left, const Configuration& right,
                   const ConstraintSystem& cs, TermPool& pool, const CheckOptions& opts = {});

// Same pipeline over Milner's saturation. Does NOT decide the weak
// equivalence; provided to reproduce the counterexample where it diverges.
Verdict check_weak_milner(const Configuration& left, const Configuration& right,
                          const ConstraintSystem& cs, TermPool& pool,
                          const CheckOptions& opts = {});

struct OracleResult {
  bool equivalent = false;
  std::size_t pairUniverse = 0;  // configurations in the closed pair universe
};

// Brute-force greatest-fixpoint computation of (weak) saturated barbed
// bisimilarity straight from its definition: close {left, right} under
// store extension and reduction, start from all pairs agreeing on
// (weak) barbs, and delete violating pairs until stable. Independent of
// the saturation/refinement machinery.
OracleResult oracle_strong(const Configuration& left, const Configuration& right,
                           const ConstraintSystem& cs, TermPool& pool,
                           std::size_t maxStates = 10'000);
OracleResult oracle_weak(const Configuration& left, const Configuration& right,
                         const ConstraintSystem& cs, TermPool& pool,
                         std::size_t maxStates = 10'000);

}  // namespace ccp
