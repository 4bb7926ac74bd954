#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ccp {

// Index into the universe of a ConstraintSystem.
struct ConstraintId {
  std::uint32_t index = 0;
  friend constexpr bool operator==(ConstraintId, ConstraintId) = default;
  friend constexpr auto operator<=>(ConstraintId, ConstraintId) = default;
};

// A finite constraint lattice: the ordering is the reverse of entailment,
// `true` is the least element (empty information), `false` the greatest
// (inconsistency), and lub joins information. Immutable after construction;
// all operations are table lookups and safe to share across threads.
class ConstraintSystem {
 public:
  // Universes larger than this are rejected at load time; law validation
  // is exhaustive and cubic in the universe size.
  static constexpr std::size_t kMaxUniverse = 256;

  ConstraintSystem(std::vector<std::string> names,
                   std::vector<bool> leqTable,          // n*n, row-major: leq[c*n+d]
                   std::vector<std::uint32_t> lubTable,  // n*n
                   ConstraintId trueId, ConstraintId falseId,
                   std::map<std::string, ConstraintId, std::less<>> declared);

  std::size_t size() const { return names_.size(); }
  ConstraintId true_id() const { return true_; }
  ConstraintId false_id() const { return false_; }

  // c is below d: d entails c.
  bool leq(ConstraintId c, ConstraintId d) const {
    return leq_[c.index * size() + d.index];
  }
  ConstraintId lub(ConstraintId c, ConstraintId d) const {
    return ConstraintId{lub_[c.index * size() + d.index]};
  }

  const std::string& name(ConstraintId c) const { return names_[c.index]; }

  // Looks up a name declared in the lattice section (atom, base constraint,
  // table element), plus "true" and "false".
  std::optional<ConstraintId> find(std::string_view name) const;

  // All elements of {a | c <= d lub a} that are minimal w.r.t. leq.
  // Nonempty: `false` always qualifies. Result sorted by index.
  std::vector<ConstraintId> minimal_enablers(ConstraintId c, ConstraintId d) const;

  // Characteristic vector of the down-set of c.
  std::vector<bool> down_set(ConstraintId c) const;

  // Exhaustively checks the lattice laws; throws LatticeError on violation.
  // Builders run this before returning, so a constructed system is valid.
  void validate() const;

 private:
  std::vector<std::string> names_;
  std::vector<bool> leq_;
  std::vector<std::uint32_t> lub_;
  ConstraintId true_;
  ConstraintId false_;
  std::map<std::string, ConstraintId, std::less<>> declared_;
};

// Free finite join-semilattice over a set of atoms: the universe is every
// subset of the atoms plus a distinct top element `false`. Order is subset
// inclusion, lub is union (absorbing on `false`), `true` is the empty set.
ConstraintSystem build_atoms_lattice(const std::vector<std::string>& atoms);

struct BoundsVar {
  std::string name;
  int lo = 0;
  int hi = 0;  // inclusive
};

enum class CmpOp { Lt, Le, Eq, Ne, Ge, Gt };

struct BoundsBase {
  std::string name;  // display name, e.g. "x<7"
  std::string var;
  CmpOp op = CmpOp::Lt;
  int value = 0;
};

// Assignment-set lattice: each base constraint denotes the set of variable
// assignments satisfying its predicate; the universe is the closure of
// {true, false} plus the base extensions under intersection. Order is
// reverse inclusion of assignment sets, lub is intersection.
ConstraintSystem build_bounds_lattice(const std::vector<BoundsVar>& vars,
                                      const std::vector<BoundsBase>& base);

struct TableLub {
  std::string a, b, result;
};

// Explicit lattice: caller lists the element names (which must include
// "true" and "false"), the leq pairs (reflexive-transitive closure is taken)
// and a lub entry for every incomparable pair; comparable pairs are filled
// in automatically. Inconsistent tables are rejected by validation.
ConstraintSystem build_table_lattice(
    const std::vector<std::string>& elements,
    const std::vector<std::pair<std::string, std::string>>& leqPairs,
    const std::vector<TableLub>& lubEntries);

}  // namespace ccp
