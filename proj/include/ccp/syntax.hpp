#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>

#include "ccp/lattice.hpp"

namespace ccp {

enum class TermKind : std::uint8_t { Stop, Tell, Ask, Par, Sum };

// Handle to an interned process term.
struct TermId {
  std::uint32_t index = 0;
  friend constexpr bool operator==(TermId, TermId) = default;
  friend constexpr auto operator<=>(TermId, TermId) = default;
};

// Hash-consing arena for process terms. Structurally equal terms share one
// id, so term equality (the identity used for state identity) is an integer
// comparison. Append-only and single-threaded by contract.
class TermPool {
 public:
  TermPool();

  TermId stop() const { return TermId{0}; }
  TermId tell(ConstraintId c);
  TermId ask(ConstraintId c, TermId body);
  TermId par(TermId left, TermId right);
  TermId sum(TermId left, TermId right);

  TermKind kind(TermId t) const { return nodes_[t.index].kind; }
  ConstraintId constraint(TermId t) const { return nodes_[t.index].constraint; }
  TermId left(TermId t) const { return nodes_[t.index].left; }    // also: ask body
  TermId right(TermId t) const { return nodes_[t.index].right; }

  std::size_t size() const { return nodes_.size(); }

  // Canonical printable form; parses back to the same term.
  std::string pretty(TermId t, const ConstraintSystem& cs) const;

 private:
  struct Node {
    TermKind kind;
    ConstraintId constraint;  // Tell, Ask
    TermId left;              // Ask body, Par/Sum left
    TermId right;             // Par/Sum right
  };
  using Key = std::tuple<TermKind, std::uint32_t, std::uint32_t, std::uint32_t>;

  TermId intern(TermKind kind, ConstraintId c, TermId l, TermId r);

  std::vector<Node> nodes_;
  std::map<Key, TermId> index_;
};

// A ccp state: a process term together with the global store.
struct Configuration {
  TermId process;
  ConstraintId store;
  friend constexpr bool operator==(const Configuration&, const Configuration&) = default;
  friend constexpr auto operator<=>(const Configuration&, const Configuration&) = default;
};

// Resolves a process name to its (already expanded) term, or nullopt when
// the name is unknown. Spec-file loading supplies a resolver that expands
// definitions lazily and detects cycles.
using NameResolver = std::function<std::optional<TermId>(std::string_view)>;

// Grammar:
//   term   := sum ;  sum := par ("+" par)* ;  par := atom ("||" atom)* ;
//   atom   := "stop" | "tell" "(" cexpr ")" | "ask" "(" cexpr ")" "->" atom
//           | NAME | "(" term ")" ;
//   cexpr  := "true" | "false" | CNAME ("&" CNAME)*
//   config := "<" term "," cexpr ">"
TermId parse_term(std::string_view text, const NameResolver& names,
                  const ConstraintSystem& cs, TermPool& pool);
Configuration parse_config(std::string_view text, const NameResolver& names,
                           const ConstraintSystem& cs, TermPool& pool);

// Builds a resolver over a fixed definition table.
NameResolver resolver_from(const std::map<std::string, TermId, std::less<>>& definitions);

// Display form with angle brackets, as used in reports and DOT labels.
std::string pretty_config(const Configuration& gamma, const TermPool& pool,
                          const ConstraintSystem& cs);
// Re-parseable form ("<term, store>").
std::string config_literal(const Configuration& gamma, const TermPool& pool,
                           const ConstraintSystem& cs);

}  // namespace ccp
