#include "ccp/lattice.hpp"

#include <algorithm>
#include <set>

#include "ccp/errors.hpp"

namespace ccp {

namespace {

bool valid_name_char(char c, bool first) {
  if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') return true;
  if (first) return false;
  return (c >= '0' && c <= '9') || c == '\'' || c == '<' || c == '=' || c == '.';
}

void check_declared_name(const std::string& name) {
  if (name.empty()) throw LatticeError("empty constraint name");
  for (std::size_t i = 0; i < name.size(); ++i) {
    if (!valid_name_char(name[i], i == 0)) {
      throw LatticeError("invalid constraint name '" + name + "'");
    }
  }
  static const char* reserved[] = {"stop", "tell", "ask"};
  for (const char* r : reserved) {
    if (name == r) throw LatticeError("reserved word used as constraint name: '" + name + "'");
  }
}

}  // namespace

ConstraintSystem::ConstraintSystem(std::vector<std::string> names,
                                   std::vector<bool> leqTable,
                                   std::vector<std::uint32_t> lubTable,
                                   ConstraintId trueId, ConstraintId falseId,
                                   std::map<std::string, ConstraintId, std::less<>> declared)
    : names_(std::move(names)),
      leq_(std::move(leqTable)),
      lub_(std::move(lubTable)),
      true_(trueId),
      false_(falseId),
      declared_(std::move(declared)) {
  if (names_.empty()) throw LatticeError("empty universe");
  if (names_.size() > kMaxUniverse) {
    throw LatticeError("universe too large (" + std::to_string(names_.size()) +
                       " elements, limit " + std::to_string(kMaxUniverse) + ")");
  }
  const std::size_t n = names_.size();
  if (leq_.size() != n * n || lub_.size() != n * n) {
    throw LatticeError("malformed lattice tables");
  }
}

std::optional<ConstraintId> ConstraintSystem::find(std::string_view name) const {
  auto it = declared_.find(name);
  if (it == declared_.end()) return std::nullopt;
  return it->second;
}

std::vector<ConstraintId> ConstraintSystem::minimal_enablers(ConstraintId c,
                                                             ConstraintId d) const {
  const std::uint32_t n = static_cast<std::uint32_t>(size());
  std::vector<ConstraintId> qualifying;
  for (std::uint32_t a = 0; a < n; ++a) {
    if (leq(c, lub(d, ConstraintId{a}))) qualifying.push_back(ConstraintId{a});
  }
  std::vector<ConstraintId> minimal;
  for (ConstraintId a : qualifying) {
    bool isMin = true;
    for (ConstraintId b : qualifying) {
      if (b != a && leq(b, a)) {
        isMin = false;
        break;
      }
    }
    if (isMin) minimal.push_back(a);
  }
  return minimal;
}

std::vector<bool> ConstraintSystem::down_set(ConstraintId c) const {
  const std::uint32_t n = static_cast<std::uint32_t>(size());
  std::vector<bool> down(n, false);
  for (std::uint32_t e = 0; e < n; ++e) down[e] = leq(ConstraintId{e}, c);
  return down;
}

void ConstraintSystem::validate() const {
  const std::uint32_t n = static_cast<std::uint32_t>(size());
  auto id = [](std::uint32_t i) { return ConstraintId{i}; };

  // Unique display names.
  {
    std::set<std::string> seen;
    for (const auto& s : names_) {
      if (!seen.insert(s).second) throw LatticeError("duplicate element name '" + s + "'");
    }
  }
  if (true_.index >= n || false_.index >= n) throw LatticeError("true/false out of range");

  // Partial order laws.
  for (std::uint32_t a = 0; a < n; ++a) {
    if (!leq(id(a), id(a))) throw LatticeError("leq not reflexive at '" + names_[a] + "'");
    if (!leq(true_, id(a))) throw LatticeError("'true' is not the least element");
    if (!leq(id(a), false_)) throw LatticeError("'false' is not the greatest element");
  }
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = 0; b < n; ++b) {
      if (a != b && leq(id(a), id(b)) && leq(id(b), id(a))) {
        throw LatticeError("leq not antisymmetric on '" + names_[a] + "', '" + names_[b] + "'");
      }
      if (!leq(id(a), id(b))) continue;
      for (std::uint32_t c = 0; c < n; ++c) {
        if (leq(id(b), id(c)) && !leq(id(a), id(c))) {
          throw LatticeError("leq not transitive via '" + names_[b] + "'");
        }
      }
    }
  }

  // lub laws: least upper bound, commutative, idempotent, associative.
  for (std::uint32_t a = 0; a < n; ++a) {
    if (lub(id(a), id(a)) != id(a)) throw LatticeError("lub not idempotent at '" + names_[a] + "'");
    for (std::uint32_t b = 0; b < n; ++b) {
      ConstraintId u = lub(id(a), id(b));
      if (u.index >= n) throw LatticeError("lub entry out of range");
      if (u != lub(id(b), id(a))) {
        throw LatticeError("lub not commutative on '" + names_[a] + "', '" + names_[b] + "'");
      }
      if (!leq(id(a), u) || !leq(id(b), u)) {
        throw LatticeError("lub('" + names_[a] + "', '" + names_[b] + "') is not an upper bound");
      }
      for (std::uint32_t e = 0; e < n; ++e) {
        if (leq(id(a), id(e)) && leq(id(b), id(e)) && !leq(u, id(e))) {
          throw LatticeError("lub('" + names_[a] + "', '" + names_[b] +
                             "') is not the least upper bound (below '" + names_[e] + "')");
        }
      }
    }
  }
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = 0; b < n; ++b) {
      for (std::uint32_t c = 0; c < n; ++c) {
        if (lub(lub(id(a), id(b)), id(c)) != lub(id(a), lub(id(b), id(c)))) {
          throw LatticeError("lub not associative");
        }
      }
    }
  }
}

ConstraintSystem build_atoms_lattice(const std::vector<std::string>& atoms) {
  if (atoms.empty()) throw LatticeError("atoms lattice needs at least one atom");
  if (atoms.size() > 7) {
    throw LatticeError("too many atoms (" + std::to_string(atoms.size()) + "); limit is 7");
  }
  std::set<std::string> seen;
  for (const auto& a : atoms) {
    check_declared_name(a);
    if (a == "true" || a == "false") throw LatticeError("atom may not be named '" + a + "'");
    if (!seen.insert(a).second) throw LatticeError("duplicate atom name '" + a + "'");
  }

  const std::uint32_t k = static_cast<std::uint32_t>(atoms.size());
  const std::uint32_t subsets = 1u << k;
  const std::uint32_t n = subsets + 1;  // all subsets + false
  const std::uint32_t falseIdx = subsets;

  std::vector<std::string> names(n);
  for (std::uint32_t m = 0; m < subsets; ++m) {
    if (m == 0) {
      names[m] = "true";
      continue;
    }
    std::string s;
    for (std::uint32_t i = 0; i < k; ++i) {
      if (m & (1u << i)) {
        if (!s.empty()) s += '&';
        s += atoms[i];
      }
    }
    names[m] = s;
  }
  names[falseIdx] = "false";

  std::vector<bool> leq(static_cast<std::size_t>(n) * n, false);
  std::vector<std::uint32_t> lub(static_cast<std::size_t>(n) * n, 0);
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = 0; b < n; ++b) {
      bool le;
      std::uint32_t u;
      if (b == falseIdx) {
        le = true;
        u = falseIdx;
      } else if (a == falseIdx) {
        le = false;
        u = falseIdx;
      } else {
        le = (a & b) == a;  // subset
        u = a | b;          // union
      }
      leq[static_cast<std::size_t>(a) * n + b] = le;
      lub[static_cast<std::size_t>(a) * n + b] = u;
    }
  }

  std::map<std::string, ConstraintId, std::less<>> declared;
  declared.emplace("true", ConstraintId{0});
  declared.emplace("false", ConstraintId{falseIdx});
  for (std::uint32_t i = 0; i < k; ++i) declared.emplace(atoms[i], ConstraintId{1u << i});

  ConstraintSystem cs(std::move(names), std::move(leq), std::move(lub), ConstraintId{0},
                      ConstraintId{falseIdx}, std::move(declared));
  cs.validate();
  return cs;
}

namespace {

bool satisfies(CmpOp op, int lhs, int rhs) {
  switch (op) {
    case CmpOp::Lt: return lhs < rhs;
    case CmpOp::Le: return lhs <= rhs;
    case CmpOp::Eq: return lhs == rhs;
    case CmpOp::Ne: return lhs != rhs;
    case CmpOp::Ge: return lhs >= rhs;
    case CmpOp::Gt: return lhs > rhs;
  }
  return false;
}

}  // namespace

ConstraintSystem build_bounds_lattice(const std::vector<BoundsVar>& vars,
                                      const std::vector<BoundsBase>& base) {
  if (vars.empty()) throw LatticeError("bounds lattice needs at least one variable");
  std::map<std::string, std::size_t> varIndex;
  std::size_t space = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i].lo > vars[i].hi) {
      throw LatticeError("empty range for variable '" + vars[i].name + "'");
    }
    if (!varIndex.emplace(vars[i].name, i).second) {
      throw LatticeError("duplicate variable '" + vars[i].name + "'");
    }
    std::size_t width = static_cast<std::size_t>(vars[i].hi - vars[i].lo + 1);
    space *= width;
    if (space > 1'000'000) throw LatticeError("assignment space too large");
  }

  // Extension of each base predicate over the full assignment space,
  // enumerated in mixed radix (first declared variable varies slowest).
  auto extension_of = [&](const BoundsBase& b) {
    auto it = varIndex.find(b.var);
    if (it == varIndex.end()) {
      throw LatticeError("base '" + b.name + "' mentions undeclared variable '" + b.var + "'");
    }
    std::vector<bool> ext(space, false);
    for (std::size_t a = 0; a < space; ++a) {
      std::size_t rest = a;
      int value = 0;
      for (std::size_t v = vars.size(); v-- > 0;) {
        std::size_t width = static_cast<std::size_t>(vars[v].hi - vars[v].lo + 1);
        int val = vars[v].lo + static_cast<int>(rest % width);
        rest /= width;
        if (v == it->second) value = val;
      }
      ext[a] = satisfies(b.op, value, b.value);
    }
    return ext;
  };

  const std::vector<bool> full(space, true);
  const std::vector<bool> empty(space, false);

  std::vector<std::vector<bool>> extensions;  // by element id
  std::map<std::vector<bool>, std::uint32_t> byExtension;
  auto intern = [&](const std::vector<bool>& ext) {
    auto it = byExtension.find(ext);
    if (it != byExtension.end()) return it->second;
    std::uint32_t id = static_cast<std::uint32_t>(extensions.size());
    if (extensions.size() >= ConstraintSystem::kMaxUniverse) {
      throw LatticeError("bounds lattice closure exceeds the universe limit");
    }
    extensions.push_back(ext);
    byExtension.emplace(ext, id);
    return id;
  };

  std::uint32_t trueIdx = intern(full);
  std::uint32_t falseIdx = intern(empty);

  std::set<std::string> baseNames;
  std::vector<std::uint32_t> baseIds;
  for (const auto& b : base) {
    check_declared_name(b.name);
    if (b.name == "true" || b.name == "false") {
      throw LatticeError("base constraint may not be named '" + b.name + "'");
    }
    if (!baseNames.insert(b.name).second) {
      throw LatticeError("duplicate base constraint '" + b.name + "'");
    }
    baseIds.push_back(intern(extension_of(b)));
  }

  // Close under pairwise intersection.
  for (std::size_t i = 0; i < extensions.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      std::vector<bool> meet(space);
      for (std::size_t a = 0; a < space; ++a) meet[a] = extensions[i][a] && extensions[j][a];
      intern(meet);
    }
  }

  const std::uint32_t n = static_cast<std::uint32_t>(extensions.size());
  auto subset = [&](std::uint32_t a, std::uint32_t b) {  // ext[a] included in ext[b]
    for (std::size_t i = 0; i < space; ++i) {
      if (extensions[a][i] && !extensions[b][i]) return false;
    }
    return true;
  };

  // Canonical display names: the conjunction of the extension-minimal base
  // constraints this element entails ("true"/"false" for the extremes).
  std::vector<std::string> names(n);
  for (std::uint32_t e = 0; e < n; ++e) {
    if (e == trueIdx) {
      names[e] = "true";
      continue;
    }
    if (e == falseIdx) {
      names[e] = "false";
      continue;
    }
    std::vector<std::size_t> entailed;  // base positions, extension-deduplicated
    for (std::size_t b = 0; b < baseIds.size(); ++b) {
      if (!subset(e, baseIds[b])) continue;
      bool dup = false;
      for (std::size_t prev : entailed) dup = dup || baseIds[prev] == baseIds[b];
      if (!dup) entailed.push_back(b);
    }
    std::string s;
    for (std::size_t b : entailed) {
      bool maximal = true;
      for (std::size_t b2 : entailed) {
        if (b2 != b && subset(baseIds[b2], baseIds[b])) {
          maximal = false;  // b is implied by a stronger kept base
          break;
        }
      }
      if (!maximal) continue;
      if (!s.empty()) s += '&';
      s += base[b].name;
    }
    names[e] = s;
  }

  std::vector<bool> leq(static_cast<std::size_t>(n) * n, false);
  std::vector<std::uint32_t> lub(static_cast<std::size_t>(n) * n, 0);
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = 0; b < n; ++b) {
      leq[static_cast<std::size_t>(a) * n + b] = subset(b, a);  // reverse inclusion
      std::vector<bool> meet(space);
      for (std::size_t i = 0; i < space; ++i) meet[i] = extensions[a][i] && extensions[b][i];
      lub[static_cast<std::size_t>(a) * n + b] = byExtension.at(meet);
    }
  }

  std::map<std::string, ConstraintId, std::less<>> declared;
  declared.emplace("true", ConstraintId{trueIdx});
  declared.emplace("false", ConstraintId{falseIdx});
  for (std::size_t b = 0; b < base.size(); ++b) {
    declared.emplace(base[b].name, ConstraintId{baseIds[b]});
  }

  ConstraintSystem cs(std::move(names), std::move(leq), std::move(lub), ConstraintId{trueIdx},
                      ConstraintId{falseIdx}, std::move(declared));
  cs.validate();
  return cs;
}

ConstraintSystem build_table_lattice(
    const std::vector<std::string>& elements,
    const std::vector<std::pair<std::string, std::string>>& leqPairs,
    const std::vector<TableLub>& lubEntries) {
  std::map<std::string, ConstraintId, std::less<>> declared;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const std::string& name = elements[i];
    if (name != "true" && name != "false") check_declared_name(name);
    if (!declared.emplace(name, ConstraintId{static_cast<std::uint32_t>(i)}).second) {
      throw LatticeError("duplicate element name '" + name + "'");
    }
  }
  auto lookup = [&](const std::string& name) {
    auto it = declared.find(name);
    if (it == declared.end()) throw LatticeError("unknown element '" + name + "'");
    return it->second;
  };
  if (declared.find("true") == declared.end() || declared.find("false") == declared.end()) {
    throw LatticeError("table lattice must declare elements named 'true' and 'false'");
  }
  ConstraintId trueId = lookup("true");
  ConstraintId falseId = lookup("false");

  const std::uint32_t n = static_cast<std::uint32_t>(elements.size());
  if (n > ConstraintSystem::kMaxUniverse) throw LatticeError("universe too large");
  std::vector<bool> leq(static_cast<std::size_t>(n) * n, false);
  auto le = [&](std::uint32_t a, std::uint32_t b) -> std::vector<bool>::reference {
    return leq[static_cast<std::size_t>(a) * n + b];
  };

  for (std::uint32_t a = 0; a < n; ++a) {
    le(a, a) = true;
    le(trueId.index, a) = true;
    le(a, falseId.index) = true;
  }
  for (const auto& [low, high] : leqPairs) le(lookup(low).index, lookup(high).index) = true;
  // Transitive closure: declared pairs only need to cover the Hasse diagram.
  for (std::uint32_t k = 0; k < n; ++k) {
    for (std::uint32_t a = 0; a < n; ++a) {
      if (!le(a, k)) continue;
      for (std::uint32_t b = 0; b < n; ++b) {
        if (le(k, b)) le(a, b) = true;
      }
    }
  }

  constexpr std::uint32_t kUnset = ~0u;
  std::vector<std::uint32_t> lub(static_cast<std::size_t>(n) * n, kUnset);
  auto setlub = [&](std::uint32_t a, std::uint32_t b, std::uint32_t r) {
    std::uint32_t& cell = lub[static_cast<std::size_t>(a) * n + b];
    if (cell != kUnset && cell != r) {
      throw LatticeError("conflicting lub entries for '" + elements[a] + "', '" + elements[b] + "'");
    }
    cell = r;
  };
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = 0; b < n; ++b) {
      if (le(a, b)) setlub(a, b, b);
      if (le(b, a)) setlub(a, b, a);
    }
  }
  for (const auto& entry : lubEntries) {
    std::uint32_t a = lookup(entry.a).index;
    std::uint32_t b = lookup(entry.b).index;
    std::uint32_t r = lookup(entry.result).index;
    setlub(a, b, r);
    setlub(b, a, r);
  }
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = 0; b < n; ++b) {
      if (lub[static_cast<std::size_t>(a) * n + b] == kUnset) {
        throw LatticeError("missing lub entry for incomparable pair '" + elements[a] + "', '" +
                           elements[b] + "'");
      }
    }
  }

  ConstraintSystem cs(elements, std::move(leq), std::move(lub), trueId, falseId,
                      std::move(declared));
  cs.validate();
  return cs;
}

}  // namespace ccp
