#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "ccp/semantics.hpp"

namespace ccp {

// Everything a loaded spec file provides: the constraint system, the term
// pool all parsed terms live in, the (macro-expanded) process definitions
// and any named configurations.
struct Workspace {
  ConstraintSystem cs;
  TermPool pool;
  std::map<std::string, TermId, std::less<>> definitions;
  std::map<std::string, Configuration, std::less<>> configs;

  NameResolver resolver() const { return resolver_from(definitions); }
};

// Line-oriented spec file with bracketed sections; '#' starts a comment.
//
//   [lattice]
//   kind atoms | bounds | table
//   ... kind-specific lines ...
//
//   [define NAME]     one process term (may span lines)
//   [config NAME]     one configuration literal "<term, store>"
//
// atoms:   atoms NAME...
// bounds:  var NAME LO..HI          base NAME VAR OP VALUE
// table:   elements NAME...         leq LOW HIGH        lub A B RESULT
//
// Definitions may reference each other in any order; cycles are rejected.
Workspace load_spec_text(std::string_view text, const std::string& origin = "<string>");
Workspace load_spec_file(const std::filesystem::path& path);

// Accepts either a "<term, store>" literal or the name of a [config]
// defined in the workspace.
Configuration resolve_config_arg(Workspace& ws, std::string_view arg);

}  // namespace ccp
