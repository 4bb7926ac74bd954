#include "ccp/specfile.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "ccp/errors.hpp"

namespace ccp {

namespace {

struct Section {
  std::string header;  // e.g. "lattice", "define P", "config left"
  std::size_t line;
  std::vector<std::pair<std::size_t, std::string>> body;  // (line number, text)
};

std::string trim(const std::string& s) {
  std::size_t first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  std::size_t last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::vector<Section> split_sections(std::string_view text, const std::string& origin) {
  std::vector<Section> sections;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineNo = 0;
  while (std::getline(in, raw)) {
    ++lineNo;
    std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw LoadError(origin + ":" + std::to_string(lineNo) + ": unterminated section header");
      }
      sections.push_back(Section{trim(line.substr(1, line.size() - 2)), lineNo, {}});
      continue;
    }
    if (sections.empty()) {
      throw LoadError(origin + ":" + std::to_string(lineNo) + ": content before first section");
    }
    sections.back().body.emplace_back(lineNo, line);
  }
  return sections;
}

int parse_int(const std::string& s, const std::string& where) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw LoadError(where + ": expected an integer, found '" + s + "'");
  }
}

CmpOp parse_op(const std::string& s, const std::string& where) {
  if (s == "<") return CmpOp::Lt;
  if (s == "<=") return CmpOp::Le;
  if (s == "=" || s == "==") return CmpOp::Eq;
  if (s == "!=") return CmpOp::Ne;
  if (s == ">=") return CmpOp::Ge;
  if (s == ">") return CmpOp::Gt;
  throw LoadError(where + ": unknown comparison operator '" + s + "'");
}

ConstraintSystem load_lattice(const Section& section, const std::string& origin) {
  auto where = [&](std::size_t line) { return origin + ":" + std::to_string(line); };
  std::string kind;
  std::vector<std::string> atoms;
  std::vector<BoundsVar> vars;
  std::vector<BoundsBase> base;
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> leqPairs;
  std::vector<TableLub> lubEntries;

  for (const auto& [lineNo, line] : section.body) {
    std::vector<std::string> tok = split_ws(line);
    const std::string& head = tok[0];
    if (head == "kind") {
      if (tok.size() != 2) throw LoadError(where(lineNo) + ": usage: kind atoms|bounds|table");
      kind = tok[1];
    } else if (head == "atoms") {
      atoms.insert(atoms.end(), tok.begin() + 1, tok.end());
    } else if (head == "var") {
      if (tok.size() != 3) throw LoadError(where(lineNo) + ": usage: var NAME LO..HI");
      std::size_t dots = tok[2].find("..");
      if (dots == std::string::npos) {
        throw LoadError(where(lineNo) + ": range must be written LO..HI");
      }
      vars.push_back(BoundsVar{tok[1], parse_int(tok[2].substr(0, dots), where(lineNo)),
                               parse_int(tok[2].substr(dots + 2), where(lineNo))});
    } else if (head == "base") {
      if (tok.size() != 5) throw LoadError(where(lineNo) + ": usage: base NAME VAR OP VALUE");
      base.push_back(BoundsBase{tok[1], tok[2], parse_op(tok[3], where(lineNo)),
                                parse_int(tok[4], where(lineNo))});
    } else if (head == "elements") {
      elements.insert(elements.end(), tok.begin() + 1, tok.end());
    } else if (head == "leq") {
      if (tok.size() != 3) throw LoadError(where(lineNo) + ": usage: leq LOW HIGH");
      leqPairs.emplace_back(tok[1], tok[2]);
    } else if (head == "lub") {
      if (tok.size() != 4) throw LoadError(where(lineNo) + ": usage: lub A B RESULT");
      lubEntries.push_back(TableLub{tok[1], tok[2], tok[3]});
    } else {
      throw LoadError(where(lineNo) + ": unknown lattice directive '" + head + "'");
    }
  }

  try {
    if (kind == "atoms") return build_atoms_lattice(atoms);
    if (kind == "bounds") return build_bounds_lattice(vars, base);
    if (kind == "table") return build_table_lattice(elements, leqPairs, lubEntries);
  } catch (const LatticeError& e) {
    throw LoadError(origin + ": [lattice]: " + e.what());
  }
  throw LoadError(origin + ":" + std::to_string(section.line) +
                  ": [lattice] section needs 'kind atoms|bounds|table'");
}

std::string body_text(const Section& section) {
  std::string text;
  for (const auto& [lineNo, line] : section.body) {
    (void)lineNo;
    if (!text.empty()) text += ' ';
    text += line;
  }
  return text;
}

}  // namespace

Workspace load_spec_text(std::string_view text, const std::string& origin) {
  std::vector<Section> sections = split_sections(text, origin);

  const Section* lattice = nullptr;
  std::map<std::string, const Section*> defines;
  std::vector<const Section*> configSections;
  for (const Section& s : sections) {
    std::vector<std::string> head = split_ws(s.header);
    if (head.size() == 1 && head[0] == "lattice") {
      if (lattice) throw LoadError(origin + ": more than one [lattice] section");
      lattice = &s;
    } else if (head.size() == 2 && head[0] == "define") {
      if (!defines.emplace(head[1], &s).second) {
        throw LoadError(origin + ": duplicate definition of '" + head[1] + "'");
      }
    } else if (head.size() == 2 && head[0] == "config") {
      configSections.push_back(&s);
    } else {
      throw LoadError(origin + ":" + std::to_string(s.line) + ": unknown section [" + s.header +
                      "]");
    }
  }
  if (!lattice) throw LoadError(origin + ": missing [lattice] section");

  Workspace ws{load_lattice(*lattice, origin), TermPool{}, {}, {}};

  // Definitions are non-recursive macros, expanded on demand so they may be
  // written in any order. A name on the expansion stack means a cycle.
  std::set<std::string> expanding;
  std::function<std::optional<TermId>(std::string_view)> resolve =
      [&](std::string_view name) -> std::optional<TermId> {
    auto done = ws.definitions.find(name);
    if (done != ws.definitions.end()) return done->second;
    auto raw = defines.find(std::string(name));
    if (raw == defines.end()) return std::nullopt;
    if (!expanding.insert(std::string(name)).second) {
      throw LoadError(origin + ": cyclic definition involving '" + std::string(name) + "'");
    }
    TermId t;
    try {
      t = parse_term(body_text(*raw->second), resolve, ws.cs, ws.pool);
    } catch (const ParseError& e) {
      throw LoadError(origin + ": in [define " + std::string(name) + "]: " + e.what());
    }
    expanding.erase(std::string(name));
    ws.definitions.emplace(std::string(name), t);
    return t;
  };
  for (const auto& [name, section] : defines) {
    (void)section;
    resolve(name);
  }

  for (const Section* s : configSections) {
    std::string name = split_ws(s->header)[1];
    try {
      Configuration g = parse_config(body_text(*s), resolve, ws.cs, ws.pool);
      if (!ws.configs.emplace(name, g).second) {
        throw LoadError(origin + ": duplicate configuration '" + name + "'");
      }
    } catch (const ParseError& e) {
      throw LoadError(origin + ": in [config " + name + "]: " + e.what());
    }
  }
  return ws;
}

Workspace load_spec_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open spec file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_spec_text(buffer.str(), path.string());
}

Configuration resolve_config_arg(Workspace& ws, std::string_view arg) {
  std::string trimmed = trim(std::string(arg));
  if (!trimmed.empty() && trimmed.front() == '<') {
    return parse_config(trimmed, ws.resolver(), ws.cs, ws.pool);
  }
  auto it = ws.configs.find(trimmed);
  if (it == ws.configs.end()) {
    throw LoadError("unknown configuration '" + trimmed + "' (not a literal, not a [config] name)");
  }
  return it->second;
}

}  // namespace ccp
