#include "ccp/export.hpp"

#include <algorithm>

#include <json.hpp>

namespace ccp {

namespace {

// Canonical state order: by pretty-printed term, then store name.
std::vector<Configuration> display_sorted(const std::set<Configuration>& states,
                                          const TermPool& pool, const ConstraintSystem& cs) {
  std::vector<Configuration> out(states.begin(), states.end());
  std::stable_sort(out.begin(), out.end(), [&](const Configuration& a, const Configuration& b) {
    std::string ta = pool.pretty(a.process, cs);
    std::string tb = pool.pretty(b.process, cs);
    if (ta != tb) return ta < tb;
    return cs.name(a.store) < cs.name(b.store);
  });
  return out;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string lts_to_dot(const Lts& lts, const TermPool& pool, const ConstraintSystem& cs) {
  std::vector<Configuration> states = display_sorted(lts.states, pool, cs);
  std::map<Configuration, std::size_t> ids;
  for (std::size_t i = 0; i < states.size(); ++i) ids.emplace(states[i], i);
  std::set<Configuration> initials(lts.initials.begin(), lts.initials.end());

  std::string out = "digraph lts {\n  rankdir=LR;\n  node [shape=box];\n";
  for (std::size_t i = 0; i < states.size(); ++i) {
    out += "  s" + std::to_string(i) + " [label=\"" +
           dot_escape(pretty_config(states[i], pool, cs)) + "\"";
    if (initials.count(states[i])) out += ", style=bold";
    out += "];\n";
  }
  std::vector<std::tuple<std::size_t, std::string, std::size_t, bool>> edges;
  for (const Transition& t : lts.transitions) {
    edges.emplace_back(ids.at(t.source), cs.name(t.label), ids.at(t.target),
                       t.label == cs.true_id());
  }
  std::sort(edges.begin(), edges.end());
  for (const auto& [src, label, dst, isTrue] : edges) {
    out += "  s" + std::to_string(src) + " -> s" + std::to_string(dst);
    if (!isTrue) out += " [label=\"" + dot_escape(label) + "\"]";
    out += ";\n";
  }
  out += "}\n";
  return out;
}

std::string lts_to_json(const Lts& lts, const TermPool& pool, const ConstraintSystem& cs) {
  std::vector<Configuration> states = display_sorted(lts.states, pool, cs);
  std::map<Configuration, std::size_t> ids;
  for (std::size_t i = 0; i < states.size(); ++i) ids.emplace(states[i], i);

  nlohmann::ordered_json doc;
  doc["states"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < states.size(); ++i) {
    doc["states"].push_back({{"id", i},
                             {"term", pool.pretty(states[i].process, cs)},
                             {"store", cs.name(states[i].store)}});
  }
  std::vector<std::tuple<std::size_t, std::string, std::size_t>> edges;
  for (const Transition& t : lts.transitions) {
    edges.emplace_back(ids.at(t.source), cs.name(t.label), ids.at(t.target));
  }
  std::sort(edges.begin(), edges.end());
  doc["transitions"] = nlohmann::ordered_json::array();
  for (const auto& [src, label, dst] : edges) {
    doc["transitions"].push_back({{"src", src}, {"label", label}, {"dst", dst}});
  }
  std::vector<std::size_t> initialIds;
  for (const Configuration& g : lts.initials) initialIds.push_back(ids.at(g));
  std::sort(initialIds.begin(), initialIds.end());
  initialIds.erase(std::unique(initialIds.begin(), initialIds.end()), initialIds.end());
  doc["initials"] = initialIds;
  return doc.dump(2) + "\n";
}

std::string partition_to_string(const Partition& partition, const TermPool& pool,
                                const ConstraintSystem& cs) {
  // Blocks ordered by their first member in display order.
  std::vector<std::vector<std::string>> blocks;
  for (const auto& block : partition.blocks()) {
    std::vector<std::string> names;
    for (const Configuration& g : block) names.push_back(pretty_config(g, pool, cs));
    std::sort(names.begin(), names.end());
    blocks.push_back(std::move(names));
  }
  std::sort(blocks.begin(), blocks.end());
  std::string out;
  for (const auto& block : blocks) {
    out += "{ ";
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (i) out += "  ";
      out += block[i];
    }
    out += " }";
  }
  return out;
}

}  // namespace ccp
