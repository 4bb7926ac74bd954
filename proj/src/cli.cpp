#include "ccp/cli.hpp"

#include <algorithm>
#include <functional>
#include <ostream>

#include <json.hpp>

#include "ccp/errors.hpp"
#include "ccp/export.hpp"
#include "ccp/specfile.hpp"

namespace ccp::cli {

namespace {

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const StateCapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kCapExceeded;
  } catch (const LoadError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageOrLoadError;
  }
}

nlohmann::ordered_json witness_to_json(const Witness& w, const Workspace& ws) {
  nlohmann::ordered_json doc;
  switch (w.kind) {
    case Witness::Kind::BarbMismatch: doc["kind"] = "barb-mismatch"; break;
    case Witness::Kind::UnmatchedTransition: doc["kind"] = "unmatched-transition"; break;
    case Witness::Kind::ContextSplit: doc["kind"] = "context-split"; break;
    case Witness::Kind::IndirectSplit: doc["kind"] = "indirect-split"; break;
  }
  doc["iteration"] = w.iteration;
  if (w.transition) {
    doc["transition"] = {{"source", config_literal(w.transition->source, ws.pool, ws.cs)},
                         {"label", ws.cs.name(w.transition->label)},
                         {"target", config_literal(w.transition->target, ws.pool, ws.cs)}};
  }
  if (w.barb) doc["barb"] = ws.cs.name(*w.barb);
  doc["description"] = w.description;
  return doc;
}

}  // namespace

int cmd_check(const CheckArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() {
    Workspace ws = load_spec_file(args.file);
    Configuration left = resolve_config_arg(ws, args.left);
    Configuration right = resolve_config_arg(ws, args.right);

    CheckOptions opts;
    opts.maxStates = args.maxStates;
    std::string trace;
    if (args.tracePartitions) {
      opts.onIteration = [&](std::size_t iteration, const Partition& p) {
        trace += "P^" + std::to_string(iteration) + ": " +
                 partition_to_string(p, ws.pool, ws.cs) + "\n";
      };
    }

    Verdict v;
    if (args.mode == "strong") {
      v = check_strong(left, right, ws.cs, ws.pool, opts);
    } else if (args.mode == "weak") {
      v = check_weak(left, right, ws.cs, ws.pool, opts);
    } else if (args.mode == "weak-milner") {
      v = check_weak_milner(left, right, ws.cs, ws.pool, opts);
    } else {
      throw LoadError("unknown mode '" + args.mode + "' (strong|weak|weak-milner)");
    }

    if (args.json) {
      nlohmann::ordered_json doc;
      doc["mode"] = args.mode;
      doc["left"] = config_literal(left, ws.pool, ws.cs);
      doc["right"] = config_literal(right, ws.pool, ws.cs);
      doc["equivalent"] = v.equivalent;
      doc["iterations"] = v.iterations;
      doc["states"] = v.exploredStates;
      doc["blocks"] = nlohmann::ordered_json::array();
      {
        std::vector<std::vector<std::string>> blocks;
        for (const auto& block : v.finalPartition.blocks()) {
          std::vector<std::string> names;
          for (const Configuration& g : block) names.push_back(config_literal(g, ws.pool, ws.cs));
          std::sort(names.begin(), names.end());
          blocks.push_back(std::move(names));
        }
        std::sort(blocks.begin(), blocks.end());
        for (auto& b : blocks) doc["blocks"].push_back(b);
      }
      doc["witness"] = v.witness ? witness_to_json(*v.witness, ws) : nlohmann::ordered_json();
      out << doc.dump(2) << "\n";
    } else {
      out << "mode: " << args.mode << "\n";
      out << "left: " << pretty_config(left, ws.pool, ws.cs) << "\n";
      out << "right: " << pretty_config(right, ws.pool, ws.cs) << "\n";
      out << "states: " << v.exploredStates << "\n";
      out << "iterations: " << v.iterations << "\n";
      if (args.tracePartitions) out << trace;
      out << "verdict: " << (v.equivalent ? "equivalent" : "not equivalent") << "\n";
      if (v.witness) {
        out << "witness: iteration " << v.witness->iteration << ": " << v.witness->description
            << "\n";
      }
    }
    return v.equivalent ? kEquivalent : kNotEquivalent;
  });
}

int cmd_lts(const LtsArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() {
    Workspace ws = load_spec_file(args.file);
    if (args.configs.empty()) throw LoadError("lts: at least one --config is required");
    std::vector<Configuration> initials;
    for (const std::string& c : args.configs) initials.push_back(resolve_config_arg(ws, c));

    Lts lts = reachable(initials, labeled_step_fn(ws.cs, ws.pool), args.maxStates);
    if (args.saturate == "milner") {
      lts = saturate_milner(lts, ws.cs);
    } else if (args.saturate == "full") {
      lts = saturate_lub(lts, ws.cs);
    } else if (args.saturate != "none") {
      throw LoadError("unknown saturation '" + args.saturate + "' (none|milner|full)");
    }

    if (args.format == "dot") {
      out << lts_to_dot(lts, ws.pool, ws.cs);
    } else if (args.format == "json") {
      out << lts_to_json(lts, ws.pool, ws.cs);
    } else {
      throw LoadError("unknown format '" + args.format + "' (dot|json)");
    }
    return kEquivalent;
  });
}

int cmd_oracle(const OracleArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() {
    Workspace ws = load_spec_file(args.file);
    Configuration left = resolve_config_arg(ws, args.left);
    Configuration right = resolve_config_arg(ws, args.right);

    OracleResult r;
    if (args.mode == "strong") {
      r = oracle_strong(left, right, ws.cs, ws.pool, args.maxStates);
    } else if (args.mode == "weak") {
      r = oracle_weak(left, right, ws.cs, ws.pool, args.maxStates);
    } else {
      throw LoadError("unknown mode '" + args.mode + "' (strong|weak)");
    }

    out << "mode: " << args.mode << "\n";
    out << "left: " << pretty_config(left, ws.pool, ws.cs) << "\n";
    out << "right: " << pretty_config(right, ws.pool, ws.cs) << "\n";
    out << "pair universe: " << r.pairUniverse << "\n";
    out << "verdict: " << (r.equivalent ? "equivalent" : "not equivalent") << "\n";
    return r.equivalent ? kEquivalent : kNotEquivalent;
  });
}

}  // namespace ccp::cli
