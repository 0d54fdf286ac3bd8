#include "rbn/serialize.hpp"

#include <json.hpp>

namespace rbn {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr std::string_view kFormat = "rbn-genome/1";

ordered_json topology_json(const Topology& t) {
  if (t.kind() == TopologyKind::Full) return ordered_json{{"kind", "full"}, {"r", t.node_count()}};
  return ordered_json{{"kind", "grid"}, {"rows", t.rows()}, {"cols", t.cols()}};
}

const json& need(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw SchemaError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

int need_int(const json& obj, const std::string& key, const std::string& path) {
  const json& v = need(obj, key, path);
  if (!v.is_number_integer()) throw SchemaError(path.empty() ? key : path + "." + key, "expected an integer");
  return v.get<int>();
}

bool need_bool(const json& obj, const std::string& key, const std::string& path) {
  const json& v = need(obj, key, path);
  if (!v.is_boolean()) throw SchemaError(path + "." + key, "expected true/false");
  return v.get<bool>();
}

std::string need_string(const json& obj, const std::string& key, const std::string& path) {
  const json& v = need(obj, key, path);
  if (!v.is_string()) throw SchemaError(path.empty() ? key : path + "." + key, "expected a string");
  return v.get<std::string>();
}

Topology topology_from(const json& t, const std::string& path) {
  const std::string kind = need_string(t, "kind", path);
  try {
    if (kind == "full") return Topology::full(need_int(t, "r", path));
    if (kind == "grid") return Topology::grid(need_int(t, "rows", path), need_int(t, "cols", path));
  } catch (const ContractError& e) {
    throw SchemaError(path, e.what());
  }
  throw SchemaError(path + ".kind", "expected \"full\" or \"grid\"");
}

std::vector<NodeId> id_list(const json& node, const std::string& key, const std::string& path, int arity) {
  const json& v = need(node, key, path);
  const std::string here = path + "." + key;
  if (!v.is_array()) throw SchemaError(here, "expected a list of node ids");
  if (static_cast<int>(v.size()) != arity)
    throw SchemaError(here, "expected " + std::to_string(arity) + " ids, got " + std::to_string(v.size()));
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_integer()) throw SchemaError(here + "[" + std::to_string(i) + "]", "expected an integer");
    out.push_back(v[i].get<NodeId>());
  }
  return out;
}

template <class Table>
Table bit_table(const json& node, const std::string& key, const std::string& path, int arity) {
  const std::string here = path + "." + key;
  Table t;
  try {
    t = Table::parse(need_string(node, key, path));
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    throw SchemaError(here, e.what());
  }
  if (t.arity() != arity)
    throw SchemaError(here, "expected " + std::to_string(1u << arity) + " entries, got " + std::to_string(t.size()));
  return t;
}

RewireTable rewire_table(const json& node, const std::string& path, int arity) {
  const json& v = need(node, "rewire", path);
  const std::string here = path + ".rewire";
  RewireTable t(arity, arity);
  if (!v.is_array() || v.size() != t.rows())
    throw SchemaError(here, "expected " + std::to_string(t.rows()) + " rows of shifts");
  for (std::size_t r = 0; r < v.size(); ++r) {
    const std::string row_path = here + "[" + std::to_string(r) + "]";
    if (!v[r].is_array() || static_cast<int>(v[r].size()) != arity)
      throw SchemaError(row_path, "expected " + std::to_string(arity) + " shifts");
    for (int j = 0; j < arity; ++j) {
      const json& s = v[r][static_cast<std::size_t>(j)];
      if (!s.is_number_integer() || s.get<int>() < -kMaxShift || s.get<int>() > kMaxShift)
        throw SchemaError(row_path + "[" + std::to_string(j) + "]", "shift must be an integer in [-5, 5]");
      t.set_shift(r, j, s.get<int>());
    }
  }
  return t;
}

// Tracks the innermost open field while parsing so that a truncated document
// can be reported by path.
class PathTracker {
 public:
  bool on_event(int /*depth*/, json::parse_event_t event, json& parsed) {
    using E = json::parse_event_t;
    switch (event) {
      case E::object_start: frames_.push_back({false, "", 0}); break;
      case E::array_start: frames_.push_back({true, "", 0}); break;
      case E::key:
        if (!frames_.empty()) frames_.back().key = parsed.get<std::string>();
        break;
      case E::object_end:
      case E::array_end:
        if (!frames_.empty()) frames_.pop_back();
        element_done();
        break;
      case E::value: element_done(); break;
    }
    return true;
  }

  std::string path() const {
    std::string out;
    for (const auto& f : frames_) {
      if (f.array) {
        out += "[" + std::to_string(f.index) + "]";
      } else if (!f.key.empty()) {
        if (!out.empty()) out += ".";
        out += f.key;
      }
    }
    return out.empty() ? "<document>" : out;
  }

 private:
  struct Frame {
    bool array;
    std::string key;
    int index;
  };

  void element_done() {
    if (!frames_.empty() && frames_.back().array) ++frames_.back().index;
  }

  std::vector<Frame> frames_;
};

}  // namespace

std::string topology_to_json(const Topology& t) { return topology_json(t).dump(); }

Topology topology_from_json(std::string_view text) {
  json t;
  try {
    t = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("topology", e.what());
  }
  return topology_from(t, "topology");
}

std::string serialize_genome(const NetworkGenome& g) {
  std::string out = "{\n";
  auto field = [&](std::string_view key, const ordered_json& v) {
    out += "  \"" + std::string(key) + "\": " + v.dump() + ",\n";
  };
  field("format", kFormat);
  field("r", g.node_count());
  field("b", g.arity);
  field("topology", topology_json(g.topology));
  field("function_set", to_string(g.function_set));
  field("mode", to_string(g.mode));
  out += "  \"nodes\": [\n";
  for (NodeId id = 1; id <= g.node_count(); ++id) {
    const NodeGenome& n = g.node(id);
    ordered_json rewire = ordered_json::array();
    for (std::size_t r = 0; r < n.rewire.rows(); ++r) {
      ordered_json row = ordered_json::array();
      for (auto s : n.rewire.row(r)) row.push_back(int{s});
      rewire.push_back(std::move(row));
    }
    const ordered_json rec{{"id", id},
                           {"function", n.function.to_string()},
                           {"inputs", n.inputs},
                           {"structural", n.structural},
                           {"structural_controls", n.structural_controls},
                           {"rewire", std::move(rewire)},
                           {"functional", n.functional},
                           {"functional_controls", n.functional_controls},
                           {"refunc", n.refunc.to_string()}};
    out += "    " + rec.dump() + (id < g.node_count() ? ",\n" : "\n");
  }
  out += "  ]\n}\n";
  return out;
}

NetworkGenome deserialize_genome(std::string_view text) {
  PathTracker tracker;
  json doc;
  try {
    doc = json::parse(text, [&](int depth, json::parse_event_t ev, json& parsed) {
      return tracker.on_event(depth, ev, parsed);
    });
  } catch (const json::parse_error& e) {
    throw SchemaError(tracker.path(), std::string("malformed or truncated document (") + e.what() + ")");
  }

  if (!doc.is_object()) throw SchemaError("<document>", "expected an object");
  if (auto it = doc.find("format"); it != doc.end() && *it != kFormat)
    throw SchemaError("format", "unsupported format " + it->dump());

  NetworkGenome g;
  const int r = need_int(doc, "r", "");
  g.arity = need_int(doc, "b", "");
  if (g.arity < 1 || g.arity > kMaxArity) throw SchemaError("b", "must be in 1..6");
  g.topology = topology_from(need(doc, "topology", ""), "topology");
  try {
    g.function_set = parse_function_set(need_string(doc, "function_set", ""));
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    throw SchemaError("function_set", e.what());
  }
  try {
    g.mode = parse_dynamism_mode(need_string(doc, "mode", ""));
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    throw SchemaError("mode", e.what());
  }

  const json& nodes = need(doc, "nodes", "");
  if (!nodes.is_array()) throw SchemaError("nodes", "expected a list");
  if (static_cast<int>(nodes.size()) != r)
    throw SchemaError("nodes", "expected " + std::to_string(r) + " node records, got " + std::to_string(nodes.size()));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string path = "nodes[" + std::to_string(i) + "]";
    const json& n = nodes[i];
    if (need_int(n, "id", path) != static_cast<int>(i) + 1)
      throw SchemaError(path + ".id", "expected " + std::to_string(i + 1));
    NodeGenome node;
    node.function = bit_table<TruthTable>(n, "function", path, g.arity);
    node.inputs = id_list(n, "inputs", path, g.arity);
    node.structural = need_bool(n, "structural", path);
    node.structural_controls = id_list(n, "structural_controls", path, g.arity);
    node.rewire = rewire_table(n, path, g.arity);
    node.functional = need_bool(n, "functional", path);
    node.functional_controls = id_list(n, "functional_controls", path, g.arity);
    node.refunc = bit_table<RefuncTable>(n, "refunc", path, g.arity);
    g.nodes.push_back(std::move(node));
  }
  return g;
}

}  // namespace rbn
