#include "qwalk/json_io.hpp"

#include <json.hpp>

#include <map>

namespace qwalk {

using nlohmann::json;

namespace {

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("", std::string("not valid JSON: ") + e.what());
  }
}

const json& require(const json& doc, const char* field) {
  if (!doc.contains(field)) throw ParseError(field, "missing field");
  return doc.at(field);
}

int require_int(const json& node, const char* field) {
  if (!node.is_number_integer()) throw ParseError(field, "expected an integer");
  return node.get<int>();
}

}  // namespace

WalkInstance parse_instance(const std::string& text) {
  json doc = parse_document(text);
  if (!doc.is_object()) throw ParseError("", "top level must be an object");

  int vertices = require_int(require(doc, "vertices"), "vertices");

  const json& jedges = require(doc, "edges");
  if (!jedges.is_array()) throw ParseError("edges", "expected an array of [u,v] pairs");
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (const auto& je : jedges) {
    if (!je.is_array() || je.size() != 2) throw ParseError("edges", "expected [u,v] pairs");
    edges.emplace_back(require_int(je[0], "edges"), require_int(je[1], "edges"));
  }

  std::map<VertexId, int> loops;
  if (doc.contains("loops")) {
    const json& jloops = doc.at("loops");
    if (!jloops.is_object()) throw ParseError("loops", "expected an object {vertex: count}");
    for (auto it = jloops.begin(); it != jloops.end(); ++it) {
      VertexId v;
      try {
        v = std::stoi(it.key());
      } catch (...) {
        throw ParseError("loops", "vertex key '" + it.key() + "' is not an integer");
      }
      loops[v] = require_int(it.value(), "loops");
    }
  }

  std::set<VertexId> sinks;
  if (doc.contains("sink")) {
    const json& jsink = doc.at("sink");
    if (!jsink.is_array()) throw ParseError("sink", "expected an array of vertex ids");
    for (const auto& js : jsink) sinks.insert(require_int(js, "sink"));
  }

  InitialSpec initial;
  const json& jinit = require(doc, "initial");
  if (!jinit.is_object()) throw ParseError("initial", "expected {\"vertex\": v} or {\"edges\": [...]}");
  if (jinit.contains("vertex")) {
    initial.vertex = require_int(jinit.at("vertex"), "initial.vertex");
  } else if (jinit.contains("edges")) {
    const json& jie = jinit.at("edges");
    if (!jie.is_array() || jie.empty())
      throw ParseError("initial.edges", "expected a non-empty array of directed edge ids");
    for (const auto& je : jie) initial.edges.push_back(require_int(je, "initial.edges"));
  } else {
    throw ParseError("initial", "needs either \"vertex\" or \"edges\"");
  }

  return make_instance(make_graph(vertices, std::move(edges), loops), std::move(sinks),
                       std::move(initial));
}

std::string serialize_instance(const WalkInstance& inst) {
  json doc;
  doc["vertices"] = inst.structure.vertex_count;
  json jedges = json::array();
  for (auto [u, v] : inst.structure.edges) jedges.push_back({u, v});
  doc["edges"] = std::move(jedges);
  json jloops = json::object();
  for (VertexId v = 0; v < inst.structure.vertex_count; ++v)
    if (inst.structure.loops_at(v) > 0) jloops[std::to_string(v)] = inst.structure.loops_at(v);
  if (!jloops.empty()) doc["loops"] = std::move(jloops);
  doc["sink"] = inst.sink_vertices;
  if (inst.initial_vertex)
    doc["initial"] = {{"vertex", *inst.initial_vertex}};
  else
    doc["initial"] = {{"edges", inst.initial_edges}};
  return doc.dump(2);
}

}  // namespace qwalk
