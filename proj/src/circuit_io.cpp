#include "neurorec/circuit_io.hpp"

#include <utility>

namespace neurorec {

using json = nlohmann::ordered_json;

namespace {

const char* role_name(PortRole r) { return r == PortRole::Input ? "input" : "output"; }

const char* kind_name(GadgetKind k) {
  return k == GadgetKind::ConstantEmitter ? "const_emit" : "join";
}

[[noreturn]] void schema_error(const std::string& what) {
  throw ParseError("circuit schema: " + what, 0, 0);
}

const json& field(const json& obj, const char* key) {
  if (!obj.is_object()) schema_error(std::string("expected object holding '") + key + "'");
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(std::string("missing key '") + key + "'");
  return *it;
}

template <typename T>
T integer(const json& obj, const char* key) {
  const auto& v = field(obj, key);
  if (!v.is_number_integer()) schema_error(std::string("'") + key + "' must be an integer");
  return v.get<T>();
}

const json& array(const json& obj, const char* key) {
  const auto& v = field(obj, key);
  if (!v.is_array()) schema_error(std::string("'") + key + "' must be an array");
  return v;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text,
                                                std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

json circuit_to_json(const Circuit& c) {
  json doc = json::object();
  json neurons = json::array();
  for (const auto& n : c.neurons) {
    json j;
    j["id"] = n.id;
    j["threshold"] = n.threshold;
    if (n.leak.is_infinite())
      j["leak"] = "inf";
    else
      j["leak"] = n.leak.steps();
    neurons.push_back(std::move(j));
  }
  json synapses = json::array();
  for (const auto& s : c.synapses) {
    json j;
    j["pre"] = s.pre;
    j["post"] = s.post;
    j["weight"] = s.weight;
    j["delay"] = s.delay;
    synapses.push_back(std::move(j));
  }
  json ports = json::array();
  for (const auto& p : c.ports) {
    json j;
    j["name"] = p.name;
    j["neuron"] = p.neuron;
    j["role"] = role_name(p.role);
    ports.push_back(std::move(j));
  }
  json injections = json::array();
  for (const auto& i : c.injections) {
    json j;
    j["neuron"] = i.neuron;
    j["value"] = i.value;
    j["time"] = i.time;
    injections.push_back(std::move(j));
  }
  json gadgets = json::array();
  for (const auto& g : c.gadgets) {
    json j;
    j["id"] = g.id;
    j["kind"] = kind_name(g.kind);
    if (g.kind == GadgetKind::ConstantEmitter)
      j["k"] = g.constant;
    else
      j["n"] = g.lines;
    j["inputs"] = g.inputs;
    json outs = json::array();
    for (const auto& o : g.outputs) {
      json oj;
      oj["line"] = o.line;
      oj["post"] = o.post;
      oj["weight"] = o.weight;
      oj["delay"] = o.delay;
      outs.push_back(std::move(oj));
    }
    j["outputs"] = std::move(outs);
    gadgets.push_back(std::move(j));
  }
  doc["neurons"] = std::move(neurons);
  doc["synapses"] = std::move(synapses);
  doc["ports"] = std::move(ports);
  doc["injections"] = std::move(injections);
  doc["gadgets"] = std::move(gadgets);
  return doc;
}

Circuit circuit_from_json(const json& doc) {
  Circuit c;
  for (const auto& j : array(doc, "neurons")) {
    NeuronSpec n;
    n.id = integer<NeuronId>(j, "id");
    n.threshold = integer<Value>(j, "threshold");
    const auto& leak = field(j, "leak");
    if (leak.is_string()) {
      if (leak.get<std::string>() != "inf") schema_error("leak string must be \"inf\"");
      n.leak = kInfiniteLeak;
    } else if (leak.is_number_integer()) {
      const auto steps = leak.get<std::int64_t>();
      if (steps < 0) schema_error("leak must be >= 0");
      n.leak = Leak(steps);
    } else {
      schema_error("leak must be an integer or \"inf\"");
    }
    c.neurons.push_back(n);
  }
  for (const auto& j : array(doc, "synapses"))
    c.synapses.push_back({integer<NeuronId>(j, "pre"), integer<NeuronId>(j, "post"),
                          integer<Value>(j, "weight"), integer<Time>(j, "delay")});
  for (const auto& j : array(doc, "ports")) {
    Port p;
    const auto& name = field(j, "name");
    if (!name.is_string()) schema_error("port name must be a string");
    p.name = name.get<std::string>();
    p.neuron = integer<NeuronId>(j, "neuron");
    const auto& role = field(j, "role");
    if (role == "input")
      p.role = PortRole::Input;
    else if (role == "output")
      p.role = PortRole::Output;
    else
      schema_error("port role must be \"input\" or \"output\"");
    c.ports.push_back(std::move(p));
  }
  for (const auto& j : array(doc, "injections"))
    c.injections.push_back({integer<NeuronId>(j, "neuron"), integer<Value>(j, "value"),
                            integer<Time>(j, "time")});
  if (doc.contains("gadgets")) {
    for (const auto& j : array(doc, "gadgets")) {
      NativeGadget g;
      g.id = integer<GadgetId>(j, "id");
      const auto& kind = field(j, "kind");
      if (kind == "const_emit") {
        g.kind = GadgetKind::ConstantEmitter;
        g.constant = integer<Value>(j, "k");
      } else if (kind == "join") {
        g.kind = GadgetKind::Join;
        g.lines = integer<std::uint32_t>(j, "n");
      } else {
        schema_error("gadget kind must be \"const_emit\" or \"join\"");
      }
      for (const auto& in : array(j, "inputs")) {
        if (!in.is_number_integer()) schema_error("gadget inputs must be integers");
        g.inputs.push_back(in.get<NeuronId>());
      }
      for (const auto& o : array(j, "outputs"))
        g.outputs.push_back({integer<std::uint32_t>(o, "line"), integer<NeuronId>(o, "post"),
                             integer<Value>(o, "weight"), integer<Time>(o, "delay")});
      c.gadgets.push_back(std::move(g));
    }
  }
  return c;
}

json parse_json_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("circuit text: " + std::string(e.what()), line, col);
  }
}

std::string serialize(const Circuit& circuit) {
  return circuit_to_json(circuit).dump(2) + "\n";
}

Circuit deserialize(std::string_view text) {
  Circuit c = circuit_from_json(parse_json_document(text));
  if (const auto bad = validate(c); !bad.empty())
    throw ModelError(bad.front().kind, bad.front().detail);
  return c;
}

}  // namespace neurorec
