#include "neurorec/model.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace neurorec {

const char* to_string(ModelErrorKind kind) {
  switch (kind) {
    case ModelErrorKind::UnknownNeuron: return "UnknownNeuron";
    case ModelErrorKind::DuplicateSynapse: return "DuplicateSynapse";
    case ModelErrorKind::DuplicatePortName: return "DuplicatePortName";
    case ModelErrorKind::NegativeDelay: return "NegativeDelay";
    case ModelErrorKind::NegativeLeak: return "NegativeLeak";
    case ModelErrorKind::NegativeTime: return "NegativeTime";
    case ModelErrorKind::NonContiguousIds: return "NonContiguousIds";
    case ModelErrorKind::BadGadget: return "BadGadget";
  }
  return "?";
}

std::optional<NeuronId> Circuit::port_neuron(const std::string& name) const {
  for (const auto& p : ports)
    if (p.name == name) return p.neuron;
  return std::nullopt;
}

std::vector<const Port*> Circuit::ports_with_role(PortRole role) const {
  std::vector<const Port*> out;
  for (const auto& p : ports)
    if (p.role == role) out.push_back(&p);
  return out;
}

std::vector<Violation> validate(const Circuit& c) {
  std::vector<Violation> out;
  const auto n = c.neurons.size();
  auto exists = [n](NeuronId id) { return id < n; };
  auto add = [&out](ModelErrorKind k, std::string d) {
    out.push_back({k, std::move(d)});
  };

  for (std::size_t i = 0; i < n; ++i) {
    const auto& nr = c.neurons[i];
    if (nr.id != i)
      add(ModelErrorKind::NonContiguousIds,
          "neuron at index " + std::to_string(i) + " has id " +
              std::to_string(nr.id));
    if (!nr.leak.is_infinite() && nr.leak.steps() < 0)
      add(ModelErrorKind::NegativeLeak, "neuron " + std::to_string(i));
  }

  std::set<std::pair<NeuronId, NeuronId>> seen;
  for (const auto& s : c.synapses) {
    const std::string ref =
        "(" + std::to_string(s.pre) + ", " + std::to_string(s.post) + ")";
    if (!exists(s.pre) || !exists(s.post))
      add(ModelErrorKind::UnknownNeuron, "synapse " + ref);
    if (s.delay < 0) add(ModelErrorKind::NegativeDelay, "synapse " + ref);
    if (!seen.insert({s.pre, s.post}).second)
      add(ModelErrorKind::DuplicateSynapse, "synapse " + ref);
  }

  std::set<std::string> names;
  for (const auto& p : c.ports) {
    if (!exists(p.neuron))
      add(ModelErrorKind::UnknownNeuron, "port " + p.name);
    if (!names.insert(p.name).second)
      add(ModelErrorKind::DuplicatePortName, "port " + p.name);
  }

  for (const auto& inj : c.injections) {
    if (!exists(inj.neuron))
      add(ModelErrorKind::UnknownNeuron,
          "injection into " + std::to_string(inj.neuron));
    if (inj.time < 0)
      add(ModelErrorKind::NegativeTime,
          "injection into " + std::to_string(inj.neuron));
  }

  for (std::size_t g = 0; g < c.gadgets.size(); ++g) {
    const auto& gd = c.gadgets[g];
    const std::string tag = "gadget " + std::to_string(gd.id);
    if (gd.id != g)
      add(ModelErrorKind::NonContiguousIds, tag + " at index " + std::to_string(g));
    for (auto in : gd.inputs)
      if (!exists(in)) add(ModelErrorKind::UnknownNeuron, tag + " input");
    for (const auto& o : gd.outputs) {
      if (!exists(o.post)) add(ModelErrorKind::UnknownNeuron, tag + " output");
      if (o.delay < 0) add(ModelErrorKind::NegativeDelay, tag + " output");
    }
    if (gd.kind == GadgetKind::Join) {
      if (gd.lines < 2) add(ModelErrorKind::BadGadget, tag + ": join needs n >= 2");
      if (gd.inputs.size() != gd.lines)
        add(ModelErrorKind::BadGadget, tag + ": join input count != n");
      for (const auto& o : gd.outputs)
        if (o.line >= gd.lines)
          add(ModelErrorKind::BadGadget, tag + ": output line out of range");
    } else {
      if (gd.inputs.empty())
        add(ModelErrorKind::BadGadget, tag + ": emitter without input");
      for (const auto& o : gd.outputs)
        if (o.line != 0)
          add(ModelErrorKind::BadGadget, tag + ": emitter has a single line");
    }
  }
  return out;
}

NeuronId CircuitBuilder::add_neuron(Value threshold, Leak leak) {
  if (!leak.is_infinite() && leak.steps() < 0)
    throw ModelError(ModelErrorKind::NegativeLeak, "leak must be >= 0 or infinite");
  const auto id = static_cast<NeuronId>(circuit_.neurons.size());
  circuit_.neurons.push_back({id, threshold, leak});
  out_edges_.emplace_back();
  return id;
}

void CircuitBuilder::require_neuron(NeuronId id) const {
  if (id >= circuit_.neurons.size())
    throw ModelError(ModelErrorKind::UnknownNeuron,
                     "unknown neuron " + std::to_string(id));
}

bool CircuitBuilder::has_synapse(NeuronId pre, NeuronId post) const {
  if (pre >= out_edges_.size()) return false;
  const auto& e = out_edges_[pre];
  return std::find(e.begin(), e.end(), post) != e.end();
}

std::pair<NeuronId, NeuronId> CircuitBuilder::add_synapse(NeuronId pre,
                                                          NeuronId post,
                                                          Value weight,
                                                          Time delay) {
  require_neuron(pre);
  require_neuron(post);
  if (delay < 0)
    throw ModelError(ModelErrorKind::NegativeDelay, "delay must be >= 0");
  if (has_synapse(pre, post))
    throw ModelError(ModelErrorKind::DuplicateSynapse,
                     "synapse (" + std::to_string(pre) + ", " +
                         std::to_string(post) + ") already exists");
  circuit_.synapses.push_back({pre, post, weight, delay});
  out_edges_[pre].push_back(post);
  return {pre, post};
}

void CircuitBuilder::mark_port(NeuronId neuron, PortRole role,
                               const std::string& name) {
  require_neuron(neuron);
  for (const auto& p : circuit_.ports)
    if (p.name == name)
      throw ModelError(ModelErrorKind::DuplicatePortName,
                       "port name '" + name + "' already used");
  circuit_.ports.push_back({name, neuron, role});
}

void CircuitBuilder::inject(NeuronId neuron, Value value, Time time) {
  require_neuron(neuron);
  if (time < 0) throw ModelError(ModelErrorKind::NegativeTime, "injection time < 0");
  circuit_.injections.push_back({neuron, value, time});
}

GadgetId CircuitBuilder::add_constant_emitter(Value k,
                                              std::vector<NeuronId> inputs) {
  for (auto in : inputs) require_neuron(in);
  const auto id = static_cast<GadgetId>(circuit_.gadgets.size());
  NativeGadget g;
  g.id = id;
  g.kind = GadgetKind::ConstantEmitter;
  g.constant = k;
  g.inputs = std::move(inputs);
  circuit_.gadgets.push_back(std::move(g));
  return id;
}

GadgetId CircuitBuilder::add_join(std::uint32_t lines,
                                  std::vector<NeuronId> inputs) {
  if (lines < 2 || inputs.size() != lines)
    throw ModelError(ModelErrorKind::BadGadget,
                     "join needs n >= 2 and one input per line");
  for (auto in : inputs) require_neuron(in);
  const auto id = static_cast<GadgetId>(circuit_.gadgets.size());
  NativeGadget g;
  g.id = id;
  g.kind = GadgetKind::Join;
  g.lines = lines;
  g.inputs = std::move(inputs);
  circuit_.gadgets.push_back(std::move(g));
  return id;
}

NativeGadget& CircuitBuilder::gadget(GadgetId id) {
  if (id >= circuit_.gadgets.size())
    throw ModelError(ModelErrorKind::BadGadget, "unknown gadget " + std::to_string(id));
  return circuit_.gadgets[id];
}

void CircuitBuilder::add_gadget_output(GadgetId id, std::uint32_t line,
                                       NeuronId post, Value weight, Time delay) {
  require_neuron(post);
  auto& g = gadget(id);
  if (delay < 0) throw ModelError(ModelErrorKind::NegativeDelay, "delay must be >= 0");
  const std::uint32_t limit = g.kind == GadgetKind::Join ? g.lines : 1;
  if (line >= limit)
    throw ModelError(ModelErrorKind::BadGadget, "gadget output line out of range");
  g.outputs.push_back({line, post, weight, delay});
}

void CircuitBuilder::add_gadget_input(GadgetId id, NeuronId source) {
  require_neuron(source);
  auto& g = gadget(id);
  if (g.kind == GadgetKind::Join)
    throw ModelError(ModelErrorKind::BadGadget, "join inputs are fixed per line");
  g.inputs.push_back(source);
}

Circuit CircuitBuilder::build() && { return std::move(circuit_); }

}  // namespace neurorec
