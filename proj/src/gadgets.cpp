#include "neurorec/gadgets.hpp"

#include <algorithm>
#include <stdexcept>

namespace neurorec {

std::string Latency::describe() const {
  return is_static() ? "static(" + std::to_string(steps_) + ")" : "dynamic";
}

TriggerCell emit_trigger_cell(CircuitBuilder& b, NeuronId aux_one, Value big_m) {
  TriggerCell cell;
  cell.store = b.add_neuron(big_m, kInfiniteLeak);
  cell.output = b.add_neuron(0, kInfiniteLeak);
  b.add_synapse(cell.store, cell.output, 1, 0);
  b.add_synapse(aux_one, cell.output, -big_m, 0);
  // store spikes at t, emitter hears it at t+1, fires at t+2, lands at t+3.
  cell.replenish = b.add_constant_emitter(-big_m, {cell.store});
  b.add_gadget_output(cell.replenish, 0, cell.output, 1, 0);
  return cell;
}

namespace {

GadgetBox finish(CircuitBuilder&& b, std::vector<std::string> inputs,
                 Latency latency, Time gap, std::map<std::string, NeuronId> labels) {
  GadgetBox box;
  box.circuit = std::move(b).build();
  box.inputs = std::move(inputs);
  box.latency = latency;
  box.min_reuse_gap = gap;
  box.labels = std::move(labels);
  return box;
}

GadgetBox two_input_box(Value aux_weight, Value x_weight) {
  CircuitBuilder b;
  const auto aux = b.add_neuron(kRelayThreshold, kRelayLeak);  // 0
  const auto x = b.add_neuron(kRelayThreshold, kRelayLeak);    // 1
  const auto out = b.add_neuron(0, kRelayLeak);                // 2
  b.add_synapse(x, out, x_weight, 0);
  b.add_synapse(aux, out, aux_weight, 0);
  b.mark_port(x, PortRole::Input, "x");
  b.mark_port(out, PortRole::Output, "y");
  b.inject(aux, 1, 0);
  return finish(std::move(b), {"x"}, Latency::fixed(1), 1,
                {{"aux", aux}, {"x", x}, {"out", out}});
}

}  // namespace

GadgetBox build_constant(Value k, ConstantForm form) {
  if (form == ConstantForm::Primitive) return two_input_box(k, 0);

  CircuitBuilder b;
  const auto x = b.add_neuron(kAlwaysFire, kRelayLeak);
  const auto out = b.add_neuron(kAlwaysFire, kRelayLeak);
  const auto em = b.add_constant_emitter(k, {x});
  b.add_gadget_output(em, 0, out, 1, 0);
  b.mark_port(x, PortRole::Input, "x");
  b.mark_port(out, PortRole::Output, "y");
  return finish(std::move(b), {"x"}, Latency::fixed(3), 1, {{"x", x}, {"out", out}});
}

GadgetBox build_successor() { return two_input_box(1, 1); }

ProjectionHandles emit_projection(CircuitBuilder& b, std::uint32_t n, Value big_m,
                                  Leak hold_leak) {
  if (n < 1) throw std::invalid_argument("InvalidArity: projection needs N >= 1");
  const Value N = n;
  ProjectionHandles h;
  // Relative layout 0, 1..N, N+1..2N, ..., 6N+1, 6N+2.
  const NeuronId base = static_cast<NeuronId>(b.neuron_count());
  h.selector = b.add_neuron(0, kRelayLeak);
  for (Value m = 1; m <= N; ++m) b.add_neuron(m, kRelayLeak);    // 1..N
  for (Value m = 1; m <= N; ++m) b.add_neuron(-m, kRelayLeak);   // N+1..2N
  for (Value m = 1; m <= N; ++m) b.add_neuron(0, kRelayLeak);    // 2N+1..3N
  for (Value m = 1; m <= N; ++m) b.add_neuron(0, kRelayLeak);    // 3N+1..4N
  for (Value m = 1; m <= N; ++m) b.add_neuron(0, kRelayLeak);    // 4N+1..5N
  for (Value m = 1; m <= N; ++m) b.add_neuron(big_m, hold_leak); // 5N+1..6N
  h.preload = b.add_neuron(0, kRelayLeak);                       // 6N+1
  h.subtract = b.add_neuron(0, kInfiniteLeak);                   // 6N+2
  auto id = [N, base](Value block, Value m) {
    return static_cast<NeuronId>(base + block * N + m);
  };

  for (Value m = 1; m <= N; ++m) {
    b.add_synapse(h.selector, id(0, m), 1, 0);
    b.add_synapse(h.selector, id(1, m), -1, 0);
    b.add_synapse(id(0, m), id(2, m), 1, 0);
    b.add_synapse(id(1, m), id(2, m), 1, 0);
    b.add_synapse(id(2, m), id(3, m), -1, 0);
    const auto lane = b.add_constant_emitter(big_m, {id(3, m)});
    b.add_gadget_output(lane, 0, id(4, m), 1, 0);
    b.add_synapse(id(4, m), id(5, m), 1, 0);
    b.add_synapse(id(5, m), h.subtract, 1, 0);
    h.holds.push_back(id(5, m));
    h.coincide.push_back(id(2, m));
    h.isolate.push_back(id(3, m));
  }
  b.add_synapse(h.preload, h.subtract, -big_m, 0);
  return h;
}

GadgetBox build_projection(std::uint32_t n, Value big_m, Leak hold_leak) {
  CircuitBuilder b;
  const auto h = emit_projection(b, n, big_m, hold_leak);
  std::vector<std::string> inputs{"i"};
  b.mark_port(h.selector, PortRole::Input, "i");
  for (std::uint32_t m = 1; m <= n; ++m) {
    inputs.push_back("x" + std::to_string(m));
    b.mark_port(h.holds[m - 1], PortRole::Input, inputs.back());
  }
  b.mark_port(h.subtract, PortRole::Output, "y");
  b.inject(h.preload, 1, 0);

  std::map<std::string, NeuronId> labels{
      {"selector", h.selector}, {"preload", h.preload}, {"subtract", h.subtract}};
  for (std::uint32_t m = 1; m <= n; ++m) {
    labels["hold" + std::to_string(m)] = h.holds[m - 1];
    labels["coincide" + std::to_string(m)] = h.coincide[m - 1];
    labels["isolate" + std::to_string(m)] = h.isolate[m - 1];
  }
  // With a finite leak the holds forget x once the box has fired.
  const Time gap = hold_leak.is_infinite() ? 0 : kProjectionLatency;
  return finish(std::move(b), std::move(inputs), Latency::fixed(kProjectionLatency), gap,
                std::move(labels));
}

GadgetBox build_trigger_cell(Value big_m) {
  CircuitBuilder b;
  const auto aux = b.add_neuron(kRelayThreshold, kRelayLeak);
  const auto cell = emit_trigger_cell(b, aux, big_m);
  b.inject(aux, 1, 0);
  b.mark_port(cell.store, PortRole::Input, "S");
  b.mark_port(cell.store, PortRole::Input, "E");
  b.mark_port(cell.store, PortRole::Input, "T");
  b.mark_port(cell.output, PortRole::Output, "y");
  return finish(std::move(b), {"S", "E", "T"}, Latency::fixed(1), kTriggerReuseGap,
                {{"aux", aux}, {"store", cell.store}, {"output", cell.output}});
}

GadgetBox build_join(std::uint32_t n) {
  if (n < 2) throw std::invalid_argument("join needs n >= 2");
  CircuitBuilder b;
  std::vector<NeuronId> ins, outs;
  std::vector<std::string> names;
  for (std::uint32_t k = 1; k <= n; ++k) {
    ins.push_back(b.add_neuron(kAlwaysFire, kRelayLeak));
    names.push_back("in" + std::to_string(k));
    b.mark_port(ins.back(), PortRole::Input, names.back());
  }
  for (std::uint32_t k = 1; k <= n; ++k) {
    outs.push_back(b.add_neuron(kAlwaysFire, kRelayLeak));
    b.mark_port(outs.back(), PortRole::Output, "out" + std::to_string(k));
  }
  const auto j = b.add_join(n, ins);
  for (std::uint32_t k = 0; k < n; ++k) b.add_gadget_output(j, k, outs[k], 1, 0);
  GadgetBox box = finish(std::move(b), std::move(names), Latency::dynamic(), 1, {});
  box.output = "out1";
  return box;
}

void check_trigger_schedule(const std::vector<TriggerInput>& inputs) {
  std::vector<Time> times;
  for (const auto& in : inputs) times.push_back(in.time);
  std::sort(times.begin(), times.end());
  if (std::adjacent_find(times.begin(), times.end()) != times.end())
    throw PreconditionViolation(
        "trigger cell inputs v, -v and M must not arrive in the same timestep");
}

RunOutcome run_trigger_cell(const GadgetBox& cell, const std::vector<TriggerInput>& inputs,
                            const SimConfig& config) {
  check_trigger_schedule(inputs);
  std::vector<Injection> inj;
  for (const auto& in : inputs) {
    const char* port = in.pin == TriggerPin::Store   ? "S"
                       : in.pin == TriggerPin::Erase ? "E"
                                                     : "T";
    inj.push_back({*cell.circuit.port_neuron(port), in.value, in.time});
  }
  return simulate(cell.circuit, inj, config);
}

std::vector<Injection> bind_inputs(const GadgetBox& box, const std::vector<Value>& values,
                                   Time at) {
  if (values.size() != box.inputs.size())
    throw std::invalid_argument("bind_inputs: expected " +
                                std::to_string(box.inputs.size()) + " values");
  std::vector<Injection> out;
  for (std::size_t k = 0; k < values.size(); ++k)
    out.push_back({*box.circuit.port_neuron(box.inputs[k]), values[k], at});
  return out;
}

}  // namespace neurorec
