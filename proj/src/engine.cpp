#include "neurorec/engine.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace neurorec {

const char* to_string(FaultKind kind) {
  switch (kind) {
    case FaultKind::Overflow: return "Overflow";
    case FaultKind::MagnitudeBreach: return "MagnitudeBreach";
    case FaultKind::JoinOverrun: return "JoinOverrun";
  }
  return "?";
}

const char* to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Quiescent: return "Quiescent";
    case RunStatus::Timeout: return "Timeout";
    case RunStatus::Faulted: return "Fault";
  }
  return "?";
}

std::vector<SpikeEvent> Raster::spikes_of(NeuronId neuron) const {
  std::vector<SpikeEvent> out;
  for (const auto& e : events)
    if (e.neuron == neuron) out.push_back(e);
  return out;
}

std::vector<OutputSpike> Raster::outputs_of(const std::string& port) const {
  std::vector<OutputSpike> out;
  for (const auto& o : outputs)
    if (o.port == port) out.push_back(o);
  return out;
}

struct Topology {
  struct Edge {
    NeuronId post;
    Value weight;
    Time delay;
  };
  struct Feed {
    GadgetId gadget;
    std::uint32_t line;
  };
  std::vector<std::vector<Edge>> out;
  std::vector<std::vector<Feed>> feeds;
  std::vector<std::vector<std::string>> output_ports;
  const Circuit* circuit = nullptr;

  explicit Topology(const Circuit& c) : circuit(&c) {
    const auto n = c.neurons.size();
    out.resize(n);
    feeds.resize(n);
    output_ports.resize(n);
    for (const auto& s : c.synapses) out[s.pre].push_back({s.post, s.weight, s.delay});
    for (const auto& g : c.gadgets)
      for (std::uint32_t k = 0; k < g.inputs.size(); ++k)
        feeds[g.inputs[k]].push_back(
            {g.id, g.kind == GadgetKind::Join ? k : 0u});
    for (const auto& p : c.ports)
      if (p.role == PortRole::Output) output_ports[p.neuron].push_back(p.name);
  }
};

namespace {

bool checked_add(Value a, Value b, Value& out) { return !__builtin_add_overflow(a, b, &out); }
bool checked_mul(Value a, Value b, Value& out) { return !__builtin_mul_overflow(a, b, &out); }

}  // namespace

std::optional<Time> EngineState::next_time() const {
  if (pending_.empty()) return std::nullopt;
  return pending_.begin()->first;
}

void EngineState::schedule(Time t, NeuronDelivery d) {
  pending_[t].neurons.push_back(d);
}

Value EngineState::retained_at(NeuronId n, Time t) const {
  const auto& r = retained_[n];
  if (r.value == 0) return 0;
  const Leak leak = topo_->circuit->neurons[n].leak;
  if (leak.is_infinite()) return r.value;
  return t <= r.last + leak.steps() ? r.value : 0;
}

EngineState make_state(const Circuit& circuit, const std::vector<Injection>& extra,
                       const SimConfig& config) {
  EngineState s;
  s.topo_ = std::make_shared<const Topology>(circuit);
  s.config_ = config;
  s.retained_.assign(circuit.neurons.size(), {});
  s.join_buffers_.resize(circuit.gadgets.size());
  for (const auto& g : circuit.gadgets)
    if (g.kind == GadgetKind::Join) s.join_buffers_[g.id].assign(g.lines, std::nullopt);
  auto add = [&s, &circuit](const Injection& inj) {
    if (inj.neuron >= circuit.neurons.size())
      throw ModelError(ModelErrorKind::UnknownNeuron,
                       "injection into unknown neuron " + std::to_string(inj.neuron));
    if (inj.time < 0) throw ModelError(ModelErrorKind::NegativeTime, "injection time < 0");
    s.schedule(inj.time, {inj.neuron, inj.value, DeliverySource::Injection, 0});
  };
  for (const auto& inj : circuit.injections) add(inj);
  for (const auto& inj : extra) add(inj);
  return s;
}

void step(EngineState& s, const Circuit& circuit) {
  if (s.pending_.empty()) throw PreconditionViolation("step: no pending deliveries");
  if (s.topo_->circuit != &circuit)
    throw PreconditionViolation("step: state belongs to a different circuit");
  if (s.fault_) throw PreconditionViolation("step: state already faulted");

  auto node = s.pending_.extract(s.pending_.begin());
  const Time t = node.key();
  EngineState::Bucket bucket = std::move(node.mapped());
  s.clock_ = t;
  const Topology& topo = *s.topo_;
  const Value breach = 2 * s.config_.big_m;

  auto fault = [&s](FaultKind k, std::string detail) {
    s.fault_ = Fault{k, std::move(detail)};
  };
  auto arrival = [&](Time delay, Time& out) {
    if (__builtin_add_overflow(t, delay + 1, &out)) {
      fault(FaultKind::Overflow, "arrival time overflow at t=" + std::to_string(t));
      return false;
    }
    return true;
  };

  // Native gadgets firing at t.
  std::sort(bucket.fires.begin(), bucket.fires.end());
  bucket.fires.erase(std::unique(bucket.fires.begin(), bucket.fires.end()),
                     bucket.fires.end());
  for (GadgetId gid : bucket.fires) {
    const auto& g = circuit.gadgets[gid];
    std::vector<Value> values;
    if (g.kind == GadgetKind::ConstantEmitter) {
      values.push_back(g.constant);
    } else {
      for (auto& slot : s.join_buffers_[gid]) {
        values.push_back(slot.value_or(0));
        slot.reset();
      }
    }
    for (const auto& o : g.outputs) {
      Value v;
      Time at;
      if (!checked_mul(o.weight, values[o.line], v)) {
        fault(FaultKind::Overflow, "gadget output overflow at t=" + std::to_string(t));
        return;
      }
      if (!arrival(o.delay, at)) return;
      s.schedule(at, {o.post, v, DeliverySource::Gadget, gid});
    }
    if (s.config_.record_trace) s.gadget_events_.push_back({t, gid, std::move(values)});
  }

  // Integration and threshold check, in neuron order.
  auto& deliveries = bucket.neurons;
  std::stable_sort(deliveries.begin(), deliveries.end(),
                   [](const auto& a, const auto& b) { return a.target < b.target; });
  std::vector<SpikeEvent> spikes;
  for (std::size_t i = 0; i < deliveries.size();) {
    const NeuronId n = deliveries[i].target;
    Value v = s.retained_at(n, t);
    for (; i < deliveries.size() && deliveries[i].target == n; ++i) {
      const auto& d = deliveries[i];
      if (s.config_.record_trace)
        s.trace_.push_back({t, n, d.value, d.source, d.source_id});
      if (!checked_add(v, d.value, v)) {
        fault(FaultKind::Overflow,
              "integration overflow on neuron " + std::to_string(n) + " at t=" +
                  std::to_string(t));
        return;
      }
    }
    if (v >= breach || v <= -breach) {
      fault(FaultKind::MagnitudeBreach,
            "neuron " + std::to_string(n) + " reached " + std::to_string(v) + " at t=" +
                std::to_string(t));
      return;
    }
    if (v >= circuit.neurons[n].threshold) {
      spikes.push_back({t, n, v});
      s.retained_[n] = {0, t};
    } else {
      s.retained_[n] = {v, t};
    }
  }

  // Gadget input lines receiving at t.
  for (const auto& d : bucket.lines) {
    const auto& g = circuit.gadgets[d.gadget];
    if (g.kind == GadgetKind::ConstantEmitter) {
      s.pending_[t + 1].fires.push_back(d.gadget);
      continue;
    }
    auto& buf = s.join_buffers_[d.gadget];
    if (buf[d.line]) {
      fault(FaultKind::JoinOverrun, "join " + std::to_string(d.gadget) + " line " +
                                        std::to_string(d.line) + " refilled at t=" +
                                        std::to_string(t));
      return;
    }
    buf[d.line] = d.value;
    if (std::all_of(buf.begin(), buf.end(), [](const auto& x) { return x.has_value(); }))
      s.pending_[t + 1].fires.push_back(d.gadget);
  }

  // Propagate spikes.
  for (const auto& sp : spikes) {
    s.raster_.events.push_back(sp);
    for (const auto& name : topo.output_ports[sp.neuron])
      s.raster_.outputs.push_back({sp.time, sp.neuron, sp.value, name});
    for (const auto& e : topo.out[sp.neuron]) {
      Value v;
      Time at;
      if (!checked_mul(e.weight, sp.value, v)) {
        fault(FaultKind::Overflow, "synapse (" + std::to_string(sp.neuron) + ", " +
                                       std::to_string(e.post) + ") overflow");
        return;
      }
      if (!arrival(e.delay, at)) return;
      s.schedule(at, {e.post, v, DeliverySource::Synapse, sp.neuron});
    }
    for (const auto& f : topo.feeds[sp.neuron])
      s.pending_[t + 1].lines.push_back({f.gadget, f.line, sp.value});
  }
}

Value inspect(const EngineState& s, NeuronId neuron) {
  if (!s.topo_ || neuron >= s.retained_.size())
    throw ModelError(ModelErrorKind::UnknownNeuron,
                     "inspect: unknown neuron " + std::to_string(neuron));
  return s.retained_at(neuron, s.clock_);
}

RunOutcome simulate(const Circuit& circuit, const std::vector<Injection>& extra,
                    const SimConfig& config) {
  EngineState s = make_state(circuit, extra, config);
  RunOutcome out;
  for (;;) {
    const auto next = s.next_time();
    if (!next) {
      out.status = RunStatus::Quiescent;
      break;
    }
    if (*next > config.max_steps) {
      out.status = RunStatus::Timeout;
      break;
    }
    step(s, circuit);
    if (s.fault()) {
      out.status = RunStatus::Faulted;
      out.fault = s.fault();
      break;
    }
  }
  out.final_clock = s.clock();
  out.raster = s.raster();
  out.trace = s.trace();
  out.gadget_events = s.gadget_events();
  return out;
}

}  // namespace neurorec
