#pragma once

// Deterministic discrete-time, event-driven executor.
//
// Per timestep t:
//   * every delivery arriving at t is summed into its target together with
//     the target's retained state (leak applied);
//   * a neuron spikes at t iff it received at least one delivery at t and the
//     sum reaches its threshold; the spike carries the summed value and the
//     neuron resets to 0;
//   * a spike of value s at t on neuron i delivers weight * s to j at
//     t + delay + 1 for every synapse (i, j);
//   * a neuron that integrates without spiking keeps its value through
//     t + leak and holds 0 from t + leak + 1 on (infinite leak: kept until the
//     next event).
// Output ports read spikes at the spike time itself.

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "neurorec/model.hpp"

namespace neurorec {

struct SpikeEvent {
  Time time = 0;
  NeuronId neuron = 0;
  Value value = 0;

  friend bool operator==(const SpikeEvent&, const SpikeEvent&) = default;
};

struct OutputSpike {
  Time time = 0;
  NeuronId neuron = 0;
  Value value = 0;
  std::string port;

  friend bool operator==(const OutputSpike&, const OutputSpike&) = default;
};

struct Raster {
  std::vector<SpikeEvent> events;   // ordered by (time, neuron)
  std::vector<OutputSpike> outputs; // subset of events on output ports

  std::vector<SpikeEvent> spikes_of(NeuronId neuron) const;
  std::vector<OutputSpike> outputs_of(const std::string& port) const;
};

enum class DeliverySource { Injection, Synapse, Gadget };

struct DeliveryRecord {
  Time time = 0;
  NeuronId target = 0;
  Value value = 0;
  DeliverySource source = DeliverySource::Injection;
  std::uint32_t source_id = 0;  // pre-synaptic neuron or gadget id
};

struct GadgetEmission {
  Time time = 0;
  GadgetId gadget = 0;
  std::vector<Value> values;  // one per line; a single entry for an emitter
};

enum class FaultKind { Overflow, MagnitudeBreach, JoinOverrun };
const char* to_string(FaultKind kind);

struct Fault {
  FaultKind kind;
  std::string detail;
};

enum class RunStatus { Quiescent, Timeout, Faulted };
const char* to_string(RunStatus status);

struct SimConfig {
  Time max_steps = 1'000'000;
  Value big_m = 1'000'000'000;
  bool record_trace = false;
};

struct RunOutcome {
  RunStatus status = RunStatus::Quiescent;
  std::optional<Fault> fault;
  Raster raster;
  Time final_clock = 0;
  std::vector<DeliveryRecord> trace;         // only with record_trace
  std::vector<GadgetEmission> gadget_events; // only with record_trace
};

/// Step called with nothing pending, or a similar caller-side contract breach.
class PreconditionViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Topology;

/// Mutable execution state. Single owner; copying yields an independent run.
class EngineState {
 public:
  Time clock() const { return clock_; }
  bool idle() const { return pending_.empty(); }
  std::optional<Time> next_time() const;
  const Raster& raster() const { return raster_; }
  const std::optional<Fault>& fault() const { return fault_; }
  const std::vector<DeliveryRecord>& trace() const { return trace_; }
  const std::vector<GadgetEmission>& gadget_events() const { return gadget_events_; }

 private:
  friend EngineState make_state(const Circuit&, const std::vector<Injection>&,
                                const SimConfig&);
  friend void step(EngineState&, const Circuit&);
  friend Value inspect(const EngineState&, NeuronId);

  struct NeuronDelivery {
    NeuronId target;
    Value value;
    DeliverySource source;
    std::uint32_t source_id;
  };
  struct LineDelivery {
    GadgetId gadget;
    std::uint32_t line;
    Value value;
  };
  struct Bucket {
    std::vector<NeuronDelivery> neurons;
    std::vector<LineDelivery> lines;
    std::vector<GadgetId> fires;
  };
  struct Retained {
    Value value = 0;
    Time last = 0;
  };

  void schedule(Time t, NeuronDelivery d);
  Value retained_at(NeuronId n, Time t) const;

  std::shared_ptr<const Topology> topo_;
  SimConfig config_;
  Time clock_ = 0;
  std::vector<Retained> retained_;
  std::vector<std::vector<std::optional<Value>>> join_buffers_;
  std::map<Time, Bucket> pending_;
  Raster raster_;
  std::optional<Fault> fault_;
  std::vector<DeliveryRecord> trace_;
  std::vector<GadgetEmission> gadget_events_;
};

/// Initial state at clock 0 with the circuit's injection plan plus `extra`
/// scheduled.
EngineState make_state(const Circuit& circuit, const std::vector<Injection>& extra,
                       const SimConfig& config);

/// Advances to the earliest pending arrival time and processes it once.
/// Throws PreconditionViolation when nothing is pending. On a fault the
/// state records it and the caller should stop.
void step(EngineState& state, const Circuit& circuit);

/// Retained internal state of a neuron at the state's clock.
Value inspect(const EngineState& state, NeuronId neuron);

RunOutcome simulate(const Circuit& circuit, const std::vector<Injection>& extra,
                    const SimConfig& config);

}  // namespace neurorec
