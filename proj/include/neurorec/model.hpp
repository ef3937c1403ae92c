#pragma once

// Static circuit data model: neurons, synapses, ports, injections and native
// gadget nodes, plus the single-owner builder used to construct circuits.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace neurorec {

using NeuronId = std::uint32_t;
using GadgetId = std::uint32_t;
using Value = std::int64_t;
using Time = std::int64_t;

/// Leak of a neuron: a whole number of timesteps, or infinite retention.
class Leak {
 public:
  constexpr Leak() = default;
  constexpr explicit Leak(std::int64_t steps) : steps_(steps) {}
  static constexpr Leak infinite() {
    Leak l;
    l.steps_ = -1;
    return l;
  }

  constexpr bool is_infinite() const { return steps_ < 0; }
  /// Only meaningful when finite.
  constexpr std::int64_t steps() const { return steps_; }

  friend constexpr bool operator==(Leak, Leak) = default;

 private:
  std::int64_t steps_ = 0;
};

inline constexpr Leak kInfiniteLeak = Leak::infinite();

struct NeuronSpec {
  NeuronId id = 0;
  Value threshold = 0;
  Leak leak{};

  friend bool operator==(const NeuronSpec&, const NeuronSpec&) = default;
};

struct SynapseSpec {
  NeuronId pre = 0;
  NeuronId post = 0;
  Value weight = 1;
  Time delay = 0;

  friend bool operator==(const SynapseSpec&, const SynapseSpec&) = default;
};

enum class PortRole { Input, Output };

struct Port {
  std::string name;
  NeuronId neuron = 0;
  PortRole role = PortRole::Input;

  friend bool operator==(const Port&, const Port&) = default;
};

struct Injection {
  NeuronId neuron = 0;
  Value value = 0;
  Time time = 0;

  friend bool operator==(const Injection&, const Injection&) = default;
};

enum class GadgetKind { ConstantEmitter, Join };

/// One outgoing edge of a native gadget. For a Join, `line` selects which
/// buffered value travels on the edge; a ConstantEmitter only has line 0.
struct GadgetOutput {
  std::uint32_t line = 0;
  NeuronId post = 0;
  Value weight = 1;
  Time delay = 0;

  friend bool operator==(const GadgetOutput&, const GadgetOutput&) = default;
};

/// Native gadget node. Inputs are neurons whose spikes reach the gadget one
/// timestep later (unit weight, no delay); for a Join, input k feeds line k.
///
/// ConstantEmitter(k): any delivery at t makes it emit k at t + 1, i.e. two
/// steps after the upstream spike, the same as the primitive constant box.
/// Join(n): buffers one value per line and emits all n values on their lines
/// one step after the last line fills, then clears.
struct NativeGadget {
  GadgetId id = 0;
  GadgetKind kind = GadgetKind::ConstantEmitter;
  Value constant = 0;       // ConstantEmitter only
  std::uint32_t lines = 0;  // Join only
  std::vector<NeuronId> inputs;
  std::vector<GadgetOutput> outputs;

  friend bool operator==(const NativeGadget&, const NativeGadget&) = default;
};

struct Circuit {
  std::vector<NeuronSpec> neurons;
  std::vector<SynapseSpec> synapses;
  std::vector<Port> ports;
  std::vector<Injection> injections;
  std::vector<NativeGadget> gadgets;

  std::size_t neuron_count() const { return neurons.size(); }
  std::optional<NeuronId> port_neuron(const std::string& name) const;
  std::vector<const Port*> ports_with_role(PortRole role) const;

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

enum class ModelErrorKind {
  UnknownNeuron,
  DuplicateSynapse,
  DuplicatePortName,
  NegativeDelay,
  NegativeLeak,
  NegativeTime,
  NonContiguousIds,
  BadGadget,
};

const char* to_string(ModelErrorKind kind);

struct Violation {
  ModelErrorKind kind;
  std::string detail;
};

class ModelError : public std::runtime_error {
 public:
  ModelError(ModelErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ModelErrorKind kind() const { return kind_; }

 private:
  ModelErrorKind kind_;
};

/// Checks every structural invariant; returns an empty list when valid.
std::vector<Violation> validate(const Circuit& circuit);

class CircuitBuilder {
 public:
  NeuronId add_neuron(Value threshold, Leak leak);
  std::pair<NeuronId, NeuronId> add_synapse(NeuronId pre, NeuronId post,
                                            Value weight, Time delay);
  bool has_synapse(NeuronId pre, NeuronId post) const;
  void mark_port(NeuronId neuron, PortRole role, const std::string& name);
  void inject(NeuronId neuron, Value value, Time time);

  GadgetId add_constant_emitter(Value k, std::vector<NeuronId> inputs);
  GadgetId add_join(std::uint32_t lines, std::vector<NeuronId> inputs);
  void add_gadget_output(GadgetId gadget, std::uint32_t line, NeuronId post,
                         Value weight, Time delay);
  /// Adds another triggering input to an existing gadget.
  void add_gadget_input(GadgetId gadget, NeuronId source);

  std::size_t neuron_count() const { return circuit_.neurons.size(); }
  const Circuit& peek() const { return circuit_; }

  /// Finishes construction and hands out the immutable circuit.
  Circuit build() &&;

 private:
  void require_neuron(NeuronId id) const;
  NativeGadget& gadget(GadgetId id);

  Circuit circuit_;
  std::vector<std::vector<NeuronId>> out_edges_;
};

}  // namespace neurorec
