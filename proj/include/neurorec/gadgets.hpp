#pragma once

// Reusable circuit constructions: the constant, successor and projection
// function circuits, the store/erase/trigger memory cell, and the native
// join. Each construction has an `emit_*` form that wires it into an
// existing builder and a `build_*` form that produces a standalone box with
// named ports and its own injection plan.

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "neurorec/engine.hpp"
#include "neurorec/model.hpp"

namespace neurorec {

/// Threshold that any delivered value reaches; used where a neuron must
/// relay arbitrary (possibly negative) values.
inline constexpr Value kAlwaysFire = -(Value{1} << 62);

/// Relay convention: threshold 0 and no memory, so it forwards any natural.
inline constexpr Value kRelayThreshold = 0;
inline constexpr Leak kRelayLeak = Leak(0);

class Latency {
 public:
  static Latency fixed(Time steps) { return Latency(steps); }
  static Latency dynamic() { return Latency(); }

  bool is_static() const { return steps_ >= 0; }
  Time steps() const { return steps_; }
  std::string describe() const;

  friend bool operator==(const Latency&, const Latency&) = default;

 private:
  Latency() = default;
  explicit Latency(Time steps) : steps_(steps) {}
  Time steps_ = -1;
};

struct GadgetBox {
  Circuit circuit;
  std::vector<std::string> inputs;  // input port names, in order
  std::string output = "y";
  Latency latency = Latency::dynamic();
  Time min_reuse_gap = 0;
  std::map<std::string, NeuronId> labels;
};

enum class ConstantForm { Primitive, Native };

// ---- builder-level pieces --------------------------------------------------

struct TriggerCell {
  NeuronId store = 0;   // S, E and T all land here
  NeuronId output = 0;  // emits the stored value one step after T
  GadgetId replenish = 0;
};

/// Trigger cell inside `b`. `aux_one` must spike value 1 at t = 0; it preloads
/// the output stage with -big_m, which then replenishes itself after every
/// trigger.
TriggerCell emit_trigger_cell(CircuitBuilder& b, NeuronId aux_one, Value big_m);

struct ProjectionHandles {
  NeuronId selector = 0;
  NeuronId preload = 0;   // receives 1, loads -big_m into `subtract`
  NeuronId subtract = 0;  // output
  std::vector<NeuronId> holds;     // argument inputs, threshold big_m
  std::vector<NeuronId> coincide;  // fire for lanes m <= i
  std::vector<NeuronId> isolate;   // fires only for lane i
};

/// Projection circuit inside `b`. The selector and the preload neuron must be
/// driven by the caller (selector with i, preload with 1) and the holds with
/// x_1..x_N, all in the same timestep.
ProjectionHandles emit_projection(CircuitBuilder& b, std::uint32_t n, Value big_m,
                                  Leak hold_leak);

/// Minimum gap between two trigger arrivals at one cell.
inline constexpr Time kTriggerReuseGap = 2;

// ---- standalone boxes ------------------------------------------------------

GadgetBox build_constant(Value k, ConstantForm form = ConstantForm::Primitive);
GadgetBox build_successor();
GadgetBox build_projection(std::uint32_t n, Value big_m,
                           Leak hold_leak = kInfiniteLeak);
GadgetBox build_trigger_cell(Value big_m);
/// Join with input neurons in1..inN feeding lines 1..n and output neurons
/// out1..outN. Dynamic latency.
GadgetBox build_join(std::uint32_t n);

/// Time from selector/argument arrival to projection output.
inline constexpr Time kProjectionLatency = 8;

enum class TriggerPin { Store, Erase, Trigger };

struct TriggerInput {
  TriggerPin pin;
  Value value;
  Time time;
};

/// Throws PreconditionViolation when two inputs reach the cell in the same
/// timestep.
void check_trigger_schedule(const std::vector<TriggerInput>& inputs);

/// Runs a standalone trigger cell on a schedule after checking it.
RunOutcome run_trigger_cell(const GadgetBox& cell,
                            const std::vector<TriggerInput>& inputs,
                            const SimConfig& config);

/// Injections binding each named input port of `box` to a value at time 0.
std::vector<Injection> bind_inputs(const GadgetBox& box,
                                   const std::vector<Value>& values, Time at = 0);

}  // namespace neurorec
