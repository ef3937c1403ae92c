#pragma once

// Lowering of mu-recursive expressions into spiking circuits.
//
// Every subexpression becomes a box with max(arity, 1) input lanes and one
// output neuron. A box is lowered in one of two modes:
//   * static: the absolute time at which its lanes fire is known at compile
//     time, so constants can come straight from the injection plan;
//   * dynamic: the box may fire at any time (inside a recursion, or after a
//     sibling whose latency depends on the data), so constants are produced
//     by native emitters keyed off the first lane.
// Primitive recursion and minimization are built from store/erase/trigger
// cells and always have data-dependent latency.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "neurorec/engine.hpp"
#include "neurorec/gadgets.hpp"
#include "neurorec/model.hpp"
#include "neurorec/murec.hpp"

namespace neurorec {

struct LoweringConfig {
  Value big_m = 1'000'000'000;
  /// Largest argument or intermediate value the circuit has to carry.
  /// Defaults to big_m / 2 - 1 when unset.
  std::optional<Value> max_arg;
  /// Reject programs whose circuit would need data-dependent timing.
  bool strict_primitive = false;
};

struct ProgramStats {
  std::size_t neurons = 0;
  std::size_t synapses = 0;
  std::size_t native_gadgets = 0;
  std::size_t trigger_cells = 0;
  std::optional<Time> static_latency;

  friend bool operator==(const ProgramStats&, const ProgramStats&) = default;
};

struct CompiledProgram {
  Circuit circuit;
  std::uint32_t arity = 0;
  std::vector<std::string> inputs;  // argument ports in argument order
  std::string output = "y";
  Latency latency = Latency::dynamic();
  ProgramStats stats;
  Value big_m = 0;
  std::map<std::string, NeuronId> labels;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class StrictModeViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws ArityError for ill-formed programs, ConfigError for an unusable
/// big_m and StrictModeViolation under strict_primitive.
CompiledProgram lower(const murec::RecExpr& program, const LoweringConfig& config = {});

Latency latency(const CompiledProgram& p);
ProgramStats stats(const CompiledProgram& p);

/// Circuit document with an extra "meta" object describing ports, latency,
/// stats and big_m.
nlohmann::ordered_json program_to_json(const CompiledProgram& p);
std::string serialize_program(const CompiledProgram& p);
/// Accepts both a compiled-program document and a bare circuit document; a
/// bare circuit takes its ports from the circuit itself.
CompiledProgram deserialize_program(std::string_view text);

/// Injections placing `args` on the argument ports at t = 0. Throws
/// ArityError on a count mismatch and ConfigError when an argument is
/// negative or not below big_m / 2.
std::vector<Injection> bind_arguments(const CompiledProgram& p,
                                      const std::vector<murec::Natural>& args);

struct ProgramRun {
  RunOutcome outcome;
  std::optional<Value> value;  // first spike on the output port
  std::optional<Time> time;
};

ProgramRun run_program(const CompiledProgram& p, const std::vector<murec::Natural>& args,
                       const SimConfig& config);

/// Step budget that comfortably covers a run whose oracle evaluation used
/// `fuel_used` units.
Time step_budget(std::uint64_t fuel_used);

}  // namespace neurorec
