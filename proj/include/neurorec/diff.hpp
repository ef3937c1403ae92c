#pragma once

// Differential testing of compiled circuits against the reference
// interpreter, over explicit argument ranges or randomly generated programs.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "neurorec/compiler.hpp"

namespace neurorec {

struct DiffOptions {
  std::uint64_t fuel = 100'000;
  /// Step budget per case; derived from the oracle's fuel use when unset.
  std::optional<Time> max_steps;
  Value big_m = 1'000'000'000;
  bool parallel = true;
};

struct Mismatch {
  std::string expr;
  std::vector<murec::Natural> args;
  std::optional<murec::Natural> oracle;  // empty when the oracle ran out of fuel
  std::string circuit;                   // value, "Timeout", "Fault(...)", ...
};

struct DiffReport {
  std::size_t cases = 0;
  std::vector<Mismatch> mismatches;
  std::size_t timeouts = 0;
  std::size_t faults = 0;
  std::uint64_t seed = 0;

  bool ok() const { return mismatches.empty(); }
};

struct DiffSubject {
  murec::ExprPtr reference;
  CompiledProgram compiled;
};

struct DiffCase {
  std::size_t subject = 0;
  std::vector<murec::Natural> args;
};

/// Runs every case through the oracle and the circuit. A case passes when
/// the circuit goes quiescent with exactly one output spike equal to the
/// oracle's value, or emits nothing when the oracle runs out of fuel.
DiffReport run_diff(const std::vector<DiffSubject>& subjects,
                    const std::vector<DiffCase>& cases, const DiffOptions& options);

using ArgRange = std::pair<murec::Natural, murec::Natural>;

/// "0..10,3,0..2" -> {[0,10], [3,3], [0,2]}. Throws std::invalid_argument.
std::vector<ArgRange> parse_ranges(std::string_view text);
/// Cartesian product in lexicographic order.
std::vector<std::vector<murec::Natural>> enumerate_args(const std::vector<ArgRange>& ranges);

DiffReport diff_program(const murec::ExprPtr& reference, const CompiledProgram& compiled,
                        const std::vector<ArgRange>& ranges, const DiffOptions& options);

struct RandomOptions {
  std::size_t count = 100;
  int depth = 3;
  std::uint64_t seed = 0;
  std::size_t samples = 5;
  murec::Natural max_arg = 50;
  std::uint32_t max_arity = 3;
  /// Mix in programs drawn from terminating recursion templates.
  bool recursion = false;
  murec::Natural recursion_max_arg = 4;
};

/// Well-formed expression of the given arity and depth at most `depth`
/// over constants, successor, projections and composition.
murec::ExprPtr random_expr(std::mt19937_64& rng, int depth, std::uint32_t arity);
/// Program drawn from templates that always terminate: primitive recursion
/// over random g and h, minimization of x - z style searches, and
/// compositions around the reference programs.
murec::ExprPtr random_recursive_expr(std::mt19937_64& rng, int depth);

DiffReport diff_random(const RandomOptions& random, const DiffOptions& options);

std::string describe(const Mismatch& m);

}  // namespace neurorec
