#pragma once

// Many independent program runs at once. `run_batch` spreads the jobs over
// OpenMP threads; `run_batch_serial` is the single-threaded reference it is
// tested and benchmarked against. Both return results in job order.

#include <vector>

#include "neurorec/compiler.hpp"

namespace neurorec {

struct BatchJob {
  const CompiledProgram* program = nullptr;
  std::vector<murec::Natural> args;
  SimConfig config;
};

std::vector<ProgramRun> run_batch(const std::vector<BatchJob>& jobs);
std::vector<ProgramRun> run_batch_serial(const std::vector<BatchJob>& jobs);

}  // namespace neurorec
