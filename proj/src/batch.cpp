#include "neurorec/batch.hpp"

#include <exception>

namespace neurorec {

std::vector<ProgramRun> run_batch(const std::vector<BatchJob>& jobs) {
  std::vector<ProgramRun> results(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  const auto n = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    try {
      results[k] = run_program(*jobs[k].program, jobs[k].args, jobs[k].config);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

std::vector<ProgramRun> run_batch_serial(const std::vector<BatchJob>& jobs) {
  std::vector<ProgramRun> results;
  results.reserve(jobs.size());
  for (const auto& job : jobs) results.push_back(run_program(*job.program, job.args, job.config));
  return results;
}

}  // namespace neurorec
