// Wall-clock comparison of run_batch_serial and the OpenMP run_batch.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include <omp.h>

#include "neurorec/batch.hpp"

using namespace neurorec;
namespace mr = neurorec::murec;

namespace {

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
  const auto mul = lower(*mr::programs::mul());
  const auto mu = lower(*mr::programs::mu_monus());
  std::vector<BatchJob> jobs;
  for (int r = 0; r < reps; ++r)
    for (mr::Natural i = 0; i <= 12; ++i)
      for (mr::Natural x = 0; x <= 12; ++x) {
        jobs.push_back({&mul, {i, x}, SimConfig{}});
        jobs.push_back({&mu, {x}, SimConfig{}});
      }

  std::vector<ProgramRun> ser, par;
  const double ts = seconds([&] { ser = run_batch_serial(jobs); });
  const double tp = seconds([&] { par = run_batch(jobs); });
  bool same = ser.size() == par.size();
  for (std::size_t k = 0; same && k < ser.size(); ++k)
    same = ser[k].value == par[k].value && ser[k].time == par[k].time;

  std::printf("jobs=%zu threads=%d\n", jobs.size(), omp_get_max_threads());
  std::printf("serial   %.3fs\n", ts);
  std::printf("parallel %.3fs\n", tp);
  std::printf("speedup  %.2fx\n", tp > 0 ? ts / tp : 0.0);
  std::printf("results %s\n", same ? "identical" : "DIFFER");
  return same ? 0 : 1;
}
