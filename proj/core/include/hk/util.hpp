#pragma once

#include <cstdint>
#include <functional>

namespace hk {

/// splitmix64 finalizer; good enough to decorrelate structured seeds.
std::uint64_t mix64(std::uint64_t v);

/// Deterministic per-trial seed derived from a sweep seed and the (n, trial)
/// coordinates of the run.
std::uint64_t trial_seed(std::uint64_t seed, int n, int trial);

/// Worker-pool size: HKLAB_WORKERS if set and positive, else hardware
/// concurrency, else 1.
int worker_count();

/// Runs fn(0..jobs-1) on `workers` threads (0 = worker_count()). Exceptions
/// are captured per job and the lowest-indexed one is rethrown after all
/// workers finish.
void parallel_for(int jobs, const std::function<void(int)>& fn, int workers = 0);

}  // namespace hk
