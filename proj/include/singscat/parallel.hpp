#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace singscat {

/// Worker count for sweeps: SINGSCAT_THREADS if set to a positive integer,
/// otherwise the hardware concurrency (at least 1).
unsigned sweep_threads();

/// Runs body(i) for i in [0, n) across sweep_threads() workers. Each index is
/// visited exactly once; callers write results into slot i so output order is
/// input order. body must not throw.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

template <typename T, typename F>
std::vector<T> parallel_map(std::size_t n, F&& f) {
    std::vector<T> out(n);
    parallel_for(n, [&](std::size_t i) { out[i] = f(i); });
    return out;
}

}  // namespace singscat
