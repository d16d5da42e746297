#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ncgeo {

enum class Execution { serial, parallel };

/// Thread cap from NCGEO_THREADS (unset or invalid: the OpenMP default).
int configured_threads();
/// Applies NCGEO_THREADS to the OpenMP runtime; idempotent.
void apply_thread_config();

/// Runs fn(i) for i in [0, count). Work items must be independent. The first
/// exception thrown by any item is rethrown on the calling thread.
template <typename Fn>
void parallel_for(size_t count, Execution exec, Fn&& fn);

template <typename Fn>
void parallel_for(size_t count, Execution exec, Fn&& fn) {
#ifdef _OPENMP
    if (exec == Execution::parallel && count > 1 && configured_threads() > 1) {
        std::exception_ptr error;
        std::mutex guard;
        const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic) num_threads(configured_threads())
        for (long long i = 0; i < n; ++i) {
            try {
                fn(static_cast<size_t>(i));
            } catch (...) {
                std::lock_guard<std::mutex> lock(guard);
                if (!error) error = std::current_exception();
            }
        }
        if (error) std::rethrow_exception(error);
        return;
    }
#endif
    (void)exec;
    for (size_t i = 0; i < count; ++i) fn(i);
}

}  // namespace ncgeo
