#pragma once

#include <cstddef>
#include <exception>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace skelet {

inline int max_threads() {
#if defined(_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// Worker results must be written to slot i only; callers merge in index order so
// parallel and serial runs produce identical output. An exception thrown by a
// worker is rethrown after the loop joins.
template <typename F>
void parallel_for(std::size_t n, const F& f) {
#if defined(_OPENMP)
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        try {
            f(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(skelet_parallel_err)
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
#else
    for (std::size_t i = 0; i < n; ++i) f(i);
#endif
}

template <typename F>
void serial_for(std::size_t n, const F& f) {
    for (std::size_t i = 0; i < n; ++i) f(i);
}

}  // namespace skelet
