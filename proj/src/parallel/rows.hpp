#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace polyvis {

// Evaluates fn(i) for i in [0, n) into slot i. The parallel path distributes rows over
// OpenMP threads; results are identical to the serial path because slots are disjoint.
template <typename Fn>
auto ComputeRows(std::size_t n, bool parallel, Fn &&fn) -> std::vector<decltype(fn(std::size_t{}))> {
    std::vector<decltype(fn(std::size_t{}))> rows(n);
    if (!parallel) {
        for (std::size_t i = 0; i < n; ++i) rows[i] = fn(i);
        return rows;
    }
    std::exception_ptr error;
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 4)
    for (long long i = 0; i < count; ++i) {
        try {
            rows[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(polyvis_rows_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return rows;
}

} // namespace polyvis
