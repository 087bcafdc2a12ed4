#pragma once

#include <chrono>
#include <stdexcept>

namespace gbik {

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// Wall-clock cutoff for the enclosing algebraic computation. Coefficient
// growth (not the S-pair count) is what blows up on hard parametric runs, so
// count caps alone cannot bound time; the deadline is checked inside the
// rewrite and gcd loops. Thread-local: concurrent solves stay independent.
inline thread_local bool alg_deadline_set = false;
inline thread_local std::chrono::steady_clock::time_point alg_deadline{};

struct DeadlineScope {
    bool prev_set;
    std::chrono::steady_clock::time_point prev;

    explicit DeadlineScope(long millis) : prev_set(alg_deadline_set), prev(alg_deadline) {
        if (millis <= 0) return;
        auto mine = std::chrono::steady_clock::now() + std::chrono::milliseconds(millis);
        // nested scopes may only shorten the budget, never extend it
        if (!alg_deadline_set || mine < alg_deadline) {
            alg_deadline_set = true;
            alg_deadline = mine;
        }
    }
    ~DeadlineScope() {
        alg_deadline_set = prev_set;
        alg_deadline = prev;
    }
    DeadlineScope(const DeadlineScope&) = delete;
    DeadlineScope& operator=(const DeadlineScope&) = delete;
};

inline void check_deadline() {
    if (alg_deadline_set && std::chrono::steady_clock::now() > alg_deadline)
        throw CapExceeded("algebra: wall-clock budget exceeded");
}

}  // namespace detail
}  // namespace gbik
