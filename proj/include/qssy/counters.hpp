#pragma once

#include <cstdint>

// Per-thread operation counters. Matvec calls and live vectors are always
// tracked; per-entry kernel accounting is compiled in unless NDEBUG is set
// (define QSSY_COUNT_OPS to force it on in release builds).

#if !defined(NDEBUG) || defined(QSSY_COUNT_OPS)
#define QSSY_ENTRY_COUNTING 1
#else
#define QSSY_ENTRY_COUNTING 0
#endif

namespace qssy {

struct OpCounters {
    std::uint64_t matvec = 0;
    std::uint64_t matvec_adj = 0;
    std::uint64_t plane_entry_updates = 0;
    std::int64_t live_vectors = 0;
    std::int64_t peak_live_vectors = 0;

    std::uint64_t total_matvecs() const { return matvec + matvec_adj; }
};

inline OpCounters& op_counters() {
    thread_local OpCounters counters;
    return counters;
}

// Zeroes the call counters and restarts the peak at the current live count.
inline void reset_op_counters() {
    OpCounters& c = op_counters();
    c.matvec = 0;
    c.matvec_adj = 0;
    c.plane_entry_updates = 0;
    c.peak_live_vectors = c.live_vectors;
}

namespace detail {

inline void vector_born() {
    OpCounters& c = op_counters();
    if (++c.live_vectors > c.peak_live_vectors) c.peak_live_vectors = c.live_vectors;
}

inline void vector_died() { --op_counters().live_vectors; }

} // namespace detail
} // namespace qssy
