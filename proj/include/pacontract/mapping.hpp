#pragma once

// Self-maps on finite spaces and the combinatorics of their iterates:
// orbit pre-period/period in the functional graph, and for a point pair the
// successive-distance sequence delta_k = d(T^k x, T^k y) together with its
// merge index and prefix sums.

#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pacontract/space.hpp"

namespace pacontract {

using PointPair = std::pair<Index, Index>;

/// A total function on a finite space, table[i] = index of T(point_i).
struct SelfMap {
    std::vector<Index> table;

    std::size_t size() const { return table.size(); }
    Index operator()(Index i) const { return table[i]; }

    bool operator==(const SelfMap&) const = default;
};

inline void require_compatible(const FiniteBSpace& space, const SelfMap& map) {
    if (map.table.size() != space.size())
        throw std::invalid_argument("map table length must equal the point count");
    for (Index t : map.table) {
        if (t >= space.size()) throw std::invalid_argument("map table entry out of range");
    }
}

struct OrbitInfo {
    std::size_t pre_period = 0;
    std::size_t period = 1;
    std::vector<Index> path;  // T^0 x .. T^(pre_period+period-1) x, all distinct
};

/// Walks the orbit of `start` until a state repeats. Minimal pre-period and
/// period; path holds the distinct states in visit order.
inline OrbitInfo orbit(const SelfMap& map, Index start) {
    const std::size_t n = map.table.size();
    if (start >= n) throw std::invalid_argument("orbit start out of range");
    for (Index t : map.table) {
        if (t >= n) throw std::invalid_argument("map table entry out of range");
    }

    constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> first_seen(n, kUnseen);
    OrbitInfo info;
    Index cur = start;
    std::size_t step = 0;
    while (first_seen[cur] == kUnseen) {
        first_seen[cur] = step++;
        info.path.push_back(cur);
        cur = map.table[cur];
    }
    info.pre_period = first_seen[cur];
    info.period = step - first_seen[cur];
    return info;
}

/// delta_k = d(T^k x_i, T^k x_j) along the paired orbit of (i, j) in the
/// product functional graph. The trace stores one entry per distinct product
/// state (pre_period + period of them); delta_at() extends periodically.
///
/// merge_index is the smallest M with delta_k = 0 for all k >= M. Merging is
/// a combinatorial event (the two orbits coincide from M on), so it is
/// detected by exact zero comparison; nullopt means the paired orbit's cycle
/// keeps positive distance forever.
struct DeltaTrace {
    PointPair pair;
    std::size_t pre_period = 0;
    std::size_t period = 1;
    std::vector<double> deltas;
    std::optional<std::size_t> merge_index;
    std::vector<double> prefix_sums;  // P(n) = sum_{k<n} delta_k, n = 0..deltas.size()

    double delta_at(std::size_t k) const {
        if (k < deltas.size()) return deltas[k];
        return deltas[pre_period + (k - pre_period) % period];
    }

    /// Total distance mass; equals P(merge_index) when the pair merges.
    double total() const { return prefix_sums.back(); }
};

inline DeltaTrace delta_trace(const FiniteBSpace& space, const SelfMap& map, Index i, Index j) {
    require_compatible(space, map);
    const std::size_t n = space.size();
    if (i >= n || j >= n) throw std::invalid_argument("pair index out of range");

    constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> first_seen(n * n, kUnseen);

    DeltaTrace trace;
    trace.pair = {i, j};
    Index u = i, v = j;
    std::size_t step = 0;
    while (first_seen[u * n + v] == kUnseen) {
        first_seen[u * n + v] = step++;
        trace.deltas.push_back(space.d(u, v));
        u = map.table[u];
        v = map.table[v];
    }
    trace.pre_period = first_seen[u * n + v];
    trace.period = step - trace.pre_period;

    bool cycle_vanishes = true;
    for (std::size_t k = trace.pre_period; k < trace.deltas.size(); ++k) {
        if (trace.deltas[k] != 0.0) {
            cycle_vanishes = false;
            break;
        }
    }
    if (cycle_vanishes) {
        std::size_t merge = 0;
        for (std::size_t k = 0; k < trace.deltas.size(); ++k) {
            if (trace.deltas[k] != 0.0) merge = k + 1;
        }
        trace.merge_index = merge;
    }

    trace.prefix_sums.resize(trace.deltas.size() + 1, 0.0);
    for (std::size_t k = 0; k < trace.deltas.size(); ++k) {
        trace.prefix_sums[k + 1] = trace.prefix_sums[k] + trace.deltas[k];
    }
    return trace;
}

}  // namespace pacontract
