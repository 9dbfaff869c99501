#pragma once

// Contraction-class decisions on finite b-metric spaces, with minimal moduli
// and witness pairs.
//
//   Banach:  d(Tx, Ty) <= beta * d(x, y),              membership: beta < 1
//   Kannan:  d(Tx, Ty) <= beta * (d(x,Tx) + d(y,Ty)),  membership: beta < 1/(2s)
//   PA:      sum_{k=1}^{n} d(T^k x, T^k y) <= alpha * sum_{k=0}^{n-1} d(T^k x, T^k y)
//            for all pairs and all n >= N, some alpha in (0,1), N >= 1
//
// Two independent routes decide PA membership. pa_minimal_alpha uses the
// finite-space characterization: the averaged inequality can hold for some
// alpha < 1 only if every pair's delta sequence vanishes after finitely many
// steps (otherwise both partial sums grow with the same slope and their
// ratio tends to 1), in which case the infimum alpha is a finite ratio of
// sums. pa_check_direct evaluates the definition literally, sum against sum,
// and serves as the oracle the characterization is validated against.

#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pacontract/mapping.hpp"
#include "pacontract/space.hpp"

namespace pacontract {

struct BanachReport {
    bool is_member = false;
    double beta_min = 0.0;  // max over pairs of d(Ti,Tj)/d(i,j); 0 means any beta works
    std::optional<PointPair> witness;
};

struct KannanReport {
    bool is_member = false;
    double beta_min = 0.0;  // +infinity when some pair forces it (fixed pairs with moving images)
    double threshold = 0.5;  // 1 / (2s)
    std::optional<PointPair> witness;
};

struct PaReport {
    bool is_member = false;
    double alpha_min = 1.0;   // infimum of admissible alpha; meaningful when member
    std::size_t n_min = 0;    // max merge index over pairs (>= 1) when member, 0 otherwise
    std::optional<PointPair> witness;  // attains alpha_min, or the non-merging pair
};

/// Tightest pointwise Lipschitz factor: max over i < j of d(Ti,Tj)/d(i,j).
/// The witness is the first pair attaining the max; membership is strict
/// (beta_min < 1), compared exactly.
inline BanachReport banach_modulus(const FiniteBSpace& space, const SelfMap& map) {
    require_compatible(space, map);
    const std::size_t n = space.size();

    BanachReport report;
    double best = -1.0;
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const double ratio = space.d(map(i), map(j)) / space.d(i, j);
            if (ratio > best) {
                best = ratio;
                report.witness = PointPair{i, j};
            }
        }
    }
    report.beta_min = best < 0.0 ? 0.0 : best;
    report.is_member = report.beta_min < 1.0;
    return report;
}

/// Tightest Kannan factor against the self-displacement sum
/// d(i,Ti) + d(j,Tj). Pairs with zero numerator impose no constraint; a
/// zero denominator under a positive numerator (two distinct fixed points)
/// rules the class out for every beta and reports +infinity.
inline KannanReport kannan_modulus(const FiniteBSpace& space, const SelfMap& map) {
    require_compatible(space, map);
    const std::size_t n = space.size();

    KannanReport report;
    report.threshold = 1.0 / (2.0 * space.s);
    double best = -1.0;
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const double num = space.d(map(i), map(j));
            if (num == 0.0) continue;
            const double den = space.d(i, map(i)) + space.d(j, map(j));
            const double ratio = den == 0.0 ? std::numeric_limits<double>::infinity() : num / den;
            if (ratio > best) {
                best = ratio;
                report.witness = PointPair{i, j};
            }
        }
    }
    report.beta_min = best < 0.0 ? 0.0 : best;
    report.is_member = report.beta_min < report.threshold;
    return report;
}

/// Infimum PA modulus via the finite-space characterization.
///
/// If some pair never merges, no alpha < 1 can average the tail away:
/// report non-membership with that pair. Otherwise, for a pair with merge
/// index M and total mass P = P(M), the shifted sum settles at P - delta_0
/// while the plain sum settles at P, so the pair constrains
/// alpha >= (P - delta_0)/P. The report carries
///   alpha_min = max of those ratios (0 when every image pair coincides),
///   n_min     = max merge index (>= 1),
/// and Eq-style membership holds for every alpha in [alpha_min, 1) at
/// N = n_min. Non-members report alpha_min = 1, n_min = 0.
inline PaReport pa_minimal_alpha(const FiniteBSpace& space, const SelfMap& map) {
    require_compatible(space, map);
    const std::size_t n = space.size();

    PaReport report;
    double alpha = 0.0;
    std::size_t n_min = 1;
    std::optional<PointPair> witness;
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const DeltaTrace trace = delta_trace(space, map, i, j);
            if (!trace.merge_index) {
                report.is_member = false;
                report.alpha_min = 1.0;
                report.n_min = 0;
                report.witness = PointPair{i, j};
                return report;
            }
            const double total = trace.total();  // P(M); positive since delta_0 > 0
            const double ratio = (total - trace.deltas[0]) / total;
            if (ratio > alpha) {
                alpha = ratio;
                witness = PointPair{i, j};
            }
            n_min = std::max(n_min, *trace.merge_index);
        }
    }
    report.is_member = true;
    report.alpha_min = alpha;
    report.n_min = n_min;
    report.witness = witness;
    return report;
}

struct PaCheckFailure {
    PointPair pair;
    // Failing window length, or nullopt for the asymptotic failure mode:
    // the paired orbit's cycle keeps positive distance mass, so both sums
    // grow with equal slope and the inequality fails for all large n.
    std::optional<std::size_t> n;
};

struct PaCheckResult {
    bool holds = false;
    std::optional<PaCheckFailure> failure;
    explicit operator bool() const { return holds; }
};

/// Literal check of the averaged-contraction inequality for the given alpha
/// and every window length n >= n_start. Deliberately independent of the
/// merge machinery above: deltas come from direct iteration, the settling
/// horizon from the pigeonhole bound pre_period + period <= n^2, and each
/// window is compared sum against sum with exact arithmetic.
inline PaCheckResult pa_check_direct(const FiniteBSpace& space, const SelfMap& map,
                                     double alpha, std::size_t n_start) {
    require_compatible(space, map);
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
    if (n_start < 1) throw std::invalid_argument("n_start must be >= 1");

    const std::size_t n = space.size();
    const std::size_t settle = n * n;     // every paired orbit is periodic from here
    const std::size_t horizon = 2 * settle + 1;

    std::vector<double> delta;
    std::vector<double> prefix;
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            delta.clear();
            Index u = i, v = j;
            for (std::size_t k = 0; k <= horizon; ++k) {
                delta.push_back(space.d(u, v));
                u = map.table[u];
                v = map.table[v];
            }

            bool merged = true;
            for (std::size_t k = settle; k <= horizon; ++k) {
                if (delta[k] != 0.0) {
                    merged = false;
                    break;
                }
            }
            if (!merged) {
                return {false, PaCheckFailure{{i, j}, std::nullopt}};
            }

            prefix.assign(delta.size() + 1, 0.0);
            for (std::size_t k = 0; k < delta.size(); ++k) prefix[k + 1] = prefix[k] + delta[k];
            // All deltas vanish beyond `settle`, so sums saturate; clamping
            // makes arbitrarily large windows exact.
            const auto sum_first = [&](std::size_t m) {
                return prefix[std::min(m, prefix.size() - 1)];
            };

            const std::size_t n_hi = std::max(n_start, settle) + 1;
            for (std::size_t m = n_start; m <= n_hi; ++m) {
                const double shifted = sum_first(m + 1) - delta[0];  // sum_{k=1}^{m}
                const double plain = sum_first(m);                   // sum_{k=0}^{m-1}
                if (shifted > alpha * plain) {
                    return {false, PaCheckFailure{{i, j}, m}};
                }
            }
        }
    }
    return {true, std::nullopt};
}

struct ClassificationReport {
    BanachReport banach;
    KannanReport kannan;
    PaReport pa;
    // Cross-check: Banach members must be PA members, and whenever
    // beta_min lies in (0,1) the direct route must accept (beta_min, N=1).
    bool banach_implies_pa_ok = true;
};

inline ClassificationReport classify_all(const FiniteBSpace& space, const SelfMap& map) {
    ClassificationReport report;
    report.banach = banach_modulus(space, map);
    report.kannan = kannan_modulus(space, map);
    report.pa = pa_minimal_alpha(space, map);

    report.banach_implies_pa_ok = !report.banach.is_member || report.pa.is_member;
    const double beta = report.banach.beta_min;
    if (beta > 0.0 && beta < 1.0) {
        report.banach_implies_pa_ok =
            report.banach_implies_pa_ok && pa_check_direct(space, map, beta, 1).holds;
    }
    return report;
}

}  // namespace pacontract
