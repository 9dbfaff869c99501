#pragma once

// Finite b-metric spaces: a point set with an explicit distance matrix and a
// coefficient s >= 1 relaxing the triangle inequality to
//   d(x, z) <= s * (d(x, y) + d(y, z)).
// Validation checks the three axioms exhaustively; minimal_coefficient finds
// the smallest admissible s for a symmetric zero-diagonal matrix.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pacontract {

using Index = std::size_t;
using DistMatrix = std::vector<std::vector<double>>;

/// A finite point set with an explicit distance matrix and coefficient s.
/// Labels are opaque; all math runs on indices.
struct FiniteBSpace {
    std::vector<std::string> points;
    DistMatrix dist;
    double s = 1.0;

    std::size_t size() const { return points.size(); }
    double d(Index i, Index j) const { return dist[i][j]; }
};

enum class Axiom {
    identity,   // d(x, y) = 0 iff x = y
    symmetry,   // d(x, y) = d(y, x)
    triangle,   // d(x, z) <= s * (d(x, y) + d(y, z))
};

inline const char* axiom_name(Axiom a) {
    switch (a) {
        case Axiom::identity: return "identity";
        case Axiom::symmetry: return "symmetry";
        case Axiom::triangle: return "triangle";
    }
    return "unknown";
}

/// One failed axiom instance. `k` is meaningful only for the triangle axiom;
/// identity/symmetry violations concern the pair (i, j).
struct AxiomViolation {
    Axiom axiom;
    Index i = 0;
    Index j = 0;
    Index k = 0;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct ValidationReport {
    bool valid = true;
    std::vector<AxiomViolation> violations;
};

namespace detail {

// Relative slack for the triangle axiom only; derived matrices (entrywise
// powers of metrics) accumulate rounding that exact comparison would flag.
inline constexpr double kTriangleRelTol = 1e-12;

inline bool triangle_holds(double lhs, double rhs) {
    return lhs <= rhs + kTriangleRelTol * std::max(lhs, rhs);
}

inline void require_square_nonnegative(const DistMatrix& dist) {
    const std::size_t n = dist.size();
    if (n == 0) throw std::invalid_argument("distance matrix must be non-empty");
    for (const auto& row : dist) {
        if (row.size() != n) throw std::invalid_argument("distance matrix must be square");
        for (double v : row) {
            if (!std::isfinite(v)) throw std::invalid_argument("distance entries must be finite");
            if (v < 0.0) throw std::invalid_argument("distance entries must be non-negative");
        }
    }
}

}  // namespace detail

/// Checks axioms (i)-(iii) exhaustively and reports every violation in a
/// fixed index order (identity pairs, then symmetry pairs i<j, then all
/// ordered triples). Identity and symmetry compare exactly; the triangle
/// axiom allows relative slack 1e-12.
///
/// Structural problems (non-square matrix, negative or non-finite entry,
/// s < 1) are rejected with std::invalid_argument: they are malformed input,
/// not a "valid = false" verdict.
inline ValidationReport validate_b_metric(const DistMatrix& dist, double s) {
    detail::require_square_nonnegative(dist);
    if (!std::isfinite(s) || s < 1.0) throw std::invalid_argument("coefficient s must be >= 1");

    const std::size_t n = dist.size();
    ValidationReport report;

    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            const bool zero = dist[i][j] == 0.0;
            if (zero != (i == j)) {
                report.violations.push_back({Axiom::identity, i, j, 0, dist[i][j], 0.0});
            }
        }
    }
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            if (dist[i][j] != dist[j][i]) {
                report.violations.push_back({Axiom::symmetry, i, j, 0, dist[i][j], dist[j][i]});
            }
        }
    }
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            for (Index k = 0; k < n; ++k) {
                const double lhs = dist[i][k];
                const double rhs = s * (dist[i][j] + dist[j][k]);
                if (!detail::triangle_holds(lhs, rhs)) {
                    report.violations.push_back({Axiom::triangle, i, j, k, lhs, rhs});
                }
            }
        }
    }

    report.valid = report.violations.empty();
    return report;
}

/// Smallest s making `dist` a b-metric, floored at 1:
///   max(1, max over triples i != k, j not in {i, k} of d(i,k) / (d(i,j) + d(j,k))).
/// Requires axioms (i)-(ii) to already hold; then every scanned denominator
/// is positive, since both summands join distinct points.
inline double minimal_coefficient(const DistMatrix& dist) {
    detail::require_square_nonnegative(dist);
    const std::size_t n = dist.size();
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            if ((dist[i][j] == 0.0) != (i == j))
                throw std::invalid_argument("identity axiom must hold before computing the coefficient");
            if (dist[i][j] != dist[j][i])
                throw std::invalid_argument("symmetry axiom must hold before computing the coefficient");
        }
    }

    double s_min = 1.0;
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            if (j == i) continue;
            for (Index k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                const double den = dist[i][j] + dist[j][k];
                assert(den > 0.0 && "distinct-point distances are positive under axioms (i)-(ii)");
                s_min = std::max(s_min, dist[i][k] / den);
            }
        }
    }
    return s_min;
}

/// Throws unless the space passes validate_b_metric with its own s.
inline void require_valid(const FiniteBSpace& space) {
    if (space.points.size() != space.dist.size())
        throw std::invalid_argument("point labels and distance matrix disagree in size");
    const ValidationReport report = validate_b_metric(space.dist, space.s);
    if (!report.valid) {
        const auto& v = report.violations.front();
        throw std::invalid_argument(std::string("space violates the ") + axiom_name(v.axiom) +
                                    " axiom (" + std::to_string(report.violations.size()) +
                                    " violation(s) total)");
    }
}

}  // namespace pacontract
