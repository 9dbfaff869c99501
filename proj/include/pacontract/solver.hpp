#pragma once

// Certified Picard iteration on caller-defined b-metric spaces.
//
// The caller asserts a contraction factor alpha for the orbit and the space
// coefficient s; the solver iterates x_{k+1} = T(x_k), records the residuals
// a_k = d(x_k, x_{k+1}), and carries a certificate built from the first
// residual alone:
//
//   C_bound             = a_0 (2 - alpha) / (1 - alpha)   majorant of every partial sum
//   cauchy_bound_at(n)  = C_bound * s * alpha^n / (1 - s*alpha)
//   fixed_point_bound_at(n) = s * cauchy_bound_at(n)
//
// The chain is valid when s*alpha < 1. The extra factor s in the fixed-point
// bound converts the inter-iterate Cauchy bound into a bound on the distance
// to the limit through one generalized triangle step; b-metrics need not be
// continuous, so this is the conservative conversion.
//
// alpha is never trusted: after iterating, the solver replays the trace
// against the partial-sum recursion S_{n+1} <= alpha * S_n + a_0 and the
// C_bound majorant, and revokes the certificate if either fails.

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pacontract {

enum class StopRule {
    residual,         // stop when a_n <= tolerance
    certified_bound,  // stop when fixed_point_bound_at(n) <= tolerance; needs s*alpha < 1
    both,
};

inline const char* stop_rule_name(StopRule rule) {
    switch (rule) {
        case StopRule::residual: return "residual";
        case StopRule::certified_bound: return "certified_bound";
        case StopRule::both: return "both";
    }
    return "unknown";
}

struct IterationConfig {
    double alpha = 0.5;
    double s = 1.0;
    std::size_t max_iter = 1000;
    double tolerance = 1e-10;
    StopRule stop_rule = StopRule::certified_bound;
};

/// Raised when a stop rule requires the certified bound but s*alpha >= 1,
/// so the geometric tail sum that backs the bound does not converge.
class HypothesisViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct ConvergenceCertificate {
    double a0 = 0.0;
    double alpha = 0.0;
    double s = 1.0;
    double s_alpha = 0.0;
    double c_bound = 0.0;
    bool certified = false;

    // A-posteriori audit of the caller's alpha against the observed trace.
    double c_fit = 0.0;  // max_k a_k / alpha^k
    std::optional<std::size_t> recursion_violation_at;  // first n with S_{n+1} > alpha*S_n + a0
    std::optional<std::size_t> sum_bound_violation_at;  // first n with S_n > c_bound

    double cauchy_bound_at(std::size_t n) const {
        if (s_alpha >= 1.0) return std::numeric_limits<double>::infinity();
        return c_bound * s * std::pow(alpha, static_cast<double>(n)) / (1.0 - s_alpha);
    }
    double fixed_point_bound_at(std::size_t n) const { return s * cauchy_bound_at(n); }
};

enum class SolveStatus {
    converged,
    max_iter_reached,
    uncertified_converged,  // stop rule satisfied, but no valid certificate backs it
};

inline const char* solve_status_name(SolveStatus status) {
    switch (status) {
        case SolveStatus::converged: return "converged";
        case SolveStatus::max_iter_reached: return "max_iter_reached";
        case SolveStatus::uncertified_converged: return "uncertified_converged";
    }
    return "unknown";
}

template <typename Point>
struct FixedPointResult {
    Point point;                        // last iterate T^iterations(x0)
    std::size_t iterations = 0;         // map applications performed
    std::vector<double> residual_trace;  // a_k = d(x_k, x_{k+1})
    ConvergenceCertificate certificate;
    SolveStatus status = SolveStatus::max_iter_reached;
};

namespace detail {

inline bool leq_with_slack(double lhs, double rhs) {
    return lhs <= rhs + 1e-12 * std::max(1.0, std::abs(rhs));
}

inline void audit_trace(ConvergenceCertificate& cert, std::span<const double> trace) {
    double alpha_pow = 1.0;
    for (std::size_t k = 0; k < trace.size(); ++k) {
        cert.c_fit = std::max(cert.c_fit, trace[k] / alpha_pow);
        alpha_pow *= cert.alpha;
    }

    double sum = trace[0];  // S_1
    if (!leq_with_slack(sum, cert.c_bound)) cert.sum_bound_violation_at = 1;
    for (std::size_t n = 1; n < trace.size(); ++n) {
        const double next = sum + trace[n];  // S_{n+1}
        if (!cert.recursion_violation_at && !leq_with_slack(next, cert.alpha * sum + cert.a0)) {
            cert.recursion_violation_at = n;
        }
        if (!cert.sum_bound_violation_at && !leq_with_slack(next, cert.c_bound)) {
            cert.sum_bound_violation_at = n + 1;
        }
        sum = next;
    }
    if (cert.recursion_violation_at || cert.sum_bound_violation_at) cert.certified = false;
}

}  // namespace detail

/// Iterates map_fn from x0 under the caller's (alpha, s) claim, recording
/// residuals and stopping per config.stop_rule. The residual rule tolerates
/// s*alpha >= 1 (result is marked uncertified); the bound rules refuse to
/// run without a convergent tail and throw HypothesisViolation instead.
template <typename Point, typename MapFn, typename DistFn>
FixedPointResult<Point> picard_solve(MapFn&& map_fn, DistFn&& dist_fn, Point x0,
                                     const IterationConfig& config) {
    if (!(config.alpha > 0.0 && config.alpha < 1.0))
        throw std::invalid_argument("alpha must lie in (0,1)");
    if (!(config.s >= 1.0)) throw std::invalid_argument("coefficient s must be >= 1");
    if (!(config.tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (config.max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");

    const double s_alpha = config.s * config.alpha;
    const bool bound_needed =
        config.stop_rule == StopRule::certified_bound || config.stop_rule == StopRule::both;
    if (bound_needed && s_alpha >= 1.0) {
        throw HypothesisViolation("certified stopping requires s*alpha < 1, got " +
                                  std::to_string(s_alpha));
    }

    FixedPointResult<Point> result{std::move(x0)};
    ConvergenceCertificate& cert = result.certificate;
    cert.alpha = config.alpha;
    cert.s = config.s;
    cert.s_alpha = s_alpha;
    cert.certified = s_alpha < 1.0;

    bool stopped = false;
    for (std::size_t k = 0; k < config.max_iter; ++k) {
        Point next = map_fn(result.point);
        const double a = dist_fn(result.point, next);
        if (!(a >= 0.0) || !std::isfinite(a))
            throw std::invalid_argument("dist_fn returned a negative or non-finite residual");
        result.point = std::move(next);
        result.residual_trace.push_back(a);
        result.iterations = k + 1;

        if (k == 0) {
            cert.a0 = a;
            cert.c_bound = a * (2.0 - config.alpha) / (1.0 - config.alpha);
        }

        const bool residual_ok = a <= config.tolerance;
        const bool bound_ok = cert.fixed_point_bound_at(result.iterations) <= config.tolerance;
        switch (config.stop_rule) {
            case StopRule::residual: stopped = residual_ok; break;
            case StopRule::certified_bound: stopped = bound_ok; break;
            case StopRule::both: stopped = residual_ok && bound_ok; break;
        }
        if (stopped) break;
    }

    detail::audit_trace(cert, result.residual_trace);
    if (!stopped) {
        result.status = SolveStatus::max_iter_reached;
    } else {
        result.status = cert.certified ? SolveStatus::converged : SolveStatus::uncertified_converged;
    }
    return result;
}

struct DecayReport {
    bool holds = false;
    double c_fit = 0.0;
    std::optional<std::size_t> first_violation;  // first k where a_k / alpha^k blows up
    bool c_fit_exceeds_c_bound = false;  // diagnostic: decay worse than the a0-derived majorant
};

/// Fits the geometric envelope a_k <= C * alpha^k: C_fit is the smallest
/// such C on the trace. holds fails only if the ratio is unbounded (a
/// positive residual against an underflowed alpha^k).
inline DecayReport verify_decay(std::span<const double> residuals, double alpha) {
    if (residuals.empty()) throw std::invalid_argument("residual trace must be non-empty");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
    for (double r : residuals) {
        if (!(r >= 0.0) || !std::isfinite(r))
            throw std::invalid_argument("residuals must be finite and non-negative");
    }

    DecayReport report;
    report.holds = true;
    double alpha_pow = 1.0;
    for (std::size_t k = 0; k < residuals.size(); ++k) {
        const double ratio = residuals[k] / alpha_pow;
        if (!std::isfinite(ratio)) {
            report.holds = false;
            if (!report.first_violation) report.first_violation = k;
        } else {
            report.c_fit = std::max(report.c_fit, ratio);
        }
        alpha_pow *= alpha;
    }
    const double c_bound = residuals[0] * (2.0 - alpha) / (1.0 - alpha);
    report.c_fit_exceeds_c_bound = report.c_fit > c_bound || !report.holds;
    return report;
}

}  // namespace pacontract
