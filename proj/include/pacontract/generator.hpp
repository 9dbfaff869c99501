#pragma once

// Space generators for tests and the class census.
//
//   discrete          all off-diagonal distances 1, s = 1
//   power_metric      points 0..n-1 on the line, dist |i-j|^p, s = minimal coefficient
//   random_perturbed  seeded random edge weights, shortest-path completed into a
//                     metric, then raised entrywise to power p
//
// The random kind builds validity in rather than rejection-sampling: the
// shortest-path completion is a metric by construction, and the entrywise
// p-th power of a metric is a b-metric with s <= 2^(p-1).
//
// census() classifies every self-map on a space (n <= 6 guard) and
// aggregates counts per class-intersection cell, with the first map in
// enumeration order kept as each cell's witness.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pacontract/classify.hpp"
#include "pacontract/mapping.hpp"
#include "pacontract/oracle.hpp"
#include "pacontract/space.hpp"

namespace pacontract {

enum class SpaceKind { discrete, power_metric, random_perturbed };

inline const char* space_kind_name(SpaceKind kind) {
    switch (kind) {
        case SpaceKind::discrete: return "discrete";
        case SpaceKind::power_metric: return "power_metric";
        case SpaceKind::random_perturbed: return "random_perturbed";
    }
    return "unknown";
}

struct GeneratorSpec {
    std::size_t n = 3;
    SpaceKind kind = SpaceKind::discrete;
    double p = 1.0;        // exponent for power_metric and random_perturbed
    double spread = 0.25;  // random_perturbed: weights drawn from [1, 1+spread]
    std::uint64_t seed = 0;
};

// Identity of the generator's randomness, recorded in outputs so seeded runs
// can be reproduced bit for bit.
inline constexpr const char* kGeneratorRngId = "mt19937_64:u53";

namespace detail {

// Uniform double in [0,1) from the top 53 bits; avoids the
// implementation-defined behaviour of std::uniform_real_distribution.
inline double unit_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::vector<std::string> index_labels(std::size_t n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    return labels;
}

}  // namespace detail

inline FiniteBSpace make_space(const GeneratorSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("point count must be >= 1");
    if (!(spec.p >= 1.0)) throw std::invalid_argument("power exponent must be >= 1");
    if (!(spec.spread >= 0.0)) throw std::invalid_argument("spread must be >= 0");

    const std::size_t n = spec.n;
    FiniteBSpace space;
    space.points = detail::index_labels(n);
    space.dist.assign(n, std::vector<double>(n, 0.0));

    switch (spec.kind) {
        case SpaceKind::discrete:
            for (Index i = 0; i < n; ++i)
                for (Index j = 0; j < n; ++j) space.dist[i][j] = i == j ? 0.0 : 1.0;
            space.s = 1.0;
            break;

        case SpaceKind::power_metric:
            for (Index i = 0; i < n; ++i)
                for (Index j = 0; j < n; ++j)
                    space.dist[i][j] =
                        std::pow(static_cast<double>(i > j ? i - j : j - i), spec.p);
            space.s = minimal_coefficient(space.dist);
            break;

        case SpaceKind::random_perturbed: {
            std::mt19937_64 rng(spec.seed);
            for (Index i = 0; i < n; ++i) {
                for (Index j = i + 1; j < n; ++j) {
                    const double w = 1.0 + spec.spread * detail::unit_double(rng);
                    space.dist[i][j] = space.dist[j][i] = w;
                }
            }
            // Shortest-path completion turns the weights into a metric.
            for (Index k = 0; k < n; ++k)
                for (Index i = 0; i < n; ++i)
                    for (Index j = 0; j < n; ++j)
                        space.dist[i][j] =
                            std::min(space.dist[i][j], space.dist[i][k] + space.dist[k][j]);
            if (spec.p != 1.0) {
                for (Index i = 0; i < n; ++i)
                    for (Index j = 0; j < n; ++j)
                        space.dist[i][j] = std::pow(space.dist[i][j], spec.p);
            }
            space.s = minimal_coefficient(space.dist);
            break;
        }
    }
    return space;
}

/// All n^n self-map tables in lexicographic order, streamed one at a time.
/// Guarded at n <= 6 (6^6 = 46656); larger spaces need sampling, which this
/// range deliberately does not provide.
class MapEnumeration {
public:
    explicit MapEnumeration(std::size_t n) : n_(n) {
        if (n < 1) throw std::invalid_argument("point count must be >= 1");
        if (n > 6)
            throw std::invalid_argument(
                "refusing to enumerate n^n self-maps for n > 6; sample maps instead");
    }

    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = SelfMap;
        using difference_type = std::ptrdiff_t;
        using pointer = const SelfMap*;
        using reference = const SelfMap&;

        iterator() : done_(true) {}
        explicit iterator(std::size_t n) : done_(false) { current_.table.assign(n, 0); }

        const SelfMap& operator*() const { return current_; }
        const SelfMap* operator->() const { return &current_; }

        iterator& operator++() {
            const std::size_t n = current_.table.size();
            std::size_t pos = n;
            while (pos > 0) {
                --pos;
                if (current_.table[pos] + 1 < n) {
                    ++current_.table[pos];
                    std::fill(current_.table.begin() + static_cast<std::ptrdiff_t>(pos) + 1,
                              current_.table.end(), Index{0});
                    return *this;
                }
            }
            done_ = true;
            return *this;
        }
        void operator++(int) { ++*this; }

        friend bool operator==(const iterator& it, std::default_sentinel_t) { return it.done_; }

    private:
        SelfMap current_;
        bool done_;
    };

    iterator begin() const { return iterator(n_); }
    std::default_sentinel_t end() const { return {}; }

    std::size_t size() const {
        std::size_t count = 1;
        for (std::size_t i = 0; i < n_; ++i) count *= n_;
        return count;
    }

private:
    std::size_t n_;
};

inline MapEnumeration enumerate_maps(std::size_t n) { return MapEnumeration(n); }

/// FNV-1a over the raw bytes of the distance matrix, row major.
inline std::uint64_t space_fingerprint(const FiniteBSpace& space) {
    std::uint64_t h = 14695981039346656037ULL;
    const auto mix = [&h](std::uint64_t bits) {
        for (int b = 0; b < 8; ++b) {
            h ^= (bits >> (8 * b)) & 0xffULL;
            h *= 1099511628211ULL;
        }
    };
    for (const auto& row : space.dist)
        for (double v : row) mix(std::bit_cast<std::uint64_t>(v));
    return h;
}

/// Per-map record streamed out of census().
struct CensusRecord {
    SelfMap map;
    bool banach = false;
    bool kannan = false;
    bool pa = false;
    bool theorem_respected = true;
};

struct CensusCell {
    std::size_t count = 0;
    std::optional<SelfMap> witness;  // first member in enumeration order
};

struct CensusReport {
    std::size_t point_count = 0;
    std::size_t map_count = 0;
    std::uint64_t fingerprint = 0;

    // Indexed by (banach << 2) | (kannan << 1) | pa.
    std::array<CensusCell, 8> cells;

    std::size_t banach_count = 0;
    std::size_t kannan_count = 0;
    std::size_t pa_count = 0;
    std::size_t banach_and_pa = 0;
    std::size_t pa_not_banach = 0;
    std::size_t banach_not_pa = 0;  // release gate: must stay 0
    std::size_t pa_not_kannan = 0;
    std::size_t kannan_not_pa = 0;

    std::size_t theorem_violations = 0;  // release gate: must stay 0
    bool banach_implies_pa_ok = true;
    // Uniqueness held for every PA member even where s*alpha_min >= 1
    // left the theorem's hypothesis unmet.
    bool pa_unique_always = true;
};

template <typename PerMap>
CensusReport census(const FiniteBSpace& space, PerMap&& per_map) {
    require_valid(space);

    CensusReport report;
    report.point_count = space.size();
    report.fingerprint = space_fingerprint(space);

    for (const SelfMap& map : enumerate_maps(space.size())) {
        const ClassificationReport cls = classify_all(space, map);
        const TheoremVerdict verdict = verify_theorem(space, map);

        const std::size_t cell = (static_cast<std::size_t>(cls.banach.is_member) << 2) |
                                 (static_cast<std::size_t>(cls.kannan.is_member) << 1) |
                                 static_cast<std::size_t>(cls.pa.is_member);
        ++report.cells[cell].count;
        if (!report.cells[cell].witness) report.cells[cell].witness = map;

        report.banach_count += cls.banach.is_member;
        report.kannan_count += cls.kannan.is_member;
        report.pa_count += cls.pa.is_member;
        report.banach_and_pa += cls.banach.is_member && cls.pa.is_member;
        report.pa_not_banach += cls.pa.is_member && !cls.banach.is_member;
        report.banach_not_pa += cls.banach.is_member && !cls.pa.is_member;
        report.pa_not_kannan += cls.pa.is_member && !cls.kannan.is_member;
        report.kannan_not_pa += cls.kannan.is_member && !cls.pa.is_member;

        report.theorem_violations += !verdict.theorem_respected;
        report.banach_implies_pa_ok =
            report.banach_implies_pa_ok && cls.banach_implies_pa_ok;
        if (cls.pa.is_member && verdict.fixed_points.size() != 1) report.pa_unique_always = false;

        ++report.map_count;
        per_map(CensusRecord{map, cls.banach.is_member, cls.kannan.is_member, cls.pa.is_member,
                             verdict.theorem_respected});
    }
    return report;
}

inline CensusReport census(const FiniteBSpace& space) {
    return census(space, [](const CensusRecord&) {});
}

}  // namespace pacontract
