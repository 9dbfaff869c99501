#pragma once

// Ground truth on finite spaces by brute force: enumerate fixed points
// directly from the table, and check the fixed-point theorem end to end for
// each map (unique fixed point + every orbit reaches it whenever the
// hypothesis pa_member and s*alpha < 1 holds).

#include <cstddef>
#include <vector>

#include "pacontract/classify.hpp"
#include "pacontract/mapping.hpp"
#include "pacontract/space.hpp"

namespace pacontract {

inline std::vector<Index> brute_fixed_points(const SelfMap& map) {
    std::vector<Index> fixed;
    for (Index i = 0; i < map.table.size(); ++i) {
        if (map.table[i] == i) fixed.push_back(i);
    }
    return fixed;
}

struct TheoremVerdict {
    bool pa_member = false;
    double s_alpha_product = 0.0;  // s * alpha_min
    bool hypothesis_met = false;   // pa_member and s*alpha_min < 1
    std::vector<Index> fixed_points;
    bool unique = false;
    bool all_orbits_converge = false;  // every orbit ends on a fixed point
    bool theorem_respected = false;    // hypothesis_met implies (unique and all orbits converge)
    // On a finite space the minimum positive distance is attained, so the
    // topology is discrete and every self-map is continuous; the theorem's
    // continuity hypothesis costs nothing here.
    bool continuity_automatic = true;
};

/// Combines the PA verdict, brute fixed-point enumeration, and orbit
/// convergence. "Converges" is the finite-space reading: the orbit becomes
/// exactly the fixed point within pre_period steps and stays, which is
/// equivalent to its cycle having length 1.
inline TheoremVerdict verify_theorem(const FiniteBSpace& space, const SelfMap& map) {
    require_compatible(space, map);

    TheoremVerdict verdict;
    const PaReport pa = pa_minimal_alpha(space, map);
    verdict.pa_member = pa.is_member;
    verdict.s_alpha_product = space.s * pa.alpha_min;
    verdict.hypothesis_met = pa.is_member && verdict.s_alpha_product < 1.0;

    verdict.fixed_points = brute_fixed_points(map);
    verdict.unique = verdict.fixed_points.size() == 1;

    verdict.all_orbits_converge = true;
    for (Index start = 0; start < space.size(); ++start) {
        if (orbit(map, start).period != 1) {
            verdict.all_orbits_converge = false;
            break;
        }
    }

    verdict.theorem_respected =
        !verdict.hypothesis_met || (verdict.unique && verdict.all_orbits_converge);
    return verdict;
}

}  // namespace pacontract
