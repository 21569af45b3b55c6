#pragma once

#include "nubshift/group_shift.hpp"

#include <optional>

namespace nubshift {

/// Symbolic handle for the compact open subgroup V_n of the restricted
/// shift: all points whose support lies in (-inf, n]. The family satisfies
/// V_n < V_{n+1} with index |F| and shift(V_n) = V_{n-1}; computations on
/// it combine the level lattice with finitely supported test points.
struct LevelSubgroupSym {
    long long level = 0;
};

/// Exact index [V_upper : V_lower] by enumerating coset representatives
/// supported on the displaced interval (lower, upper] and verifying they
/// are pairwise inequivalent.
std::uint64_t level_index(const GroupPtr& f, long long lower, long long upper);

/// Minimum over the V_n family of [alpha(V_n) : alpha(V_n) meet V_n] where
/// alpha is the shift (direction +1) or its inverse (direction -1):
/// 1 forward, |F| backward. The minimum is sampled over several levels and
/// each index is computed by exact coset enumeration.
std::uint64_t scale_of_shift(const GroupPtr& f, int direction);

/// Tidy decomposition of V_n for the shift or its inverse. One component is
/// the one-point subgroup, the other is V_n itself; ta records V = V_+ V_-
/// and tb records that the union of the backward iterates of V_- is closed
/// in the model (it is the whole restricted shift); index is
/// [alpha(V_+) : V_+], computed by coset enumeration.
struct TidyComponents {
    int direction = 1;
    long long level = 0;
    std::optional<long long> v_plus_level;  ///< nullopt: V_+ is trivial
    std::optional<long long> v_minus_level; ///< nullopt: V_- is trivial
    bool ta = false;
    bool tb = false;
    std::uint64_t index = 1;
};
TidyComponents tidy_components(const GroupPtr& f, LevelSubgroupSym v, int direction);

/// Orbit behaviour of the finitely supported subfamily: every tested point
/// falls into every sampled level under enough forward shifts (so the
/// forward contraction group is everything representable), and no
/// nonidentity tested point keeps a bounded backward orbit (so the bounded
/// contraction subgroups and the nub are trivial).
struct RestrictedContractionReport {
    int support_bound = 0;
    std::uint64_t points_checked = 0;
    bool all_fs_points_contract = false;
    bool bounded_orbit_only_identity = false;
    bool nub_trivial = false;
};
RestrictedContractionReport contraction_report(const GroupPtr& f, int support_bound = 2);

/// For f in V_level: checks that a bounded full orbit forces the orbit to
/// stay inside V_level. In the model only the identity has a bounded orbit,
/// which is verified per point by exhibiting an escaping backward shift for
/// everything else; returns the (verified) implication verdict.
bool criterion_check(const GroupPtr& f, LevelSubgroupSym v, const EPWord& point);

} // namespace nubshift
