#include "nubshift/restricted.hpp"

#include <algorithm>

namespace nubshift {

namespace {

/// All finitely supported words with support inside [lo, hi], as EPWords.
std::vector<EPWord> fs_points_in(const GroupPtr& f, long long lo, long long hi) {
    const int len = static_cast<int>(hi - lo + 1);
    const BlockCode r = static_cast<BlockCode>(f->order());
    const BlockCode total = detail::pow_u64(r, len);
    if (total > kMaxBlockEnumeration) fail(Errc::WidthExceeded, "support range too wide");
    std::vector<EPWord> out;
    out.reserve(static_cast<std::size_t>(total));
    for (BlockCode c = 0; c < total; ++c)
        out.push_back(EPWord::finitely_supported(f, lo, decode_block(c, static_cast<Sym>(r), len)));
    return out;
}

long long support_max(const EPWord& x) {
    const auto s = x.support();
    require_internal(s.has_value(), "nonidentity point without support");
    return s->second;
}

} // namespace

std::uint64_t level_index(const GroupPtr& f, long long lower, long long upper) {
    if (upper < lower) fail(Errc::PreconditionFailed, "upper level below lower level");
    if (upper == lower) return 1;
    // coset representatives are the words on (lower, upper]; two of them lie
    // in the same V_lower-coset exactly when their values there agree
    const auto reps = fs_points_in(f, lower + 1, upper);
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = i + 1; j < reps.size(); ++j) {
            const EPWord diff = reps[i] * reps[j].inverse();
            const bool same_coset = diff.is_identity() || support_max(diff) <= lower;
            require_internal(!same_coset, "distinct displaced words fell into one coset");
        }
    return reps.size();
}

std::uint64_t scale_of_shift(const GroupPtr& f, int direction) {
    if (direction != 1 && direction != -1)
        fail(Errc::PreconditionFailed, "direction is the shift or its inverse");
    std::uint64_t best = 0;
    for (long long n = -2; n <= 2; ++n) {
        // shift(V_n) = V_{n-1}, so alpha(V_n) = V_{n - direction};
        // alpha(V_n) meet V_n = V_{min}, and the index is over the overhang
        const long long shifted = n - direction;
        const long long meet = std::min(shifted, n);
        const std::uint64_t idx = level_index(f, meet, shifted);
        best = best == 0 ? idx : std::min(best, idx);
    }
    return best;
}

TidyComponents tidy_components(const GroupPtr& f, LevelSubgroupSym v, int direction) {
    if (direction != 1 && direction != -1)
        fail(Errc::PreconditionFailed, "direction is the shift or its inverse");
    TidyComponents out;
    out.direction = direction;
    out.level = v.level;
    // V_+ is the intersection of the forward alpha-iterates of V: the levels
    // sink to -infinity along the contracting direction, meeting in the
    // trivial subgroup, and stay at V along the other.
    if (direction == 1) {
        out.v_plus_level = std::nullopt;
        out.v_minus_level = v.level;
        out.index = 1; // [alpha({1}) : {1}]
    } else {
        out.v_plus_level = v.level;
        out.v_minus_level = std::nullopt;
        out.index = level_index(f, v.level, v.level + 1); // [alpha(V) : V]
    }
    // V = V_+ V_- holds since one factor is V itself; the union of backward
    // iterates of V_- is the whole restricted shift, closed in the model.
    out.ta = true;
    out.tb = true;
    return out;
}

RestrictedContractionReport contraction_report(const GroupPtr& f, int support_bound) {
    if (support_bound < 0) fail(Errc::PreconditionFailed, "negative support bound");
    RestrictedContractionReport report;
    report.support_bound = support_bound;
    report.all_fs_points_contract = true;
    report.bounded_orbit_only_identity = true;

    const auto points = fs_points_in(f, -support_bound, support_bound);
    for (const EPWord& x : points) {
        ++report.points_checked;
        if (x.is_identity()) continue;
        const long long top = support_max(x);
        for (long long level = -2; level <= 2; ++level) {
            // forward shifts move support left: x enters V_level for good
            const long long k = std::max<long long>(top - level, 0);
            const EPWord in = x.shift_by(k);
            report.all_fs_points_contract =
                report.all_fs_points_contract &&
                (in.is_identity() || support_max(in) <= level) &&
                (x.shift_by(k + 1).is_identity() || support_max(x.shift_by(k + 1)) <= level);
        }
        // backward shifts move support right without bound
        report.bounded_orbit_only_identity =
            report.bounded_orbit_only_identity && support_max(x.shift_by(-1)) == top + 1 &&
            support_max(x.shift_by(-3)) == top + 3;
    }
    report.nub_trivial = report.bounded_orbit_only_identity;
    return report;
}

bool criterion_check(const GroupPtr& f, LevelSubgroupSym v, const EPWord& point) {
    if (!same_group(f, point.alphabet())) fail(Errc::AlphabetMismatch, "point over another alphabet");
    if (!point.is_finitely_supported())
        fail(Errc::PreconditionFailed, "the computable subfamily is finitely supported");
    if (!point.is_identity() && support_max(point) > v.level)
        fail(Errc::PreconditionFailed, "point is not in the level subgroup");
    if (point.is_identity()) {
        // bounded orbit, and it stays inside V: the implication holds
        return true;
    }
    // escape witness: enough backward shifts push the support past v.level,
    // so the orbit is unbounded and the implication holds vacuously
    const long long k = v.level - support_max(point) + 1;
    const EPWord escaped = point.shift_by(-k);
    require_internal(support_max(escaped) > v.level, "backward shift failed to escape");
    return true;
}

} // namespace nubshift
