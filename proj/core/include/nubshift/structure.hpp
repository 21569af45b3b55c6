#pragma once

#include "nubshift/sliding_hom.hpp"

namespace nubshift {

/// V_m = {f in H : f(i) = identity for 0 <= i < m}, the canonical open
/// subgroup pinning a window of coordinates. V_+ is the identity-on-
/// (-infinity, m-1] side, V_- the identity-on-[0, infinity) side.
struct WindowSubgroup {
    GroupShiftSFT host;
    int m = 1;
};

struct DepthReport {
    int depth;
    int window;        // witness window m at which the boundary group was read
    SubgroupF boundary; // R <= F realizing the index
};

struct NubResult {
    GroupShiftSFT nub;
    std::uint64_t index_in_host;
    int certified_width;
};

/// Blocks extendable to a point with an identity tail on the given side:
/// +1 for an identity right tail, -1 for an identity left tail. Exact at
/// the host's window via reachability to or from the identity node.
GroupShiftSFT contraction_closure(const GroupShiftSFT& h, int direction);

/// The two one-sided closures must agree; their common value is returned
/// with the block-count index at the shared window.
NubResult nub(const GroupShiftSFT& h);

bool is_topologically_transitive(const GroupShiftSFT& h);

/// All finitely supported points with support inside [0, s).
std::vector<EPWord> homoclinic_points(const GroupShiftSFT& h, int s);
/// All finitely supported points with support inside [lo, hi] (inclusive).
std::vector<EPWord> homoclinic_points_in_range(const GroupShiftSFT& h, long long lo,
                                               long long hi);
/// Blocks extendable with identity tails on both sides.
GroupShiftSFT homoclinic_closure(const GroupShiftSFT& h);

DepthReport depth(const GroupShiftSFT& h);

/// Factorization check V = V_+ V_- for the pinned-interval subgroup
/// {f in H : f = identity on [lo, hi)}; runs at two consecutive certified
/// widths per the width protocol.
bool check_TA(const WindowSubgroup& v, int width_cap = 0);
int tidy_above_exponent(const WindowSubgroup& v, int width_cap = 0);

/// Least k >= 1 with sigma^k(V_+) V_- = H for the canonical V.
int prodeq_k(const GroupShiftSFT& h, int width_cap = 0);

GroupShiftSFT nub_meet(const GroupShiftSFT& a, const GroupShiftSFT& b);

/// Checks that a finite sigma-stable normal subgroup (given by its element
/// list) is central in H. Preconditions (membership, closure, stability,
/// normality) are verified and raise PreconditionFailed.
bool central_check_finite_stable(const std::vector<EPWord>& n, const GroupShiftSFT& h);

/// Solves x^{-1} sigma^k(x) = f for eventually periodic x. Supports f
/// finitely supported or fully periodic.
EPWord eta_solve(const EPWord& f, long long k);

/// Given x with x^{-1} sigma(x) in H and a host with nub(H) = H, returns
/// y in the coset x H with sigma(y) = y.
EPWord invariant_representative(const EPWord& x, const GroupShiftSFT& h);

namespace detail {
/// Exact TA decision for the pinned interval [lo, hi) by follower-set
/// simulation on the transition graph; used as an independent oracle for
/// the width-protocol implementation in tests.
bool ta_exact_by_simulation(const GroupShiftSFT& h, long long lo, long long hi);
bool ta_interval(const GroupShiftSFT& h, long long lo, long long hi, int width_cap);
} // namespace detail

} // namespace nubshift
