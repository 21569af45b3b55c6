#pragma once

#include "nubshift/ep_word.hpp"

#include <cstdint>
#include <vector>

namespace nubshift {

using BlockCode = std::uint64_t;

/// Cap on explicitly enumerated block sets. Lifts that would exceed it throw
/// WidthExceeded rather than thrash.
inline constexpr std::size_t kMaxBlockEnumeration = 1'000'000;

BlockCode encode_block(const std::vector<Sym>& word, Sym radix);
std::vector<Sym> decode_block(BlockCode code, Sym radix, int len);

/// A group shift: a closed, shift-stable subgroup of F^Z presented as a
/// subshift of finite type. `blocks` is the subgroup W of F^window whose
/// windows are allowed; the point set is every bi-infinite word all of whose
/// length-`window` windows lie in W. Construction verifies that W is a
/// subgroup, which makes the point set a group under the pointwise operation.
class GroupShiftSFT {
public:
    GroupShiftSFT(GroupPtr alphabet, int window, const std::vector<std::vector<Sym>>& blocks);
    static GroupShiftSFT from_codes(GroupPtr alphabet, int window, std::vector<BlockCode> codes);
    static GroupShiftSFT full_shift(GroupPtr alphabet);
    /// The one-point shift {identity}.
    static GroupShiftSFT trivial(GroupPtr alphabet);
    /// All constant words (window 2, pairs (a, a)).
    static GroupShiftSFT constants(GroupPtr alphabet);

    const GroupPtr& alphabet() const { return alphabet_; }
    int window() const { return window_; }
    const std::vector<BlockCode>& blocks() const { return blocks_; }

    /// Blocks that actually occur in points: bi-extendable blocks after
    /// iterated removal of dead ends in the overlap graph. Cached.
    const std::vector<BlockCode>& trimmed() const;

    /// Exact set of width-w words occurring in points, for any w >= 1.
    std::vector<BlockCode> occurring(int w) const;

    bool contains(const EPWord& f) const;
    bool is_trivial() const;
    /// Number of points when the shift is finite; FiniteGroupShift is *not*
    /// thrown here; throws NotFinite when the point set is infinite.
    std::uint64_t finite_order() const;

    /// Same point set re-presented with a larger window.
    GroupShiftSFT widened(int w) const;

private:
    GroupPtr alphabet_;
    int window_;
    std::vector<BlockCode> blocks_;
    mutable std::shared_ptr<const std::vector<BlockCode>> trim_cache_;
    void validate() const;
};

bool point_equal(const GroupShiftSFT& a, const GroupShiftSFT& b);
bool point_subset(const GroupShiftSFT& a, const GroupShiftSFT& b);
GroupShiftSFT intersect(const GroupShiftSFT& a, const GroupShiftSFT& b);

/// Pointwise product set {x y : x in a, y in b} for subgroup shifts over one
/// alphabet. The block-level product is computed at consecutive widths until
/// it stabilizes; the result carries that width.
GroupShiftSFT product_shift(const GroupShiftSFT& a, const GroupShiftSFT& b, int width_cap = 0);

/// True when b normalizes a as point groups: checked exactly on blocks at
/// the joint window.
bool normalizes(const GroupShiftSFT& sub, const GroupShiftSFT& host);

/// Points x with sigma^n(x) = x, as eventually periodic words.
std::vector<EPWord> periodic_points(const GroupShiftSFT& h, int n);

/// All points of a finite shift.
std::vector<EPWord> enumerate_finite(const GroupShiftSFT& h);

namespace detail {
BlockCode pow_u64(BlockCode base, int e);
/// Pointwise product / inverse of block codes of the given length.
BlockCode mul_codes(const FiniteGroup& g, BlockCode a, BlockCode b, int len);
BlockCode inv_code(const FiniteGroup& g, BlockCode a, int len);
BlockCode identity_code(const FiniteGroup& g, int len);

std::vector<BlockCode> trim_blocks(const GroupPtr& g, int window, std::vector<BlockCode> blocks);
std::vector<BlockCode> reachable_to(const GroupPtr& g, int window,
                                    const std::vector<BlockCode>& trimmed, BlockCode target_node);
std::vector<BlockCode> reachable_from(const GroupPtr& g, int window,
                                      const std::vector<BlockCode>& trimmed, BlockCode source_node);
bool verify_block_subgroup(const GroupPtr& g, int window, const std::vector<BlockCode>& blocks);
} // namespace detail

} // namespace nubshift
