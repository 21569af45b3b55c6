#pragma once

#include "nubshift/abelian.hpp"

#include <optional>

namespace nubshift {

/// Ascending chain of subgroup shifts from the trivial shift to the host,
/// with per-step verdicts: normal_in_next[i] says chain[i] is normal in
/// chain[i+1]; transitive_factor[i] says the step splits off a transitive
/// factor, i.e. chain[i+1] is recovered as (identity-tail closure of
/// chain[i+1]) * chain[i]. verified is the conjunction of the normality
/// verdicts.
struct SubnormalSeries {
    GroupShiftSFT host;
    std::vector<GroupShiftSFT> chain;
    std::vector<bool> normal_in_next;
    std::vector<bool> transitive_factor;
    bool verified = false;
};

/// Assemble and verify a series from the strictly intermediate terms,
/// ascending; the trivial shift and the host are added automatically.
SubnormalSeries make_series(const GroupShiftSFT& host, std::vector<GroupShiftSFT> middle);

/// A factor presented as the image of a sliding-block quotient map, together
/// with the kernel evidence gathered for that map.
struct QuotientWitness {
    SlidingBlockHom map;
    KernelReport kernel_report;
};

/// One irreducible factor of a series: the canonical simple group whose full
/// shift the factor is, plus how it was presented. direct means the
/// presenting map has trivial kernel (the factor is a literal full shift);
/// psi carries the recurrence re-presentation in the abelian case.
struct FactorDescriptor {
    GroupPtr simple_alphabet;
    bool direct = false;
    std::optional<QuotientWitness> witness;
    std::optional<SlidingBlockHom> psi;
};

/// Result of the canonical series construction. When complete is false the
/// series is still a verified chain up to the point the construction
/// stopped, and stopped_because records why (an unsupported quotient shape).
struct OpennormalResult {
    SubnormalSeries series;
    std::vector<FactorDescriptor> factors; ///< bottom factor first
    bool complete = true;
    std::optional<Errc> stopped_because;
};

/// Canonical subnormal series of a transitive host: each round splits off
/// the subgroup generated by the minimal-width finitely supported points,
/// refines it through a composition series of the finite local group, and
/// recurses on a sliding-block quotient of the remainder.
OpennormalResult opennormal_series(const GroupShiftSFT& h);

/// One round of the construction, reported: the host is irreducible exactly
/// when the local group is simple, its shift covers the host, and the
/// presenting map has a finite central kernel with no nonzero finitely
/// supported points.
struct IrreducibilityReport {
    bool irreducible = false;
    GroupPtr local_group;
    std::optional<GroupShiftSFT> proper_normal; ///< infinite proper normal witness
    KernelReport kernel_report;
    std::optional<FactorDescriptor> descriptor; ///< present when irreducible
};
IrreducibilityReport is_irreducible(const GroupShiftSFT& h);

/// Irreducible factors of the canonical series; the product of their
/// alphabet orders is cross-checked against the boundary-subgroup order.
std::vector<FactorDescriptor> composition_factors(const GroupShiftSFT& h);

/// Whether two verified series over the same host refine to the same
/// multiset of simple factor classes.
bool equivalent_series(const SubnormalSeries& a, const SubnormalSeries& b);

/// Search for a sliding-block homomorphism out of the host whose kernel
/// inside the host is exactly the given subgroup shift. Codomains range over
/// quotients of the alphabet, rules over products of symbol homomorphisms
/// with spans up to 4.
std::optional<SlidingBlockHom> find_quotient_hom(const GroupShiftSFT& h,
                                                 const GroupShiftSFT& kernel);

/// Evidence that two factors share a common finite-kernel quotient: both
/// factor maps restrict to the apex surjectively with finite kernels.
struct CoCommWitness {
    GroupShiftSFT apex;
    SlidingBlockHom map1;
    SlidingBlockHom map2;
    std::uint64_t kernel1_order = 0;
    std::uint64_t kernel2_order = 0;
};

/// The four interpolated products of the butterfly construction and the two
/// factor presentations they bound, with the co-commensurability witness.
/// a = l1 (h1 meet l2) <= b = l1 (h1 meet h2) and
/// c = (l1 meet h2) l2 <= d = (h1 meet h2) l2, meets taken inside the
/// identity-tail closure.
struct ZassenhausResult {
    GroupShiftSFT a, b, c, d;
    ImageSft factor1; ///< presentation of b over a
    ImageSft factor2; ///< presentation of d over c
    CoCommWitness witness;
};
ZassenhausResult zassenhaus(const GroupShiftSFT& h1, const GroupShiftSFT& l1,
                            const GroupShiftSFT& h2, const GroupShiftSFT& l2);

/// Whether two irreducible factors are equivalent, decided on their simple
/// alphabet classes.
bool cocommensurable_irreducible(const FactorDescriptor& a, const FactorDescriptor& b);

} // namespace nubshift
