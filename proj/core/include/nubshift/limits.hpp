#pragma once

#include "nubshift/structure.hpp"

namespace nubshift {

/// Finite truncation of an inverse tower of group shifts: levels 0..N and
/// connector maps, where connectors[n] sends level n+1 onto level n. Each
/// connector is verified surjective (its image SFT equals the lower level)
/// at a certified width; sliding rules commute with the shift by
/// construction, so the connectors intertwine the level dynamics exactly.
struct InverseSystem {
    std::vector<GroupShiftSFT> levels;
    std::vector<SlidingBlockHom> connectors;
    int surjectivity_width = 0;
    bool verified = false;
};

/// A compatible tuple (x_0, ..., x_k): connectors[n] maps words[n + 1] to
/// words[n] exactly.
struct TruncatedElement {
    std::vector<EPWord> words;
};

/// Build a compatible tuple by pushing a point at level top_level down the
/// connectors; compatibility is then exact by construction.
TruncatedElement truncated_element(const InverseSystem& sys, const EPWord& top,
                                   std::size_t top_level);

/// Tower of full shifts over the canonical prime-order group with the
/// difference rule (a, b) -> a - b as every connector. Kernels are verified
/// to be the order-p constant subgroup and surjectivity is certified.
/// levels counts the connectors, so the system has levels + 1 stages.
InverseSystem build_example_5_6(int p, int levels);

/// True iff applying the difference rule to f moves the support interval
/// from [m, M] to exactly [m - 1, M]. Requires f finitely supported over a
/// canonical prime-order alphabet and not the identity.
bool support_growth_check(const EPWord& f);

/// Exhaustive sweep of support_growth_check over every nonzero finitely
/// supported word with support width <= max_width (both endpoints
/// non-identity); returns the number of words verified, and throws
/// InternalInconsistency on the first violation.
std::uint64_t support_growth_exhaustive(int p, int max_width);

struct HomoclinicTrivialCertificate {
    int p = 0;
    int depth_budget = 0;
    int levels = 0;
    std::uint64_t words_checked = 0;
    int longest_chain = 0; ///< longest finitely supported lift chain seen
    bool issued = false;
};

/// For every nonzero finitely supported seed of width <= depth_budget at the
/// bottom level, verifies the finitely supported preimage under a difference
/// connector is unique when it exists and loses exactly one position of
/// support on the left, so every such chain dies within depth_budget lifts.
/// Hence no nonidentity compatible tuple across >= depth_budget levels is
/// finitely supported throughout. Requires a system built by
/// build_example_5_6; fewer levels than the budget is WidthExceeded.
HomoclinicTrivialCertificate homoclinic_trivial_certificate(const InverseSystem& sys,
                                                            int depth_budget);

struct C4ExponentReport {
    int levels = 0;
    bool subgroup_exponent_two = false;  ///< doubled-symbol subshift squares away
    bool quotient_exponent_two = false;  ///< mod-2 image has exponent 2
    bool has_order_four_element = false; ///< some level point has order 4
};

struct C4Example {
    InverseSystem system;
    GroupShiftSFT two_torsion; ///< the doubled-symbol window-1 subshift
    C4ExponentReport report;
};

/// Difference-rule tower over the order-4 cyclic group together with the
/// non-splitting evidence: the doubled-symbol subgroup shift and the mod-2
/// quotient both have exponent 2 while every level contains an element of
/// order 4, so the extension cannot split through exponent-2 pieces.
C4Example build_example_c4(int levels);

/// Bounded exhaustive search for a sliding-block right inverse of phi:
/// candidate rules are group homomorphisms from span-length products of the
/// codomain alphabet (spans 1..max_span) at every anchor that could make
/// the composition the identity. Returns true when no candidate composes
/// with phi to the identity map. phi must be surjective onto its full
/// codomain shift.
bool no_sliding_right_inverse(const SlidingBlockHom& phi, int max_span);

/// The twisted product at tower level n realized on period-q pattern pairs:
/// elements are (f, g) with f a length-q pattern over Z_3 and g over Z_2,
/// multiplied as (f1, g1)(f2, g2) = (f1 + s(g1) f2, g1 + g2) where the sign
/// s(g1)(i) = (-1)^{sum over a in twist_window of g1((i - a) mod q)} flips
/// the Z_3 entry. The twist window is the set of odd binomial coefficients
/// C(n, a), i.e. the support of the n-th iterate of the doubling rule
/// applied to a single mass at 0.
struct TwistedLevel {
    int n = 0;
    int q = 1;
    std::vector<long long> twist_window;

    struct Element {
        std::vector<int> f; ///< q entries mod 3
        std::vector<int> g; ///< q entries mod 2
        bool operator==(const Element&) const = default;
    };

    TwistedLevel(int level, int period);

    /// Parity of the twist acting at position i for the given Z_2 pattern.
    int twist_parity(const std::vector<int>& g, long long i) const;
    Element identity_element() const;
    Element product(const Element& x, const Element& y) const;
    Element inverse(const Element& x) const;
    bool commutes(const Element& x, const Element& y) const;
    std::uint64_t order() const; ///< 6^q
};

struct CentrePeriodRow {
    int period = 0;
    std::uint64_t computed_order = 0; ///< honest centre size on period-q points
    std::uint64_t claimed_order = 0;  ///< size of the stated subgroup on period q
    bool match = false;
};

struct FiniteCentreReport {
    int n = 0;
    std::vector<long long> twist_window;
    bool connector_is_homomorphism = false;
    std::vector<CentrePeriodRow> centre_rows;
    bool centre_matches_claim = false; ///< conjunction of the row matches
    std::uint64_t bcg_words_checked = 0;
    bool bcg_equals_c3_factor = false;
};

struct FiniteCentreExample {
    GroupShiftSFT c3_factor;
    GroupShiftSFT c2_factor;
    FiniteCentreReport report;
};

/// Level n of the twisted-product tower over (Z_3, Z_2) pattern pairs.
/// Verifies that (identity, doubling rule) is a homomorphism from level
/// n + 1 to level n; for n <= 3, computes the centre of the period-q
/// subgroup honestly (forced trivial Z_3 part, Z_2 patterns annihilated by
/// the twist operator) for q up to 2^{n+1}, cross-checked by brute-force
/// commutation at small q, and compares it against the subgroup of Z_2
/// patterns of period 2^n; certifies that the closure of the finitely
/// supported subgroup at the level equals the Z_3 factor (the Z_2 connector
/// grows supports strictly rightward while the Z_3 connector is the
/// identity). Levels above 6 are Unsupported.
FiniteCentreExample build_finite_centre(int n);

} // namespace nubshift
