#pragma once

#include "nubshift/group_shift.hpp"

namespace nubshift {

/// Sliding-block group homomorphism F^Z -> F'^Z:
///   phi(x)(n) = rule(x(n + anchor), ..., x(n + anchor + span - 1)).
/// The local rule must be a group homomorphism F^span -> F', which makes phi
/// a continuous, shift-commuting group homomorphism. The rule table is
/// indexed by little-endian block codes.
class SlidingBlockHom {
public:
    SlidingBlockHom(GroupPtr domain, GroupPtr codomain, int span, std::vector<Sym> table,
                    long long anchor = 0);

    const GroupPtr& domain() const { return domain_; }
    const GroupPtr& codomain() const { return codomain_; }
    int span() const { return span_; }
    long long anchor() const { return anchor_; }
    const std::vector<Sym>& table() const { return table_; }

    Sym apply_block(BlockCode window_code) const { return table_[window_code]; }
    /// Image of a width-w input block: a width (w - span + 1) output block.
    BlockCode apply_word(BlockCode code, int w) const;
    EPWord apply(const EPWord& x) const;

private:
    GroupPtr domain_;
    GroupPtr codomain_;
    int span_;
    long long anchor_;
    std::vector<Sym> table_;
};

/// Pointwise application of a symbol-level homomorphism (span 1 helper).
SlidingBlockHom lift_symbol_hom(const FiniteHom& h);

/// Rule x -> h1(x_0) h2(x_1) ... hk(x_{k-1}). Multiplicative only when the
/// images of the factors commute pairwise; construction verifies that.
SlidingBlockHom product_rule_hom(const std::vector<FiniteHom>& factors, long long anchor = 0);

SlidingBlockHom compose(const SlidingBlockHom& outer, const SlidingBlockHom& inner);

struct ImageSft {
    GroupShiftSFT sft;
    int certified_width;
};

/// SFT presentation of phi(H). Candidate presentations at increasing widths
/// are compared as point sets; the first stable width is certified. Group
/// images of SFTs are again SFTs, so this terminates for correct inputs;
/// the cap guards against runaway widths.
ImageSft image_sft(const SlidingBlockHom& phi, const GroupShiftSFT& h, int width_cap = 0);

/// {x in H : phi(x) = identity}; exact at window max(H.window, span).
GroupShiftSFT kernel_sft(const SlidingBlockHom& phi, const GroupShiftSFT& h);

/// {x in H : phi(x) in target}; exact.
GroupShiftSFT preimage_sft(const SlidingBlockHom& phi, const GroupShiftSFT& target,
                           const GroupShiftSFT& h);

/// {(x, phi(x)) : x in H} as a subgroup shift over the product alphabet.
GroupShiftSFT graph_subgroup(const SlidingBlockHom& phi, const GroupShiftSFT& h);

} // namespace nubshift
