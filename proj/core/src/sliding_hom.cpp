#include "nubshift/sliding_hom.hpp"

#include <algorithm>

namespace nubshift {

using detail::identity_code;
using detail::inv_code;
using detail::mul_codes;
using detail::pow_u64;

SlidingBlockHom::SlidingBlockHom(GroupPtr domain, GroupPtr codomain, int span,
                                 std::vector<Sym> table, long long anchor)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), span_(span), anchor_(anchor),
      table_(std::move(table)) {
    if (span_ < 1) fail(Errc::InvalidDescriptor, "rule span must be at least 1");
    const BlockCode n = pow_u64(static_cast<BlockCode>(domain_->order()), span_);
    if (table_.size() != n) fail(Errc::InvalidDescriptor, "rule table size mismatch");
    for (Sym v : table_)
        if (v < 0 || v >= codomain_->order())
            fail(Errc::InvalidDescriptor, "rule output out of range");
    // The rule must be a homomorphism F^span -> F'. Checking all pairs is
    // |F|^(2 span); spans stay small throughout.
    if (n > 4096)
        fail(Errc::Unsupported, "rule table too large to verify");
    for (BlockCode a = 0; a < n; ++a)
        for (BlockCode b = 0; b < n; ++b) {
            BlockCode ab = mul_codes(*domain_, a, b, span_);
            if (table_[ab] != codomain_->mul(table_[a], table_[b]))
                fail(Errc::InvalidDescriptor, "local rule is not a homomorphism");
        }
}

BlockCode SlidingBlockHom::apply_word(BlockCode code, int w) const {
    if (w < span_) fail(Errc::PreconditionFailed, "word shorter than the rule span");
    const BlockCode r = static_cast<BlockCode>(domain_->order());
    const BlockCode rr = static_cast<BlockCode>(codomain_->order());
    const BlockCode win_mod = pow_u64(r, span_);
    BlockCode out = 0, mult = 1;
    for (int i = 0; i + span_ <= w; ++i) {
        out += static_cast<BlockCode>(table_[code % win_mod]) * mult;
        code /= r;
        mult *= rr;
    }
    return out;
}

EPWord SlidingBlockHom::apply(const EPWord& x) const {
    if (!same_group(x.alphabet(), domain_))
        fail(Errc::AlphabetMismatch, "word over a different alphabet");
    // Output value at n reads x on [n + anchor, n + anchor + span). Regions
    // where that window sits inside a periodic tail of x are periodic with
    // the same period.
    const long long d = static_cast<long long>(x.left_period().size());
    const long long e = static_cast<long long>(x.right_period().size());
    // The output at n is d-periodic once the rule window sits left of the
    // core (n < a_out) and e-periodic once it sits right of it (n >= b_out).
    const long long a_out = x.core_start() - anchor_ - span_ + 1;
    const long long b_out = std::max(a_out, x.core_end() - anchor_);
    auto value_at = [&](long long n) {
        std::vector<Sym> win = x.window(n + anchor_, span_);
        return table_[encode_block(win, domain_->order())];
    };
    std::vector<Sym> left(static_cast<std::size_t>(d));
    for (long long i = 0; i < d; ++i)
        left[static_cast<std::size_t>(i)] = value_at(a_out - d + i);
    std::vector<Sym> right(static_cast<std::size_t>(e));
    for (long long i = 0; i < e; ++i)
        right[static_cast<std::size_t>(i)] = value_at(b_out + i);
    std::vector<Sym> core(static_cast<std::size_t>(b_out - a_out));
    for (long long i = 0; i < b_out - a_out; ++i)
        core[static_cast<std::size_t>(i)] = value_at(a_out + i);
    return EPWord(codomain_, std::move(left), a_out, std::move(core), std::move(right));
}

SlidingBlockHom lift_symbol_hom(const FiniteHom& h) {
    return SlidingBlockHom(h.domain(), h.codomain(), 1, h.images());
}

SlidingBlockHom product_rule_hom(const std::vector<FiniteHom>& factors, long long anchor) {
    if (factors.empty()) fail(Errc::InvalidDescriptor, "empty rule");
    const GroupPtr dom = factors.front().domain();
    const GroupPtr cod = factors.front().codomain();
    for (const auto& f : factors)
        if (!same_group(f.domain(), dom) || !same_group(f.codomain(), cod))
            fail(Errc::AlphabetMismatch, "rule factors across different groups");
    const int k = static_cast<int>(factors.size());
    const BlockCode r = static_cast<BlockCode>(dom->order());
    const BlockCode n = pow_u64(r, k);
    std::vector<Sym> table(n);
    for (BlockCode c = 0; c < n; ++c) {
        std::vector<Sym> w = decode_block(c, dom->order(), k);
        Sym acc = cod->identity();
        for (int i = 0; i < k; ++i)
            acc = cod->mul(acc, factors[static_cast<std::size_t>(i)].apply(w[static_cast<std::size_t>(i)]));
        table[c] = acc;
    }
    // homomorphism check in the constructor rejects non-commuting images
    return SlidingBlockHom(dom, cod, k, std::move(table), anchor);
}

SlidingBlockHom compose(const SlidingBlockHom& outer, const SlidingBlockHom& inner) {
    if (!same_group(inner.codomain(), outer.domain()))
        fail(Errc::AlphabetMismatch, "composition domain mismatch");
    const int k = inner.span() + outer.span() - 1;
    const GroupPtr dom = inner.domain();
    const BlockCode n = pow_u64(static_cast<BlockCode>(dom->order()), k);
    if (n > 4096) fail(Errc::Unsupported, "composed rule too large");
    std::vector<Sym> table(n);
    for (BlockCode c = 0; c < n; ++c) {
        BlockCode mid = inner.apply_word(c, k); // width outer.span over middle alphabet
        table[c] = outer.apply_block(mid);
    }
    return SlidingBlockHom(dom, outer.codomain(), k, std::move(table),
                           outer.anchor() + inner.anchor());
}

ImageSft image_sft(const SlidingBlockHom& phi, const GroupShiftSFT& h, int width_cap) {
    if (!same_group(phi.domain(), h.alphabet()))
        fail(Errc::AlphabetMismatch, "applying a rule over a different alphabet");
    const int l = h.window();
    const int k = phi.span();
    if (width_cap <= 0) width_cap = 2 * (l + k);
    auto exact_occ = [&](int w) {
        // every width-w output window is the rule image of an occurring
        // width-(w + k - 1) input block, and conversely
        auto in = h.occurring(w + k - 1);
        std::vector<BlockCode> out;
        out.reserve(in.size());
        for (BlockCode b : in) out.push_back(phi.apply_word(b, w + k - 1));
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };
    const int w0 = std::max(1, l - k + 1);
    GroupShiftSFT prev = GroupShiftSFT::from_codes(phi.codomain(), w0, exact_occ(w0));
    for (int w = w0 + 1; w <= width_cap; ++w) {
        GroupShiftSFT cur = GroupShiftSFT::from_codes(phi.codomain(), w, exact_occ(w));
        if (point_equal(prev, cur)) return {prev, w};
        prev = cur;
    }
    fail(Errc::WidthExceeded, "image presentation did not stabilize below the width cap");
}

GroupShiftSFT kernel_sft(const SlidingBlockHom& phi, const GroupShiftSFT& h) {
    if (!same_group(phi.domain(), h.alphabet()))
        fail(Errc::AlphabetMismatch, "applying a rule over a different alphabet");
    const int k = phi.span();
    const int w = std::max(h.window(), k);
    const Sym id = phi.codomain()->identity();
    const BlockCode rr = static_cast<BlockCode>(phi.codomain()->order());
    std::vector<BlockCode> kept;
    for (BlockCode b : h.occurring(w)) {
        BlockCode img = phi.apply_word(b, w);
        bool ok = true;
        for (int i = 0; i + k <= w && ok; ++i) {
            ok = static_cast<Sym>(img % rr) == id;
            img /= rr;
        }
        if (ok) kept.push_back(b);
    }
    return GroupShiftSFT::from_codes(h.alphabet(), w, std::move(kept));
}

GroupShiftSFT preimage_sft(const SlidingBlockHom& phi, const GroupShiftSFT& target,
                           const GroupShiftSFT& h) {
    if (!same_group(phi.domain(), h.alphabet()) ||
        !same_group(phi.codomain(), target.alphabet()))
        fail(Errc::AlphabetMismatch, "preimage alphabet mismatch");
    const int k = phi.span();
    const int lt = target.window();
    const int w = std::max(h.window(), lt + k - 1);
    auto tocc = target.occurring(lt);
    const BlockCode rr = static_cast<BlockCode>(target.alphabet()->order());
    const BlockCode tmod = pow_u64(rr, lt);
    std::vector<BlockCode> kept;
    for (BlockCode b : h.occurring(w)) {
        BlockCode img = phi.apply_word(b, w);
        bool ok = true;
        for (int i = 0; i + lt <= w - k + 1 && ok; ++i) {
            ok = std::binary_search(tocc.begin(), tocc.end(), img % tmod);
            img /= rr;
        }
        if (ok) kept.push_back(b);
    }
    return GroupShiftSFT::from_codes(h.alphabet(), w, std::move(kept));
}

GroupShiftSFT graph_subgroup(const SlidingBlockHom& phi, const GroupShiftSFT& h) {
    if (!same_group(phi.domain(), h.alphabet()))
        fail(Errc::AlphabetMismatch, "applying a rule over a different alphabet");
    if (phi.anchor() != 0)
        fail(Errc::Unsupported, "graph presentation expects an anchored rule");
    const GroupPtr pair = direct_product(phi.domain(), phi.codomain());
    const int k = phi.span();
    const int w = std::max(h.window(), k);
    const Sym rd = phi.domain()->order();
    const Sym rc = phi.codomain()->order();
    std::vector<BlockCode> kept;
    for (BlockCode b : h.occurring(w)) {
        std::vector<Sym> xs = decode_block(b, rd, w);
        BlockCode img = phi.apply_word(b, w);
        std::vector<Sym> ys = decode_block(img, rc, w - k + 1);
        // free output symbols at the tail positions where the rule window
        // does not fit are enumerated explicitly
        const int fixed = w - k + 1;
        const BlockCode free_count = pow_u64(static_cast<BlockCode>(rc), w - fixed);
        for (BlockCode f = 0; f < free_count; ++f) {
            std::vector<Sym> tail = decode_block(f, rc, w - fixed);
            std::vector<Sym> pw(static_cast<std::size_t>(w));
            for (int i = 0; i < w; ++i) {
                Sym y = i < fixed ? ys[static_cast<std::size_t>(i)]
                                  : tail[static_cast<std::size_t>(i - fixed)];
                pw[static_cast<std::size_t>(i)] =
                    static_cast<Sym>(xs[static_cast<std::size_t>(i)] * rc + y);
            }
            kept.push_back(encode_block(pw, pair->order()));
        }
    }
    return GroupShiftSFT::from_codes(pair, w, std::move(kept));
}

} // namespace nubshift
