#include "nubshift/group_shift.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace nubshift {

BlockCode encode_block(const std::vector<Sym>& word, Sym radix) {
    BlockCode code = 0, mult = 1;
    for (Sym s : word) {
        code += static_cast<BlockCode>(s) * mult;
        mult *= static_cast<BlockCode>(radix);
    }
    return code;
}

std::vector<Sym> decode_block(BlockCode code, Sym radix, int len) {
    std::vector<Sym> out(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i) {
        out[static_cast<std::size_t>(i)] = static_cast<Sym>(code % static_cast<BlockCode>(radix));
        code /= static_cast<BlockCode>(radix);
    }
    return out;
}

namespace detail {

BlockCode pow_u64(BlockCode base, int e) {
    BlockCode r = 1;
    while (e-- > 0) r *= base;
    return r;
}

BlockCode mul_codes(const FiniteGroup& g, BlockCode a, BlockCode b, int len) {
    const BlockCode r = static_cast<BlockCode>(g.order());
    BlockCode out = 0, mult = 1;
    for (int i = 0; i < len; ++i) {
        Sym x = static_cast<Sym>(a % r), y = static_cast<Sym>(b % r);
        out += static_cast<BlockCode>(g.mul(x, y)) * mult;
        a /= r;
        b /= r;
        mult *= r;
    }
    return out;
}

BlockCode inv_code(const FiniteGroup& g, BlockCode a, int len) {
    const BlockCode r = static_cast<BlockCode>(g.order());
    BlockCode out = 0, mult = 1;
    for (int i = 0; i < len; ++i) {
        out += static_cast<BlockCode>(g.inv(static_cast<Sym>(a % r))) * mult;
        a /= r;
        mult *= r;
    }
    return out;
}

BlockCode identity_code(const FiniteGroup& g, int len) {
    const BlockCode r = static_cast<BlockCode>(g.order());
    BlockCode out = 0, mult = 1;
    for (int i = 0; i < len; ++i) {
        out += static_cast<BlockCode>(g.identity()) * mult;
        mult *= r;
    }
    return out;
}

} // namespace detail

namespace {

using detail::inv_code;
using detail::mul_codes;
using detail::pow_u64;

bool sorted_contains(const std::vector<BlockCode>& v, BlockCode c) {
    return std::binary_search(v.begin(), v.end(), c);
}

} // namespace

namespace detail {

bool verify_block_subgroup(const GroupPtr& g, int window, const std::vector<BlockCode>& blocks) {
    if (blocks.empty()) return false;
    const BlockCode id = encode_block(std::vector<Sym>(static_cast<std::size_t>(window),
                                                       g->identity()),
                                      g->order());
    if (!sorted_contains(blocks, id)) return false;
    // Greedy generating set, then compare the generated closure with the
    // input; equality certifies closure without a quadratic product scan.
    std::unordered_set<BlockCode> span{id};
    std::vector<BlockCode> gens;
    for (BlockCode b : blocks) {
        if (span.count(b)) continue;
        gens.push_back(b);
        std::vector<BlockCode> frontier(span.begin(), span.end());
        // regenerate span from scratch with the enlarged generator list
        span = {id};
        frontier = {id};
        while (!frontier.empty()) {
            BlockCode x = frontier.back();
            frontier.pop_back();
            for (BlockCode gen : gens) {
                for (BlockCode y : {mul_codes(*g, x, gen, window),
                                    mul_codes(*g, x, inv_code(*g, gen, window), window)}) {
                    if (span.insert(y).second) frontier.push_back(y);
                }
            }
        }
        if (span.size() > blocks.size()) return false;
    }
    if (span.size() != blocks.size()) return false;
    for (BlockCode b : span)
        if (!sorted_contains(blocks, b)) return false;
    return true;
}

std::vector<BlockCode> trim_blocks(const GroupPtr& g, int window, std::vector<BlockCode> blocks) {
    const BlockCode r = static_cast<BlockCode>(g->order());
    const BlockCode node_mod = pow_u64(r, window - 1);
    bool changed = true;
    while (changed && !blocks.empty()) {
        changed = false;
        std::unordered_set<BlockCode> has_out, has_in;
        has_out.reserve(blocks.size());
        has_in.reserve(blocks.size());
        for (BlockCode b : blocks) {
            has_out.insert(b % node_mod); // prefix node has an outgoing edge
            has_in.insert(b / r);         // suffix node has an incoming edge
        }
        std::vector<BlockCode> kept;
        kept.reserve(blocks.size());
        for (BlockCode b : blocks) {
            // Left-extendable: something ends at the prefix node.
            // Right-extendable: something leaves the suffix node.
            // With window 1 both nodes collapse to the unique empty node.
            if (has_in.count(b % node_mod) && has_out.count(b / r)) kept.push_back(b);
            else changed = true;
        }
        blocks.swap(kept);
    }
    return blocks;
}

namespace {

std::vector<BlockCode> reach(const GroupPtr& g, int window, const std::vector<BlockCode>& trimmed,
                             BlockCode start_node, bool forward) {
    const BlockCode r = static_cast<BlockCode>(g->order());
    const BlockCode node_mod = pow_u64(r, window - 1);
    // adjacency over nodes
    std::unordered_map<BlockCode, std::vector<BlockCode>> step;
    for (BlockCode b : trimmed) {
        BlockCode p = b % node_mod, s = b / r;
        if (forward) step[p].push_back(s);
        else step[s].push_back(p);
    }
    std::unordered_set<BlockCode> seen{start_node};
    std::vector<BlockCode> frontier{start_node};
    while (!frontier.empty()) {
        BlockCode u = frontier.back();
        frontier.pop_back();
        auto it = step.find(u);
        if (it == step.end()) continue;
        for (BlockCode v : it->second)
            if (seen.insert(v).second) frontier.push_back(v);
    }
    std::vector<BlockCode> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

std::vector<BlockCode> reachable_to(const GroupPtr& g, int window,
                                    const std::vector<BlockCode>& trimmed, BlockCode target_node) {
    return reach(g, window, trimmed, target_node, /*forward=*/false);
}

std::vector<BlockCode> reachable_from(const GroupPtr& g, int window,
                                      const std::vector<BlockCode>& trimmed,
                                      BlockCode source_node) {
    return reach(g, window, trimmed, source_node, /*forward=*/true);
}

} // namespace detail

GroupShiftSFT::GroupShiftSFT(GroupPtr alphabet, int window,
                             const std::vector<std::vector<Sym>>& blocks)
    : alphabet_(std::move(alphabet)), window_(window) {
    blocks_.reserve(blocks.size());
    for (const auto& w : blocks) {
        if (static_cast<int>(w.size()) != window)
            fail(Errc::InvalidDescriptor, "block length differs from window");
        for (Sym s : w)
            if (s < 0 || s >= alphabet_->order())
                fail(Errc::AlphabetMismatch, "block symbol out of range");
        blocks_.push_back(encode_block(w, alphabet_->order()));
    }
    std::sort(blocks_.begin(), blocks_.end());
    blocks_.erase(std::unique(blocks_.begin(), blocks_.end()), blocks_.end());
    validate();
}

GroupShiftSFT GroupShiftSFT::from_codes(GroupPtr alphabet, int window,
                                        std::vector<BlockCode> codes) {
    if (window < 1) fail(Errc::InvalidDescriptor, "window must be at least 1");
    const BlockCode limit = pow_u64(static_cast<BlockCode>(alphabet->order()), window);
    std::vector<std::vector<Sym>> words;
    words.reserve(codes.size());
    for (BlockCode c : codes) {
        if (c >= limit) fail(Errc::InvalidDescriptor, "block code out of range");
        words.push_back(decode_block(c, alphabet->order(), window));
    }
    return GroupShiftSFT(std::move(alphabet), window, words);
}

void GroupShiftSFT::validate() const {
    if (window_ < 1) fail(Errc::InvalidDescriptor, "window must be at least 1");
    if (blocks_.empty()) fail(Errc::InvalidDescriptor, "empty block set");
    const BlockCode limit = pow_u64(static_cast<BlockCode>(alphabet_->order()), window_);
    for (BlockCode b : blocks_)
        if (b >= limit) fail(Errc::InvalidDescriptor, "block code out of range");
    if (!detail::verify_block_subgroup(alphabet_, window_, blocks_))
        fail(Errc::InvalidDescriptor, "allowed blocks do not form a subgroup");
}

GroupShiftSFT GroupShiftSFT::full_shift(GroupPtr alphabet) {
    std::vector<BlockCode> codes(static_cast<std::size_t>(alphabet->order()));
    for (Sym s = 0; s < alphabet->order(); ++s) codes[static_cast<std::size_t>(s)] = s;
    return from_codes(std::move(alphabet), 1, std::move(codes));
}

GroupShiftSFT GroupShiftSFT::trivial(GroupPtr alphabet) {
    BlockCode id = alphabet->identity();
    return from_codes(std::move(alphabet), 1, {id});
}

GroupShiftSFT GroupShiftSFT::constants(GroupPtr alphabet) {
    const Sym r = alphabet->order();
    std::vector<BlockCode> codes;
    for (Sym s = 0; s < r; ++s)
        codes.push_back(encode_block({s, s}, r));
    return from_codes(std::move(alphabet), 2, std::move(codes));
}

const std::vector<BlockCode>& GroupShiftSFT::trimmed() const {
    if (!trim_cache_) {
        auto t = detail::trim_blocks(alphabet_, window_, blocks_);
        require_internal(!t.empty(), "trimmed presentation of a subgroup shift is empty");
        require_internal(detail::verify_block_subgroup(alphabet_, window_, t),
                         "trimmed block set is not a subgroup");
        trim_cache_ = std::make_shared<const std::vector<BlockCode>>(std::move(t));
    }
    return *trim_cache_;
}

std::vector<BlockCode> GroupShiftSFT::occurring(int w) const {
    if (w < 1) fail(Errc::PreconditionFailed, "width must be positive");
    const BlockCode r = static_cast<BlockCode>(alphabet_->order());
    const auto& base = trimmed();
    if (w < window_) {
        // project and dedupe
        const BlockCode m = pow_u64(r, w);
        std::vector<BlockCode> out;
        out.reserve(base.size());
        for (BlockCode b : base) out.push_back(b % m);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
    // Lift by single-symbol extensions. A width-(w+1) word occurs iff its
    // first w symbols occur and its last `window` symbols are an allowed
    // (occurring) block; trimming already removed non-extendable blocks.
    std::unordered_set<BlockCode> allowed(base.begin(), base.end());
    const BlockCode node_mod = pow_u64(r, window_ - 1);
    std::vector<BlockCode> cur = base;
    for (int width = window_; width < w; ++width) {
        const BlockCode top = pow_u64(r, width - (window_ - 1));
        std::vector<BlockCode> next;
        next.reserve(cur.size() * 2);
        for (BlockCode b : cur) {
            const BlockCode tail = b / top; // last (window-1) symbols
            for (Sym a = 0; a < alphabet_->order(); ++a) {
                BlockCode last = tail + static_cast<BlockCode>(a) * node_mod;
                if (!allowed.count(last)) continue;
                next.push_back(b + static_cast<BlockCode>(a) * top * node_mod);
            }
            if (next.size() > kMaxBlockEnumeration)
                fail(Errc::WidthExceeded, "block enumeration exceeds cap");
        }
        std::sort(next.begin(), next.end());
        cur.swap(next);
    }
    return cur;
}

bool GroupShiftSFT::contains(const EPWord& f) const {
    if (!same_group(alphabet_, f.alphabet()))
        fail(Errc::AlphabetMismatch, "word over a different alphabet");
    const long long d = static_cast<long long>(f.left_period().size());
    const long long e = static_cast<long long>(f.right_period().size());
    const long long lo = f.core_start() - window_ - d + 1;
    const long long hi = f.core_end() + e - 1;
    for (long long n = lo; n <= hi; ++n) {
        BlockCode code = encode_block(f.window(n, window_), alphabet_->order());
        if (!sorted_contains(blocks_, code)) return false;
    }
    return true;
}

bool GroupShiftSFT::is_trivial() const { return trimmed().size() == 1; }

std::uint64_t GroupShiftSFT::finite_order() const {
    const auto& t = trimmed();
    const BlockCode r = static_cast<BlockCode>(alphabet_->order());
    const BlockCode node_mod = pow_u64(r, window_ - 1);
    std::unordered_map<BlockCode, int> out_deg;
    for (BlockCode b : t) out_deg[b % node_mod]++;
    std::unordered_set<BlockCode> nodes;
    for (BlockCode b : t) {
        nodes.insert(b % node_mod);
        nodes.insert(b / r);
    }
    for (const auto& [node, deg] : out_deg)
        if (deg > 1) fail(Errc::NotFinite, "shift has branching, so infinitely many points");
    // Out-degree one everywhere: points correspond bijectively to nodes.
    return nodes.size();
}

GroupShiftSFT GroupShiftSFT::widened(int w) const {
    if (w < window_) fail(Errc::PreconditionFailed, "cannot narrow a presentation");
    if (w == window_) return *this;
    return from_codes(alphabet_, w, occurring(w));
}

bool point_equal(const GroupShiftSFT& a, const GroupShiftSFT& b) {
    if (!same_group(a.alphabet(), b.alphabet()))
        fail(Errc::AlphabetMismatch, "comparing shifts over different alphabets");
    const int w = std::max(a.window(), b.window());
    return a.occurring(w) == b.occurring(w);
}

bool point_subset(const GroupShiftSFT& a, const GroupShiftSFT& b) {
    if (!same_group(a.alphabet(), b.alphabet()))
        fail(Errc::AlphabetMismatch, "comparing shifts over different alphabets");
    const int w = std::max(a.window(), b.window());
    auto oa = a.occurring(w), ob = b.occurring(w);
    return std::includes(ob.begin(), ob.end(), oa.begin(), oa.end());
}

GroupShiftSFT intersect(const GroupShiftSFT& a, const GroupShiftSFT& b) {
    if (!same_group(a.alphabet(), b.alphabet()))
        fail(Errc::AlphabetMismatch, "intersecting shifts over different alphabets");
    const int w = std::max(a.window(), b.window());
    auto oa = a.occurring(w), ob = b.occurring(w);
    std::vector<BlockCode> both;
    std::set_intersection(oa.begin(), oa.end(), ob.begin(), ob.end(), std::back_inserter(both));
    if (both.empty())
        fail(Errc::InternalInconsistency, "subgroup shifts intersect at least in the identity");
    return GroupShiftSFT::from_codes(a.alphabet(), w, std::move(both));
}

GroupShiftSFT product_shift(const GroupShiftSFT& a, const GroupShiftSFT& b, int width_cap) {
    if (!same_group(a.alphabet(), b.alphabet()))
        fail(Errc::AlphabetMismatch, "product of shifts over different alphabets");
    const auto& g = *a.alphabet();
    const int w0 = std::max(a.window(), b.window());
    if (width_cap <= 0) width_cap = 2 * w0 + 8;
    auto product_at = [&](int w) {
        auto oa = a.occurring(w), ob = b.occurring(w);
        if (oa.size() * ob.size() > kMaxBlockEnumeration * 64)
            fail(Errc::WidthExceeded, "product block enumeration too large");
        std::unordered_set<BlockCode> prod;
        prod.reserve(oa.size() * 4);
        for (BlockCode x : oa)
            for (BlockCode y : ob) {
                prod.insert(mul_codes(g, x, y, w));
                if (prod.size() > kMaxBlockEnumeration)
                    fail(Errc::WidthExceeded, "product block enumeration too large");
            }
        std::vector<BlockCode> out(prod.begin(), prod.end());
        std::sort(out.begin(), out.end());
        return out;
    };
    // The block products at width w cover every width-w window of a point
    // product; the SFT they define shrinks with w and stabilizes once the
    // presentation is exact. Accept on the first stable pair of widths.
    GroupShiftSFT prev = GroupShiftSFT::from_codes(a.alphabet(), w0, product_at(w0));
    for (int w = w0 + 1; w <= width_cap; ++w) {
        GroupShiftSFT cur = GroupShiftSFT::from_codes(a.alphabet(), w, product_at(w));
        if (point_equal(prev, cur)) return prev;
        prev = cur;
    }
    fail(Errc::WidthExceeded, "product shift did not stabilize below the width cap");
}

bool normalizes(const GroupShiftSFT& sub, const GroupShiftSFT& host) {
    if (!same_group(sub.alphabet(), host.alphabet()))
        fail(Errc::AlphabetMismatch, "normality check across alphabets");
    const auto& g = *sub.alphabet();
    const int w = std::max(sub.window(), host.window());
    auto os = sub.occurring(w), oh = host.occurring(w);
    for (BlockCode c : oh)
        for (BlockCode x : os) {
            BlockCode conj = mul_codes(g, mul_codes(g, c, x, w), inv_code(g, c, w), w);
            if (!std::binary_search(os.begin(), os.end(), conj)) return false;
        }
    return true;
}

std::vector<EPWord> periodic_points(const GroupShiftSFT& h, int n) {
    if (n < 1) fail(Errc::PreconditionFailed, "period must be positive");
    const Sym r = h.alphabet()->order();
    double size = std::pow(static_cast<double>(r), n);
    if (size > static_cast<double>(kMaxBlockEnumeration))
        fail(Errc::WidthExceeded, "too many candidate periodic patterns");
    const auto& blocks = h.blocks();
    const int l = h.window();
    std::vector<EPWord> out;
    const BlockCode total = pow_u64(static_cast<BlockCode>(r), n);
    for (BlockCode c = 0; c < total; ++c) {
        std::vector<Sym> pat = decode_block(c, r, n);
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            std::vector<Sym> win(static_cast<std::size_t>(l));
            for (int j = 0; j < l; ++j)
                win[static_cast<std::size_t>(j)] = pat[static_cast<std::size_t>((i + j) % n)];
            ok = sorted_contains(blocks, encode_block(win, r));
        }
        if (ok) out.push_back(EPWord::periodic(h.alphabet(), pat));
    }
    // Each n-periodic point shows up under exactly one length-n pattern (its
    // values on [0, n)), so the list is already duplicate-free.
    return out;
}

std::vector<EPWord> enumerate_finite(const GroupShiftSFT& h) {
    const std::uint64_t n = h.finite_order();
    // Points of a finite shift are periodic with period dividing the number
    // of graph nodes; sweep periods up to that bound.
    std::vector<EPWord> out;
    for (int p = 1; static_cast<std::uint64_t>(p) <= n; ++p) {
        for (auto& w : periodic_points(h, p)) {
            bool seen = false;
            for (const auto& v : out) seen = seen || v == w;
            if (!seen) out.push_back(std::move(w));
        }
        if (out.size() == n) break;
    }
    require_internal(out.size() == n, "finite shift enumeration mismatch");
    return out;
}

} // namespace nubshift
