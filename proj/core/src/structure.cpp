#include "nubshift/structure.hpp"

#include "nubshift/errors.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <unordered_set>

namespace nubshift {

namespace {

std::unordered_set<BlockCode> as_set(const std::vector<BlockCode>& v) {
    return std::unordered_set<BlockCode>(v.begin(), v.end());
}

std::vector<Sym> decode_cached(BlockCode code, int r, int len) {
    std::vector<Sym> out(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i) {
        out[static_cast<std::size_t>(i)] = static_cast<Sym>(code % static_cast<BlockCode>(r));
        code /= static_cast<BlockCode>(r);
    }
    return out;
}

} // namespace

GroupShiftSFT contraction_closure(const GroupShiftSFT& h, int direction) {
    if (direction != 1 && direction != -1)
        fail(Errc::PreconditionFailed, "direction must be +1 or -1");
    const int l = h.window();
    const auto& trim = h.trimmed();
    const auto& g = *h.alphabet();
    const BlockCode r = static_cast<BlockCode>(g.order());
    const BlockCode node_mod = detail::pow_u64(r, l - 1);
    const BlockCode idnode = detail::identity_code(g, l - 1);

    std::vector<BlockCode> keep;
    keep.reserve(trim.size());
    if (direction == 1) {
        // keep blocks whose suffix node can reach the identity node; from there
        // the identity self-loop supplies an identity right tail
        auto rt = as_set(detail::reachable_to(h.alphabet(), l, trim, idnode));
        for (BlockCode b : trim)
            if (rt.count(b / r)) keep.push_back(b);
    } else {
        auto rf = as_set(detail::reachable_from(h.alphabet(), l, trim, idnode));
        for (BlockCode b : trim)
            if (rf.count(b % node_mod)) keep.push_back(b);
    }
    return GroupShiftSFT::from_codes(h.alphabet(), l, std::move(keep));
}

NubResult nub(const GroupShiftSFT& h) {
    GroupShiftSFT plus = contraction_closure(h, +1);
    GroupShiftSFT minus = contraction_closure(h, -1);
    require_internal(point_equal(plus, minus), "one-sided identity-tail closures disagree");
    const std::uint64_t host_blocks = h.trimmed().size();
    const std::uint64_t sub_blocks = plus.trimmed().size();
    require_internal(sub_blocks > 0 && host_blocks % sub_blocks == 0,
                     "closure block count does not divide host block count");
    const std::uint64_t index = host_blocks / sub_blocks;
    const int width = h.window();
    return NubResult{std::move(plus), index, width};
}

bool is_topologically_transitive(const GroupShiftSFT& h) {
    return point_equal(nub(h).nub, h);
}

std::vector<EPWord> homoclinic_points_in_range(const GroupShiftSFT& h, long long lo,
                                               long long hi) {
    std::vector<EPWord> out;
    out.push_back(EPWord::identity(h.alphabet()));
    if (hi < lo) return out;
    const long long len = hi - lo + 1;
    const int r = h.alphabet()->order();
    std::uint64_t total = 1;
    for (long long i = 0; i < len; ++i) {
        total *= static_cast<std::uint64_t>(r);
        if (total > kMaxBlockEnumeration)
            fail(Errc::WidthExceeded, "finitely supported enumeration range too wide");
    }
    const Sym e = h.alphabet()->identity();
    for (std::uint64_t c = 1; c < total; ++c) {
        std::uint64_t x = c;
        std::vector<Sym> word(static_cast<std::size_t>(len));
        bool nonid = false;
        for (long long i = 0; i < len; ++i) {
            word[static_cast<std::size_t>(i)] = static_cast<Sym>(x % static_cast<std::uint64_t>(r));
            nonid = nonid || word[static_cast<std::size_t>(i)] != e;
            x /= static_cast<std::uint64_t>(r);
        }
        if (!nonid) continue;
        EPWord w = EPWord::finitely_supported(h.alphabet(), lo, std::move(word));
        if (h.contains(w)) out.push_back(std::move(w));
    }
    return out;
}

std::vector<EPWord> homoclinic_points(const GroupShiftSFT& h, int s) {
    if (s <= 0) return {EPWord::identity(h.alphabet())};
    return homoclinic_points_in_range(h, 0, s - 1);
}

GroupShiftSFT homoclinic_closure(const GroupShiftSFT& h) {
    const int l = h.window();
    const auto& trim = h.trimmed();
    const auto& g = *h.alphabet();
    const BlockCode r = static_cast<BlockCode>(g.order());
    const BlockCode node_mod = detail::pow_u64(r, l - 1);
    const BlockCode idnode = detail::identity_code(g, l - 1);
    auto rt = as_set(detail::reachable_to(h.alphabet(), l, trim, idnode));
    auto rf = as_set(detail::reachable_from(h.alphabet(), l, trim, idnode));
    std::vector<BlockCode> keep;
    keep.reserve(trim.size());
    for (BlockCode b : trim)
        if (rt.count(b / r) && rf.count(b % node_mod)) keep.push_back(b);
    return GroupShiftSFT::from_codes(h.alphabet(), l, std::move(keep));
}

namespace {

// {a in F : some point is identity strictly left of an occurrence of a},
// read off the width-w occurring blocks of the form 1^{w-1} a.
std::vector<Sym> boundary_elements(const GroupShiftSFT& h, int w) {
    const auto occ = h.occurring(w);
    const auto& g = *h.alphabet();
    const BlockCode r = static_cast<BlockCode>(g.order());
    const BlockCode top = detail::pow_u64(r, w - 1);
    const BlockCode idprefix = detail::identity_code(g, w - 1);
    std::vector<Sym> out;
    for (BlockCode b : occ)
        if (b % top == idprefix) out.push_back(static_cast<Sym>(b / top));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

DepthReport depth(const GroupShiftSFT& h) {
    const int l = h.window();
    auto r1 = boundary_elements(h, l);
    auto r2 = boundary_elements(h, l + 1);
    require_internal(r1 == r2, "boundary subgroup changed between consecutive windows");
    if (r1.size() == 1)
        fail(Errc::FiniteGroupShift, "depth is defined for infinite group shifts only");
    SubgroupF boundary(h.alphabet(), r1);
    return DepthReport{static_cast<int>(r1.size()), l, std::move(boundary)};
}

namespace detail {

namespace {

// One width-w evaluation of the factorization condition for the pinned
// interval [lo, hi): every occurring block that is identity on [lo, hi)
// must match, on [hi, B), some occurring block that is identity on all of
// [A, hi). Blocks are anchored on [A, B).
bool ta_condition(const GroupShiftSFT& h, long long lo, long long hi, long long a, long long b) {
    const int w = static_cast<int>(b - a);
    const auto occ = h.occurring(w);
    const int r = h.alphabet()->order();
    const Sym e = h.alphabet()->identity();
    const int i_lo = static_cast<int>(lo - a);
    const int i_hi = static_cast<int>(hi - a);

    std::unordered_set<BlockCode> rights;
    std::vector<Sym> digits;
    for (BlockCode bc : occ) {
        digits = decode_cached(bc, r, w);
        bool left_id = true;
        for (int i = 0; i < i_hi && left_id; ++i) left_id = digits[static_cast<std::size_t>(i)] == e;
        if (!left_id) continue;
        BlockCode key = 0;
        for (int i = w - 1; i >= i_hi; --i)
            key = key * static_cast<BlockCode>(r) + static_cast<BlockCode>(digits[static_cast<std::size_t>(i)]);
        rights.insert(key);
    }
    for (BlockCode bc : occ) {
        digits = decode_cached(bc, r, w);
        bool pinned = true;
        for (int i = i_lo; i < i_hi && pinned; ++i) pinned = digits[static_cast<std::size_t>(i)] == e;
        if (!pinned) continue;
        BlockCode key = 0;
        for (int i = w - 1; i >= i_hi; --i)
            key = key * static_cast<BlockCode>(r) + static_cast<BlockCode>(digits[static_cast<std::size_t>(i)]);
        if (!rights.count(key)) return false;
    }
    return true;
}

} // namespace

bool ta_interval(const GroupShiftSFT& h, long long lo, long long hi, int width_cap) {
    if (hi < lo) fail(Errc::PreconditionFailed, "empty pinned interval");
    const int l = h.window();
    // When the pinned interval spans at least l-1 coordinates, the forced
    // factor (identity left of hi, the point itself from hi on) is always
    // admissible: every window straddling hi already sees identity symbols.
    if (hi - lo >= l - 1) return true;

    const long long base = (hi - lo) + 2 * static_cast<long long>(l);
    const long long cap = width_cap > 0 ? width_cap : base + 12;
    long long pad_left = l, pad_right = l;
    std::optional<bool> prev;
    for (;;) {
        const long long w = (hi - lo) + pad_left + pad_right;
        if (w > cap) fail(Errc::WidthExceeded, "factorization verdict did not stabilize under the width cap");
        const bool cur = ta_condition(h, lo, hi, lo - pad_left, hi + pad_right);
        if (prev && *prev == cur && w - 1 >= 2 * l) return cur;
        prev = cur;
        if (pad_right <= pad_left)
            ++pad_right;
        else
            ++pad_left;
    }
}

bool ta_exact_by_simulation(const GroupShiftSFT& h, long long lo, long long hi) {
    if (hi < lo) fail(Errc::PreconditionFailed, "empty pinned interval");
    const int l = h.window();
    const auto& trim = h.trimmed();
    const auto& g = *h.alphabet();
    const int r = g.order();
    const Sym e = g.identity();
    const BlockCode node_mod = detail::pow_u64(static_cast<BlockCode>(r), l - 1);

    // Node set reachable at a given position for points that are identity
    // on [lo, hi); a node at position q covers coordinates [q, q + l - 1).
    std::unordered_set<BlockCode> nodes;
    for (BlockCode b : trim) nodes.insert(b % node_mod);

    auto node_digit = [&](BlockCode u, int i) {
        for (int j = 0; j < i; ++j) u /= static_cast<BlockCode>(r);
        return static_cast<Sym>(u % static_cast<BlockCode>(r));
    };
    auto node_ok = [&](BlockCode u, long long q) {
        for (int i = 0; i < l - 1; ++i) {
            const long long pos = q + i;
            if (pos >= lo && pos < hi && node_digit(u, i) != e) return false;
        }
        return true;
    };

    for (long long q = lo - (l - 1); q < hi; ++q) {
        std::unordered_set<BlockCode> filtered;
        for (BlockCode u : nodes)
            if (node_ok(u, q)) filtered.insert(u);
        std::unordered_set<BlockCode> next;
        for (BlockCode b : trim)
            if (filtered.count(b % node_mod)) next.insert(b / static_cast<BlockCode>(r));
        nodes = std::move(next);
    }

    // A tail starting at hi glues to an all-identity left half exactly when
    // each window straddling hi is admissible, i.e. 1^j (node prefix) lies in
    // the block subgroup for every j.
    auto blocks = as_set(h.blocks());
    auto straddle_ok = [&](BlockCode u) {
        for (int j = 1; j <= l - 1; ++j) {
            // window = j identity symbols followed by the first l - j symbols of u
            BlockCode w = 0;
            for (int i = l - 1; i >= 0; --i) {
                const Sym s = i < j ? e : node_digit(u, i - j);
                w = w * static_cast<BlockCode>(r) + static_cast<BlockCode>(s);
            }
            if (!blocks.count(w)) return false;
        }
        return true;
    };
    for (BlockCode u : nodes) {
        if (!node_ok(u, hi)) continue;
        if (!straddle_ok(u)) return false;
    }
    return true;
}

} // namespace detail

bool check_TA(const WindowSubgroup& v, int width_cap) {
    if (v.m < 1) fail(Errc::PreconditionFailed, "window subgroup must pin at least one coordinate");
    return detail::ta_interval(v.host, 0, v.m, width_cap);
}

int tidy_above_exponent(const WindowSubgroup& v, int width_cap) {
    if (v.m < 1) fail(Errc::PreconditionFailed, "window subgroup must pin at least one coordinate");
    const int l = v.host.window();
    for (int n = 0; n <= l + 4; ++n)
        if (detail::ta_interval(v.host, -n, v.m, width_cap)) return n;
    fail(Errc::InternalInconsistency, "stretched pinned interval never factored");
}

namespace {

// One width evaluation of sigma^k(V_+) V_- covering the host, for the
// canonical V pinning coordinate 0. Every occurring block on [-pl, pr) must
// match, on [0, pr), an occurring block that is identity on [-pl, 1 - k).
bool prodeq_condition(const GroupShiftSFT& h, int k, long long pl, long long pr) {
    const int w = static_cast<int>(pl + pr);
    const auto occ = h.occurring(w);
    const int r = h.alphabet()->order();
    const Sym e = h.alphabet()->identity();
    const int i_zero = static_cast<int>(pl);
    const int i_bound = static_cast<int>(pl + (1 - k)); // identity strictly left of 1 - k

    std::unordered_set<BlockCode> rights;
    std::vector<Sym> digits;
    for (BlockCode bc : occ) {
        digits = decode_cached(bc, r, w);
        bool left_id = true;
        for (int i = 0; i < i_bound && left_id; ++i) left_id = digits[static_cast<std::size_t>(i)] == e;
        if (!left_id) continue;
        BlockCode key = 0;
        for (int i = w - 1; i >= i_zero; --i)
            key = key * static_cast<BlockCode>(r) + static_cast<BlockCode>(digits[static_cast<std::size_t>(i)]);
        rights.insert(key);
    }
    for (BlockCode bc : occ) {
        digits = decode_cached(bc, r, w);
        BlockCode key = 0;
        for (int i = w - 1; i >= i_zero; --i)
            key = key * static_cast<BlockCode>(r) + static_cast<BlockCode>(digits[static_cast<std::size_t>(i)]);
        if (!rights.count(key)) return false;
    }
    return true;
}

bool prodeq_certified(const GroupShiftSFT& h, int k, int width_cap) {
    const int l = h.window();
    const int m = 1; // canonical V pins coordinate 0
    long long pl = l + std::max(0, k - m), pr = m + l;
    const long long cap = width_cap > 0 ? width_cap : pl + pr + 12;
    std::optional<bool> prev;
    for (;;) {
        const long long w = pl + pr;
        if (w > cap) fail(Errc::WidthExceeded, "product-coverage verdict did not stabilize under the width cap");
        const bool cur = prodeq_condition(h, k, pl, pr);
        if (prev && *prev == cur && w - 1 >= 2 * l) return cur;
        prev = cur;
        if (pr <= pl + m + l)
            ++pr;
        else
            ++pl;
    }
}

} // namespace

int prodeq_k(const GroupShiftSFT& h, int width_cap) {
    if (!is_topologically_transitive(h))
        fail(Errc::NotTransitive, "product coverage is defined for topologically transitive hosts");
    const int l = h.window();
    std::unordered_set<BlockCode> nodes;
    const BlockCode node_mod = detail::pow_u64(static_cast<BlockCode>(h.alphabet()->order()), l - 1);
    for (BlockCode b : h.trimmed()) nodes.insert(b % node_mod);
    const int kcap = 1 + static_cast<int>(nodes.size()) + l + 4;
    for (int k = 1; k <= kcap; ++k)
        if (prodeq_certified(h, k, width_cap)) return k;
    fail(Errc::WidthExceeded, "no exponent admitted the product decomposition within the search bound");
}

GroupShiftSFT nub_meet(const GroupShiftSFT& a, const GroupShiftSFT& b) {
    if (!same_group(a.alphabet(), b.alphabet()))
        fail(Errc::AlphabetMismatch, "meet requires a common ambient alphabet");
    return nub(intersect(a, b)).nub;
}

bool central_check_finite_stable(const std::vector<EPWord>& n, const GroupShiftSFT& h) {
    if (!is_topologically_transitive(h))
        fail(Errc::PreconditionFailed, "host must be topologically transitive");
    if (n.empty()) return true;

    const auto& gp = h.alphabet();
    const FiniteGroup& g = *gp;
    auto member = [&](const EPWord& w) {
        return std::find(n.begin(), n.end(), w) != n.end();
    };

    std::vector<long long> periods;
    for (const auto& v : n) {
        if (!same_group(v.alphabet(), gp)) fail(Errc::AlphabetMismatch, "element alphabet differs from host");
        if (!h.contains(v)) fail(Errc::PreconditionFailed, "element does not lie in the host");
        if (!member(v.inverse())) fail(Errc::PreconditionFailed, "element list is not inverse-closed");
        if (!member(v.shift_by(1)) || !member(v.shift_by(-1)))
            fail(Errc::PreconditionFailed, "element list is not shift-stable");
        // a shift-stable finite set makes every element periodic
        long long p = 0;
        EPWord s = v;
        for (std::size_t i = 1; i <= n.size(); ++i) {
            s = s.shift_by(1);
            if (s == v) {
                p = static_cast<long long>(i);
                break;
            }
        }
        if (p == 0) fail(Errc::PreconditionFailed, "element has no period within the set size");
        periods.push_back(p);
    }
    for (const auto& v : n)
        for (const auto& u : n)
            if (!member(v * u)) fail(Errc::PreconditionFailed, "element list is not product-closed");

    // Normality, checked exactly: a conjugated word x v x^{-1} lies in the set
    // iff its aligned width-D windows all show one fixed element pattern,
    // where D is a common period. Two adjacent aligned windows are determined
    // by an occurring 2D-window of x, so the sweep below is exhaustive.
    long long d = 1;
    for (long long p : periods) d = std::lcm(d, p);
    const int w2 = static_cast<int>(2 * d);
    const auto occ = h.occurring(w2);
    const int r = g.order();
    std::vector<std::vector<Sym>> patterns;
    for (const auto& u : n) patterns.push_back(u.window(0, d));
    auto known_pattern = [&](const std::vector<Sym>& pat) {
        return std::find(patterns.begin(), patterns.end(), pat) != patterns.end();
    };
    for (const auto& v : n) {
        const std::vector<Sym> vwin = v.window(0, w2);
        for (BlockCode bc : occ) {
            const std::vector<Sym> x = decode_cached(bc, r, w2);
            std::vector<Sym> c(static_cast<std::size_t>(w2));
            for (int i = 0; i < w2; ++i)
                c[static_cast<std::size_t>(i)] = g.conj(x[static_cast<std::size_t>(i)], vwin[static_cast<std::size_t>(i)]);
            const std::vector<Sym> c0(c.begin(), c.begin() + d);
            const std::vector<Sym> c1(c.begin() + d, c.end());
            if (c0 != c1 || !known_pattern(c0))
                fail(Errc::PreconditionFailed, "element list is not normal in the host");
        }
    }

    // Centrality: a point commutes with every host point iff each of its
    // values commutes with every symbol that occurs; width-1 occurrences are
    // exact after trimming.
    const auto occ1 = h.occurring(1);
    auto commutes_everywhere = [&](Sym val) {
        for (BlockCode s : occ1)
            if (g.mul(val, static_cast<Sym>(s)) != g.mul(static_cast<Sym>(s), val)) return false;
        return true;
    };
    for (const auto& v : n) {
        for (Sym s : v.left_period())
            if (!commutes_everywhere(s)) return false;
        for (Sym s : v.core())
            if (!commutes_everywhere(s)) return false;
        for (Sym s : v.right_period())
            if (!commutes_everywhere(s)) return false;
    }
    return true;
}

namespace {

EPWord eta_solve_finitely_supported(const EPWord& f, long long k) {
    const auto& gp = f.alphabet();
    const FiniteGroup& g = *gp;
    const long long kk = k > 0 ? k : -k;
    const auto sup = f.support();
    const long long lo = sup->first, hi = sup->second;
    const long long a = std::min<long long>(0, lo) - kk;
    const long long b = std::max<long long>(kk, hi + kk + 1);

    std::vector<Sym> x(static_cast<std::size_t>(b - a), g.identity());
    auto at = [&](long long n) -> Sym& { return x[static_cast<std::size_t>(n - a)]; };
    if (k > 0) {
        for (long long n = k; n < b; ++n) at(n) = g.mul(at(n - k), f.at(n - k));
        for (long long n = -1; n >= a; --n) at(n) = g.mul(at(n + k), g.inv(f.at(n)));
    } else {
        for (long long n = kk; n < b; ++n) at(n) = g.mul(at(n - kk), g.inv(f.at(n)));
        for (long long n = -1; n >= a; --n) at(n) = g.mul(at(n + kk), f.at(n + kk));
    }
    std::vector<Sym> left(x.begin(), x.begin() + kk);
    std::vector<Sym> right(x.end() - kk, x.end());
    return EPWord(gp, std::move(left), a, std::move(x), std::move(right));
}

EPWord eta_solve_periodic(const EPWord& f, long long k) {
    const auto& gp = f.alphabet();
    const FiniteGroup& g = *gp;
    const long long kk = k > 0 ? k : -k;
    const long long d = static_cast<long long>(f.right_period().size());
    const long long cycle = std::lcm(d, kk);

    // one full cycle of the recursion multiplies x by a fixed group element;
    // extending to the lcm of those element orders closes the orbit
    auto step = [&](Sym cur, long long pos_prev) {
        return k > 0 ? g.mul(cur, f.at(pos_prev)) : g.mul(cur, g.inv(f.at(pos_prev + kk)));
    };
    long long m = 1;
    for (long long s = 0; s < kk; ++s) {
        Sym q = g.identity();
        for (long long j = 0; j < cycle / kk; ++j) q = step(q, s + j * kk);
        m = std::lcm(m, static_cast<long long>(g.element_order(q)));
    }
    const long long period = cycle * m;
    if (period > static_cast<long long>(kMaxBlockEnumeration))
        fail(Errc::WidthExceeded, "solution period too large");

    std::vector<Sym> pat(static_cast<std::size_t>(period), g.identity());
    for (long long s = 0; s < kk; ++s)
        for (long long j = 1; j < period / kk; ++j) {
            const long long pos = s + j * kk;
            pat[static_cast<std::size_t>(pos)] = step(pat[static_cast<std::size_t>(pos - kk)], pos - kk);
        }
    return EPWord::periodic(gp, std::move(pat));
}

} // namespace

EPWord eta_solve(const EPWord& f, long long k) {
    if (k == 0) fail(Errc::PreconditionFailed, "shift exponent must be nonzero");
    if (f.is_identity()) return EPWord::identity(f.alphabet());

    EPWord x = EPWord::identity(f.alphabet());
    if (f.is_finitely_supported())
        x = eta_solve_finitely_supported(f, k);
    else if (f.core().empty() && f.left_period() == f.right_period())
        x = eta_solve_periodic(f, k);
    else
        fail(Errc::Unsupported, "word is neither finitely supported nor fully periodic");

    require_internal(x.inverse() * x.shift_by(k) == f, "recursion output failed verification");
    return x;
}

EPWord invariant_representative(const EPWord& x, const GroupShiftSFT& h) {
    if (!same_group(x.alphabet(), h.alphabet()))
        fail(Errc::AlphabetMismatch, "word alphabet differs from host");
    if (!is_topologically_transitive(h))
        fail(Errc::PreconditionFailed, "host must equal its identity-tail closure");
    const EPWord hword = x.inverse() * x.shift_by(1);
    if (!h.contains(hword))
        fail(Errc::PreconditionFailed, "word is not shift-invariant modulo the host");
    if (hword.is_identity()) return x;

    const EPWord z = eta_solve(hword, 1);
    const int order = h.alphabet()->order();
    for (Sym c = 0; c < order; ++c) {
        EPWord gcand = z.inverse() * EPWord::constant(h.alphabet(), c);
        if (!h.contains(gcand)) continue;
        EPWord y = x * gcand;
        require_internal(y.shift_by(1) == y, "corrected representative is not shift-invariant");
        return y;
    }
    fail(Errc::InternalInconsistency, "no constant correction landed in the host");
}

} // namespace nubshift
