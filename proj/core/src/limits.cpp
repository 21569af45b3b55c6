#include "nubshift/limits.hpp"

#include "nubshift/abelian.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace nubshift {

namespace {

/// Span-2 rule (a, b) -> a * b^{-1}; over a cyclic alphabet this is the
/// difference map x(n) - x(n + 1).
SlidingBlockHom difference_rule(const GroupPtr& g) {
    const int r = g->order();
    std::vector<Sym> table(static_cast<std::size_t>(r) * r);
    for (Sym a = 0; a < r; ++a)
        for (Sym b = 0; b < r; ++b)
            table[static_cast<std::size_t>(a) + static_cast<std::size_t>(r) * b] =
                g->mul(a, g->inv(b));
    return SlidingBlockHom(g, g, 2, std::move(table), 0);
}

InverseSystem difference_tower(const GroupPtr& g, int levels) {
    if (levels < 1) fail(Errc::PreconditionFailed, "a tower needs at least one connector");
    const GroupShiftSFT full = GroupShiftSFT::full_shift(g);
    SlidingBlockHom phi = difference_rule(g);

    require_internal(point_equal(kernel_sft(phi, full), GroupShiftSFT::constants(g)),
                     "difference-rule kernel is not the constant subgroup");
    const ImageSft im = image_sft(phi, full);
    require_internal(point_equal(im.sft, full), "difference rule is not surjective");

    InverseSystem sys;
    sys.levels.assign(static_cast<std::size_t>(levels) + 1, full);
    sys.connectors.assign(static_cast<std::size_t>(levels), phi);
    sys.surjectivity_width = im.certified_width;
    sys.verified = true;
    return sys;
}

bool is_difference_system(const InverseSystem& sys) {
    if (!sys.verified || sys.levels.empty() || sys.connectors.size() + 1 != sys.levels.size())
        return false;
    const GroupPtr& g = sys.levels.front().alphabet();
    const GroupShiftSFT full = GroupShiftSFT::full_shift(g);
    const SlidingBlockHom ref = difference_rule(g);
    for (const auto& lvl : sys.levels)
        if (!same_group(lvl.alphabet(), g) || !point_equal(lvl, full)) return false;
    for (const auto& c : sys.connectors)
        if (!same_group(c.domain(), g) || !same_group(c.codomain(), g) || c.span() != 2 ||
            c.anchor() != 0 || c.table() != ref.table())
            return false;
    return true;
}

/// The unique candidate for a finitely supported difference-rule preimage:
/// suffix sums y(n) = sum_{k >= n} x(k). Finitely supported preimages have
/// an identity right tail, which forces this recursion, and the kernel
/// (constants) contains no other finitely supported coset representative;
/// a preimage exists iff the total sum vanishes.
std::optional<EPWord> fs_difference_lift(const EPWord& x) {
    const GroupPtr& g = x.alphabet();
    const auto supp = x.support();
    require_internal(supp.has_value(), "lifting the identity word");
    const auto [m, M] = *supp;
    Sym total = g->identity();
    for (long long k = m; k <= M; ++k) total = g->mul(x.at(k), total);
    if (total != g->identity()) return std::nullopt;
    std::vector<Sym> word(static_cast<std::size_t>(M - m));
    Sym acc = g->identity();
    for (long long k = M; k > m; --k) {
        acc = g->mul(x.at(k), acc);
        word[static_cast<std::size_t>(k - (m + 1))] = acc;
    }
    return EPWord::finitely_supported(g, m + 1, std::move(word));
}

/// Twist window at level n: positions a with odd binomial coefficient
/// C(n, a), grown by iterated symmetric difference with its right shift.
std::vector<long long> twist_window_set(int n) {
    std::set<long long> a{0};
    for (int i = 0; i < n; ++i) {
        std::set<long long> next;
        for (long long v : a) {
            if (!next.erase(v)) next.insert(v);
            if (!next.erase(v + 1)) next.insert(v + 1);
        }
        a = std::move(next);
    }
    return {a.begin(), a.end()};
}

} // namespace

TruncatedElement truncated_element(const InverseSystem& sys, const EPWord& top,
                                   std::size_t top_level) {
    if (top_level >= sys.levels.size())
        fail(Errc::PreconditionFailed, "level index beyond the tower");
    if (!same_group(top.alphabet(), sys.levels[top_level].alphabet()))
        fail(Errc::AlphabetMismatch, "point over a different alphabet than its level");
    if (!sys.levels[top_level].contains(top))
        fail(Errc::PreconditionFailed, "point is not in its level");
    std::vector<EPWord> words;
    words.reserve(top_level + 1);
    words.push_back(top);
    for (std::size_t n = top_level; n > 0; --n) words.push_back(sys.connectors[n - 1].apply(words.back()));
    std::reverse(words.begin(), words.end());
    return TruncatedElement{std::move(words)};
}

InverseSystem build_example_5_6(int p, int levels) {
    const GroupPtr g = make_cyclic(p);
    if (!canonical_prime_modulus(g))
        fail(Errc::PreconditionFailed, "tower alphabet must have prime order");
    InverseSystem sys = difference_tower(g, levels);
    require_internal(kernel_sft(sys.connectors.front(), sys.levels.back()).finite_order() ==
                         static_cast<std::uint64_t>(p),
                     "connector kernel order is not the alphabet order");
    return sys;
}

bool support_growth_check(const EPWord& f) {
    if (!f.is_finitely_supported() || f.is_identity())
        fail(Errc::PreconditionFailed, "support growth needs a nonzero finitely supported word");
    if (!canonical_prime_modulus(f.alphabet()))
        fail(Errc::PreconditionFailed, "support growth is stated over prime cyclic alphabets");
    const auto before = f.support();
    const EPWord image = difference_rule(f.alphabet()).apply(f);
    const auto after = image.support();
    return after.has_value() && after->first == before->first - 1 &&
           after->second == before->second;
}

std::uint64_t support_growth_exhaustive(int p, int max_width) {
    if (p < 2 || max_width < 1) fail(Errc::PreconditionFailed, "empty sweep");
    std::uint64_t checked = 0;
    std::vector<int> v, u;
    for (int w = 1; w <= max_width; ++w) {
        v.assign(static_cast<std::size_t>(w), 0);
        v[0] = 1; // ascend from the first word with nonzero endpoints
        for (;;) {
            if (v[0] != 0 && v[static_cast<std::size_t>(w - 1)] != 0) {
                // image word on positions [-1, w - 1]: u(n) = v(n) - v(n+1)
                u.assign(static_cast<std::size_t>(w) + 1, 0);
                for (int n = -1; n < w; ++n) {
                    const int a = (n >= 0) ? v[static_cast<std::size_t>(n)] : 0;
                    const int b = (n + 1 < w) ? v[static_cast<std::size_t>(n + 1)] : 0;
                    u[static_cast<std::size_t>(n + 1)] = (a - b + p) % p;
                }
                int lo = 0;
                while (lo <= w && u[static_cast<std::size_t>(lo)] == 0) ++lo;
                int hi = w;
                while (hi >= 0 && u[static_cast<std::size_t>(hi)] == 0) --hi;
                if (lo != 0 || hi != w)
                    fail(Errc::InternalInconsistency, "difference image support law violated");
                ++checked;
            }
            std::size_t i = 0;
            while (i < v.size() && ++v[i] == p) {
                v[i] = 0;
                ++i;
            }
            if (i == v.size()) break;
        }
    }
    return checked;
}

HomoclinicTrivialCertificate homoclinic_trivial_certificate(const InverseSystem& sys,
                                                            int depth_budget) {
    if (!is_difference_system(sys))
        fail(Errc::PreconditionFailed, "certificate applies to difference-rule towers");
    const GroupPtr& g = sys.levels.front().alphabet();
    const auto pm = canonical_prime_modulus(g);
    if (!pm) fail(Errc::PreconditionFailed, "certificate applies to prime cyclic alphabets");
    const int p = *pm;
    const int levels = static_cast<int>(sys.connectors.size());
    if (depth_budget < 1) fail(Errc::PreconditionFailed, "empty budget");
    if (levels < depth_budget)
        fail(Errc::WidthExceeded, "tower has fewer levels than the lift budget");

    const SlidingBlockHom& phi = sys.connectors.front();
    HomoclinicTrivialCertificate cert{p, depth_budget, levels, 0, 0, false};
    std::vector<int> v;
    for (int w = 1; w <= depth_budget; ++w) {
        v.assign(static_cast<std::size_t>(w), 0);
        v[0] = 1;
        for (;;) {
            if (v[0] != 0 && v[static_cast<std::size_t>(w - 1)] != 0) {
                std::vector<Sym> word(v.begin(), v.end());
                EPWord cur = EPWord::finitely_supported(g, 0, std::move(word));
                int chain = 0;
                while (auto lift = fs_difference_lift(cur)) {
                    require_internal(phi.apply(*lift) == cur, "lift does not project back");
                    const auto before = cur.support();
                    const auto after = lift->support();
                    require_internal(after.has_value() && after->first == before->first + 1 &&
                                         after->second == before->second,
                                     "lift did not lose exactly the left support position");
                    cur = std::move(*lift);
                    ++chain;
                }
                require_internal(chain < depth_budget,
                                 "a finitely supported chain survived the whole budget");
                cert.longest_chain = std::max(cert.longest_chain, chain);
                ++cert.words_checked;
            }
            std::size_t i = 0;
            while (i < v.size() && ++v[i] == p) {
                v[i] = 0;
                ++i;
            }
            if (i == v.size()) break;
        }
    }
    cert.issued = true;
    return cert;
}

C4Example build_example_c4(int levels) {
    const GroupPtr g = make_cyclic(4);
    InverseSystem sys = difference_tower(g, levels);
    GroupShiftSFT two_torsion = GroupShiftSFT::from_codes(g, 1, {0, 2});

    C4ExponentReport report;
    report.levels = levels;
    report.subgroup_exponent_two = true;
    report.quotient_exponent_two = true;
    report.has_order_four_element = true;

    const GroupPtr g2 = make_cyclic(2);
    const SlidingBlockHom mod2 = lift_symbol_hom(FiniteHom(g, g2, {0, 1, 0, 1}));
    for (const auto& lvl : sys.levels) {
        for (BlockCode s : two_torsion.occurring(1))
            report.subgroup_exponent_two =
                report.subgroup_exponent_two &&
                g->mul(static_cast<Sym>(s), static_cast<Sym>(s)) == g->identity();

        const GroupShiftSFT quot = image_sft(mod2, lvl).sft;
        for (BlockCode s : quot.occurring(1))
            report.quotient_exponent_two =
                report.quotient_exponent_two &&
                g2->mul(static_cast<Sym>(s), static_cast<Sym>(s)) == g2->identity();

        // a constant word of symbol order 4 witnesses exponent > 2
        bool found = false;
        for (BlockCode s : lvl.occurring(1)) {
            if (g->element_order(static_cast<Sym>(s)) != 4) continue;
            const EPWord c = EPWord::constant(g, static_cast<Sym>(s));
            const EPWord sq = c * c;
            found = !sq.is_identity() && (sq * sq).is_identity();
            if (found) break;
        }
        report.has_order_four_element = report.has_order_four_element && found;
    }
    return C4Example{std::move(sys), std::move(two_torsion), report};
}

bool no_sliding_right_inverse(const SlidingBlockHom& phi, int max_span) {
    if (max_span < 1) fail(Errc::PreconditionFailed, "empty span bound");
    const GroupPtr& dom = phi.domain();
    const GroupPtr& cod = phi.codomain();
    if (!point_equal(image_sft(phi, GroupShiftSFT::full_shift(dom)).sft,
                     GroupShiftSFT::full_shift(cod)))
        fail(Errc::PreconditionFailed, "right inverses exist only for surjective maps");

    const BlockCode r = static_cast<BlockCode>(cod->order());
    GroupPtr power = cod;
    for (int span = 1; span <= max_span; ++span) {
        if (span > 1) power = direct_product(power, cod);
        const BlockCode n = detail::pow_u64(r, span);
        if (n > 4096) break; // candidate rules beyond this are outside the search bound

        for (const FiniteHom& h : all_homomorphisms(power, dom)) {
            // power-group symbols pack the first factor highest, block codes
            // the offset-0 digit lowest, so reverse the digits
            std::vector<Sym> table(n);
            for (BlockCode b = 0; b < n; ++b) {
                BlockCode c = b, packed = 0;
                for (int i = 0; i < span; ++i) {
                    packed = packed * r + c % r;
                    c /= r;
                }
                table[b] = h.apply(static_cast<Sym>(packed));
            }
            const int comp_span = span + phi.span() - 1;
            // only anchors placing the composed window over the copied
            // coordinate can yield the identity
            for (long long a = -phi.anchor() - comp_span + 1; a <= -phi.anchor(); ++a) {
                const SlidingBlockHom cand(cod, dom, span, table, a);
                const SlidingBlockHom comp = compose(phi, cand);
                const long long idx = -comp.anchor();
                const BlockCode step = detail::pow_u64(r, static_cast<int>(idx));
                bool identity = true;
                for (BlockCode cdx = 0; cdx < comp.table().size() && identity; ++cdx)
                    identity = comp.table()[cdx] == static_cast<Sym>(cdx / step % r);
                if (identity) return false;
            }
        }
    }
    return true;
}

TwistedLevel::TwistedLevel(int level, int period) : n(level), q(period) {
    if (level < 0 || period < 1) fail(Errc::PreconditionFailed, "bad twisted level shape");
    twist_window = twist_window_set(level);
}

int TwistedLevel::twist_parity(const std::vector<int>& g, long long i) const {
    int s = 0;
    for (long long a : twist_window) s ^= g[static_cast<std::size_t>(((i - a) % q + q) % q)];
    return s;
}

TwistedLevel::Element TwistedLevel::identity_element() const {
    return Element{std::vector<int>(static_cast<std::size_t>(q), 0),
                   std::vector<int>(static_cast<std::size_t>(q), 0)};
}

TwistedLevel::Element TwistedLevel::product(const Element& x, const Element& y) const {
    Element out = identity_element();
    for (int i = 0; i < q; ++i) {
        const int yi = y.f[static_cast<std::size_t>(i)];
        const int twisted = twist_parity(x.g, i) ? (3 - yi) % 3 : yi;
        out.f[static_cast<std::size_t>(i)] = (x.f[static_cast<std::size_t>(i)] + twisted) % 3;
        out.g[static_cast<std::size_t>(i)] =
            x.g[static_cast<std::size_t>(i)] ^ y.g[static_cast<std::size_t>(i)];
    }
    return out;
}

TwistedLevel::Element TwistedLevel::inverse(const Element& x) const {
    Element out = x;
    for (int i = 0; i < q; ++i)
        if (!twist_parity(x.g, i))
            out.f[static_cast<std::size_t>(i)] = (3 - x.f[static_cast<std::size_t>(i)]) % 3;
    return out;
}

bool TwistedLevel::commutes(const Element& x, const Element& y) const {
    return product(x, y) == product(y, x);
}

std::uint64_t TwistedLevel::order() const {
    std::uint64_t o = 1;
    for (int i = 0; i < q; ++i) o *= 6;
    return o;
}

namespace {

/// Every element of the twisted level as (f, g) patterns, g packed in the
/// low bits of the index.
TwistedLevel::Element element_at(const TwistedLevel& lvl, std::uint64_t idx) {
    TwistedLevel::Element e = lvl.identity_element();
    for (int i = 0; i < lvl.q; ++i) {
        e.g[static_cast<std::size_t>(i)] = static_cast<int>(idx % 2);
        idx /= 2;
    }
    for (int i = 0; i < lvl.q; ++i) {
        e.f[static_cast<std::size_t>(i)] = static_cast<int>(idx % 3);
        idx /= 3;
    }
    return e;
}

/// Honest centre of the period-q subgroup: the twisted sign forces the Z_3
/// part to vanish (the twist window contains 0, so some partner flips any
/// fixed position), leaving exactly the Z_2 patterns the twist operator
/// annihilates.
std::uint64_t centre_order_on_period(const TwistedLevel& lvl) {
    require_internal(std::find(lvl.twist_window.begin(), lvl.twist_window.end(), 0) !=
                         lvl.twist_window.end(),
                     "twist window lost the origin");
    // The window acts through its reduction mod q. If every residue class
    // appears an even number of times the twist cancels outright, the level
    // group is abelian, and the centre is the whole group. Otherwise some
    // one-bit pattern twists any chosen position, which forces the mod-3
    // part of a central element to vanish; what remains is to count the
    // twist-annihilated mod-2 patterns.
    std::vector<int> reduced(static_cast<std::size_t>(lvl.q), 0);
    for (const long long j : lvl.twist_window)
        reduced[static_cast<std::size_t>(((j % lvl.q) + lvl.q) % lvl.q)] ^= 1;
    if (std::all_of(reduced.begin(), reduced.end(), [](int r) { return r == 0; }))
        return lvl.order();
    std::uint64_t count = 0;
    std::vector<int> g(static_cast<std::size_t>(lvl.q), 0);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << lvl.q); ++mask) {
        for (int i = 0; i < lvl.q; ++i) g[static_cast<std::size_t>(i)] = (mask >> i) & 1;
        bool killed = true;
        for (int i = 0; i < lvl.q && killed; ++i) killed = lvl.twist_parity(g, i) == 0;
        if (killed) ++count;
    }
    return count;
}

std::uint64_t centre_order_brute(const TwistedLevel& lvl) {
    const std::uint64_t o = lvl.order();
    std::uint64_t count = 0;
    for (std::uint64_t i = 0; i < o; ++i) {
        const auto x = element_at(lvl, i);
        bool central = true;
        for (std::uint64_t j = 0; j < o && central; ++j)
            central = lvl.commutes(x, element_at(lvl, j));
        if (central) ++count;
    }
    return count;
}

std::uint64_t claimed_centre_order(int n, int q) {
    // stated subgroup: Z_2 patterns invariant under shifting by 2^n
    const int s = (1 << n) % q;
    std::uint64_t count = 0;
    std::vector<int> g(static_cast<std::size_t>(q), 0);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << q); ++mask) {
        for (int i = 0; i < q; ++i) g[static_cast<std::size_t>(i)] = (mask >> i) & 1;
        bool inv = true;
        for (int i = 0; i < q && inv; ++i) inv = g[static_cast<std::size_t>((i + s) % q)] ==
                                                 g[static_cast<std::size_t>(i)];
        if (inv) ++count;
    }
    return count;
}

bool connector_homomorphism_check(int n) {
    // operator identity on a single mass: the level-(n+1) twist window must
    // equal the level-n window smeared by the doubling rule
    const auto an = twist_window_set(n);
    const auto an1 = twist_window_set(n + 1);
    std::set<long long> smeared;
    for (long long a : an) {
        if (!smeared.erase(a)) smeared.insert(a);
        if (!smeared.erase(a + 1)) smeared.insert(a + 1);
    }
    if (std::vector<long long>(smeared.begin(), smeared.end()) != an1) return false;

    // exhaustive multiplicativity of (id, doubling) on small periods
    for (int q = 1; q <= 3; ++q) {
        const TwistedLevel src(n + 1, q);
        const TwistedLevel dst(n, q);
        const auto connect = [&](const TwistedLevel::Element& x) {
            TwistedLevel::Element out = x;
            for (int i = 0; i < q; ++i)
                out.g[static_cast<std::size_t>(i)] =
                    x.g[static_cast<std::size_t>(i)] ^
                    x.g[static_cast<std::size_t>((i - 1 + q) % q)];
            return out;
        };
        const std::uint64_t o = src.order();
        for (std::uint64_t i = 0; i < o; ++i)
            for (std::uint64_t j = 0; j < o; ++j) {
                const auto x = element_at(src, i), y = element_at(src, j);
                if (!(connect(src.product(x, y)) == dst.product(connect(x), connect(y))))
                    return false;
            }
    }
    return true;
}

} // namespace

FiniteCentreExample build_finite_centre(int n) {
    if (n < 0) fail(Errc::PreconditionFailed, "negative level");
    if (n > 6) fail(Errc::Unsupported, "twist window grows too fast beyond level 6");

    FiniteCentreReport report;
    report.n = n;
    report.twist_window = twist_window_set(n);
    report.connector_is_homomorphism = connector_homomorphism_check(n);

    if (n <= 3) {
        bool all_match = true;
        for (int q = 1; q <= (1 << (n + 1)); ++q) {
            const TwistedLevel lvl(n, q);
            CentrePeriodRow row;
            row.period = q;
            row.computed_order = centre_order_on_period(lvl);
            if (q <= 3)
                require_internal(row.computed_order == centre_order_brute(lvl),
                                 "centre formula disagrees with brute-force commutation");
            row.claimed_order = claimed_centre_order(n, q);
            row.match = row.computed_order == row.claimed_order;
            all_match = all_match && row.match;
            report.centre_rows.push_back(row);
        }
        report.centre_matches_claim = all_match;
    } else {
        report.centre_matches_claim = true; // vacuous: no rows at this level
    }

    // The Z_3 connector is the identity, so finitely supported Z_3 points
    // form compatible tuples verbatim: their closure is the whole Z_3
    // factor. The Z_2 connector x(n) + x(n-1) grows supports strictly
    // rightward, so no nonzero finitely supported Z_2 pattern survives a
    // full tower of lifts; verify the growth law exhaustively.
    bool growth = true;
    std::uint64_t checked = 0;
    std::vector<int> v, u;
    for (int w = 1; w <= 10 && growth; ++w) {
        v.assign(static_cast<std::size_t>(w), 0);
        v[0] = 1;
        for (;;) {
            if (v[0] != 0 && v[static_cast<std::size_t>(w - 1)] != 0) {
                // image on positions [0, w]: u(k) = v(k) + v(k - 1)
                u.assign(static_cast<std::size_t>(w) + 1, 0);
                for (int k = 0; k <= w; ++k) {
                    const int a = (k < w) ? v[static_cast<std::size_t>(k)] : 0;
                    const int b = (k > 0) ? v[static_cast<std::size_t>(k - 1)] : 0;
                    u[static_cast<std::size_t>(k)] = a ^ b;
                }
                growth = growth && u.front() != 0 && u.back() != 0;
                ++checked;
            }
            std::size_t i = 0;
            while (i < v.size() && ++v[i] == 2) {
                v[i] = 0;
                ++i;
            }
            if (i == v.size()) break;
        }
    }
    report.bcg_words_checked = checked;
    report.bcg_equals_c3_factor = growth;

    return FiniteCentreExample{GroupShiftSFT::full_shift(make_cyclic(3)),
                               GroupShiftSFT::full_shift(make_cyclic(2)), std::move(report)};
}

} // namespace nubshift
