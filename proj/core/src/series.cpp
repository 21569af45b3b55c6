#include "nubshift/series.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace nubshift {

namespace {

struct ReindexedGroup {
    GroupPtr group;
    std::vector<Sym> to_parent;
};

ReindexedGroup group_on_subset(const GroupPtr& f, const std::vector<Sym>& elements,
                               const std::string& name) {
    const std::size_t m = elements.size();
    std::map<Sym, Sym> index;
    for (std::size_t i = 0; i < m; ++i) index[elements[i]] = static_cast<Sym>(i);
    std::vector<std::vector<Sym>> table(m, std::vector<Sym>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            auto it = index.find(f->mul(elements[i], elements[j]));
            if (it == index.end()) fail(Errc::PreconditionFailed, "element list is not product-closed");
            table[i][j] = it->second;
        }
    return {std::make_shared<const FiniteGroup>(name, std::move(table)), elements};
}

struct QuotientWithProjection {
    GroupPtr quotient;
    std::vector<Sym> projection; ///< element -> coset index
};

QuotientWithProjection quotient_with_projection(const GroupPtr& g, const std::vector<Sym>& normal) {
    std::vector<std::vector<Sym>> cosets;
    std::vector<Sym> coset_of(static_cast<std::size_t>(g->order()), -1);
    for (Sym x = 0; x < g->order(); ++x) {
        if (coset_of[static_cast<std::size_t>(x)] >= 0) continue;
        std::vector<Sym> c;
        for (Sym h : normal) c.push_back(g->mul(x, h));
        std::sort(c.begin(), c.end());
        for (Sym y : c) coset_of[static_cast<std::size_t>(y)] = static_cast<Sym>(cosets.size());
        cosets.push_back(std::move(c));
    }
    const std::size_t q = cosets.size();
    std::vector<std::vector<Sym>> t(q, std::vector<Sym>(q));
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j)
            t[i][j] = coset_of[static_cast<std::size_t>(g->mul(cosets[i][0], cosets[j][0]))];
    return {std::make_shared<const FiniteGroup>(g->name() + "/N", std::move(t)), std::move(coset_of)};
}

/// Ascending chain of element lists {identity} = K_0 < ... < K_t = F, each
/// maximal normal in the next (so each finite step is simple).
std::vector<std::vector<Sym>> subnormal_chain(const GroupPtr& f) {
    std::vector<std::vector<Sym>> chain;
    std::vector<Sym> cur(static_cast<std::size_t>(f->order()));
    std::iota(cur.begin(), cur.end(), 0);
    chain.push_back(cur);
    while (cur.size() > 1) {
        auto sub = group_on_subset(f, cur, "step");
        const auto normals = normal_subgroups(sub.group);
        int best_order = -1;
        const SubgroupF* best = nullptr;
        for (const auto& n : normals)
            if (n.order() < sub.group->order() && n.order() > best_order) {
                best = &n;
                best_order = n.order();
            }
        require_internal(best != nullptr, "no proper normal subgroup below the full group");
        std::vector<Sym> mapped;
        for (Sym s : best->elements()) mapped.push_back(sub.to_parent[static_cast<std::size_t>(s)]);
        std::sort(mapped.begin(), mapped.end());
        cur = std::move(mapped);
        chain.push_back(cur);
    }
    std::reverse(chain.begin(), chain.end());
    return chain;
}

GroupShiftSFT window1_sft(const GroupPtr& f, const std::vector<Sym>& elements) {
    std::vector<BlockCode> codes;
    for (Sym s : elements) codes.push_back(static_cast<BlockCode>(s));
    return GroupShiftSFT::from_codes(f, 1, std::move(codes));
}

GroupShiftSFT relabel_sft(const GroupShiftSFT& h, const FiniteHom& iso) {
    if (!same_group(iso.domain(), h.alphabet())) fail(Errc::AlphabetMismatch, "relabeling domain mismatch");
    require_internal(iso.is_injective() && iso.is_surjective(), "relabeling must be an isomorphism");
    const int l = h.window();
    const BlockCode r = static_cast<BlockCode>(h.alphabet()->order());
    std::vector<BlockCode> out;
    out.reserve(h.blocks().size());
    for (BlockCode b : h.blocks()) {
        BlockCode c = b, nb = 0, mult = 1;
        for (int i = 0; i < l; ++i) {
            nb += static_cast<BlockCode>(iso.apply(static_cast<Sym>(c % r))) * mult;
            mult *= r;
            c /= r;
        }
        out.push_back(nb);
    }
    return GroupShiftSFT::from_codes(iso.codomain(), l, std::move(out));
}

/// One round of the canonical construction over a transitive host: the
/// finite group of minimal-width finitely supported points, the sliding
/// product map presenting its closure, and that closure.
struct LocalStep {
    GroupPtr f0;
    std::vector<EPWord> elements;
    int span;
    SlidingBlockHom phi0;
    GroupShiftSFT g1;
};

LocalStep opennormal_step(const GroupShiftSFT& h) {
    const int bound = prodeq_k(h) + h.window();
    const FiniteGroup& g = *h.alphabet();
    for (int s = 1; s <= bound; ++s) {
        auto pts = homoclinic_points_in_range(h, -s, -1);
        if (pts.size() <= 1) continue;

        const std::size_t m = pts.size();
        std::map<std::vector<Sym>, Sym> index;
        for (std::size_t i = 0; i < m; ++i) index[pts[i].window(-s, s)] = static_cast<Sym>(i);
        std::vector<std::vector<Sym>> table(m, std::vector<Sym>(m));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                const EPWord prod = pts[i] * pts[j];
                auto it = index.find(prod.window(-s, s));
                require_internal(it != index.end(), "local product left the support window");
                table[i][j] = it->second;
            }
        GroupPtr f0 = std::make_shared<const FiniteGroup>("local", std::move(table));

        // rule (y_1, ..., y_s) -> y_1(-1) y_2(-2) ... y_s(-s), anchored one
        // step ahead so the product reconstructs the point coordinate-wise
        BlockCode n = 1;
        for (int j = 0; j < s; ++j) n *= m;
        std::vector<Sym> rule(n);
        for (BlockCode c = 0; c < n; ++c) {
            BlockCode x = c;
            Sym acc = g.identity();
            for (int j = 1; j <= s; ++j) {
                const Sym y = static_cast<Sym>(x % m);
                x /= m;
                acc = g.mul(acc, pts[static_cast<std::size_t>(y)].at(-j));
            }
            rule[static_cast<std::size_t>(c)] = acc;
        }
        SlidingBlockHom phi0(f0, h.alphabet(), s, std::move(rule), 1);
        GroupShiftSFT g1 = image_sft(phi0, GroupShiftSFT::full_shift(f0)).sft;
        return LocalStep{std::move(f0), std::move(pts), s, std::move(phi0), std::move(g1)};
    }
    fail(Errc::InternalInconsistency, "no finitely supported points within the product-coverage bound");
}

FactorDescriptor finite_step_factor(const GroupPtr& f0, const std::vector<Sym>& lower,
                                    const std::vector<Sym>& upper) {
    auto ug = group_on_subset(f0, upper, "step");
    std::map<Sym, Sym> to_sub;
    for (std::size_t i = 0; i < ug.to_parent.size(); ++i) to_sub[ug.to_parent[i]] = static_cast<Sym>(i);
    std::vector<Sym> lower_sub;
    for (Sym s : lower) lower_sub.push_back(to_sub.at(s));
    std::sort(lower_sub.begin(), lower_sub.end());

    auto q = quotient_with_projection(ug.group, lower_sub);
    GroupPtr cls = simple_isomorphism_class(q.quotient);
    SlidingBlockHom map = lift_symbol_hom(FiniteHom(ug.group, q.quotient, q.projection));
    KernelReport kr = kernel_structure_check(map);
    const bool direct = lower_sub.size() == 1;
    std::optional<SlidingBlockHom> psi;
    if (direct)
        if (auto pm = canonical_prime_modulus(cls)) psi = psi_equivalence(*pm, FpLaurent::one(*pm));
    return FactorDescriptor{std::move(cls), direct,
                            QuotientWitness{std::move(map), std::move(kr)}, std::move(psi)};
}

FactorDescriptor top_factor_simple(const LocalStep& st) {
    GroupPtr cls = simple_isomorphism_class(st.f0);
    KernelReport kr = kernel_structure_check(st.phi0);
    const bool direct = kr.finite && kr.order == 1;
    std::optional<SlidingBlockHom> psi;
    if (st.f0->is_abelian() && kr.finite) {
        const int p = st.f0->order();
        auto iso = find_isomorphism(st.f0, make_cyclic(p));
        require_internal(iso.has_value(), "no relabeling onto the canonical cyclic group");
        psi = psi_equivalence(p, annihilator(relabel_sft(kr.kernel, *iso)));
    }
    return FactorDescriptor{std::move(cls), direct,
                            QuotientWitness{st.phi0, std::move(kr)}, std::move(psi)};
}

void extend_series(const GroupShiftSFT& cur, int depth_guard,
                   std::vector<GroupShiftSFT>& middle, std::vector<FactorDescriptor>& factors,
                   std::optional<Errc>& stop) {
    if (cur.is_trivial()) return;
    require_internal(depth_guard > 0, "series construction failed to terminate");

    const LocalStep st = opennormal_step(cur);
    const auto chain = subnormal_chain(st.f0);
    const std::size_t t = chain.size() - 1;
    for (std::size_t j = 1; j < t; ++j)
        middle.push_back(image_sft(st.phi0, window1_sft(st.f0, chain[j])).sft);
    for (std::size_t j = 0; j < t; ++j)
        factors.push_back(t == 1 ? top_factor_simple(st)
                                 : finite_step_factor(st.f0, chain[j], chain[j + 1]));

    if (point_equal(st.g1, cur)) return;
    middle.push_back(st.g1);
    const auto phi_q = find_quotient_hom(cur, st.g1);
    if (!phi_q) {
        stop = Errc::UnsupportedQuotient;
        return;
    }
    const GroupShiftSFT img = image_sft(*phi_q, cur).sft;
    std::vector<GroupShiftSFT> sub_middle;
    extend_series(img, depth_guard - 1, sub_middle, factors, stop);
    for (const auto& m : sub_middle) middle.push_back(preimage_sft(*phi_q, m, cur));
}

} // namespace

SubnormalSeries make_series(const GroupShiftSFT& host, std::vector<GroupShiftSFT> middle) {
    std::vector<GroupShiftSFT> chain;
    chain.reserve(middle.size() + 2);
    chain.push_back(GroupShiftSFT::trivial(host.alphabet()));
    for (auto& m : middle) {
        if (!same_group(m.alphabet(), host.alphabet()))
            fail(Errc::AlphabetMismatch, "series term over a different alphabet");
        chain.push_back(std::move(m));
    }
    chain.push_back(host);

    std::vector<bool> normal, transitive;
    bool verified = true;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        const bool sub = point_subset(chain[i], chain[i + 1]);
        const bool nrm = sub && normalizes(chain[i], chain[i + 1]);
        normal.push_back(nrm);
        verified = verified && nrm;
        const bool tf =
            nrm && point_equal(product_shift(nub(chain[i + 1]).nub, chain[i]), chain[i + 1]);
        transitive.push_back(tf);
    }
    return SubnormalSeries{host, std::move(chain), std::move(normal), std::move(transitive),
                           verified};
}

OpennormalResult opennormal_series(const GroupShiftSFT& h) {
    if (!is_topologically_transitive(h))
        fail(Errc::NotTransitive, "the canonical series needs a transitive host");
    std::vector<GroupShiftSFT> middle;
    std::vector<FactorDescriptor> factors;
    std::optional<Errc> stop;
    extend_series(h, 16, middle, factors, stop);
    SubnormalSeries series = make_series(h, std::move(middle));
    return OpennormalResult{std::move(series), std::move(factors), !stop.has_value(), stop};
}

IrreducibilityReport is_irreducible(const GroupShiftSFT& h) {
    if (!is_topologically_transitive(h))
        fail(Errc::NotTransitive, "irreducibility is decided for transitive hosts");
    depth(h); // rejects finite hosts with FiniteGroupShift

    const LocalStep st = opennormal_step(h);
    const bool covers = point_equal(st.g1, h);
    const bool simple = is_simple(st.f0);
    KernelReport kr = kernel_structure_check(st.phi0);
    const bool irr = covers && simple && kr.fs_trivial && kr.finite && kr.central;

    std::optional<GroupShiftSFT> proper;
    if (!covers) {
        proper = st.g1;
    } else if (!simple) {
        // the maximal proper normal subgroup of the local group closes up to
        // an infinite proper normal subgroup of the host
        const auto chain = subnormal_chain(st.f0);
        proper = image_sft(st.phi0, window1_sft(st.f0, chain[chain.size() - 2])).sft;
    }
    std::optional<FactorDescriptor> descriptor;
    if (irr) descriptor = top_factor_simple(st);
    return IrreducibilityReport{irr, st.f0, std::move(proper), std::move(kr),
                                std::move(descriptor)};
}

std::vector<FactorDescriptor> composition_factors(const GroupShiftSFT& h) {
    OpennormalResult res = opennormal_series(h);
    if (!res.complete)
        fail(res.stopped_because.value_or(Errc::UnsupportedQuotient),
             "the canonical series did not reach the host");
    if (!h.is_trivial()) {
        std::uint64_t prod = 1;
        for (const auto& f : res.factors) prod *= static_cast<std::uint64_t>(f.simple_alphabet->order());
        require_internal(prod == static_cast<std::uint64_t>(depth(h).depth),
                         "factor orders do not multiply to the boundary order");
    }
    return std::move(res.factors);
}

bool equivalent_series(const SubnormalSeries& a, const SubnormalSeries& b) {
    if (!point_equal(a.host, b.host))
        fail(Errc::PreconditionFailed, "series over different hosts");
    if (!a.verified || !b.verified)
        fail(Errc::PreconditionFailed, "series must be verified subnormal chains");

    auto classes = [](const SubnormalSeries& s) {
        std::vector<int> orders;
        for (std::size_t i = 0; i + 1 < s.chain.size(); ++i) {
            const auto& lo = s.chain[i];
            const auto& hi = s.chain[i + 1];
            if (point_equal(lo, hi)) continue;
            std::vector<FactorDescriptor> fs;
            if (lo.is_trivial()) {
                fs = composition_factors(hi);
            } else {
                const auto phi = find_quotient_hom(hi, lo);
                if (!phi) fail(Errc::UnsupportedQuotient, "no sliding quotient presents a step");
                fs = composition_factors(image_sft(*phi, hi).sft);
            }
            for (const auto& f : fs) orders.push_back(f.simple_alphabet->order());
        }
        std::sort(orders.begin(), orders.end());
        return orders;
    };
    // simple groups of order <= 60 are determined by their order (prime
    // cyclic, or the order-60 nonabelian group), so multisets of orders
    // decide equivalence
    return classes(a) == classes(b);
}

namespace {

bool kernel_blocks_die(const SlidingBlockHom& phi, const GroupShiftSFT& kernel) {
    const int w = std::max(kernel.window(), phi.span());
    const BlockCode idout = detail::identity_code(*phi.codomain(), w - phi.span() + 1);
    for (BlockCode b : kernel.occurring(w))
        if (phi.apply_word(b, w) != idout) return false;
    return true;
}

} // namespace

std::optional<SlidingBlockHom> find_quotient_hom(const GroupShiftSFT& h,
                                                 const GroupShiftSFT& kernel) {
    if (!same_group(h.alphabet(), kernel.alphabet()))
        fail(Errc::AlphabetMismatch, "kernel over a different alphabet");
    const GroupPtr& f = h.alphabet();
    std::vector<GroupPtr> targets;
    for (const auto& n : normal_subgroups(f))
        if (n.order() < f->order()) targets.push_back(quotient_group(f, n, ""));

    for (int span = 1; span <= 4; ++span) {
        if (detail::pow_u64(static_cast<BlockCode>(f->order()), span) > 4096) break;
        for (const auto& target : targets) {
            const auto homs = all_homomorphisms(f, target);
            const std::size_t hn = homs.size();
            if (hn == 0) continue;
            // images of distinct rule slots must commute pairwise
            std::vector<std::vector<char>> commute(hn, std::vector<char>(hn, 1));
            for (std::size_t i = 0; i < hn; ++i)
                for (std::size_t j = i; j < hn; ++j) {
                    bool ok = true;
                    for (Sym x = 0; x < f->order() && ok; ++x)
                        for (Sym y = 0; y < f->order() && ok; ++y) {
                            const Sym u = homs[i].apply(x), v = homs[j].apply(y);
                            ok = target->mul(u, v) == target->mul(v, u);
                        }
                    commute[i][j] = commute[j][i] = ok ? 1 : 0;
                }

            std::vector<std::size_t> idx(static_cast<std::size_t>(span), 0);
            for (;;) {
                bool compatible = true;
                for (std::size_t i = 0; i < idx.size() && compatible; ++i)
                    for (std::size_t j = i + 1; j < idx.size() && compatible; ++j)
                        compatible = commute[idx[i]][idx[j]] != 0;
                if (compatible) {
                    std::vector<FiniteHom> tuple;
                    tuple.reserve(idx.size());
                    for (std::size_t i : idx) tuple.push_back(homs[i]);
                    SlidingBlockHom cand = product_rule_hom(tuple, 0);
                    if (kernel_blocks_die(cand, kernel) &&
                        point_equal(kernel_sft(cand, h), kernel))
                        return cand;
                }
                std::size_t i = 0;
                while (i < idx.size() && ++idx[i] == hn) {
                    idx[i] = 0;
                    ++i;
                }
                if (i == idx.size()) break;
            }
        }
    }
    return std::nullopt;
}

ZassenhausResult zassenhaus(const GroupShiftSFT& h1, const GroupShiftSFT& l1,
                            const GroupShiftSFT& h2, const GroupShiftSFT& l2) {
    for (const auto* s : {&h1, &l1, &h2, &l2})
        if (!same_group(s->alphabet(), h1.alphabet()))
            fail(Errc::AlphabetMismatch, "butterfly terms over different alphabets");
    const auto check_pair = [](const GroupShiftSFT& host, const GroupShiftSFT& low) {
        if (!point_subset(low, host))
            fail(Errc::PreconditionFailed, "lower term is not contained in its host");
        if (!normalizes(low, host))
            fail(Errc::PreconditionFailed, "lower term is not normal in its host");
        if (!is_topologically_transitive(low))
            fail(Errc::PreconditionFailed, "lower term is not transitive");
    };
    check_pair(h1, l1);
    check_pair(h2, l2);

    GroupShiftSFT apex = nub_meet(h1, h2);
    GroupShiftSFT a = product_shift(l1, nub_meet(h1, l2));
    GroupShiftSFT b = product_shift(l1, apex);
    GroupShiftSFT c = product_shift(nub_meet(l1, h2), l2);
    GroupShiftSFT d = product_shift(apex, l2);

    auto phi1 = find_quotient_hom(b, a);
    auto phi2 = find_quotient_hom(d, c);
    if (!phi1 || !phi2)
        fail(Errc::UnsupportedQuotient, "no sliding quotient presents a butterfly factor");
    ImageSft factor1 = image_sft(*phi1, b);
    ImageSft factor2 = image_sft(*phi2, d);

    const auto finite_kernel = [&](const SlidingBlockHom& phi) {
        try {
            return kernel_sft(phi, apex).finite_order();
        } catch (const Error& e) {
            if (e.code() == Errc::NotFinite)
                fail(Errc::InternalInconsistency, "apex kernel of a butterfly factor is infinite");
            throw;
        }
    };
    const std::uint64_t k1 = finite_kernel(*phi1);
    const std::uint64_t k2 = finite_kernel(*phi2);
    require_internal(point_equal(image_sft(*phi1, apex).sft, factor1.sft),
                     "apex does not cover the first butterfly factor");
    require_internal(point_equal(image_sft(*phi2, apex).sft, factor2.sft),
                     "apex does not cover the second butterfly factor");

    CoCommWitness witness{apex, *phi1, *phi2, k1, k2};
    return ZassenhausResult{std::move(a), std::move(b), std::move(c), std::move(d),
                            std::move(factor1), std::move(factor2), std::move(witness)};
}

bool cocommensurable_irreducible(const FactorDescriptor& a, const FactorDescriptor& b) {
    const auto check = [](const FactorDescriptor& f) {
        if (!f.simple_alphabet) fail(Errc::PreconditionFailed, "factor without an alphabet");
        try {
            if (!is_simple(f.simple_alphabet))
                fail(Errc::PreconditionFailed, "factor alphabet is not simple");
        } catch (const Error& e) {
            if (e.code() == Errc::TrivialGroup)
                fail(Errc::PreconditionFailed, "factor alphabet is trivial");
            throw;
        }
    };
    check(a);
    check(b);
    if (a.simple_alphabet->order() != b.simple_alphabet->order()) return false;
    if (a.simple_alphabet->order() <= kMaxIsomorphismOrder)
        return isomorphic(a.simple_alphabet, b.simple_alphabet);
    // equal-order simple groups of order <= 60 are isomorphic
    return true;
}

} // namespace nubshift
