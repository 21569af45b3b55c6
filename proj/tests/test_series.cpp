#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nubshift/series.hpp"
#include "nubshift/structure.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <set>
#include <vector>

using namespace nubshift;
using nubshift::testing::thrown_code;

namespace {

const GroupPtr c2 = make_cyclic(2);
const GroupPtr c6 = make_cyclic(6);
const GroupPtr s3 = make_symmetric3();
const GroupPtr c2xc2 = direct_product(c2, c2);

GroupShiftSFT sum_rule_graph() {
    std::vector<BlockCode> codes;
    for (Sym y0 = 0; y0 < 2; ++y0)
        for (Sym y1 = 0; y1 < 2; ++y1)
            for (Sym x1 = 0; x1 < 2; ++x1)
                codes.push_back(static_cast<BlockCode>(2 * ((y0 + y1) % 2) + y0) +
                                4 * static_cast<BlockCode>(2 * x1 + y1));
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    return GroupShiftSFT::from_codes(c2xc2, 2, codes);
}

GroupShiftSFT first_factor() { return GroupShiftSFT::from_codes(c2xc2, 1, {0, 2}); }
GroupShiftSFT second_factor() { return GroupShiftSFT::from_codes(c2xc2, 1, {0, 1}); }

GroupShiftSFT second_constant() {
    std::vector<BlockCode> codes;
    for (Sym a = 0; a < 2; ++a)
        for (Sym b = 0; b < 2; ++b)
            for (Sym cbit = 0; cbit < 2; ++cbit)
                codes.push_back(static_cast<BlockCode>(2 * a + cbit) +
                                4 * static_cast<BlockCode>(2 * b + cbit));
    std::sort(codes.begin(), codes.end());
    return GroupShiftSFT::from_codes(c2xc2, 2, codes);
}

std::multiset<int> factor_orders(const std::vector<FactorDescriptor>& fs) {
    std::multiset<int> out;
    for (const FactorDescriptor& f : fs) out.insert(f.simple_alphabet->order());
    return out;
}

} // namespace

TEST_CASE("assembling series from intermediate terms") {
    const GroupShiftSFT full = GroupShiftSFT::full_shift(c2xc2);
    const SubnormalSeries s = make_series(full, {first_factor()});
    CHECK(s.verified);
    REQUIRE(s.chain.size() == 3);
    CHECK(s.chain.front().is_trivial());
    CHECK(point_equal(s.chain.back(), full));
    CHECK(s.normal_in_next == std::vector<bool>{true, true});
    CHECK(s.transitive_factor == std::vector<bool>{true, true});

    // empty middle: the two-term series
    const SubnormalSeries s0 = make_series(full, {});
    CHECK(s0.verified);
    CHECK(s0.chain.size() == 2);

    // a chain that is not ascending fails verification
    const SubnormalSeries bad = make_series(first_factor(), {sum_rule_graph()});
    CHECK_FALSE(bad.verified);
}

TEST_CASE("canonical series of full shifts") {
    const OpennormalResult r = opennormal_series(GroupShiftSFT::full_shift(s3));
    CHECK(r.complete);
    CHECK(r.series.verified);
    CHECK(factor_orders(r.factors) == std::multiset<int>{2, 3});
    // chain runs from trivial to the host
    CHECK(r.series.chain.front().is_trivial());
    CHECK(point_equal(r.series.chain.back(), GroupShiftSFT::full_shift(s3)));

    const OpennormalResult r6 = opennormal_series(GroupShiftSFT::full_shift(c6));
    CHECK(r6.complete);
    CHECK(factor_orders(r6.factors) == std::multiset<int>{2, 3});

    const OpennormalResult r4 = opennormal_series(GroupShiftSFT::full_shift(c2xc2));
    CHECK(r4.complete);
    CHECK(factor_orders(r4.factors) == std::multiset<int>{2, 2});
}

TEST_CASE("canonical series of a proper subshift") {
    const OpennormalResult r = opennormal_series(sum_rule_graph());
    CHECK(r.complete);
    CHECK(factor_orders(r.factors) == std::multiset<int>{2});

    CHECK(thrown_code([] { opennormal_series(second_constant()); }) == Errc::NotTransitive);
}

TEST_CASE("factor count matches depth") {
    for (const GroupShiftSFT& h :
         {GroupShiftSFT::full_shift(s3), GroupShiftSFT::full_shift(c6), sum_rule_graph(),
          GroupShiftSFT::full_shift(c2xc2)}) {
        int product = 1;
        for (const FactorDescriptor& f : composition_factors(h))
            product *= f.simple_alphabet->order();
        CHECK(product == depth(h).depth);
    }
}

TEST_CASE("irreducibility") {
    const IrreducibilityReport prime = is_irreducible(GroupShiftSFT::full_shift(c2));
    CHECK(prime.irreducible);
    REQUIRE(prime.descriptor.has_value());
    CHECK(prime.descriptor->simple_alphabet->order() == 2);

    const IrreducibilityReport graph = is_irreducible(sum_rule_graph());
    CHECK(graph.irreducible);

    const IrreducibilityReport comp = is_irreducible(GroupShiftSFT::full_shift(s3));
    CHECK_FALSE(comp.irreducible);
    CHECK(comp.proper_normal.has_value());
}

TEST_CASE("series equivalence") {
    const GroupShiftSFT full = GroupShiftSFT::full_shift(c2xc2);
    const SubnormalSeries via_first = make_series(full, {first_factor()});
    const SubnormalSeries via_second = make_series(full, {second_factor()});
    const SubnormalSeries via_graph = make_series(full, {sum_rule_graph()});
    CHECK(equivalent_series(via_first, via_first));
    CHECK(equivalent_series(via_first, via_second));
    CHECK(equivalent_series(via_first, via_graph));

    // different hosts over the same alphabet are rejected
    const SubnormalSeries other = make_series(first_factor(), {});
    CHECK(thrown_code([&] { equivalent_series(via_first, other); }) ==
          Errc::PreconditionFailed);
}

TEST_CASE("quotient map search") {
    const GroupShiftSFT full = GroupShiftSFT::full_shift(c2xc2);
    const auto phi1 = find_quotient_hom(full, first_factor());
    REQUIRE(phi1.has_value());
    CHECK(point_equal(kernel_sft(*phi1, full), first_factor()));

    const auto phig = find_quotient_hom(full, sum_rule_graph());
    REQUIRE(phig.has_value());
    CHECK(point_equal(kernel_sft(*phig, full), sum_rule_graph()));
    CHECK(phig->span() >= 2); // no single-symbol rule has this kernel

    const GroupShiftSFT full3 = GroupShiftSFT::full_shift(s3);
    const GroupShiftSFT a3 = GroupShiftSFT::from_codes(s3, 1, {0, 4, 5});
    const auto sgn = find_quotient_hom(full3, a3);
    REQUIRE(sgn.has_value());
    CHECK(point_equal(kernel_sft(*sgn, full3), a3));
    // the rule maps back into the S3 alphabet, so the image is the full shift
    // over a two-element subgroup
    const GroupShiftSFT sgn_image = image_sft(*sgn, full3).sft;
    const std::vector<BlockCode> img_syms = sgn_image.occurring(1);
    REQUIRE(img_syms.size() == 2);
    CHECK(point_equal(sgn_image, GroupShiftSFT::from_codes(s3, 1, img_syms)));
}

TEST_CASE("butterfly quadruples: identical hosts") {
    const GroupShiftSFT full = GroupShiftSFT::full_shift(c2xc2);
    const GroupShiftSFT triv = GroupShiftSFT::trivial(c2xc2);
    const ZassenhausResult z = zassenhaus(full, triv, full, triv);
    CHECK(z.a.is_trivial());
    CHECK(z.c.is_trivial());
    CHECK(point_equal(z.b, full));
    CHECK(point_equal(z.d, full));
    CHECK(z.witness.kernel1_order == 1);
    CHECK(z.witness.kernel2_order == 1);
    CHECK(point_equal(z.witness.apex, full));
    CHECK(point_equal(z.factor1.sft, image_sft(z.witness.map1, full).sft));
}

TEST_CASE("butterfly quadruples: transverse factors") {
    // L2 = sum-rule graph inside H2 = G, against H1 = first factor, L1 = {1}:
    // both butterfly factors present C2^Z and the apex maps have trivial kernel
    const GroupShiftSFT full = GroupShiftSFT::full_shift(c2xc2);
    const GroupShiftSFT triv = GroupShiftSFT::trivial(c2xc2);
    const ZassenhausResult z = zassenhaus(first_factor(), triv, full, sum_rule_graph());
    CHECK(z.a.is_trivial());
    CHECK(point_equal(z.b, first_factor()));
    CHECK(point_equal(z.c, sum_rule_graph()));
    CHECK(point_equal(z.d, full));
    CHECK(point_equal(z.witness.apex, first_factor()));
    CHECK(z.witness.kernel1_order == 1);
    CHECK(z.witness.kernel2_order == 1);
    // both factors are full shifts over two-element subgroups of the alphabet
    for (const GroupShiftSFT& factor : {z.factor1.sft, z.factor2.sft}) {
        const std::vector<BlockCode> syms = factor.occurring(1);
        REQUIRE(syms.size() == 2);
        CHECK(point_equal(factor, GroupShiftSFT::from_codes(c2xc2, 1, syms)));
    }

    // the two crossed trivial-lower instances collapse: H1 meet H2 is trivial,
    // so both factors are trivial
    const ZassenhausResult zc = zassenhaus(first_factor(), triv, sum_rule_graph(), triv);
    CHECK(zc.b.is_trivial());
    CHECK(zc.factor1.sft.is_trivial());
    CHECK(zc.factor2.sft.is_trivial());
}

TEST_CASE("butterfly preconditions") {
    const GroupShiftSFT full = GroupShiftSFT::full_shift(c2xc2);
    const GroupShiftSFT triv = GroupShiftSFT::trivial(c2xc2);
    // lower term not transitive
    CHECK(thrown_code([&] { zassenhaus(full, second_constant(), full, triv); }) ==
          Errc::PreconditionFailed);
    // lower term not contained in the host
    CHECK(thrown_code([&] { zassenhaus(first_factor(), sum_rule_graph(), full, triv); }) ==
          Errc::PreconditionFailed);
}

TEST_CASE("co-commensurability of irreducible factors") {
    const auto factors2 = composition_factors(GroupShiftSFT::full_shift(c2xc2));
    REQUIRE(factors2.size() == 2);
    CHECK(cocommensurable_irreducible(factors2[0], factors2[1]));

    const auto factors6 = composition_factors(GroupShiftSFT::full_shift(c6));
    REQUIRE(factors6.size() == 2);
    // C2 and C3 factors are not co-commensurable
    bool any_pair_equal = cocommensurable_irreducible(factors6[0], factors6[1]);
    CHECK_FALSE(any_pair_equal);
}
