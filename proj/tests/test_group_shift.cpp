#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nubshift/group_shift.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <random>
#include <vector>

using namespace nubshift;
using nubshift::testing::thrown_code;

namespace {

const GroupPtr c2 = make_cyclic(2);
const GroupPtr c3 = make_cyclic(3);
const GroupPtr s3 = make_symmetric3();
const GroupPtr c2xc2 = direct_product(c2, c2);

// G = C2^Z x C2^Z with symbols enc(x, y) = 2x + y; the graph of the two-term
// sum rule x(n) = y(n) + y(n+1), presented on window 2.
GroupShiftSFT sum_rule_graph() {
    std::vector<BlockCode> codes;
    for (Sym y0 = 0; y0 < 2; ++y0)
        for (Sym y1 = 0; y1 < 2; ++y1)
            for (Sym x1 = 0; x1 < 2; ++x1) {
                const Sym s0 = static_cast<Sym>(2 * ((y0 + y1) % 2) + y0);
                const Sym s1 = static_cast<Sym>(2 * x1 + y1);
                codes.push_back(static_cast<BlockCode>(s0) + 4 * static_cast<BlockCode>(s1));
            }
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    return GroupShiftSFT::from_codes(c2xc2, 2, codes);
}

// {(x, 0)}: second coordinate identically zero.
GroupShiftSFT first_factor() { return GroupShiftSFT::from_codes(c2xc2, 1, {0, 2}); }

EPWord graph_point(const EPWord& y) {
    // embeds y in the sum-rule graph as (x, y) with x(n) = y(n) + y(n+1)
    REQUIRE(y.is_finitely_supported());
    const auto sup = y.support();
    long long lo = 0, hi = 0;
    if (sup) {
        lo = sup->first - 1;
        hi = sup->second;
    }
    std::vector<Sym> word;
    for (long long n = lo; n <= hi; ++n)
        word.push_back(static_cast<Sym>(2 * ((y.at(n) + y.at(n + 1)) % 2) + y.at(n)));
    return EPWord::finitely_supported(c2xc2, lo, std::move(word));
}

} // namespace

TEST_CASE("block encoding is little endian mixed radix") {
    CHECK(encode_block({1, 0, 2}, 3) == 19);
    CHECK(decode_block(19, 3, 3) == std::vector<Sym>{1, 0, 2});
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> radix(2, 6);
    std::uniform_int_distribution<int> len(1, 7);
    for (int trial = 0; trial < 200; ++trial) {
        const int r = radix(rng);
        std::vector<Sym> w(static_cast<std::size_t>(len(rng)));
        std::uniform_int_distribution<Sym> sym(0, r - 1);
        for (Sym& s : w) s = sym(rng);
        CHECK(decode_block(encode_block(w, r), r, static_cast<int>(w.size())) == w);
    }
}

TEST_CASE("canonical shifts") {
    const GroupShiftSFT full = GroupShiftSFT::full_shift(s3);
    CHECK(full.window() == 1);
    CHECK(full.blocks().size() == 6);
    CHECK_FALSE(full.is_trivial());
    CHECK(full.contains(EPWord::periodic(s3, {1, 4, 2})));

    const GroupShiftSFT con = GroupShiftSFT::constants(s3);
    CHECK(con.window() == 2);
    CHECK(con.contains(EPWord::constant(s3, 3)));
    CHECK_FALSE(con.contains(EPWord::finitely_supported(s3, 0, {3})));
    CHECK(con.finite_order() == 6);

    const GroupShiftSFT triv = GroupShiftSFT::trivial(s3);
    CHECK(triv.is_trivial());
    CHECK(triv.finite_order() == 1);
    CHECK(triv.contains(EPWord::identity(s3)));
    CHECK_FALSE(triv.contains(EPWord::constant(s3, 1)));

    CHECK(thrown_code([&] { full.finite_order(); }) == Errc::NotFinite);
}

TEST_CASE("membership in the sum-rule graph") {
    const GroupShiftSFT h = sum_rule_graph();
    CHECK(h.contains(EPWord::identity(c2xc2)));
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> len(1, 5);
    std::uniform_int_distribution<Sym> bit(0, 1);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<Sym> w(static_cast<std::size_t>(len(rng)));
        for (Sym& s : w) s = bit(rng);
        CHECK(h.contains(graph_point(EPWord::finitely_supported(c2, -2, w))));
    }
    // (x, y) with x = delta_0 and y = 0 violates the sum rule
    CHECK_FALSE(h.contains(EPWord::finitely_supported(c2xc2, 0, {2})));
}

TEST_CASE("occurring blocks of the sum-rule graph") {
    const GroupShiftSFT h = sum_rule_graph();
    CHECK(h.occurring(1).size() == 4);
    CHECK(h.occurring(2).size() == 8);
    // window 3: y0 y1 y2 x2 free, x0 x1 determined
    CHECK(h.occurring(3).size() == 16);
    CHECK(h.occurring(4).size() == 32);
}

TEST_CASE("widening preserves the point set") {
    const GroupShiftSFT full = GroupShiftSFT::full_shift(c2);
    const GroupShiftSFT wide = full.widened(3);
    CHECK(wide.window() == 3);
    CHECK(wide.blocks().size() == 8);
    CHECK(point_equal(full, wide));
    CHECK(thrown_code([&] { full.widened(0); }) == Errc::PreconditionFailed);

    const GroupShiftSFT h = sum_rule_graph();
    CHECK(point_equal(h, h.widened(4)));
}

TEST_CASE("set relations") {
    const GroupShiftSFT full = GroupShiftSFT::full_shift(c2xc2);
    const GroupShiftSFT h1 = first_factor();
    const GroupShiftSFT hphi = sum_rule_graph();
    CHECK(point_subset(h1, full));
    CHECK(point_subset(hphi, full));
    CHECK_FALSE(point_subset(full, hphi));
    CHECK_FALSE(point_subset(h1, hphi));
    CHECK_FALSE(point_equal(h1, hphi));

    // H1 and Hphi meet only in the identity: y = 0 forces x = 0
    const GroupShiftSFT meet = intersect(h1, hphi);
    CHECK(meet.is_trivial());

    // {(x, c) : c constant} meets Hphi in the two points with x = 0
    std::vector<BlockCode> second_constant;
    for (Sym a = 0; a < 2; ++a)
        for (Sym b = 0; b < 2; ++b)
            for (Sym cbit = 0; cbit < 2; ++cbit)
                second_constant.push_back(
                    static_cast<BlockCode>(2 * a + cbit) +
                    4 * static_cast<BlockCode>(2 * b + cbit));
    std::sort(second_constant.begin(), second_constant.end());
    const GroupShiftSFT sc = GroupShiftSFT::from_codes(c2xc2, 2, second_constant);
    CHECK(intersect(sc, hphi).finite_order() == 2);

    // the two factors generate everything
    CHECK(point_equal(product_shift(h1, hphi), full));
    CHECK(point_equal(product_shift(h1, h1), h1));
}

TEST_CASE("normalizers") {
    const GroupShiftSFT full = GroupShiftSFT::full_shift(s3);
    const GroupShiftSFT a3 = GroupShiftSFT::from_codes(s3, 1, {0, 4, 5});
    const GroupShiftSFT flip = GroupShiftSFT::from_codes(s3, 1, {0, 1});
    CHECK(normalizes(a3, full));
    CHECK_FALSE(normalizes(flip, full));
    CHECK(normalizes(flip, flip));
    // abelian hosts normalize everything
    CHECK(normalizes(first_factor(), GroupShiftSFT::full_shift(c2xc2)));
}

TEST_CASE("periodic points") {
    CHECK(periodic_points(GroupShiftSFT::full_shift(c2), 2).size() == 4);
    CHECK(periodic_points(GroupShiftSFT::full_shift(c2), 3).size() == 8);
    // fixed points of the sum-rule graph: y constant, x = 2y = 0
    const auto fixed = periodic_points(sum_rule_graph(), 1);
    CHECK(fixed.size() == 2);
    for (const EPWord& x : fixed) CHECK(x == x.shift_by(1));
}

TEST_CASE("finite enumeration") {
    const auto pts = enumerate_finite(GroupShiftSFT::constants(c2xc2));
    CHECK(pts.size() == 4);
    for (const EPWord& x : pts) CHECK(x == x.shift_by(1));
    CHECK(thrown_code([&] { enumerate_finite(GroupShiftSFT::full_shift(c2)); }) ==
          Errc::NotFinite);
}

TEST_CASE("presentation validation") {
    // {0,1} in C3 is not a subgroup
    CHECK_FALSE(detail::verify_block_subgroup(c3, 1, {0, 1}));
    CHECK(thrown_code([&] { GroupShiftSFT::from_codes(c3, 1, {0, 1}); }) ==
          Errc::InvalidDescriptor);
    CHECK(thrown_code([&] { GroupShiftSFT::from_codes(c3, 1, {0, 3}); }) ==
          Errc::InvalidDescriptor); // code out of range
    CHECK(thrown_code([&] { GroupShiftSFT::from_codes(c3, 0, {0}); }) ==
          Errc::InvalidDescriptor);
    CHECK(detail::verify_block_subgroup(c3, 1, {0, 1, 2}));

    // word-level constructor with an explicit block list
    const GroupShiftSFT h(c2, 2, {{0, 0}, {1, 1}});
    CHECK(h.contains(EPWord::constant(c2, 1)));
    CHECK_FALSE(h.contains(EPWord::finitely_supported(c2, 0, {1})));
    CHECK(thrown_code([&] { GroupShiftSFT(c2, 2, {{0, 0, 0}}); }) == Errc::InvalidDescriptor);
}

TEST_CASE("wide enumerations are capped") {
    const GroupShiftSFT full = GroupShiftSFT::full_shift(s3);
    CHECK(thrown_code([&] { full.occurring(8); }) == Errc::WidthExceeded);
}

TEST_CASE("trimming keeps only bi-extendable blocks") {
    const GroupShiftSFT h = sum_rule_graph();
    const auto& trimmed = h.trimmed();
    CHECK(trimmed.size() == 8);
    // every trimmed block occurs in an actual point
    for (BlockCode b : trimmed) {
        const auto w = decode_block(b, c2xc2->order(), h.window());
        bool found = false;
        for (BlockCode other : h.occurring(2))
            found = found || other == b;
        CHECK(found);
    }
}
