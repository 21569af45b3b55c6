#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nubshift/sliding_hom.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <random>
#include <vector>

using namespace nubshift;
using nubshift::testing::thrown_code;

namespace {

const GroupPtr c2 = make_cyclic(2);
const GroupPtr s3 = make_symmetric3();
const GroupPtr c2xc2 = direct_product(c2, c2);

// two-term difference rule over F2: phi(x)(n) = x(n) + x(n+1)
SlidingBlockHom diff_rule() { return SlidingBlockHom(c2, c2, 2, {0, 1, 1, 0}, 0); }

SlidingBlockHom sign_rule() {
    Sym sgn = -1;
    // the unique surjection S3 -> C2
    for (const FiniteHom& h : all_homomorphisms(s3, make_cyclic(2)))
        if (h.is_surjective()) return lift_symbol_hom(h);
    REQUIRE(sgn == 0); // unreachable
    return diff_rule();
}

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

} // namespace

TEST_CASE("symbol homs lift pointwise") {
    const SlidingBlockHom sgn = sign_rule();
    CHECK(sgn.span() == 1);
    // odd permutations at indices with element order 2
    const EPWord w = EPWord::periodic(s3, {0, 1, 4});
    const EPWord img = sgn.apply(w);
    for (long long n = -4; n <= 4; ++n)
        CHECK(img.at(n) == (s3->element_order(w.at(n)) == 2 ? 1 : 0));
}

TEST_CASE("difference rule on points") {
    const SlidingBlockHom d = diff_rule();
    CHECK(d.apply(EPWord::finitely_supported(c2, 0, {1})) ==
          EPWord::finitely_supported(c2, -1, {1, 1}));
    CHECK(d.apply(EPWord::constant(c2, 1)).is_identity());
    CHECK(d.apply(EPWord::periodic(c2, {1, 0})) == EPWord::constant(c2, 1));
    // homomorphism property on random points
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> len(1, 5);
    std::uniform_int_distribution<Sym> bit(0, 1);
    for (int trial = 0; trial < 80; ++trial) {
        std::vector<Sym> a(static_cast<std::size_t>(len(rng)));
        std::vector<Sym> b(static_cast<std::size_t>(len(rng)));
        for (Sym& x : a) x = bit(rng);
        for (Sym& x : b) x = bit(rng);
        const EPWord xa = EPWord::finitely_supported(c2, -2, a);
        const EPWord xb = EPWord::finitely_supported(c2, 0, b);
        CHECK(d.apply(xa * xb) == d.apply(xa) * d.apply(xb));
        CHECK(d.apply(xa.shift_by(3)) == d.apply(xa).shift_by(3));
    }
}

TEST_CASE("anchors offset the window") {
    const SlidingBlockHom left(c2, c2, 2, {0, 1, 1, 0}, -1);
    // phi(x)(n) = x(n-1) + x(n): image of delta_0 sits on {0, 1}
    const EPWord img = left.apply(EPWord::finitely_supported(c2, 0, {1}));
    CHECK(img == EPWord::finitely_supported(c2, 0, {1, 1}));
}

TEST_CASE("rules must be homomorphisms") {
    // AND is not additive
    CHECK(thrown_code([&] { SlidingBlockHom(c2, c2, 2, {0, 0, 0, 1}, 0); }) ==
          Errc::InvalidDescriptor);
    // table size must be |F|^span
    CHECK(thrown_code([&] { SlidingBlockHom(c2, c2, 2, {0, 1}, 0); }).has_value());
    // oversized spans are refused
    CHECK(thrown_code([&] {
              SlidingBlockHom(s3, s3, 5, std::vector<Sym>(7776, 0), 0);
          }) == Errc::Unsupported);
}

TEST_CASE("block application") {
    const SlidingBlockHom d = diff_rule();
    // input block 1,1,0 on window 3 -> output 0,1 on window 2
    const BlockCode in = encode_block({1, 1, 0}, 2);
    const BlockCode out = d.apply_word(in, 3);
    CHECK(decode_block(out, 2, 2) == std::vector<Sym>{0, 1});
}

TEST_CASE("composition") {
    const SlidingBlockHom d = diff_rule();
    const SlidingBlockHom dd = compose(d, d);
    CHECK(dd.span() == 3);
    // (1+s)^2 = 1+s^2 over F2: table indexed by a + 2b + 4c is a xor c
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<int> len(1, 6);
    std::uniform_int_distribution<Sym> bit(0, 1);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<Sym> w(static_cast<std::size_t>(len(rng)));
        for (Sym& x : w) x = bit(rng);
        const EPWord p = EPWord::finitely_supported(c2, -3, w);
        CHECK(dd.apply(p) == d.apply(d.apply(p)));
        CHECK(dd.apply(p) == p * p.shift_by(2));
    }
}

TEST_CASE("product rules present quotient maps") {
    // psi(s0, s1) = x0 + y0 + y1 with s = enc(x, y): kernel is the sum-rule graph
    const GroupPtr target = c2;
    const FiniteHom f0(c2xc2, target, {0, 1, 1, 0}); // s -> x + y
    const FiniteHom f1(c2xc2, target, {0, 1, 0, 1}); // s -> y
    const SlidingBlockHom psi = product_rule_hom({f0, f1});
    CHECK(psi.span() == 2);
    const GroupShiftSFT full = GroupShiftSFT::full_shift(c2xc2);
    CHECK(point_equal(kernel_sft(psi, full), sum_rule_graph()));
    CHECK(point_equal(image_sft(psi, full).sft, GroupShiftSFT::full_shift(c2)));
}

TEST_CASE("images") {
    const GroupShiftSFT full3 = GroupShiftSFT::full_shift(s3);
    const ImageSft img = image_sft(sign_rule(), full3);
    CHECK(point_equal(img.sft, GroupShiftSFT::full_shift(c2)));
    CHECK(img.certified_width >= 1);

    // image of the constants is the constants
    const ImageSft img_con = image_sft(diff_rule(), GroupShiftSFT::constants(c2));
    CHECK(img_con.sft.is_trivial());
}

TEST_CASE("kernels and preimages") {
    const GroupShiftSFT full3 = GroupShiftSFT::full_shift(s3);
    const GroupShiftSFT a3 = GroupShiftSFT::from_codes(s3, 1, {0, 4, 5});
    const SlidingBlockHom sgn = sign_rule();
    CHECK(point_equal(kernel_sft(sgn, full3), a3));
    CHECK(point_equal(preimage_sft(sgn, GroupShiftSFT::trivial(c2), full3), a3));
    CHECK(point_equal(preimage_sft(sgn, GroupShiftSFT::full_shift(c2), full3), full3));

    const SlidingBlockHom d = diff_rule();
    CHECK(point_equal(kernel_sft(d, GroupShiftSFT::full_shift(c2)),
                      GroupShiftSFT::constants(c2)));
}

TEST_CASE("graphs") {
    const SlidingBlockHom d = diff_rule();
    const GroupShiftSFT graph = graph_subgroup(d, GroupShiftSFT::full_shift(c2));
    // over enc(x, phi-x) ordering: (y, x) with x(n) = y(n) + y(n+1)
    std::vector<BlockCode> codes;
    for (Sym y0 = 0; y0 < 2; ++y0)
        for (Sym y1 = 0; y1 < 2; ++y1)
            for (Sym x1 = 0; x1 < 2; ++x1)
                codes.push_back(static_cast<BlockCode>(2 * y0 + ((y0 + y1) % 2)) +
                                4 * static_cast<BlockCode>(2 * y1 + x1));
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    const GroupShiftSFT expected = GroupShiftSFT::from_codes(c2xc2, 2, codes);
    CHECK(point_equal(graph, expected));
}
