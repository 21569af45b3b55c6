#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nubshift/json_io.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

using namespace nubshift;
using nubshift::testing::thrown_code;

namespace {

const GroupPtr c2 = make_cyclic(2);
const GroupPtr c3 = make_cyclic(3);
const GroupPtr s3 = make_symmetric3();
const GroupPtr c2xc2 = direct_product(c2, c2);

GroupResolver resolver() {
    return [](const std::string& name) -> GroupPtr {
        static const std::map<std::string, GroupPtr> known = {
            {"C2", c2}, {"C3", c3}, {"S3", s3}, {"C2xC2", c2xc2}};
        const auto it = known.find(name);
        if (it == known.end()) fail(Errc::InvalidDescriptor, "unknown group " + name);
        return it->second;
    };
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

TEST_CASE("sft round trips byte-identically") {
    const GroupShiftSFT h = sum_rule_graph();
    const std::string text = sft_to_json(h);
    const GroupShiftSFT back = sft_from_json(text, resolver());
    CHECK(point_equal(h, back));
    CHECK(back.window() == h.window());
    CHECK(sft_to_json(back) == text);

    const std::string full = sft_to_json(GroupShiftSFT::full_shift(s3));
    CHECK(sft_to_json(sft_from_json(full, resolver())) == full);
}

TEST_CASE("sft descriptors are validated") {
    CHECK(thrown_code([] { sft_from_json("{ not json", resolver()); }) ==
          Errc::InvalidDescriptor);
    CHECK(thrown_code([] { sft_from_json("{}", resolver()); }) == Errc::InvalidDescriptor);
    CHECK(thrown_code([] {
              sft_from_json(R"({"alphabet":"C9","window":1,"blocks":[[0]]})", resolver());
          }) == Errc::InvalidDescriptor);
    // block out of range for the alphabet
    CHECK(thrown_code([] {
              sft_from_json(R"({"alphabet":"C2","window":1,"blocks":[[0],[2]]})", resolver());
          }).has_value());
    // blocks not a subgroup
    CHECK(thrown_code([] {
              sft_from_json(R"({"alphabet":"C3","window":1,"blocks":[[0],[1]]})", resolver());
          }) == Errc::InvalidDescriptor);
}

TEST_CASE("hom round trips preserve the anchor") {
    const SlidingBlockHom d(c2, c2, 2, {0, 1, 1, 0}, -1);
    const std::string text = hom_to_json(d);
    const SlidingBlockHom back = hom_from_json(text, resolver());
    CHECK(back.span() == 2);
    CHECK(back.anchor() == -1);
    CHECK(back.table() == d.table());
    CHECK(same_group(back.domain(), c2));
    CHECK(hom_to_json(back) == text);

    // anchor defaults to zero when absent
    const SlidingBlockHom noanchor = hom_from_json(
        R"({"domain":"C2","codomain":"C2","rule":{"span":1,"table":[0,1]}})", resolver());
    CHECK(noanchor.anchor() == 0);

    // non-homomorphic tables are rejected at parse time
    CHECK(thrown_code([] {
              hom_from_json(
                  R"({"domain":"C2","codomain":"C2","rule":{"span":2,"table":[0,0,0,1]}})",
                  resolver());
          }) == Errc::InvalidDescriptor);
}

TEST_CASE("laurent round trips") {
    const FpLaurent q(3, -2, {1, 0, 2});
    const std::string text = laurent_to_json(q);
    CHECK(laurent_from_json(text) == q);
    CHECK(laurent_to_json(laurent_from_json(text)) == text);
    CHECK(laurent_from_json(R"({"p":2,"val":0,"coeffs":[]})").is_zero());
    CHECK(thrown_code([] { laurent_from_json("[]"); }) == Errc::InvalidDescriptor);
}

TEST_CASE("word round trips") {
    const EPWord fs = EPWord::finitely_supported(s3, -2, {3, 0, 4});
    CHECK(ep_word_from_json(ep_word_to_json(fs), resolver()) == fs);

    const EPWord per = EPWord::periodic(c3, {1, 2});
    CHECK(ep_word_from_json(ep_word_to_json(per), resolver()) == per);

    const EPWord mixed(c2, {1, 0}, 0, {1, 1, 1}, {0, 1});
    const std::string text = ep_word_to_json(mixed);
    CHECK(ep_word_from_json(text, resolver()) == mixed);
    CHECK(ep_word_to_json(ep_word_from_json(text, resolver())) == text);

    CHECK(ep_word_from_json(ep_word_to_json(EPWord::identity(c2)), resolver()).is_identity());
}

TEST_CASE("group table text") {
    const std::string text = group_to_table_text(*s3);
    const GroupPtr back = group_from_table_text(text);
    CHECK(same_group(back, s3));
    CHECK(back->name() == s3->name());

    // trailing names line is tolerated
    CHECK(same_group(group_from_table_text(text + "names a b c d e f\n"), s3));

    CHECK(thrown_code([] { group_from_table_text("garbage"); }) == Errc::InvalidDescriptor);
    CHECK(thrown_code([] { group_from_table_text("group X 2\n0 1\n"); }) ==
          Errc::InvalidDescriptor);
}
