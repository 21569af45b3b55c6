#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nubshift/abelian.hpp"
#include "nubshift/structure.hpp"
#include "test_support.hpp"

#include <set>
#include <vector>

using namespace nubshift;
using nubshift::testing::thrown_code;

namespace {

const GroupPtr c2 = make_cyclic(2);
const GroupPtr c3 = make_cyclic(3);

// q * e = 0 as a two-sided recurrence, checked directly on a window
bool satisfies_recurrence(const EPWord& e, int p, const FpLaurent& q) {
    const auto& c = q.coeffs();
    for (long long n = -6; n <= 6; ++n) {
        int acc = 0;
        for (std::size_t i = 0; i < c.size(); ++i)
            acc = (acc + c[i] * e.at(n + static_cast<long long>(i))) % p;
        if (acc != 0) return false;
    }
    return true;
}

} // namespace

TEST_CASE("canonical prime moduli") {
    CHECK(canonical_prime_modulus(c2) == 2);
    CHECK(canonical_prime_modulus(c3) == 3);
    CHECK(canonical_prime_modulus(make_cyclic(5)) == 5);
    CHECK_FALSE(canonical_prime_modulus(make_cyclic(6)).has_value());
    CHECK_FALSE(canonical_prime_modulus(make_symmetric3()).has_value());
    CHECK_FALSE(canonical_prime_modulus(direct_product(c2, c2)).has_value());
}

TEST_CASE("annihilators of the canonical shifts") {
    CHECK(annihilator(GroupShiftSFT::full_shift(c3)).is_zero());
    CHECK(annihilator(GroupShiftSFT::trivial(c3)).is_unit());
    // constants are killed by x - 1
    CHECK(annihilator(GroupShiftSFT::constants(c2)) == FpLaurent(2, 0, {1, 1}));
    CHECK(annihilator(GroupShiftSFT::constants(c3)) == FpLaurent(3, 0, {2, 1}));
    CHECK(thrown_code([] { annihilator(GroupShiftSFT::full_shift(make_symmetric3())); }) ==
          Errc::NotLinear);
}

TEST_CASE("annihilator and kernel shift are inverse presentations") {
    const std::vector<std::pair<int, FpLaurent>> cases = {
        {2, FpLaurent(2, 0, {1, 1})},
        {2, FpLaurent(2, 0, {1, 1, 1})},
        {2, FpLaurent(2, 0, {1, 0, 1, 1})},
        {3, FpLaurent(3, 0, {2, 1})},
        {3, FpLaurent(3, 0, {1, 0, 1})},
        {5, FpLaurent(5, 0, {4, 1})},
    };
    for (const auto& [p, q] : cases) {
        const GroupShiftSFT h = kernel_shift(p, q);
        CHECK(annihilator(h) == q);
    }
    CHECK(point_equal(kernel_shift(2, FpLaurent::zero(2)), GroupShiftSFT::full_shift(c2)));
    CHECK(kernel_shift(2, FpLaurent::one(2)).is_trivial());
    CHECK(point_equal(kernel_shift(2, FpLaurent(2, 0, {1, 1})), GroupShiftSFT::constants(c2)));
    CHECK(thrown_code([] { kernel_shift(4, FpLaurent::one(2)); }) == Errc::PreconditionFailed);
    CHECK(thrown_code([] { kernel_shift(3, FpLaurent::one(2)); }) == Errc::FieldMismatch);
}

TEST_CASE("recurrence solutions") {
    // x - 1 over F3: the three constants, period 1
    const RecurrenceSolutions con = solve_recurrence(3, FpLaurent(3, 0, {2, 1}));
    CHECK(con.elements.size() == 3);
    CHECK(con.period == 1);
    CHECK(con.group->order() == 3);

    // x^2 + x + 1 over F2: four solutions of period 3 (Fibonacci mod 2)
    const FpLaurent fib(2, 0, {1, 1, 1});
    const RecurrenceSolutions f = solve_recurrence(2, fib);
    CHECK(f.elements.size() == 4);
    CHECK(f.period == 3);
    CHECK(f.group->order() == 4);
    std::set<std::vector<Sym>> distinct;
    for (const EPWord& e : f.elements) {
        CHECK(satisfies_recurrence(e, 2, fib));
        CHECK(e == e.shift_by(3));
        distinct.insert(e.window(0, 3));
    }
    CHECK(distinct.size() == 4);

    // degree-3 recurrence over F3 has 27 solutions
    const FpLaurent cubic(3, 0, {1, 0, 0, 1});
    CHECK(solve_recurrence(3, cubic).elements.size() == 27);

    CHECK(thrown_code([] { solve_recurrence(2, FpLaurent::zero(2)); }) == Errc::NotFinite);
    CHECK(thrown_code([] { solve_recurrence(2, FpLaurent::one(2)); }) == Errc::TrivialKernel);
    CHECK(thrown_code([] { solve_recurrence(2, FpLaurent::monomial(2, 3)); }) ==
          Errc::TrivialKernel);
}

TEST_CASE("solution counts match the kernel shift order") {
    // |solutions| = p^deg q equals the number of points of the kernel shift
    for (const FpLaurent& q : {FpLaurent(2, 0, {1, 1}), FpLaurent(2, 0, {1, 1, 1}),
                               FpLaurent(2, 0, {1, 1, 0, 1})}) {
        const auto sols = solve_recurrence(2, q);
        CHECK(sols.elements.size() == kernel_shift(2, q).finite_order());
        for (const EPWord& e : sols.elements) CHECK(kernel_shift(2, q).contains(e));
    }
}

TEST_CASE("classification of stable invariant subgroups") {
    CHECK(classify_invariant(GroupShiftSFT::full_shift(c2)) == InvariantCase::Full);
    CHECK(classify_invariant(GroupShiftSFT::trivial(c2)) == InvariantCase::Trivial);
    CHECK(classify_invariant(GroupShiftSFT::constants(c2)) == InvariantCase::FiniteRecurrence);
    CHECK(classify_invariant(kernel_shift(2, FpLaurent(2, 0, {1, 1, 1}))) ==
          InvariantCase::FiniteRecurrence);
}

TEST_CASE("classification of symbolic descriptors") {
    using D = InvariantSubgroupDescriptor;
    CHECK(classify_invariant(D::full(2)) == InvariantCase::Full);
    CHECK(classify_invariant(D::trivial(3)) == InvariantCase::Trivial);
    CHECK(classify_invariant(D::finite_recurrence(FpLaurent(2, 0, {1, 1}))) ==
          InvariantCase::FiniteRecurrence);

    // merely invariant cases are rejected in stable mode, accepted otherwise
    const D tail = D::right_tail_trivial(2, 5);
    CHECK(thrown_code([&] { classify_invariant(tail); }) == Errc::InvalidDescriptor);
    CHECK(classify_invariant(tail, ClassifyMode::Invariant) == InvariantCase::RightTailTrivial);
    const D ev = D::eventual_recurrence(FpLaurent(2, 0, {1, 1}), 0);
    CHECK(classify_invariant(ev, ClassifyMode::Invariant) == InvariantCase::EventualRecurrence);

    // stability of the five shapes
    CHECK(descriptor_shift_stable(D::full(2)));
    CHECK(descriptor_shift_stable(D::trivial(2)));
    CHECK(descriptor_shift_stable(D::finite_recurrence(FpLaurent(2, 0, {1, 1}))));
    CHECK_FALSE(descriptor_shift_stable(tail));
    CHECK_FALSE(descriptor_shift_stable(ev));
    for (const D& d : {D::full(2), D::trivial(2), tail, ev})
        CHECK(descriptor_shift_invariant(d));

    // shifting moves the cutoff
    CHECK(shift_descriptor(tail).n != tail.n);
    CHECK(shift_descriptor(D::full(2)).tag == InvariantCase::Full);
}

TEST_CASE("kernel evidence for sliding rules") {
    // difference rule: kernel is the constants, finite and central
    const SlidingBlockHom d(c2, c2, 2, {0, 1, 1, 0}, 0);
    const KernelReport r = kernel_structure_check(d);
    CHECK(r.fs_trivial);
    CHECK(r.finite);
    CHECK(r.order == 2);
    CHECK(r.central);
    CHECK(point_equal(r.kernel, GroupShiftSFT::constants(c2)));

    // identity rule: trivial kernel
    const KernelReport rid = kernel_structure_check(SlidingBlockHom(c2, c2, 1, {0, 1}, 0));
    CHECK(rid.finite);
    CHECK(rid.order == 1);

    // sign rule on S3: kernel is the rotation shift, infinite
    const GroupPtr s3 = make_symmetric3();
    for (const FiniteHom& h : all_homomorphisms(s3, c2))
        if (h.is_surjective()) {
            const KernelReport rs = kernel_structure_check(lift_symbol_hom(h));
            CHECK_FALSE(rs.fs_trivial);
            CHECK_FALSE(rs.finite);
        }
}

TEST_CASE("recurrence re-presentation rule") {
    const FpLaurent q(2, 0, {1, 1, 1});
    const SlidingBlockHom psi = psi_equivalence(2, q);
    CHECK(psi.span() == 3);
    CHECK(point_equal(kernel_sft(psi, GroupShiftSFT::full_shift(c2)), kernel_shift(2, q)));
    // the rule evaluates q at the shift
    CHECK(psi.apply(EPWord::finitely_supported(c2, 0, {1})) ==
          EPWord::finitely_supported(c2, -2, {1, 1, 1}));
    CHECK(thrown_code([] { psi_equivalence(2, FpLaurent::zero(2)); }) ==
          Errc::PreconditionFailed);
}
