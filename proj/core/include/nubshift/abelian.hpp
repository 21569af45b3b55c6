#pragma once

#include "nubshift/laurent.hpp"
#include "nubshift/sliding_hom.hpp"
#include "nubshift/structure.hpp"

#include <optional>

namespace nubshift {

/// The modulus p when the alphabet is the canonical cyclic group of prime
/// order (table a * b = (a + b) mod p with 0 the identity); empty otherwise.
std::optional<int> canonical_prime_modulus(const GroupPtr& g);

/// Generator of the annihilator ideal of a group shift over the canonical
/// prime-cyclic alphabet: the monic valuation-0 gcd of the dual code of the
/// trimmed occurring blocks. The host equals the solution set of the result;
/// zero encodes the full shift, one the trivial shift.
FpLaurent annihilator(const GroupShiftSFT& h);

/// Solution shift {x : sum_j q_j x(n + j) = 0 for all n} as an SFT over the
/// canonical prime-cyclic alphabet. q = 0 gives the full shift, units give
/// the trivial shift.
GroupShiftSFT kernel_shift(int p, const FpLaurent& q);

/// The finite solution group of a recurrence q with 0 < deg q: all solutions
/// are periodic with period dividing the multiplicative order of x mod q.
struct RecurrenceSolutions {
    GroupPtr group;               ///< abstract group on the solution list
    std::vector<EPWord> elements; ///< element i of the group, as a point
    long long period;             ///< common period (order of x mod q)
};
RecurrenceSolutions solve_recurrence(int p, const FpLaurent& q);

/// Classification of the closed shift-invariant subgroups of the full shift
/// over a prime-cyclic alphabet.
enum class InvariantCase {
    Full = 1,               ///< the whole shift
    Trivial = 2,            ///< identity only
    RightTailTrivial = 3,   ///< zero from some coordinate onward
    FiniteRecurrence = 4,   ///< two-sided solutions of one recurrence
    EventualRecurrence = 5, ///< recurrence holding from some coordinate onward
};

/// Symbolic description of one subgroup in the classification above. The
/// recurrence q is used by cases iv and v, the cutoff n by cases iii and v.
struct InvariantSubgroupDescriptor {
    InvariantCase tag = InvariantCase::Full;
    int p = 2;
    FpLaurent q;
    long long n = 0;

    static InvariantSubgroupDescriptor full(int p);
    static InvariantSubgroupDescriptor trivial(int p);
    static InvariantSubgroupDescriptor right_tail_trivial(int p, long long n);
    static InvariantSubgroupDescriptor finite_recurrence(FpLaurent q);
    static InvariantSubgroupDescriptor eventual_recurrence(FpLaurent q, long long n);
};

/// Whether classification treats the subgroup as shift-stable (equal to its
/// shift) or merely shift-invariant (contained in its shift).
enum class ClassifyMode { Stable, Invariant };

/// Descriptor of the shift image of the described subgroup.
InvariantSubgroupDescriptor shift_descriptor(const InvariantSubgroupDescriptor& d);
bool descriptor_shift_stable(const InvariantSubgroupDescriptor& d);
bool descriptor_shift_invariant(const InvariantSubgroupDescriptor& d);

/// Case of a presented subgroup shift (always shift-stable, so only cases
/// i, ii and iv can appear).
InvariantCase classify_invariant(const GroupShiftSFT& h, ClassifyMode mode = ClassifyMode::Stable);
/// Case of a symbolic descriptor; validates internal consistency and, in
/// Stable mode, rejects the merely invariant cases iii and v.
InvariantCase classify_invariant(const InvariantSubgroupDescriptor& d,
                                 ClassifyMode mode = ClassifyMode::Stable);

/// Evidence about the kernel of a sliding-block homomorphism out of a full
/// shift: if all homoclinic points of the kernel up to twice the rule span
/// are trivial, the kernel is finite, and every finite shift-stable normal
/// subgroup of a transitive host is central.
struct KernelReport {
    GroupShiftSFT kernel;
    bool fs_trivial = false; ///< no nonzero finitely supported kernel points
    int fs_width = 0;        ///< width certified by the scan
    bool finite = false;
    std::uint64_t order = 0; ///< kernel order when finite
    bool central = false;    ///< central in the domain full shift
};
KernelReport kernel_structure_check(const SlidingBlockHom& phi);

/// Sliding-block re-presentation attached to a recurrence q over F_p:
/// psi(h)(r) = sum_j q_j h(r + j), with kernel exactly the solution group of
/// q. q = 1 yields the identity rule; surjectivity onto the full shift is
/// verified during construction.
SlidingBlockHom psi_equivalence(int p, const FpLaurent& q);

} // namespace nubshift
