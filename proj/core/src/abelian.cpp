#include "nubshift/abelian.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace nubshift {

namespace {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

int mod_pow(int base, int e, int p) {
    long long acc = 1, b = base % p;
    for (; e > 0; e >>= 1, b = b * b % p)
        if (e & 1) acc = acc * b % p;
    return static_cast<int>(acc);
}

int mod_inv(int a, int p) { return mod_pow(a, p - 2, p); }

} // namespace

std::optional<int> canonical_prime_modulus(const GroupPtr& g) {
    const int n = g->order();
    if (!is_prime(n)) return std::nullopt;
    for (Sym a = 0; a < n; ++a)
        for (Sym b = 0; b < n; ++b)
            if (g->mul(a, b) != (a + b) % n) return std::nullopt;
    return n;
}

FpLaurent annihilator(const GroupShiftSFT& h) {
    const auto pm = canonical_prime_modulus(h.alphabet());
    if (!pm) fail(Errc::NotLinear, "alphabet is not the canonical prime cyclic group");
    const int p = *pm;
    const int l = h.window();
    const auto& occ = h.trimmed();

    // reduced row basis of the span of the occurring blocks
    std::vector<std::vector<int>> basis; // rows in rref
    std::vector<int> pivot;              // pivot column of each row
    std::vector<int> row(static_cast<std::size_t>(l));
    for (BlockCode b : occ) {
        BlockCode c = b;
        for (int i = 0; i < l; ++i) {
            row[static_cast<std::size_t>(i)] = static_cast<int>(c % static_cast<BlockCode>(p));
            c /= static_cast<BlockCode>(p);
        }
        for (std::size_t r = 0; r < basis.size(); ++r) {
            const int f = row[static_cast<std::size_t>(pivot[r])];
            if (f == 0) continue;
            for (int i = 0; i < l; ++i)
                row[static_cast<std::size_t>(i)] =
                    (row[static_cast<std::size_t>(i)] + (p - f) * basis[r][static_cast<std::size_t>(i)]) % p;
        }
        int pc = -1;
        for (int i = 0; i < l && pc < 0; ++i)
            if (row[static_cast<std::size_t>(i)] != 0) pc = i;
        if (pc < 0) continue;
        const int inv = mod_inv(row[static_cast<std::size_t>(pc)], p);
        for (int i = 0; i < l; ++i) row[static_cast<std::size_t>(i)] = row[static_cast<std::size_t>(i)] * inv % p;
        for (std::size_t r = 0; r < basis.size(); ++r) {
            const int f = basis[r][static_cast<std::size_t>(pc)];
            if (f == 0) continue;
            for (int i = 0; i < l; ++i)
                basis[r][static_cast<std::size_t>(i)] =
                    (basis[r][static_cast<std::size_t>(i)] + (p - f) * row[static_cast<std::size_t>(i)]) % p;
        }
        basis.push_back(row);
        pivot.push_back(pc);
    }

    // nullspace basis of the block span = dual parity checks of the shift
    std::vector<char> is_pivot(static_cast<std::size_t>(l), 0);
    for (int pc : pivot) is_pivot[static_cast<std::size_t>(pc)] = 1;
    FpLaurent g = FpLaurent::zero(p);
    for (int j = 0; j < l; ++j) {
        if (is_pivot[static_cast<std::size_t>(j)]) continue;
        std::vector<int> v(static_cast<std::size_t>(l), 0);
        v[static_cast<std::size_t>(j)] = 1;
        for (std::size_t r = 0; r < basis.size(); ++r)
            v[static_cast<std::size_t>(pivot[r])] = (p - basis[r][static_cast<std::size_t>(j)]) % p;
        g = laurent_gcd(g, FpLaurent(p, 0, std::move(v)));
    }
    return g;
}

GroupShiftSFT kernel_shift(int p, const FpLaurent& q) {
    if (!is_prime(p)) fail(Errc::PreconditionFailed, "modulus must be prime");
    if (q.p() != p) fail(Errc::FieldMismatch, "recurrence modulus differs");
    const GroupPtr g = make_cyclic(p);
    if (q.is_zero()) return GroupShiftSFT::full_shift(g);
    const std::vector<int>& c = q.coeffs();
    const int l = static_cast<int>(c.size());
    if (l == 1) return GroupShiftSFT::trivial(g);

    std::uint64_t total = 1;
    for (int i = 0; i < l; ++i) {
        total *= static_cast<std::uint64_t>(p);
        if (total > kMaxBlockEnumeration) fail(Errc::WidthExceeded, "recurrence window too wide");
    }
    std::vector<BlockCode> blocks;
    for (std::uint64_t w = 0; w < total; ++w) {
        std::uint64_t x = w;
        int acc = 0;
        for (int i = 0; i < l; ++i) {
            acc = (acc + c[static_cast<std::size_t>(i)] * static_cast<int>(x % static_cast<std::uint64_t>(p))) % p;
            x /= static_cast<std::uint64_t>(p);
        }
        if (acc == 0) blocks.push_back(w);
    }
    return GroupShiftSFT::from_codes(g, l, std::move(blocks));
}

namespace {

// The abstract solution group of any recurrence of degree d over F_p is
// F_p^d under seed addition, independent of the recurrence itself.
GroupPtr seed_group(int p, int d) {
    static std::map<std::pair<int, int>, GroupPtr> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({p, d});
    if (it != cache.end()) return it->second;

    std::uint64_t n = 1;
    for (int i = 0; i < d; ++i) n *= static_cast<std::uint64_t>(p);
    std::vector<std::vector<Sym>> table(n, std::vector<Sym>(n));
    for (std::uint64_t a = 0; a < n; ++a)
        for (std::uint64_t b = 0; b < n; ++b) {
            std::uint64_t x = a, y = b, out = 0, mult = 1;
            for (int i = 0; i < d; ++i) {
                const std::uint64_t s = (x % p + y % p) % static_cast<std::uint64_t>(p);
                out += s * mult;
                mult *= static_cast<std::uint64_t>(p);
                x /= static_cast<std::uint64_t>(p);
                y /= static_cast<std::uint64_t>(p);
            }
            table[a][b] = static_cast<Sym>(out);
        }
    GroupPtr g = std::make_shared<const FiniteGroup>(
        "C" + std::to_string(p) + "^" + std::to_string(d), std::move(table));
    cache[{p, d}] = g;
    return g;
}

} // namespace

RecurrenceSolutions solve_recurrence(int p, const FpLaurent& q) {
    if (!is_prime(p)) fail(Errc::PreconditionFailed, "modulus must be prime");
    if (q.p() != p) fail(Errc::FieldMismatch, "recurrence modulus differs");
    if (q.is_zero()) fail(Errc::NotFinite, "the zero recurrence admits the whole shift");
    const FpLaurent q0(p, 0, q.coeffs()); // units x^v do not change solutions
    if (q0.is_unit()) fail(Errc::TrivialKernel, "unit recurrence admits only the identity");

    const int d = static_cast<int>(q0.degree());
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) {
        count *= static_cast<std::uint64_t>(p);
        if (count > kMaxBlockEnumeration) fail(Errc::WidthExceeded, "solution group too large");
    }
    const long long t = multiplicative_order_of_x(q0);
    const std::vector<int>& c = q0.coeffs();
    const int lead_inv = mod_inv(c[static_cast<std::size_t>(d)], p);
    const GroupPtr alphabet = make_cyclic(p);

    std::vector<EPWord> elements;
    elements.reserve(static_cast<std::size_t>(count));
    std::vector<int> h(static_cast<std::size_t>(t + d));
    for (std::uint64_t seed = 0; seed < count; ++seed) {
        std::uint64_t x = seed;
        for (int i = 0; i < d; ++i) {
            h[static_cast<std::size_t>(i)] = static_cast<int>(x % static_cast<std::uint64_t>(p));
            x /= static_cast<std::uint64_t>(p);
        }
        for (long long n = 0; n + d < t + d; ++n) {
            int acc = 0;
            for (int j = 0; j < d; ++j) acc = (acc + c[static_cast<std::size_t>(j)] * h[static_cast<std::size_t>(n + j)]) % p;
            h[static_cast<std::size_t>(n + d)] = (p - acc) % p * lead_inv % p;
        }
        for (int i = 0; i < d; ++i)
            require_internal(h[static_cast<std::size_t>(t + i)] == h[static_cast<std::size_t>(i)],
                             "solution does not close up at the multiplicative order");
        std::vector<Sym> pat(h.begin(), h.begin() + t);
        elements.push_back(EPWord::periodic(alphabet, std::move(pat)));
    }
    return RecurrenceSolutions{seed_group(p, d), std::move(elements), t};
}

InvariantSubgroupDescriptor InvariantSubgroupDescriptor::full(int p) {
    return {InvariantCase::Full, p, FpLaurent::zero(p), 0};
}
InvariantSubgroupDescriptor InvariantSubgroupDescriptor::trivial(int p) {
    return {InvariantCase::Trivial, p, FpLaurent::zero(p), 0};
}
InvariantSubgroupDescriptor InvariantSubgroupDescriptor::right_tail_trivial(int p, long long n) {
    return {InvariantCase::RightTailTrivial, p, FpLaurent::zero(p), n};
}
InvariantSubgroupDescriptor InvariantSubgroupDescriptor::finite_recurrence(FpLaurent q) {
    const int p = q.p();
    return {InvariantCase::FiniteRecurrence, p, std::move(q), 0};
}
InvariantSubgroupDescriptor InvariantSubgroupDescriptor::eventual_recurrence(FpLaurent q, long long n) {
    const int p = q.p();
    return {InvariantCase::EventualRecurrence, p, std::move(q), n};
}

namespace {

void validate_descriptor(const InvariantSubgroupDescriptor& d) {
    if (!is_prime(d.p)) fail(Errc::InvalidDescriptor, "modulus must be prime");
    const bool uses_q = d.tag == InvariantCase::FiniteRecurrence || d.tag == InvariantCase::EventualRecurrence;
    if (uses_q) {
        if (d.q.p() != d.p) fail(Errc::InvalidDescriptor, "recurrence modulus differs");
        if (d.q.is_zero()) fail(Errc::InvalidDescriptor, "recurrence case needs a nonzero recurrence");
        if (d.q.is_unit()) fail(Errc::InvalidDescriptor, "unit recurrence describes the trivial case");
    } else if (!d.q.is_zero()) {
        fail(Errc::InvalidDescriptor, "recurrence given for a case that takes none");
    }
    const bool uses_n = d.tag == InvariantCase::RightTailTrivial || d.tag == InvariantCase::EventualRecurrence;
    if (!uses_n && d.n != 0) fail(Errc::InvalidDescriptor, "cutoff given for a case that takes none");
}

bool descriptor_equal(const InvariantSubgroupDescriptor& a, const InvariantSubgroupDescriptor& b) {
    return a.tag == b.tag && a.p == b.p && a.q == b.q && a.n == b.n;
}

} // namespace

InvariantSubgroupDescriptor shift_descriptor(const InvariantSubgroupDescriptor& d) {
    InvariantSubgroupDescriptor out = d;
    if (d.tag == InvariantCase::RightTailTrivial || d.tag == InvariantCase::EventualRecurrence) out.n = d.n - 1;
    return out;
}

bool descriptor_shift_stable(const InvariantSubgroupDescriptor& d) {
    return descriptor_equal(shift_descriptor(d), d);
}

bool descriptor_shift_invariant(const InvariantSubgroupDescriptor& d) {
    // The shifted subgroup lowers the cutoff by one, which only shrinks the
    // set; every case in the classification is shift-invariant.
    const InvariantSubgroupDescriptor s = shift_descriptor(d);
    return s.tag == d.tag && s.p == d.p && s.q == d.q && s.n <= d.n;
}

InvariantCase classify_invariant(const GroupShiftSFT& h, ClassifyMode) {
    const FpLaurent q = annihilator(h);
    if (q.is_zero()) return InvariantCase::Full;
    if (q.is_unit()) return InvariantCase::Trivial;
    return InvariantCase::FiniteRecurrence;
}

InvariantCase classify_invariant(const InvariantSubgroupDescriptor& d, ClassifyMode mode) {
    validate_descriptor(d);
    if (mode == ClassifyMode::Stable && !descriptor_shift_stable(d))
        fail(Errc::InvalidDescriptor, "described subgroup is shift-invariant but not shift-stable");
    return d.tag;
}

KernelReport kernel_structure_check(const SlidingBlockHom& phi) {
    const GroupShiftSFT full = GroupShiftSFT::full_shift(phi.domain());
    GroupShiftSFT ker = kernel_sft(phi, full);
    const int width = 2 * phi.span();
    const bool fs_trivial = homoclinic_points(ker, width).size() == 1;
    bool finite = false;
    std::uint64_t order = 0;
    bool central = false;
    if (fs_trivial) {
        try {
            order = ker.finite_order();
            finite = true;
        } catch (const Error& e) {
            if (e.code() != Errc::NotFinite) throw;
        }
        if (finite) central = central_check_finite_stable(enumerate_finite(ker), full);
    }
    return KernelReport{std::move(ker), fs_trivial, width, finite, order, central};
}

SlidingBlockHom psi_equivalence(int p, const FpLaurent& q) {
    if (!is_prime(p)) fail(Errc::PreconditionFailed, "modulus must be prime");
    if (q.p() != p) fail(Errc::FieldMismatch, "recurrence modulus differs");
    if (q.is_zero()) fail(Errc::PreconditionFailed, "zero recurrence has no re-presentation");
    const FpLaurent q0(p, 0, q.coeffs());
    const std::vector<int>& c = q0.coeffs();
    const int span = static_cast<int>(c.size());

    std::uint64_t total = 1;
    for (int i = 0; i < span; ++i) total *= static_cast<std::uint64_t>(p);
    std::vector<Sym> table(static_cast<std::size_t>(total));
    for (std::uint64_t w = 0; w < total; ++w) {
        std::uint64_t x = w;
        int acc = 0;
        for (int i = 0; i < span; ++i) {
            acc = (acc + c[static_cast<std::size_t>(i)] * static_cast<int>(x % static_cast<std::uint64_t>(p))) % p;
            x /= static_cast<std::uint64_t>(p);
        }
        table[static_cast<std::size_t>(w)] = static_cast<Sym>(acc);
    }
    const GroupPtr g = make_cyclic(p);
    SlidingBlockHom psi(g, g, span, std::move(table), 0);
    const GroupShiftSFT full = GroupShiftSFT::full_shift(g);
    require_internal(point_equal(image_sft(psi, full).sft, full), "recurrence rule is not surjective");
    require_internal(point_equal(kernel_sft(psi, full), kernel_shift(p, q0)),
                     "rule kernel differs from the recurrence solution shift");
    return psi;
}

} // namespace nubshift
