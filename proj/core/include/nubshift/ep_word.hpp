#pragma once

#include "nubshift/finite_group.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace nubshift {

/// A bi-infinite word over a finite group alphabet that is eventually
/// periodic on both sides:
///   f(n) = left[(n - a) mod |left|]   for n < a
///   f(n) = core[n - a]                for a <= n < a + |core|
///   f(n) = right[(n - b) mod |right|] for n >= b = a + |core|
/// Instances are kept in a canonical form (primitive periods, maximally
/// absorbed core, fully periodic words re-anchored at 0, empty-core boundary
/// pushed left), so operator== is word equality.
class EPWord {
public:
    EPWord(GroupPtr alphabet, std::vector<Sym> left_period, long long core_start,
           std::vector<Sym> core, std::vector<Sym> right_period);

    static EPWord identity(GroupPtr alphabet);
    static EPWord constant(GroupPtr alphabet, Sym value);
    /// Identity outside [start, start + word.size()).
    static EPWord finitely_supported(GroupPtr alphabet, long long start, std::vector<Sym> word);
    /// f(n) = pattern[n mod |pattern|].
    static EPWord periodic(GroupPtr alphabet, std::vector<Sym> pattern);

    const GroupPtr& alphabet() const { return alphabet_; }
    Sym at(long long n) const;
    std::vector<Sym> window(long long start, long long len) const;

    const std::vector<Sym>& left_period() const { return left_; }
    const std::vector<Sym>& right_period() const { return right_; }
    const std::vector<Sym>& core() const { return core_; }
    long long core_start() const { return core_start_; }
    long long core_end() const { return core_start_ + static_cast<long long>(core_.size()); }

    bool is_identity() const;
    bool is_finitely_supported() const;
    /// [min, max] positions with non-identity value; nullopt for the
    /// identity word. Requires finite support.
    std::optional<std::pair<long long, long long>> support() const;

    /// sigma^k: (shift_by(k))(n) = f(n + k).
    EPWord shift_by(long long k) const;
    EPWord inverse() const;
    friend EPWord operator*(const EPWord& x, const EPWord& y);
    bool operator==(const EPWord& o) const;
    bool operator!=(const EPWord& o) const { return !(*this == o); }

private:
    GroupPtr alphabet_;
    std::vector<Sym> left_;
    long long core_start_ = 0;
    std::vector<Sym> core_;
    std::vector<Sym> right_;
    void canonicalize();
};

} // namespace nubshift
