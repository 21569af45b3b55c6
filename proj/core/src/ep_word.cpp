#include "nubshift/ep_word.hpp"

#include <algorithm>
#include <numeric>

namespace nubshift {

namespace {

long long floor_mod(long long n, long long m) { return ((n % m) + m) % m; }

/// Smallest d dividing |w| with w[i] = w[i mod d] for all i. The longest
/// proper border b of w gives the smallest period n - b, which divides n
/// exactly when w is a repetition; computed with the standard border array.
std::vector<Sym> primitive_period(const std::vector<Sym>& w) {
    const std::size_t n = w.size();
    if (n <= 1) return w;
    std::vector<std::size_t> border(n, 0);
    for (std::size_t i = 1; i < n; ++i) {
        std::size_t b = border[i - 1];
        while (b > 0 && w[i] != w[b]) b = border[b - 1];
        border[i] = (w[i] == w[b]) ? b + 1 : 0;
    }
    const std::size_t d = n - border[n - 1];
    if (n % d != 0) return w;
    return std::vector<Sym>(w.begin(), w.begin() + static_cast<long>(d));
}

std::vector<Sym> rotate_left(std::vector<Sym> w) {
    if (w.size() > 1) std::rotate(w.begin(), w.begin() + 1, w.end());
    return w;
}

std::vector<Sym> rotate_right(std::vector<Sym> w) {
    if (w.size() > 1) std::rotate(w.begin(), w.end() - 1, w.end());
    return w;
}

} // namespace

EPWord::EPWord(GroupPtr alphabet, std::vector<Sym> left_period, long long core_start,
               std::vector<Sym> core, std::vector<Sym> right_period)
    : alphabet_(std::move(alphabet)), left_(std::move(left_period)), core_start_(core_start),
      core_(std::move(core)), right_(std::move(right_period)) {
    if (!alphabet_) fail(Errc::PreconditionFailed, "word needs an alphabet");
    if (left_.empty() || right_.empty())
        fail(Errc::PreconditionFailed, "periods must be nonempty");
    auto check = [&](const std::vector<Sym>& v) {
        for (Sym s : v)
            if (s < 0 || s >= alphabet_->order())
                fail(Errc::AlphabetMismatch, "symbol out of range");
    };
    check(left_);
    check(core_);
    check(right_);
    canonicalize();
}

void EPWord::canonicalize() {
    left_ = primitive_period(left_);
    right_ = primitive_period(right_);
    // Absorb core symbols that merely continue a period, moving the
    // boundaries inward and rotating the period patterns to keep the anchor
    // semantics intact.
    while (!core_.empty() && core_.front() == left_.front()) {
        core_.erase(core_.begin());
        ++core_start_;
        left_ = rotate_left(left_);
    }
    while (!core_.empty() && core_.back() == right_.back()) {
        core_.pop_back();
        right_ = rotate_right(right_);
    }
    if (!core_.empty()) return;

    // Empty core: check for a fully periodic word first.
    const long long d = static_cast<long long>(left_.size());
    const long long e = static_cast<long long>(right_.size());
    const long long cycle = std::lcm(d, e);
    bool fully_periodic = true;
    for (long long i = 0; i < cycle && fully_periodic; ++i) {
        // Value the left tail would continue with at core_start_ + i vs the
        // actual right-tail value there.
        Sym lhs = left_[static_cast<std::size_t>(floor_mod(i, d))];
        Sym rhs = right_[static_cast<std::size_t>(floor_mod(i, e))];
        fully_periodic = lhs == rhs;
    }
    if (fully_periodic) {
        std::vector<Sym> pat(static_cast<std::size_t>(cycle));
        for (long long i = 0; i < cycle; ++i)
            pat[static_cast<std::size_t>(i)] =
                right_[static_cast<std::size_t>(floor_mod(i - core_start_, e))];
        pat = primitive_period(pat);
        left_ = pat;
        right_ = pat;
        core_start_ = 0;
        return;
    }
    // Not fully periodic: push the boundary left while the left tail's top
    // value can be re-expressed by the right period. Terminates within
    // lcm(d, e) steps, else the word would be fully periodic.
    for (long long step = 0; step < cycle; ++step) {
        if (left_.back() != right_.back()) break;
        --core_start_;
        left_ = rotate_right(left_);
        right_ = rotate_right(right_);
    }
}

EPWord EPWord::identity(GroupPtr alphabet) {
    Sym e = alphabet->identity();
    return EPWord(std::move(alphabet), {e}, 0, {}, {e});
}

EPWord EPWord::constant(GroupPtr alphabet, Sym value) {
    return EPWord(std::move(alphabet), {value}, 0, {}, {value});
}

EPWord EPWord::finitely_supported(GroupPtr alphabet, long long start, std::vector<Sym> word) {
    Sym e = alphabet->identity();
    return EPWord(std::move(alphabet), {e}, start, std::move(word), {e});
}

EPWord EPWord::periodic(GroupPtr alphabet, std::vector<Sym> pattern) {
    if (pattern.empty()) fail(Errc::PreconditionFailed, "empty period pattern");
    return EPWord(std::move(alphabet), pattern, 0, {}, pattern);
}

Sym EPWord::at(long long n) const {
    if (n < core_start_)
        return left_[static_cast<std::size_t>(
            floor_mod(n - core_start_, static_cast<long long>(left_.size())))];
    if (n < core_end()) return core_[static_cast<std::size_t>(n - core_start_)];
    return right_[static_cast<std::size_t>(
        floor_mod(n - core_end(), static_cast<long long>(right_.size())))];
}

std::vector<Sym> EPWord::window(long long start, long long len) const {
    std::vector<Sym> out(static_cast<std::size_t>(len));
    for (long long i = 0; i < len; ++i) out[static_cast<std::size_t>(i)] = at(start + i);
    return out;
}

bool EPWord::is_identity() const {
    Sym e = alphabet_->identity();
    return core_.empty() && left_ == std::vector<Sym>{e} && right_ == std::vector<Sym>{e};
}

bool EPWord::is_finitely_supported() const {
    Sym e = alphabet_->identity();
    return left_ == std::vector<Sym>{e} && right_ == std::vector<Sym>{e};
}

std::optional<std::pair<long long, long long>> EPWord::support() const {
    if (!is_finitely_supported())
        fail(Errc::PreconditionFailed, "support defined for finitely supported words");
    Sym e = alphabet_->identity();
    std::optional<long long> lo, hi;
    for (std::size_t i = 0; i < core_.size(); ++i) {
        if (core_[i] == e) continue;
        long long n = core_start_ + static_cast<long long>(i);
        if (!lo) lo = n;
        hi = n;
    }
    if (!lo) return std::nullopt;
    return std::make_pair(*lo, *hi);
}

EPWord EPWord::shift_by(long long k) const {
    return EPWord(alphabet_, left_, core_start_ - k, core_, right_);
}

EPWord EPWord::inverse() const {
    auto inv_all = [&](std::vector<Sym> v) {
        for (Sym& s : v) s = alphabet_->inv(s);
        return v;
    };
    return EPWord(alphabet_, inv_all(left_), core_start_, inv_all(core_), inv_all(right_));
}

EPWord operator*(const EPWord& x, const EPWord& y) {
    if (!same_group(x.alphabet_, y.alphabet_))
        fail(Errc::AlphabetMismatch, "product of words over different alphabets");
    const auto& g = *x.alphabet_;
    long long a = std::min(x.core_start_, y.core_start_);
    long long b = std::max(x.core_end(), y.core_end());
    long long dl = std::lcm(static_cast<long long>(x.left_.size()),
                            static_cast<long long>(y.left_.size()));
    long long dr = std::lcm(static_cast<long long>(x.right_.size()),
                            static_cast<long long>(y.right_.size()));
    std::vector<Sym> left(static_cast<std::size_t>(dl));
    for (long long i = 0; i < dl; ++i)
        left[static_cast<std::size_t>(i)] = g.mul(x.at(a - dl + i), y.at(a - dl + i));
    std::vector<Sym> right(static_cast<std::size_t>(dr));
    for (long long i = 0; i < dr; ++i)
        right[static_cast<std::size_t>(i)] = g.mul(x.at(b + i), y.at(b + i));
    std::vector<Sym> core(static_cast<std::size_t>(b - a));
    for (long long i = 0; i < b - a; ++i)
        core[static_cast<std::size_t>(i)] = g.mul(x.at(a + i), y.at(a + i));
    return EPWord(x.alphabet_, std::move(left), a, std::move(core), std::move(right));
}

bool EPWord::operator==(const EPWord& o) const {
    return same_group(alphabet_, o.alphabet_) && left_ == o.left_ && right_ == o.right_ &&
           core_ == o.core_ && core_start_ == o.core_start_;
}

} // namespace nubshift
