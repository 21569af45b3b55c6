#include "nubshift/laurent.hpp"

#include <algorithm>
#include <sstream>

namespace nubshift {

namespace {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

int inv_mod(int a, int p) {
    int r = 1, b = a % p, e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

void check_field(const FpLaurent& a, const FpLaurent& b) {
    if (a.p() != b.p()) fail(Errc::FieldMismatch, "operands over different prime fields");
}

} // namespace

FpLaurent::FpLaurent(int p, long long val, std::vector<int> coeffs)
    : p_(p), val_(val), coeffs_(std::move(coeffs)) {
    if (!is_prime(p_)) fail(Errc::FieldMismatch, "characteristic must be prime");
    for (int& c : coeffs_) c = ((c % p_) + p_) % p_;
    normalize();
}

void FpLaurent::normalize() {
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
    if (lead == coeffs_.size()) {
        coeffs_.clear();
        val_ = 0;
        return;
    }
    std::size_t top = coeffs_.size();
    while (top > lead && coeffs_[top - 1] == 0) --top;
    coeffs_ = std::vector<int>(coeffs_.begin() + static_cast<long>(lead),
                               coeffs_.begin() + static_cast<long>(top));
    val_ += static_cast<long long>(lead);
}

long long FpLaurent::degree() const {
    return val_ + static_cast<long long>(coeffs_.size()) - 1;
}

int FpLaurent::coeff_at(long long e) const {
    if (e < val_ || e >= val_ + static_cast<long long>(coeffs_.size())) return 0;
    return coeffs_[static_cast<std::size_t>(e - val_)];
}

FpLaurent FpLaurent::operator+(const FpLaurent& o) const {
    check_field(*this, o);
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    long long lo = std::min(val_, o.val_);
    long long hi = std::max(degree(), o.degree());
    std::vector<int> c(static_cast<std::size_t>(hi - lo + 1), 0);
    for (long long e = lo; e <= hi; ++e)
        c[static_cast<std::size_t>(e - lo)] = (coeff_at(e) + o.coeff_at(e)) % p_;
    return FpLaurent(p_, lo, std::move(c));
}

FpLaurent FpLaurent::operator-(const FpLaurent& o) const {
    check_field(*this, o);
    FpLaurent neg = o;
    for (int& c : neg.coeffs_) c = (p_ - c) % p_;
    return *this + neg;
}

FpLaurent FpLaurent::operator*(const FpLaurent& o) const {
    check_field(*this, o);
    if (is_zero() || o.is_zero()) return zero(p_);
    std::vector<int> c(coeffs_.size() + o.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            c[i + j] = (c[i + j] + coeffs_[i] * o.coeffs_[j]) % p_;
    return FpLaurent(p_, val_ + o.val_, std::move(c));
}

bool FpLaurent::operator==(const FpLaurent& o) const {
    return p_ == o.p_ && val_ == o.val_ && coeffs_ == o.coeffs_;
}

std::string FpLaurent::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        long long e = val_ + static_cast<long long>(i);
        if (!first) os << " + ";
        first = false;
        if (coeffs_[i] != 1 || e == 0) os << coeffs_[i];
        if (e != 0) {
            os << "x";
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

FpLaurent poly_mod(const FpLaurent& a, const FpLaurent& m) {
    check_field(a, m);
    if (m.is_zero()) fail(Errc::PreconditionFailed, "modulus is zero");
    if (a.val() < 0 || m.val() < 0)
        fail(Errc::PreconditionFailed, "poly_mod expects ordinary polynomials");
    const int p = a.p();
    // dense copies anchored at exponent 0
    auto dense = [](const FpLaurent& f) {
        std::vector<int> d(static_cast<std::size_t>(f.is_zero() ? 0 : f.degree() + 1), 0);
        for (long long e = f.val(); e <= (f.is_zero() ? -1 : f.degree()); ++e)
            d[static_cast<std::size_t>(e)] = f.coeff_at(e);
        return d;
    };
    std::vector<int> r = dense(a), mm = dense(m);
    const int lead = mm.back();
    const int lead_inv = inv_mod(lead, p);
    while (r.size() >= mm.size() && !r.empty()) {
        if (r.back() == 0) { r.pop_back(); continue; }
        int f = r.back() * lead_inv % p;
        std::size_t off = r.size() - mm.size();
        for (std::size_t i = 0; i < mm.size(); ++i)
            r[off + i] = ((r[off + i] - f * mm[i]) % p + p) % p;
        while (!r.empty() && r.back() == 0) r.pop_back();
    }
    return FpLaurent(p, 0, std::move(r));
}

FpLaurent laurent_gcd(const FpLaurent& a, const FpLaurent& b) {
    check_field(a, b);
    const int p = a.p();
    // Shift valuations to zero: monomials are units, so they do not affect
    // the ideal generated.
    FpLaurent x = a.is_zero() ? a : FpLaurent(p, 0, a.coeffs());
    FpLaurent y = b.is_zero() ? b : FpLaurent(p, 0, b.coeffs());
    while (!y.is_zero()) {
        FpLaurent r = poly_mod(x, y);
        x = y;
        y = r;
    }
    if (x.is_zero()) return FpLaurent::zero(p);
    // Monic, valuation 0.
    std::vector<int> c = x.coeffs();
    int inv = inv_mod(c.back(), p);
    for (int& v : c) v = v * inv % p;
    return FpLaurent(p, 0, std::move(c));
}

long long multiplicative_order_of_x(const FpLaurent& q) {
    if (q.is_zero() || q.val() != 0)
        fail(Errc::PreconditionFailed, "x is invertible only modulo q with q(0) != 0");
    if (q.is_unit()) fail(Errc::PreconditionFailed, "order of x undefined modulo a unit");
    const int p = q.p();
    FpLaurent xq = FpLaurent(p, 0, q.coeffs());
    FpLaurent acc = poly_mod(FpLaurent::monomial(p, 1), xq);
    FpLaurent one = FpLaurent::one(p);
    long long k = 1;
    FpLaurent cur = acc;
    while (!(cur == one)) {
        cur = poly_mod(cur * acc, xq);
        ++k;
        // |F_p[x]/(q)| bounds the order; guards against a non-invertible x
        // sneaking through (cannot happen when q(0) != 0).
        long long bound = 1;
        for (long long i = 0; i < q.degree(); ++i) bound *= p;
        if (k > bound) fail(Errc::InternalInconsistency, "order search exceeded field size");
    }
    return k;
}

} // namespace nubshift
