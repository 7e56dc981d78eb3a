#include "fflab/fpoly.hpp"

namespace fflab {

FPoly::FPoly(BaseField f, std::vector<RatFunc> coeffs)
    : field_(std::move(f)), c_(std::move(coeffs)) {
    trim();
}

void FPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FPoly FPoly::constant(const RatFunc& c) {
    FPoly r(c.field());
    if (!c.is_zero()) r.c_ = {c};
    return r;
}

FPoly FPoly::T(const BaseField& f) {
    FPoly r(f);
    r.c_ = {RatFunc::zero(f), RatFunc::one(f)};
    return r;
}

RatFunc FPoly::coeff(long i) const {
    if (i < 0 || i >= static_cast<long>(c_.size())) return RatFunc::zero(field_);
    return c_[static_cast<size_t>(i)];
}

RatFunc FPoly::lead() const {
    if (is_zero()) throw math_error("leading coefficient of zero polynomial");
    return c_.back();
}

FPoly FPoly::operator-() const {
    FPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

FPoly FPoly::operator+(const FPoly& o) const {
    FPoly r(field_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), RatFunc::zero(field_));
    for (size_t i = 0; i < r.c_.size(); ++i) {
        RatFunc s = RatFunc::zero(field_);
        if (i < c_.size()) s = s + c_[i];
        if (i < o.c_.size()) s = s + o.c_[i];
        r.c_[i] = s;
    }
    r.trim();
    return r;
}

FPoly FPoly::operator-(const FPoly& o) const { return *this + (-o); }

FPoly FPoly::operator*(const FPoly& o) const {
    if (is_zero() || o.is_zero()) return FPoly(field_);
    FPoly r(field_);
    r.c_.assign(c_.size() + o.c_.size() - 1, RatFunc::zero(field_));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            r.c_[i + j] = r.c_[i + j] + c_[i] * o.c_[j];
    }
    r.trim();
    return r;
}

FPoly FPoly::operator*(const RatFunc& s) const {
    FPoly r = *this;
    for (auto& c : r.c_) c = c * s;
    r.trim();
    return r;
}

std::pair<FPoly, FPoly> FPoly::divrem(const FPoly& d) const {
    if (d.is_zero()) throw math_error("FPoly division by zero");
    FPoly q(field_), r = *this;
    if (r.degree() < d.degree()) return {q, r};
    q.c_.assign(static_cast<size_t>(r.degree() - d.degree() + 1), RatFunc::zero(field_));
    RatFunc lc_inv = d.lead().inv();
    while (!r.is_zero() && r.degree() >= d.degree()) {
        long shift = r.degree() - d.degree();
        RatFunc coef = r.lead() * lc_inv;
        q.c_[static_cast<size_t>(shift)] = coef;
        for (long i = 0; i <= d.degree(); ++i) {
            size_t k = static_cast<size_t>(i + shift);
            r.c_[k] = r.c_[k] - coef * d.c_[static_cast<size_t>(i)];
        }
        r.trim();
    }
    q.trim();
    return {q, r};
}

FPoly FPoly::monic() const {
    if (is_zero()) return *this;
    return *this * lead().inv();
}

namespace {

// Clear coefficient denominators and strip the common polynomial factor of
// the numerators: a nonzero K(x)-scaling, so gcds are unchanged. This is
// what keeps the remainder sequence from exploding over Q(x).
void make_primitive(FPoly& f) {
    if (f.is_zero()) return;
    const BaseField& K = f.field();
    Poly den = Poly::one(K);
    for (const auto& c : f.coeffs())
        if (!c.is_zero()) den = poly_lcm(den, c.den());
    Poly content = Poly::zero(K);
    std::vector<RatFunc> cleared;
    cleared.reserve(f.coeffs().size());
    for (const auto& c : f.coeffs()) {
        Poly num = c.is_zero() ? Poly::zero(K) : c.num() * (den / c.den());
        content = poly_gcd(content, num);
        cleared.push_back(RatFunc::from_poly(num));
    }
    if (content.degree() > 0) {
        RatFunc div = RatFunc::from_poly(content);
        for (auto& c : cleared)
            if (!c.is_zero()) c = c / div;
    }
    f = FPoly(K, std::move(cleared));
}

// Remainder of lc(b)^(deg a - deg b + 1) * a modulo b; fraction-free.
FPoly pseudo_rem(FPoly a, const FPoly& b) {
    const RatFunc lc = b.lead();
    long steps = a.degree() - b.degree() + 1;
    for (long s = 0; s < steps && !a.is_zero() && a.degree() >= b.degree(); ++s) {
        long shift = a.degree() - b.degree();
        RatFunc coef = a.lead();
        std::vector<RatFunc> shifted(static_cast<size_t>(shift), RatFunc::zero(a.field()));
        for (const auto& c : b.coeffs()) shifted.push_back(c * coef);
        a = a * lc - FPoly(a.field(), std::move(shifted));
    }
    return a;
}

}  // namespace

FPoly fpoly_gcd(FPoly a, FPoly b) {
    make_primitive(a);
    make_primitive(b);
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        FPoly r = pseudo_rem(a, b);
        make_primitive(r);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

FPoly fpoly_invmod(const FPoly& a, const FPoly& mu) {
    FPoly r0 = mu, r1 = a % mu;
    if (r1.is_zero()) throw math_error("inversion of zero modulo mu");
    const BaseField& f = a.field();
    FPoly s0(f), s1 = FPoly::constant(RatFunc::one(f));
    while (!r1.is_zero()) {
        auto [q, r2] = r0.divrem(r1);
        FPoly s2 = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.degree() != 0) throw math_error("element not invertible modulo mu");
    return (s0 * r0.lead().inv()) % mu;
}

}  // namespace fflab
