#include "fflab/ratfunc.hpp"

namespace fflab {

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (num_.field() != den_.field()) throw math_error("rational function field mismatch");
    if (den_.is_zero()) throw math_error("rational function with zero denominator");
    if (num_.is_zero()) {
        den_ = Poly::one(num_.field());
        return;
    }
    if (den_.is_one()) return;  // polynomial values need no reduction
    Poly g = poly_gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
    Scalar lc = den_.lead();
    if (!lc.is_one()) {
        Scalar inv = lc.inv();
        num_ = num_ * inv;
        den_ = den_ * inv;
    }
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
    if (is_zero() || o.is_zero()) return RatFunc(field());
    // cross-reduce before multiplying to limit degree growth
    Poly g1 = poly_gcd(num_, o.den_);
    Poly g2 = poly_gcd(o.num_, den_);
    Poly n1 = g1.degree() > 0 ? num_ / g1 : num_;
    Poly d2 = g1.degree() > 0 ? o.den_ / g1 : o.den_;
    Poly n2 = g2.degree() > 0 ? o.num_ / g2 : o.num_;
    Poly d1 = g2.degree() > 0 ? den_ / g2 : den_;
    return RatFunc(n1 * n2, d1 * d2);
}

RatFunc RatFunc::inv() const {
    if (is_zero()) throw math_error("inversion of the zero rational function");
    return RatFunc(den_, num_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const { return *this * o.inv(); }

long RatFunc::v_infinity() const {
    if (is_zero()) throw math_error("valuation of zero");
    return den_.degree() - num_.degree();
}

long RatFunc::order_at(const Scalar& a) const {
    if (is_zero()) throw math_error("order of zero");
    Poly lin = Poly::x(field()) - Poly::constant(a);
    long ord = 0;
    Poly n = num_;
    while (n.eval(a).is_zero()) {
        n = n / lin;
        ++ord;
    }
    Poly d = den_;
    while (d.eval(a).is_zero()) {
        d = d / lin;
        --ord;
    }
    return ord;
}

Scalar RatFunc::eval(const Scalar& a) const {
    Scalar d = den_.eval(a);
    if (d.is_zero()) throw math_error("evaluation at a pole");
    return num_.eval(a) / d;
}

RatFunc RatFunc::compose(const RatFunc& g) const {
    auto horner = [&](const Poly& p) {
        RatFunc acc = RatFunc::zero(field());
        for (long i = p.degree(); i >= 0; --i)
            acc = acc * g + RatFunc::constant(p.coeff(i));
        return acc;
    };
    return horner(num_) / horner(den_);
}

std::string RatFunc::to_string(const std::string& var) const {
    if (is_poly()) return num_.to_string(var);
    std::string n = num_.to_string(var);
    std::string d = den_.to_string(var);
    bool nparen = num_.degree() > 0 && num_.coeffs().size() > 1;
    return (nparen ? "(" + n + ")" : n) + "/(" + d + ")";
}

}  // namespace fflab
