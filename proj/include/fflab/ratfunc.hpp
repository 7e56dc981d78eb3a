#ifndef FFLAB_RATFUNC_HPP
#define FFLAB_RATFUNC_HPP

#include <string>
#include <utility>

#include "fflab/poly.hpp"

namespace fflab {

/// Rational function num/den over a BaseField, kept with gcd(num, den) = 1
/// and a monic denominator.
class RatFunc {
public:
    explicit RatFunc(const BaseField& f) : num_(Poly::zero(f)), den_(Poly::one(f)) {}
    RatFunc(Poly num, Poly den);

    static RatFunc zero(const BaseField& f) { return RatFunc(f); }
    static RatFunc one(const BaseField& f) { return RatFunc(Poly::one(f), Poly::one(f)); }
    static RatFunc from_poly(Poly p) {
        Poly one = Poly::one(p.field());
        return RatFunc(std::move(p), std::move(one));
    }
    static RatFunc constant(const Scalar& c) { return from_poly(Poly::constant(c)); }
    static RatFunc x(const BaseField& f) { return from_poly(Poly::x(f)); }

    const BaseField& field() const { return num_.field(); }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_poly() const { return den_.is_one(); }

    RatFunc operator-() const;
    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    RatFunc inv() const;
    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    /// Valuation at the place at infinity of K(x): deg den - deg num.
    long v_infinity() const;
    /// Order of vanishing at x = a (negative for a pole).
    long order_at(const Scalar& a) const;
    /// Evaluation at x = a; throws math_error on a pole.
    Scalar eval(const Scalar& a) const;
    /// Substitute x -> g (rational function composition).
    RatFunc compose(const RatFunc& g) const;

    std::string to_string(const std::string& var = "x") const;

private:
    Poly num_;
    Poly den_;
};

}  // namespace fflab

#endif
