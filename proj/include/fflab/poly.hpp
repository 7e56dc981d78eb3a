#ifndef FFLAB_POLY_HPP
#define FFLAB_POLY_HPP

#include <string>
#include <utility>
#include <vector>

#include "fflab/field.hpp"

namespace fflab {

/// Univariate polynomial over a BaseField, coefficients low-to-high with no
/// trailing zeros. The zero polynomial has an empty coefficient list and
/// degree -1.
class Poly {
public:
    explicit Poly(BaseField f) : field_(std::move(f)) {}
    Poly(BaseField f, std::vector<Scalar> coeffs);

    static Poly zero(const BaseField& f) { return Poly(f); }
    static Poly constant(const Scalar& c);
    static Poly one(const BaseField& f) { return constant(f.one()); }
    /// The monomial c * x^k.
    static Poly monomial(const Scalar& c, long k);
    static Poly x(const BaseField& f) { return monomial(f.one(), 1); }
    /// Build from small integers, low-to-high.
    static Poly from_ints(const BaseField& f, const std::vector<i64>& cs);

    const BaseField& field() const { return field_; }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
    const std::vector<Scalar>& coeffs() const { return c_; }
    Scalar coeff(long i) const;
    Scalar lead() const;

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Scalar& s) const;
    bool operator==(const Poly& o) const { return field_ == o.field_ && c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    /// Quotient and remainder; the divisor's leading coefficient is inverted.
    std::pair<Poly, Poly> divrem(const Poly& d) const;
    Poly operator/(const Poly& d) const { return divrem(d).first; }
    Poly operator%(const Poly& d) const { return divrem(d).second; }
    bool divides(const Poly& multiple) const;

    Poly monic() const;
    Poly derivative() const;
    Scalar eval(const Scalar& a) const;
    Poly pow(unsigned e) const;
    /// Substitute x -> x + a.
    Poly shift(const Scalar& a) const;

    std::string to_string(const std::string& var = "x") const;

private:
    void trim();

    BaseField field_;
    std::vector<Scalar> c_;
};

/// Monic greatest common divisor; gcd(0, 0) = 0. Over the rationals the
/// integer content is stripped first to keep bignums small.
Poly poly_gcd(const Poly& a, const Poly& b);

Poly poly_lcm(const Poly& a, const Poly& b);

/// True iff f is squarefree: gcd(f, f') has degree 0. In characteristic p,
/// f' = 0 means f is a p-th power, hence not squarefree.
bool is_squarefree(const Poly& f);

/// All roots of f in the base field, each listed once with its multiplicity.
/// Finite fields are scanned exhaustively (fields larger than 2^20 raise
/// search_exhausted); over the rationals the rational-root theorem is used
/// with divisor enumeration bounded at 10^6.
std::vector<std::pair<Scalar, long>> poly_roots(const Poly& f);

}  // namespace fflab

#endif
