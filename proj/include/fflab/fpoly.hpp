#ifndef FFLAB_FPOLY_HPP
#define FFLAB_FPOLY_HPP

#include <utility>
#include <vector>

#include "fflab/ratfunc.hpp"

namespace fflab {

/// Univariate polynomial in T with coefficients in K(x). Used for tower
/// minimal polynomials, their extended-Euclid inverses, and subfield-degree
/// gcds. Coefficients low-to-high, no trailing zeros.
class FPoly {
public:
    explicit FPoly(BaseField f) : field_(std::move(f)) {}
    FPoly(BaseField f, std::vector<RatFunc> coeffs);

    static FPoly constant(const RatFunc& c);
    static FPoly T(const BaseField& f);

    const BaseField& field() const { return field_; }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<RatFunc>& coeffs() const { return c_; }
    RatFunc coeff(long i) const;
    RatFunc lead() const;

    FPoly operator-() const;
    FPoly operator+(const FPoly& o) const;
    FPoly operator-(const FPoly& o) const;
    FPoly operator*(const FPoly& o) const;
    FPoly operator*(const RatFunc& s) const;
    bool operator==(const FPoly& o) const { return c_ == o.c_; }

    std::pair<FPoly, FPoly> divrem(const FPoly& d) const;
    FPoly operator%(const FPoly& d) const { return divrem(d).second; }
    FPoly monic() const;

private:
    void trim();
    BaseField field_;
    std::vector<RatFunc> c_;
};

/// Monic gcd in K(x)[T]; gcd(0,0) = 0.
FPoly fpoly_gcd(FPoly a, FPoly b);

/// Inverse of a modulo the monic irreducible mu, via extended Euclid.
FPoly fpoly_invmod(const FPoly& a, const FPoly& mu);

}  // namespace fflab

#endif
