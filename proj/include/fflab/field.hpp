#ifndef FFLAB_FIELD_HPP
#define FFLAB_FIELD_HPP

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fflab/errors.hpp"

namespace fflab {

using u64 = std::uint64_t;
using i64 = std::int64_t;

enum class FieldKind { Rationals, Finite };

class Scalar;

/// Inline coefficient storage for F_{p^m} elements; m is capped at 8 by the
/// desk-scale limits, so no element ever needs the heap.
class SmallCoeffs {
public:
    SmallCoeffs() = default;
    SmallCoeffs(unsigned n, u64 fill) : n_(n) {
        for (unsigned i = 0; i < n_; ++i) v_[i] = fill;
    }

    unsigned size() const { return n_; }
    u64& operator[](size_t i) { return v_[i]; }
    const u64& operator[](size_t i) const { return v_[i]; }
    const u64* begin() const { return v_.data(); }
    const u64* end() const { return v_.data() + n_; }

    bool operator==(const SmallCoeffs& o) const {
        if (n_ != o.n_) return false;
        for (unsigned i = 0; i < n_; ++i)
            if (v_[i] != o.v_[i]) return false;
        return true;
    }

private:
    std::array<u64, 8> v_{};
    unsigned n_ = 0;
};

/// A base field K: either the rationals or F_{p^m}.
///
/// F_{p^m} is F_p[t]/(modulus) with the modulus chosen deterministically as
/// the lexicographically least monic irreducible of degree m (coefficients
/// c_0..c_{m-1} compared left to right), so representations agree across
/// runs. Moduli are interned for the lifetime of the process, which keeps
/// BaseField trivially copyable.
class BaseField {
public:
    static BaseField rationals();
    static BaseField finite(u64 p, unsigned m = 1);

    FieldKind kind() const { return kind_; }
    bool is_rationals() const { return kind_ == FieldKind::Rationals; }
    u64 p() const { return p_; }
    unsigned m() const { return m_; }
    /// Modulus coefficients c_0..c_{m-1} (the t^m coefficient is implicitly 1).
    const std::vector<u64>& modulus() const { return *modulus_; }
    /// Field size p^m (finite fields only).
    mpz_class order() const;
    u64 characteristic() const { return is_rationals() ? 0 : p_; }

    bool operator==(const BaseField& o) const {
        return kind_ == o.kind_ && p_ == o.p_ && m_ == o.m_;
    }
    bool operator!=(const BaseField& o) const { return !(*this == o); }

    Scalar zero() const;
    Scalar one() const;
    Scalar from_int(i64 v) const;
    Scalar from_mpq(const mpq_class& q) const;           // rationals only
    Scalar from_coeffs(std::vector<u64> coeffs) const;   // finite only

    /// idx-th element of the canonical scan order: 0..p^m-1 by lexicographic
    /// coefficients for finite fields; 0, 1, -1, 2, -2, ... for the rationals.
    Scalar enumerate(u64 idx) const;
    /// Number of scannable elements; nullopt means unbounded (rationals).
    std::optional<u64> enum_size() const;

    std::string describe() const;

private:
    BaseField(FieldKind k, u64 p, unsigned m, const std::vector<u64>* mod)
        : kind_(k), p_(p), m_(m), modulus_(mod) {}

    FieldKind kind_;
    u64 p_ = 0;
    unsigned m_ = 1;
    const std::vector<u64>* modulus_ = nullptr;  // interned, never freed
};

/// An element of a BaseField. Rationals are kept in lowest terms with a
/// positive denominator; finite-field elements are coefficient vectors of
/// length m with entries in [0, p).
class Scalar {
public:
    Scalar() = default;  // invalid until assigned; is_valid() false

    const BaseField& field() const { return *field_; }
    bool is_valid() const { return field_.has_value(); }

    bool is_zero() const;
    bool is_one() const;

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar inv() const;
    Scalar pow(const mpz_class& e) const;

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// Canonical total order used to sort points and report entries:
    /// numeric value for F_p, lexicographic coefficients for F_{p^m},
    /// (numerator, denominator) lexicographic for the rationals.
    int canonical_cmp(const Scalar& o) const;
    bool canonical_less(const Scalar& o) const { return canonical_cmp(o) < 0; }

    /// Square root if one exists (Tonelli-Shanks for finite fields; exact
    /// integer square roots of numerator and denominator for the rationals).
    std::optional<Scalar> sqrt() const;

    const mpq_class& rat() const { return std::get<mpq_class>(v_); }
    const SmallCoeffs& coeffs() const { return std::get<SmallCoeffs>(v_); }

    std::string to_string() const;

    friend class BaseField;

private:
    SmallCoeffs& mut_coeffs() { return std::get<SmallCoeffs>(v_); }
    mpq_class& mut_rat() { return std::get<mpq_class>(v_); }

    std::optional<BaseField> field_;
    std::variant<SmallCoeffs, mpq_class> v_;
};

/// Desk-scale caps (overridable via the FFLAB_MAX_DEGREE environment
/// variable, which replaces the polynomial degree cap).
struct DeskScale {
    static u64 max_p() { return 1ull << 16; }
    static unsigned max_m() { return 8; }
    static long max_degree();
};

}  // namespace fflab

#endif
