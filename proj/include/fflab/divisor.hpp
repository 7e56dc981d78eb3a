#ifndef FFLAB_DIVISOR_HPP
#define FFLAB_DIVISOR_HPP

#include <map>
#include <vector>

#include "fflab/subspace.hpp"

namespace fflab {

/// Formal Z-combination of supported degree-1 places; zero multiplicities are
/// never stored.
class Divisor {
public:
    Divisor() = default;

    void add(const PlaceId& P, long mult);
    long mult(const PlaceId& P) const;
    long degree() const;
    bool is_zero() const { return entries_.empty(); }
    const std::map<PlaceId, long>& entries() const { return entries_; }

    bool operator==(const Divisor& o) const { return entries_ == o.entries_; }
    /// Pointwise comparison: D <= E iff E - D is positive.
    bool leq(const Divisor& o) const;

    std::string to_string() const;

private:
    std::map<PlaceId, long> entries_;
};

struct RRBasis {
    Divisor divisor;
    std::vector<FFElem> basis;  // canonical
    int dim = 0;
    int genus_used = 0;
};

/// Explicit Riemann-Roch space L(D).
/// Rational model: any divisor on degree-1 places, basis x^j V/U over the
/// natural denominator. Hyperelliptic: D = n Pinf only, basis
/// {x^i : 2i <= n} and {x^i y : 2i + 2g+1 <= n}.
RRBasis rr_basis(const ModelPtr& model, const Divisor& D);

/// The least divisor D with S <= L(D): place-wise maximum of the pole orders
/// of the canonical basis. Throws math_error when a basis element has a pole
/// at an unsupported place (non-split denominator; non-polynomial
/// hyperelliptic coordinates).
Divisor minimal_divisor(const KSubspace& S);

struct RRIdentityRow {
    long n = 0;
    long dim = 0;
    bool rr_exact_applies = false;  // n >= 2g-1
    bool rr_exact_ok = true;        // dim == n+1-g when it applies
    bool clifford_applies = false;  // 0 <= n <= 2g-2
    bool clifford_ok = true;        // dim <= 1 + n/2 when it applies
};

/// dim L(n Pinf) for n in [n_min, n_max] with the Riemann-Roch equality and
/// Clifford bound checked row by row.
std::vector<RRIdentityRow> rr_dim_identities(const ModelPtr& model, long n_min, long n_max);

}  // namespace fflab

#endif
