#ifndef FFLAB_SUBSPACE_HPP
#define FFLAB_SUBSPACE_HPP

#include <vector>

#include "fflab/curve.hpp"
#include "fflab/linalg.hpp"

namespace fflab {

/// Finite-dimensional K-subspace of F in canonical reduced-basis form: the
/// basis is the unique reduced echelon basis of the span, with slots ordered
/// by (power-basis coordinate, then coordinate-field degree) and pivots on
/// the first nonzero slot. Same span in, identical basis out.
class KSubspace {
public:
    KSubspace(ModelPtr model, std::vector<FFElem> basis, Poly common_den);

    const ModelPtr& model() const { return model_; }
    const std::vector<FFElem>& basis() const { return basis_; }
    const Poly& common_den() const { return common_den_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    bool is_zero() const { return basis_.empty(); }

    bool operator==(const KSubspace& o) const;

private:
    ModelPtr model_;
    std::vector<FFElem> basis_;
    Poly common_den_;
};

/// K(coord)-subspace of F in echelon form (pivot coordinates normalized
/// to 1, strictly increasing pivot positions).
class KxSubspace {
public:
    KxSubspace(ModelPtr model, std::vector<FFElem> basis, std::vector<int> pivots);

    const ModelPtr& model() const { return model_; }
    const std::vector<FFElem>& basis() const { return basis_; }
    const std::vector<int>& pivots() const { return pivots_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    bool is_zero() const { return basis_.empty(); }

    bool operator==(const KxSubspace& o) const;

private:
    ModelPtr model_;
    std::vector<FFElem> basis_;
    std::vector<int> pivots_;
};

// --- K-subspace operations -------------------------------------------------

KSubspace k_span(const ModelPtr& model, const std::vector<FFElem>& gens);
/// Product space ST: the K-span of all pairwise products.
KSubspace k_product(const KSubspace& S, const KSubspace& T);
KSubspace k_sum(const KSubspace& S, const KSubspace& T);
KSubspace k_intersect(const KSubspace& S, const KSubspace& T);
bool k_member(const KSubspace& S, const FFElem& u);
/// The multiplicative translate u * S.
KSubspace k_scale(const KSubspace& S, const FFElem& u);

// --- K(coord)-subspace operations -------------------------------------------

KxSubspace kx_span_elems(const ModelPtr& model, const std::vector<FFElem>& gens);
/// K(coord)-span of a K-subspace.
KxSubspace kx_span(const KSubspace& S);
KxSubspace kx_sum(const KxSubspace& U, const KxSubspace& V);
KxSubspace kx_intersect(const KxSubspace& U, const KxSubspace& V);
bool kx_member(const KxSubspace& V, const FFElem& u);

/// St(V) = { z in F : z V <= V }, a field between K(coord) and F.
/// Postconditions (contains 1, closed under products, St(V) V = V) are
/// verified and raise invariant_error on failure.
KxSubspace stabilizer(const KxSubspace& V);

struct KxProductChecked {
    KxSubspace product;
    KxSubspace st;       // St(UV)
    bool kneser_ok;      // dim UV >= dim U + dim V - dim St(UV)
};

/// Product UV with the Kneser inequality verified against St(UV); a
/// violation raises invariant_error (it would mean an implementation bug).
KxSubspace kx_product(const KxSubspace& U, const KxSubspace& V);
KxProductChecked kx_product_checked(const KxSubspace& U, const KxSubspace& V);
/// Product without the stabilizer check (used inside stabilizer's own
/// verification to avoid recursion).
KxSubspace kx_product_raw(const KxSubspace& U, const KxSubspace& V);

/// The K-subspace { s in S : s in K(coord)-span(V) }.
KSubspace mixed_intersect(const KSubspace& S, const KxSubspace& V);

}  // namespace fflab

#endif
