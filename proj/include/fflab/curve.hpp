#ifndef FFLAB_CURVE_HPP
#define FFLAB_CURVE_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fflab/fpoly.hpp"
#include "fflab/ratfunc.hpp"

namespace fflab {

enum class CurveKind { Rational, Hyperelliptic, Tower };

class CurveModel;
using ModelPtr = std::shared_ptr<const CurveModel>;

/// A concrete model of the function field F:
///  - Rational:       F = K(x), n = 1, genus 0.
///  - Hyperelliptic:  F = K(x)[y]/(y^2 - f(x)), f squarefree of odd degree
///                    >= 3, odd characteristic; n = 2, genus (deg f - 1)/2.
///  - Tower:          F = K(x) re-coordinatized over K(u), u = w(x); the
///                    power basis is 1, x, ..., x^{n-1} with n = deg w and
///                    minimal polynomial mu(T) = (num_w(T) - u den_w(T))/lc.
///                    Used for pivot re-coordinatization and exploration
///                    instances; carries no divisor/Riemann-Roch support.
class CurveModel : public std::enable_shared_from_this<CurveModel> {
public:
    static ModelPtr rational(const BaseField& base);
    static ModelPtr hyperelliptic(const BaseField& base, const Poly& f);
    static ModelPtr tower(const BaseField& base, const RatFunc& w);

    CurveKind kind() const { return kind_; }
    const BaseField& base() const { return base_; }
    const Poly& hyp_f() const { return hyp_f_; }
    const RatFunc& tower_w() const { return tower_w_; }
    int genus() const { return genus_; }
    int n() const { return n_; }
    /// Monic minimal polynomial of the power-basis generator over K(coord);
    /// coefficients c_0..c_{n-1} (the T^n coefficient is 1). Empty for the
    /// rational model.
    const std::vector<RatFunc>& minpoly() const { return minpoly_; }

    /// Variable names used by pretty-printers: the coordinate of the base
    /// rational field and the power-basis generator.
    std::string coord_name() const;
    std::string gen_name() const;

    bool same(const CurveModel& o) const;

private:
    CurveModel(CurveKind k, BaseField base) : kind_(k), base_(std::move(base)) {}

    CurveKind kind_;
    BaseField base_;
    Poly hyp_f_ = Poly(BaseField::rationals());
    RatFunc tower_w_ = RatFunc(BaseField::rationals());
    int genus_ = 0;
    int n_ = 1;
    std::vector<RatFunc> minpoly_;
};

/// Element of F in the power basis of its model: coords[j] is the K(coord)
/// coefficient of gen^j.
class FFElem {
public:
    FFElem(ModelPtr model, std::vector<RatFunc> coords);

    static FFElem zero(const ModelPtr& m);
    static FFElem one(const ModelPtr& m);
    static FFElem from_scalar(const ModelPtr& m, const Scalar& c);
    static FFElem from_ratfunc(const ModelPtr& m, const RatFunc& r);
    /// The base coordinate (x on rational/hyperelliptic models, u on towers).
    static FFElem coordinate(const ModelPtr& m);
    /// The power-basis generator (x itself on the rational model, y on
    /// hyperelliptic models, x on towers).
    static FFElem generator(const ModelPtr& m);

    const ModelPtr& model() const { return model_; }
    const std::vector<RatFunc>& coords() const { return c_; }
    const RatFunc& coord(int j) const { return c_[static_cast<size_t>(j)]; }
    bool is_zero() const;
    bool is_one() const;

    FFElem operator-() const;
    FFElem operator+(const FFElem& o) const;
    FFElem operator-(const FFElem& o) const;
    FFElem operator*(const FFElem& o) const;
    FFElem operator*(const Scalar& s) const;
    FFElem operator*(const RatFunc& r) const;
    FFElem inv() const;
    FFElem pow(long e) const;
    bool operator==(const FFElem& o) const;
    bool operator!=(const FFElem& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    ModelPtr model_;
    std::vector<RatFunc> c_;
};

enum class PlaceKind { Infinity0, Finite0, InfinityHyp, Point };

/// A supported degree-1 place: the infinite or a finite place of the rational
/// model, the unique infinite place of an odd-degree hyperelliptic model, or
/// an unramified degree-1 point (a, b) with b^2 = f(a) != 0.
struct PlaceId {
    PlaceKind kind;
    std::optional<Scalar> a;
    std::optional<Scalar> b;

    static PlaceId infinity0() { return {PlaceKind::Infinity0, {}, {}}; }
    static PlaceId infinity_hyp() { return {PlaceKind::InfinityHyp, {}, {}}; }
    static PlaceId finite0(const Scalar& a) { return {PlaceKind::Finite0, a, {}}; }
    static PlaceId point(const Scalar& a, const Scalar& b) { return {PlaceKind::Point, a, b}; }

    bool operator==(const PlaceId& o) const;
    /// Canonical total order (kind first, then the Scalar order on a, b).
    bool operator<(const PlaceId& o) const;

    std::string to_string() const;
};

/// Discrete valuation v_P(u); throws math_error for u = 0 or an unsupported
/// (model, place) pair. At the hyperelliptic infinite place the parity split
/// v(u0 + u1 y) = min(v(u0), v(u1) + v(y)) is exact (v(x) = -2, v(y) odd);
/// at a point (a, b) the order of vanishing is read off the power-series
/// branch y = sqrt(f(a + t)) with y(0) = b.
long valuation(const FFElem& u, const PlaceId& P);

/// Evaluation at a finite rational place or a hyperelliptic point.
Scalar evaluate(const FFElem& u, const PlaceId& P);

struct FibrePoint {
    Scalar a;
    Scalar b;
    bool ramified = false;
};

/// All points (a, b) with b^2 = f(a) on a hyperelliptic model, sorted by the
/// canonical Scalar order on b. Length 2 iff f(a) is a nonzero square, 1
/// (flagged ramified) iff f(a) = 0, 0 otherwise.
std::vector<FibrePoint> split_points(const ModelPtr& model, const Scalar& a);

/// First a (canonical scan order) not in `avoid` whose fibre splits fully:
/// f(a) a nonzero square. Throws search_exhausted when the scan space runs
/// out, signalling a base-field extension.
Scalar find_split_locus(const ModelPtr& model, const std::vector<Scalar>& avoid);

/// v at the canonical infinite place of the model: Infinity0 for rational
/// and tower models (for towers the x-adic infinite place, computed through
/// the substitution u = w(x)), InfinityHyp for hyperelliptic ones.
long v_infty(const FFElem& u);
PlaceId canonical_infinity(const ModelPtr& model);

}  // namespace fflab

#endif
