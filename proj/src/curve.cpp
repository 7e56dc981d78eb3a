#include "fflab/curve.hpp"

#include <algorithm>
#include <sstream>

namespace fflab {

// ---------------------------------------------------------------------------
// CurveModel
// ---------------------------------------------------------------------------

ModelPtr CurveModel::rational(const BaseField& base) {
    auto m = std::shared_ptr<CurveModel>(new CurveModel(CurveKind::Rational, base));
    m->genus_ = 0;
    m->n_ = 1;
    return m;
}

ModelPtr CurveModel::hyperelliptic(const BaseField& base, const Poly& f) {
    if (base.characteristic() == 2) throw input_error("hyperelliptic models need odd characteristic");
    if (f.field() != base) throw input_error("hyperelliptic f over the wrong field");
    if (f.degree() < 3 || f.degree() % 2 == 0)
        throw input_error("hyperelliptic f must have odd degree >= 3");
    if (!is_squarefree(f)) throw input_error("hyperelliptic f must be squarefree");
    auto m = std::shared_ptr<CurveModel>(new CurveModel(CurveKind::Hyperelliptic, base));
    m->hyp_f_ = f;
    m->genus_ = static_cast<int>((f.degree() - 1) / 2);
    m->n_ = 2;
    m->minpoly_ = {-RatFunc::from_poly(f), RatFunc::zero(base)};  // T^2 - f
    return m;
}

ModelPtr CurveModel::tower(const BaseField& base, const RatFunc& w) {
    if (w.field() != base) throw input_error("tower substitution over the wrong field");
    const Poly& g = w.num();
    const Poly& h = w.den();
    long n = std::max(g.degree(), h.degree());
    if (n < 1) throw input_error("tower substitution must be non-constant");
    auto m = std::shared_ptr<CurveModel>(new CurveModel(CurveKind::Tower, base));
    m->tower_w_ = w;
    m->genus_ = 0;
    m->n_ = static_cast<int>(n);
    // mu(T) = (g(T) - u h(T)) / (g_n - u h_n), coefficients in K(u)
    auto coef_at = [&](long i) {
        // g_i - u h_i as a polynomial in u
        std::vector<Scalar> cs = {g.coeff(i), -h.coeff(i)};
        return RatFunc::from_poly(Poly(base, cs));
    };
    RatFunc lead = coef_at(n);
    if (lead.is_zero()) throw input_error("tower substitution leading coefficient vanished");
    std::vector<RatFunc> mu;
    mu.reserve(static_cast<size_t>(n));
    for (long i = 0; i < n; ++i) mu.push_back(coef_at(i) / lead);
    m->minpoly_ = std::move(mu);
    return m;
}

std::string CurveModel::coord_name() const {
    return kind_ == CurveKind::Tower ? "u" : "x";
}

std::string CurveModel::gen_name() const {
    switch (kind_) {
        case CurveKind::Rational: return "x";
        case CurveKind::Hyperelliptic: return "y";
        case CurveKind::Tower: return "x";
    }
    return "?";
}

bool CurveModel::same(const CurveModel& o) const {
    if (kind_ != o.kind_ || base_ != o.base_) return false;
    switch (kind_) {
        case CurveKind::Rational: return true;
        case CurveKind::Hyperelliptic: return hyp_f_ == o.hyp_f_;
        case CurveKind::Tower: return tower_w_ == o.tower_w_;
    }
    return false;
}

// ---------------------------------------------------------------------------
// FFElem
// ---------------------------------------------------------------------------

FFElem::FFElem(ModelPtr model, std::vector<RatFunc> coords)
    : model_(std::move(model)), c_(std::move(coords)) {
    if (!model_) throw math_error("element without a model");
    if (c_.size() != static_cast<size_t>(model_->n()))
        throw math_error("element coordinate count does not match the model");
}

FFElem FFElem::zero(const ModelPtr& m) {
    return FFElem(m, std::vector<RatFunc>(static_cast<size_t>(m->n()), RatFunc::zero(m->base())));
}

FFElem FFElem::one(const ModelPtr& m) { return from_ratfunc(m, RatFunc::one(m->base())); }

FFElem FFElem::from_scalar(const ModelPtr& m, const Scalar& c) {
    return from_ratfunc(m, RatFunc::constant(c));
}

FFElem FFElem::from_ratfunc(const ModelPtr& m, const RatFunc& r) {
    FFElem e = zero(m);
    e.c_[0] = r;
    return e;
}

FFElem FFElem::coordinate(const ModelPtr& m) {
    return from_ratfunc(m, RatFunc::x(m->base()));
}

FFElem FFElem::generator(const ModelPtr& m) {
    if (m->n() == 1) return coordinate(m);
    FFElem e = zero(m);
    e.c_[1] = RatFunc::one(m->base());
    return e;
}

bool FFElem::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const RatFunc& r) { return r.is_zero(); });
}

bool FFElem::is_one() const {
    if (!c_[0].is_one()) return false;
    return std::all_of(c_.begin() + 1, c_.end(), [](const RatFunc& r) { return r.is_zero(); });
}

namespace {
void require_same_model(const FFElem& a, const FFElem& b) {
    if (a.model().get() == b.model().get()) return;
    if (!a.model()->same(*b.model())) throw math_error("element model mismatch");
}
}  // namespace

FFElem FFElem::operator-() const {
    FFElem r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

FFElem FFElem::operator+(const FFElem& o) const {
    require_same_model(*this, o);
    FFElem r = *this;
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
}

FFElem FFElem::operator-(const FFElem& o) const { return *this + (-o); }

FFElem FFElem::operator*(const FFElem& o) const {
    require_same_model(*this, o);
    const int n = model_->n();
    if (n == 1) {
        FFElem r = *this;
        r.c_[0] = c_[0] * o.c_[0];
        return r;
    }
    const BaseField& K = model_->base();
    std::vector<RatFunc> prod(static_cast<size_t>(2 * n - 1), RatFunc::zero(K));
    for (int i = 0; i < n; ++i) {
        if (c_[static_cast<size_t>(i)].is_zero()) continue;
        for (int j = 0; j < n; ++j) {
            if (o.c_[static_cast<size_t>(j)].is_zero()) continue;
            prod[static_cast<size_t>(i + j)] =
                prod[static_cast<size_t>(i + j)] + c_[static_cast<size_t>(i)] * o.c_[static_cast<size_t>(j)];
        }
    }
    // reduce modulo the monic minimal polynomial: T^n = -sum mu_j T^j
    const auto& mu = model_->minpoly();
    for (int i = 2 * n - 2; i >= n; --i) {
        RatFunc coef = prod[static_cast<size_t>(i)];
        if (!coef.is_zero()) {
            for (int j = 0; j < n; ++j) {
                if (mu[static_cast<size_t>(j)].is_zero()) continue;
                prod[static_cast<size_t>(i - n + j)] =
                    prod[static_cast<size_t>(i - n + j)] - coef * mu[static_cast<size_t>(j)];
            }
        }
        prod[static_cast<size_t>(i)] = RatFunc::zero(K);
    }
    prod.erase(prod.begin() + n, prod.end());
    return FFElem(model_, std::move(prod));
}

FFElem FFElem::operator*(const Scalar& s) const { return *this * RatFunc::constant(s); }

FFElem FFElem::operator*(const RatFunc& r) const {
    FFElem out = *this;
    for (auto& c : out.c_) c = c * r;
    return out;
}

FFElem FFElem::inv() const {
    if (is_zero()) throw math_error("inversion of the zero element");
    const int n = model_->n();
    if (n == 1) return from_ratfunc(model_, c_[0].inv());
    const BaseField& K = model_->base();
    std::vector<RatFunc> mu_c = model_->minpoly();
    mu_c.push_back(RatFunc::one(K));
    FPoly mu(K, std::move(mu_c));
    FPoly a(K, c_);
    FPoly r = fpoly_invmod(a, mu);
    std::vector<RatFunc> out(static_cast<size_t>(n), RatFunc::zero(K));
    for (long i = 0; i <= r.degree(); ++i) out[static_cast<size_t>(i)] = r.coeff(i);
    return FFElem(model_, std::move(out));
}

FFElem FFElem::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    FFElem base = *this;
    FFElem r = one(model_);
    unsigned long k = static_cast<unsigned long>(e);
    while (k) {
        if (k & 1) r = r * base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

bool FFElem::operator==(const FFElem& o) const {
    require_same_model(*this, o);
    return c_ == o.c_;
}

std::string FFElem::to_string() const {
    const std::string cv = model_->coord_name();
    const std::string gv = model_->gen_name();
    if (model_->n() == 1) return c_[0].to_string(cv);
    std::ostringstream os;
    bool first = true;
    for (size_t j = 0; j < c_.size(); ++j) {
        if (c_[j].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        bool unit = c_[j].is_one() && j > 0;
        std::string cs = c_[j].to_string(cv);
        bool paren = !c_[j].is_poly() || c_[j].num().degree() > 0;
        if (!unit) os << (paren && j > 0 ? "(" + cs + ")" : cs);
        if (j > 0) {
            if (!unit) os << "*";
            os << gv;
            if (j > 1) os << "^" << j;
        }
    }
    if (first) os << "0";
    return os.str();
}

// ---------------------------------------------------------------------------
// Places and valuations
// ---------------------------------------------------------------------------

bool PlaceId::operator==(const PlaceId& o) const {
    if (kind != o.kind) return false;
    if (a.has_value() != o.a.has_value() || b.has_value() != o.b.has_value()) return false;
    if (a && !(*a == *o.a)) return false;
    if (b && !(*b == *o.b)) return false;
    return true;
}

bool PlaceId::operator<(const PlaceId& o) const {
    if (kind != o.kind) return static_cast<int>(kind) < static_cast<int>(o.kind);
    if (a && o.a) {
        int c = a->canonical_cmp(*o.a);
        if (c != 0) return c < 0;
    }
    if (b && o.b) return b->canonical_cmp(*o.b) < 0;
    return false;
}

std::string PlaceId::to_string() const {
    switch (kind) {
        case PlaceKind::Infinity0: return "inf";
        case PlaceKind::InfinityHyp: return "Pinf";
        case PlaceKind::Finite0: return "(x-" + a->to_string() + ")";
        case PlaceKind::Point: return "(" + a->to_string() + "," + b->to_string() + ")";
    }
    return "?";
}

PlaceId canonical_infinity(const ModelPtr& model) {
    return model->kind() == CurveKind::Hyperelliptic ? PlaceId::infinity_hyp()
                                                     : PlaceId::infinity0();
}

namespace {

// --- truncated power series over the base field, for point valuations -----

using Series = std::vector<Scalar>;  // coefficients of t^0..t^{prec-1}

Series series_of_poly_shift(const Poly& p, const Scalar& a, size_t prec) {
    Poly sh = p.shift(a);  // p(a + t)
    Series s(prec, p.field().zero());
    for (size_t i = 0; i < prec; ++i) s[i] = sh.coeff(static_cast<long>(i));
    return s;
}

Series series_mul(const Series& x, const Series& y, size_t prec) {
    const BaseField& K = x.at(0).field();
    Series r(prec, K.zero());
    for (size_t i = 0; i < x.size() && i < prec; ++i) {
        if (x[i].is_zero()) continue;
        for (size_t j = 0; j < y.size() && i + j < prec; ++j)
            r[i + j] = r[i + j] + x[i] * y[j];
    }
    return r;
}

Series series_inv(const Series& s, size_t prec) {
    if (s[0].is_zero()) throw math_error("series inversion at a zero constant term");
    const BaseField& K = s[0].field();
    Series r(prec, K.zero());
    Scalar inv0 = s[0].inv();
    r[0] = inv0;
    for (size_t k = 1; k < prec; ++k) {
        Scalar acc = K.zero();
        for (size_t j = 1; j <= k; ++j)
            if (j < s.size()) acc = acc + s[j] * r[k - j];
        r[k] = -(acc * inv0);
    }
    return r;
}

// sqrt of fhat with fhat[0] = b^2 != 0, branch chosen by y[0] = b.
Series series_sqrt(const Series& fhat, const Scalar& b, size_t prec) {
    const BaseField& K = b.field();
    Series y(prec, K.zero());
    y[0] = b;
    Scalar twob_inv = (b + b).inv();
    for (size_t k = 1; k < prec; ++k) {
        Scalar acc = k < fhat.size() ? fhat[k] : K.zero();
        for (size_t j = 1; j < k; ++j) acc = acc - y[j] * y[k - j];
        y[k] = acc * twob_inv;
    }
    return y;
}

Series series_of_ratfunc(const RatFunc& r, const Scalar& a, size_t prec) {
    Series num = series_of_poly_shift(r.num(), a, prec);
    Series den = series_of_poly_shift(r.den(), a, prec);
    return series_mul(num, series_inv(den, prec), prec);
}

long hyper_point_valuation(const FFElem& u, const Scalar& a, const Scalar& b) {
    const ModelPtr& model = u.model();
    const RatFunc& u0 = u.coord(0);
    const RatFunc& u1 = u.coord(1);
    if (u0.den().eval(a).is_zero() || u1.den().eval(a).is_zero())
        throw math_error("element not regular above the chosen fibre");
    // norm = u0^2 - u1^2 f, a nonzero element of K(x); its order bounds v.
    RatFunc norm = u0 * u0 - u1 * u1 * RatFunc::from_poly(model->hyp_f());
    if (norm.is_zero()) throw math_error("norm vanished for a nonzero element (internal)");
    long nu = norm.order_at(a);
    if (nu < 0) throw math_error("element not regular above the chosen fibre");
    size_t prec = static_cast<size_t>(nu) + 1;
    Series s0 = series_of_ratfunc(u0, a, prec);
    Series y = series_sqrt(series_of_poly_shift(model->hyp_f(), a, prec), b, prec);
    Series s1 = series_mul(series_of_ratfunc(u1, a, prec), y, prec);
    for (size_t k = 0; k < prec; ++k) {
        Scalar c = s0[k] + s1[k];
        if (!c.is_zero()) return static_cast<long>(k);
    }
    throw math_error("point valuation exceeded its norm bound (internal)");
}

long tower_v_infinity(const FFElem& u) {
    const ModelPtr& model = u.model();
    const RatFunc& w = model->tower_w();
    const long n = model->n();
    bool pole_at_inf = w.num().degree() > w.den().degree();
    long best = 0;
    bool any = false;
    if (pole_at_inf) {
        // v(x) = -1, v(coord u) = -n; terms c_i(u) x^i have pairwise distinct
        // valuations mod n, so the minimum is exact.
        for (long i = 0; i < n; ++i) {
            const RatFunc& ci = u.coord(static_cast<int>(i));
            if (ci.is_zero()) continue;
            long v = n * ci.v_infinity() - i;
            if (!any || v < best) best = v;
            any = true;
        }
    } else {
        // fall back to the exact pullback u := w(x)
        RatFunc pull = RatFunc::zero(model->base());
        RatFunc xr = RatFunc::x(model->base());
        RatFunc xpow = RatFunc::one(model->base());
        for (long i = 0; i < n; ++i) {
            const RatFunc& ci = u.coord(static_cast<int>(i));
            if (!ci.is_zero()) pull = pull + ci.compose(w) * xpow;
            xpow = xpow * xr;
        }
        if (pull.is_zero()) throw math_error("valuation of zero");
        return pull.v_infinity();
    }
    if (!any) throw math_error("valuation of zero");
    return best;
}

}  // namespace

long valuation(const FFElem& u, const PlaceId& P) {
    if (u.is_zero()) throw math_error("valuation of the zero element");
    const ModelPtr& model = u.model();
    switch (model->kind()) {
        case CurveKind::Rational: {
            if (P.kind == PlaceKind::Infinity0) return u.coord(0).v_infinity();
            if (P.kind == PlaceKind::Finite0) return u.coord(0).order_at(*P.a);
            throw math_error("unsupported place for the rational model");
        }
        case CurveKind::Hyperelliptic: {
            if (P.kind == PlaceKind::InfinityHyp) {
                const long g = model->genus();
                long best = 0;
                bool any = false;
                if (!u.coord(0).is_zero()) {
                    best = 2 * u.coord(0).v_infinity();
                    any = true;
                }
                if (!u.coord(1).is_zero()) {
                    long v = 2 * u.coord(1).v_infinity() - (2 * g + 1);
                    if (!any || v < best) best = v;
                    any = true;
                }
                return best;
            }
            if (P.kind == PlaceKind::Point) {
                Scalar fa = model->hyp_f().eval(*P.a);
                if (fa.is_zero()) throw math_error("ramified point place not supported");
                if (!(*P.b * *P.b == fa)) throw math_error("point not on the curve");
                return hyper_point_valuation(u, *P.a, *P.b);
            }
            throw math_error("unsupported place for the hyperelliptic model");
        }
        case CurveKind::Tower: {
            if (P.kind == PlaceKind::Infinity0) return tower_v_infinity(u);
            throw math_error("only the infinite place is supported on towers");
        }
    }
    throw math_error("unreachable");
}

long v_infty(const FFElem& u) { return valuation(u, canonical_infinity(u.model())); }

Scalar evaluate(const FFElem& u, const PlaceId& P) {
    const ModelPtr& model = u.model();
    if (model->kind() == CurveKind::Rational && P.kind == PlaceKind::Finite0)
        return u.coord(0).eval(*P.a);
    if (model->kind() == CurveKind::Hyperelliptic && P.kind == PlaceKind::Point) {
        Scalar fa = model->hyp_f().eval(*P.a);
        if (fa.is_zero() || !(*P.b * *P.b == fa)) throw math_error("invalid point place");
        return u.coord(0).eval(*P.a) + u.coord(1).eval(*P.a) * *P.b;
    }
    throw math_error("evaluation supported only at finite rational places and points");
}

std::vector<FibrePoint> split_points(const ModelPtr& model, const Scalar& a) {
    if (model->kind() != CurveKind::Hyperelliptic)
        throw math_error("split_points requires a hyperelliptic model");
    Scalar fa = model->hyp_f().eval(a);
    if (fa.is_zero()) return {FibrePoint{a, model->base().zero(), true}};
    auto r = fa.sqrt();
    if (!r) return {};
    Scalar b1 = *r, b2 = -*r;
    if (b2.canonical_less(b1)) std::swap(b1, b2);
    return {FibrePoint{a, b1, false}, FibrePoint{a, b2, false}};
}

Scalar find_split_locus(const ModelPtr& model, const std::vector<Scalar>& avoid) {
    if (model->kind() != CurveKind::Hyperelliptic)
        throw math_error("find_split_locus requires a hyperelliptic model");
    const BaseField& K = model->base();
    auto limit = K.enum_size();
    u64 max_idx = limit ? std::min<u64>(*limit, 1u << 20) : 20001;  // rationals: 0, +-1, ..., +-10^4
    for (u64 idx = 0; idx < max_idx; ++idx) {
        Scalar a = K.enumerate(idx);
        bool bad = std::any_of(avoid.begin(), avoid.end(), [&](const Scalar& s) { return s == a; });
        if (bad) continue;
        Scalar fa = model->hyp_f().eval(a);
        if (fa.is_zero()) continue;
        if (fa.sqrt()) return a;
    }
    throw search_exhausted("no fully split fibre in the base field; extend the field");
}

}  // namespace fflab
