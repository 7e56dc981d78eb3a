#ifndef FFLAB_TEST_HELPERS_HPP
#define FFLAB_TEST_HELPERS_HPP

#include <vector>

#include "fflab/additive.hpp"
#include "fflab/json_io.hpp"
#include "fflab/rng.hpp"
#include "fflab/search.hpp"

namespace fflab::test {

inline BaseField F101() { return BaseField::finite(101); }
inline BaseField F7() { return BaseField::finite(7); }
inline BaseField F5() { return BaseField::finite(5); }
inline BaseField F3() { return BaseField::finite(3); }
inline BaseField QQ() { return BaseField::rationals(); }

inline Poly poly(const BaseField& f, const std::vector<i64>& cs) { return Poly::from_ints(f, cs); }

/// y^2 = x^3 + x + 1: squarefree over Q and F_101, genus 1.
inline ModelPtr genus1(const BaseField& f) {
    return CurveModel::hyperelliptic(f, poly(f, {1, 1, 0, 1}));
}

/// y^2 = x^5 + x + 1 over F_101 (squarefree there), genus 2.
inline ModelPtr genus2(const BaseField& f) {
    return CurveModel::hyperelliptic(f, poly(f, {1, 1, 0, 0, 0, 1}));
}

inline FFElem rf(const ModelPtr& m, const std::vector<i64>& num, const std::vector<i64>& den) {
    return FFElem::from_ratfunc(m, RatFunc(poly(m->base(), num), poly(m->base(), den)));
}

inline FFElem pol(const ModelPtr& m, const std::vector<i64>& cs) { return rf(m, cs, {1}); }

/// c0(x) + c1(x) y on a hyperelliptic model.
inline FFElem hyp(const ModelPtr& m, const std::vector<i64>& c0, const std::vector<i64>& c1) {
    return FFElem(m, {RatFunc::from_poly(poly(m->base(), c0)),
                      RatFunc::from_poly(poly(m->base(), c1))});
}

inline KSubspace monomial_span(const ModelPtr& m, const std::vector<long>& exps) {
    std::vector<FFElem> gens;
    for (long e : exps)
        gens.push_back(FFElem::from_ratfunc(m, RatFunc::from_poly(
            Poly::monomial(m->base().one(), e))));
    return k_span(m, gens);
}

inline Scalar rand_scalar(const BaseField& K, Xorshift64Star& rng) {
    if (K.is_rationals()) {
        long num = static_cast<long>(rng.below(21)) - 10;
        long den = 1 + static_cast<long>(rng.below(6));
        return K.from_mpq(mpq_class(num, den));
    }
    auto size = K.enum_size();
    u64 span = size ? std::min<u64>(*size, 1u << 16) : 256;
    return K.enumerate(rng.below(span));
}

inline Poly rand_poly(const BaseField& K, long maxdeg, Xorshift64Star& rng) {
    std::vector<Scalar> cs;
    long deg = static_cast<long>(rng.below(static_cast<u64>(maxdeg + 1)));
    for (long i = 0; i <= deg; ++i) cs.push_back(rand_scalar(K, rng));
    return Poly(K, cs);
}

inline Poly rand_nonzero_poly(const BaseField& K, long maxdeg, Xorshift64Star& rng) {
    for (;;) {
        Poly p = rand_poly(K, maxdeg, rng);
        if (!p.is_zero()) return p;
    }
}

inline RatFunc rand_ratfunc(const BaseField& K, long maxdeg, Xorshift64Star& rng) {
    return RatFunc(rand_poly(K, maxdeg, rng), rand_nonzero_poly(K, maxdeg, rng));
}

inline FFElem rand_elem(const ModelPtr& m, long maxdeg, Xorshift64Star& rng) {
    std::vector<RatFunc> coords;
    for (int j = 0; j < m->n(); ++j) coords.push_back(rand_ratfunc(m->base(), maxdeg, rng));
    return FFElem(m, std::move(coords));
}

inline FFElem rand_nonzero_elem(const ModelPtr& m, long maxdeg, Xorshift64Star& rng) {
    for (;;) {
        FFElem e = rand_elem(m, maxdeg, rng);
        if (!e.is_zero()) return e;
    }
}

/// Elements with polynomial coordinates only (poles at infinity).
inline FFElem rand_poly_elem(const ModelPtr& m, long maxdeg, Xorshift64Star& rng) {
    std::vector<RatFunc> coords;
    for (int j = 0; j < m->n(); ++j)
        coords.push_back(RatFunc::from_poly(rand_poly(m->base(), maxdeg, rng)));
    return FFElem(m, std::move(coords));
}

}  // namespace fflab::test

#endif
