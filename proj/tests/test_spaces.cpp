#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace fflab;
using namespace fflab::test;

namespace {

// exhaustive membership-based intersection for small fields and dimensions
KSubspace brute_mixed_intersect(const KSubspace& S, const KxSubspace& V) {
    const BaseField& K = S.model()->base();
    auto size = K.enum_size();
    REQUIRE(size.has_value());
    u64 q = *size;
    u64 total = 1;
    for (int i = 0; i < S.dim(); ++i) total *= q;
    std::vector<FFElem> found;
    for (u64 code = 0; code < total; ++code) {
        u64 rem = code;
        FFElem e = FFElem::zero(S.model());
        for (int i = 0; i < S.dim(); ++i) {
            Scalar c = K.enumerate(rem % q);
            rem /= q;
            if (!c.is_zero()) e = e + S.basis()[static_cast<size_t>(i)] * c;
        }
        if (kx_member(V, e)) found.push_back(e);
    }
    return k_span(S.model(), found);
}

}  // namespace

// ===========================================================================
// K-subspaces
// ===========================================================================

TEST_CASE("k_span canonicality on worked examples") {
    ModelPtr m = CurveModel::rational(QQ());
    FFElem one = FFElem::one(m);
    FFElem x = FFElem::coordinate(m);

    KSubspace a = k_span(m, {one, x, x * FFElem::from_scalar(m, QQ().from_int(2))});
    REQUIRE(a.dim() == 2);
    REQUIRE(a.basis()[0] == one);
    REQUIRE(a.basis()[1] == x);

    // shuffled generators give the identical basis
    KSubspace b = k_span(m, {x, one + x, one});
    REQUIRE(a == b);

    // dependency: {x+y, x, y} has dim 2
    ModelPtr h = genus1(F101());
    FFElem hx = FFElem::coordinate(h), hy = FFElem::generator(h);
    REQUIRE(k_span(h, {hx + hy, hx, hy}).dim() == 2);

    // denominators: {1/(x+1), x/(x+1)} is 2-dimensional with common_den x+1
    KSubspace c = k_span(m, {rf(m, {1}, {1, 1}), rf(m, {0, 1}, {1, 1})});
    REQUIRE(c.dim() == 2);
    REQUIRE(c.common_den() == poly(QQ(), {1, 1}));
}

TEST_CASE("k_span canonicality on shuffled random generators") {
    ModelPtr m = genus1(F101());
    Xorshift64Star rng(101);
    for (int t = 0; t < 30; ++t) {
        std::vector<FFElem> gens;
        for (int i = 0; i < 5; ++i) gens.push_back(rand_elem(m, 2, rng));
        KSubspace s1 = k_span(m, gens);
        // rotate and duplicate
        std::vector<FFElem> shuffled(gens.rbegin(), gens.rend());
        shuffled.push_back(gens[0]);
        KSubspace s2 = k_span(m, shuffled);
        REQUIRE(s1 == s2);
    }
}

TEST_CASE("k_product dimensions follow sumset sizes for monomial spans") {
    ModelPtr m = CurveModel::rational(QQ());
    KSubspace s1 = monomial_span(m, {0, 1});
    KSubspace p1 = k_product(s1, s1);
    REQUIRE(p1.dim() == 3);

    KSubspace s2 = monomial_span(m, {0, 1, 3});
    IntSet A({0, 1, 3});
    REQUIRE(k_product(s2, s2).dim() == static_cast<int>(sumset(A, A).size()));

    Xorshift64Star rng(7);
    for (int t = 0; t < 40; ++t) {
        std::vector<long> exps{0};
        for (int i = 0; i < 5; ++i) exps.push_back(1 + static_cast<long>(rng.below(14)));
        IntSet B(exps);
        KSubspace sb = monomial_span(m, B.elements());
        IntSet BB = sumset(B, B);
        REQUIRE(k_product(sb, sb).dim() == static_cast<int>(BB.size()));
    }
}

TEST_CASE("k_product on the genus-1 model flattens the expected monomials") {
    ModelPtr m = genus1(F101());
    FFElem one = FFElem::one(m), x = FFElem::coordinate(m), y = FFElem::generator(m);
    KSubspace S = k_span(m, {one, x, x * x, y});
    KSubspace S2 = k_product(S, S);
    REQUIRE(S2.dim() == 8);
    // y^2 = f reduces products into span{1, x, x^2, x^3, x^4, y, xy, x^2 y}
    for (const auto& e : {one, x, x.pow(2), x.pow(3), x.pow(4), y, x * y, x * x * y})
        REQUIRE(k_member(S2, e));
}

TEST_CASE("lattice operations: sum, intersection, membership, Grassmann identity") {
    ModelPtr m = genus1(F101());
    FFElem one = FFElem::one(m), x = FFElem::coordinate(m), y = FFElem::generator(m);
    KSubspace S = k_span(m, {one, x, y});
    REQUIRE(k_intersect(S, S) == S);

    // pivot example: S cap yS = span{y}, dim(S + yS) = 5
    KSubspace yS = k_scale(S, y);
    KSubspace inter = k_intersect(S, yS);
    REQUIRE(inter.dim() == 1);
    REQUIRE(k_member(inter, y));
    REQUIRE(k_sum(S, yS).dim() == 5);

    Xorshift64Star rng(17);
    for (int t = 0; t < 200; ++t) {
        std::vector<FFElem> g1, g2;
        for (int i = 0; i < 3; ++i) g1.push_back(rand_poly_elem(m, 2, rng));
        for (int i = 0; i < 3; ++i) g2.push_back(rand_poly_elem(m, 2, rng));
        KSubspace A = k_span(m, g1), B = k_span(m, g2);
        REQUIRE(k_sum(A, B).dim() + k_intersect(A, B).dim() == A.dim() + B.dim());
    }
}

// ===========================================================================
// K(x)-subspaces
// ===========================================================================

TEST_CASE("kx_span dimensions") {
    ModelPtr m = genus1(F101());
    FFElem one = FFElem::one(m), x = FFElem::coordinate(m), y = FFElem::generator(m);
    ModelPtr r = CurveModel::rational(F101());
    REQUIRE(kx_span(k_span(r, {FFElem::one(r), FFElem::coordinate(r)})).dim() == 1);
    REQUIRE(kx_span(k_span(m, {one, y})).dim() == 2);
    REQUIRE(kx_span(k_span(m, {one, x, y, x * y})).dim() == 2);
    REQUIRE(kx_span(k_span(m, {one, x})).dim() == 1);
}

TEST_CASE("stabilizer on trivial and tower examples") {
    ModelPtr m = genus1(F101());
    FFElem one = FFElem::one(m), y = FFElem::generator(m);
    // full space: St = F
    KxSubspace full = kx_span_elems(m, {one, y});
    REQUIRE(stabilizer(full).dim() == 2);
    // K(x) alone: St = K(x)
    KxSubspace kx1 = kx_span_elems(m, {one});
    REQUIRE(stabilizer(kx1).dim() == 1);
    REQUIRE_THROWS_AS(stabilizer(kx_span_elems(m, {})), math_error);

    // tower: V = K(u)-span{1, x^2} inside K(x)/K(x^4) has St = K(x^2)
    BaseField K = F101();
    ModelPtr t = CurveModel::tower(K, RatFunc::from_poly(poly(K, {0, 0, 0, 0, 1})));
    FFElem tx = FFElem::generator(t);
    KxSubspace V = kx_span_elems(t, {FFElem::one(t), tx * tx});
    KxSubspace st = stabilizer(V);
    REQUIRE(st.dim() == 2);
    REQUIRE(kx_member(st, tx * tx));
    REQUIRE(!kx_member(st, tx));
}

TEST_CASE("stabilizer maximality: membership in St is exactly the stabilizing property") {
    BaseField K = F7();
    ModelPtr t = CurveModel::tower(K, RatFunc::from_poly(Poly::monomial(K.one(), 4)));
    Xorshift64Star rng(611);
    for (int trial = 0; trial < 15; ++trial) {
        std::vector<FFElem> gens;
        int count = 1 + static_cast<int>(rng.below(3));
        for (int i = 0; i < count; ++i) gens.push_back(rand_poly_elem(t, 1, rng));
        KxSubspace V = kx_span_elems(t, gens);
        if (V.is_zero()) continue;
        KxSubspace st = stabilizer(V);
        for (int probe = 0; probe < 20; ++probe) {
            FFElem z = rand_poly_elem(t, 1, rng);
            if (z.is_zero()) continue;
            bool stabilizes = true;
            for (const auto& v : V.basis())
                stabilizes = stabilizes && kx_member(V, z * v);
            REQUIRE(stabilizes == kx_member(st, z));
        }
    }
}

TEST_CASE("kx_product examples incl. the tower Kneser equality case") {
    ModelPtr m = genus1(F101());
    KxSubspace kx1 = kx_span_elems(m, {FFElem::one(m)});
    REQUIRE(kx_product(kx1, kx1).dim() == 1);
    KxSubspace full = kx_span_elems(m, {FFElem::one(m), FFElem::generator(m)});
    REQUIRE(kx_product(full, full).dim() == 2);

    BaseField K = F101();
    ModelPtr t = CurveModel::tower(K, RatFunc::from_poly(poly(K, {0, 0, 0, 0, 1})));
    FFElem tx = FFElem::generator(t);
    KxSubspace U = kx_span_elems(t, {FFElem::one(t), tx});
    auto pc = kx_product_checked(U, U);
    REQUIRE(pc.product.dim() == 3);  // {1, x, x^2}: 2 + 2 - 1 with St = K(u)
    REQUIRE(pc.st.dim() == 1);
    REQUIRE(pc.kneser_ok);
}

TEST_CASE("Kneser property suite on random pairs per model") {
    BaseField K = F101();
    std::vector<ModelPtr> models = {
        genus1(K), genus2(K),
        CurveModel::tower(K, RatFunc::from_poly(poly(K, {0, 0, 0, 0, 1}))),   // x^4
    };
    for (const auto& m : models) {
        Xorshift64Star rng(55);
        for (int t = 0; t < 60; ++t) {
            std::vector<FFElem> gu, gv;
            for (int i = 0; i < 1 + static_cast<int>(rng.below(2)); ++i)
                gu.push_back(rand_poly_elem(m, 2, rng));
            for (int i = 0; i < 1 + static_cast<int>(rng.below(2)); ++i)
                gv.push_back(rand_poly_elem(m, 2, rng));
            KxSubspace U = kx_span_elems(m, gu), V = kx_span_elems(m, gv);
            if (U.is_zero() || V.is_zero()) continue;
            auto pc = kx_product_checked(U, V);  // throws on a Kneser violation
            REQUIRE(pc.kneser_ok);
            REQUIRE(kx_member(pc.st, FFElem::one(m)));
            REQUIRE(kx_product_raw(pc.st, pc.product) == pc.product);
        }
    }
}

TEST_CASE("Cauchy-Davenport over K on random pairs") {
    // on these models the constant field is exactly K, so the bound holds
    for (ModelPtr m : {genus1(F101()), CurveModel::rational(F7())}) {
        Xorshift64Star rng(77);
        int violations = 0;
        for (int t = 0; t < 200; ++t) {
            std::vector<FFElem> g1, g2;
            for (int i = 0; i < 2; ++i) g1.push_back(rand_poly_elem(m, 2, rng));
            for (int i = 0; i < 2; ++i) g2.push_back(rand_poly_elem(m, 2, rng));
            KSubspace A = k_span(m, g1), B = k_span(m, g2);
            if (A.is_zero() || B.is_zero()) continue;
            if (k_product(A, B).dim() < A.dim() + B.dim() - 1) ++violations;
        }
        REQUIRE(violations == 0);
    }
}

TEST_CASE("mixed_intersect on worked examples") {
    ModelPtr m = genus1(F101());
    FFElem one = FFElem::one(m), x = FFElem::coordinate(m), y = FFElem::generator(m);
    KSubspace S = k_span(m, {one, x, y});
    // V containing S gives S back
    KxSubspace full = kx_span_elems(m, {one, y});
    REQUIRE(mixed_intersect(S, full) == S);
    // V = K(x): the K(x)-rational part of S
    KxSubspace kx1 = kx_span_elems(m, {one});
    KSubspace sl = mixed_intersect(S, kx1);
    REQUIRE(sl.dim() == 2);
    REQUIRE(k_member(sl, one));
    REQUIRE(k_member(sl, x));
}

TEST_CASE("mixed_intersect agrees with exhaustive enumeration over F_3") {
    BaseField K = F3();
    ModelPtr m = CurveModel::hyperelliptic(K, poly(K, {1, 2, 0, 1}));  // x^3+2x+1 squarefree over F_3
    Xorshift64Star rng(202);
    for (int t = 0; t < 12; ++t) {
        std::vector<FFElem> gens;
        for (int i = 0; i < 3; ++i) gens.push_back(rand_poly_elem(m, 1, rng));
        KSubspace S = k_span(m, gens);
        if (S.dim() == 0 || S.dim() > 4) continue;
        std::vector<FFElem> vg;
        for (int i = 0; i < 1 + static_cast<int>(rng.below(2)); ++i)
            vg.push_back(rand_poly_elem(m, 1, rng));
        KxSubspace V = kx_span_elems(m, vg);
        if (V.is_zero()) continue;
        REQUIRE(mixed_intersect(S, V) == brute_mixed_intersect(S, V));
    }
}

// ===========================================================================
// Divisors and Riemann-Roch
// ===========================================================================

TEST_CASE("rr_basis on worked examples") {
    ModelPtr r = CurveModel::rational(QQ());
    Divisor Dn;
    Dn.add(PlaceId::infinity0(), 4);
    RRBasis rb = rr_basis(r, Dn);
    REQUIRE(rb.dim == 5);
    for (long j = 0; j <= 4; ++j)
        REQUIRE(k_member(k_span(r, rb.basis), pol(r, [&] {
            std::vector<i64> cs(static_cast<size_t>(j) + 1, 0);
            cs.back() = 1;
            return cs;
        }())));

    ModelPtr h1 = genus1(F101());
    Divisor D3;
    D3.add(PlaceId::infinity_hyp(), 3);
    RRBasis rb3 = rr_basis(h1, D3);
    REQUIRE(rb3.dim == 3);
    REQUIRE(rb3.basis[0] == FFElem::one(h1));
    REQUIRE(rb3.basis[1] == FFElem::coordinate(h1));
    REQUIRE(rb3.basis[2] == FFElem::generator(h1));

    ModelPtr h2 = genus2(F101());
    Divisor D2;
    D2.add(PlaceId::infinity_hyp(), 2);
    RRBasis rb2 = rr_basis(h2, D2);
    REQUIRE(rb2.dim == 2);  // {1, x}, Clifford bound attained
}

TEST_CASE("rr_basis membership: (u) + D >= 0 at supported places") {
    ModelPtr h = genus2(F101());
    for (long n = 0; n <= 9; ++n) {
        Divisor D;
        D.add(PlaceId::infinity_hyp(), n);
        RRBasis rb = rr_basis(h, D);
        for (const auto& u : rb.basis) REQUIRE(v_infty(u) >= -n);
    }
    ModelPtr r = CurveModel::rational(QQ());
    Divisor D;
    Scalar one = QQ().from_int(1);
    D.add(PlaceId::finite0(one), 2);
    D.add(PlaceId::infinity0(), 1);
    RRBasis rb = rr_basis(r, D);
    REQUIRE(rb.dim == 4);
    for (const auto& u : rb.basis) {
        REQUIRE(valuation(u, PlaceId::finite0(one)) >= -2);
        REQUIRE(valuation(u, PlaceId::infinity0()) >= -1);
    }
}

TEST_CASE("rr monotonicity in the divisor") {
    ModelPtr h = genus1(F101());
    int last = 0;
    for (long n = 0; n <= 12; ++n) {
        Divisor D;
        D.add(PlaceId::infinity_hyp(), n);
        int dim = rr_basis(h, D).dim;
        REQUIRE(dim >= last);
        last = dim;
    }
}

TEST_CASE("minimal_divisor worked examples and minimality") {
    ModelPtr h = genus1(F101());
    KSubspace S = k_span(h, {FFElem::one(h), FFElem::coordinate(h)});
    Divisor D = minimal_divisor(S);
    REQUIRE(D.degree() == 2);
    REQUIRE(D.mult(PlaceId::infinity_hyp()) == 2);

    ModelPtr r = CurveModel::rational(QQ());
    KSubspace Sm = monomial_span(r, {0, 1, 2, 3, 5});
    Divisor Dm = minimal_divisor(Sm);
    REQUIRE(Dm.mult(PlaceId::infinity0()) == 5);
    REQUIRE(Dm.degree() == 5);

    // S = {1, 1/(x-1), 1/(x-1)^2} -> D = 2 (x-1)
    KSubspace Sp = k_span(r, {FFElem::one(r), rf(r, {1}, {-1, 1}),
                              rf(r, {1}, {1, -2, 1})});
    Divisor Dp = minimal_divisor(Sp);
    REQUIRE(Dp.degree() == 2);
    REQUIRE(Dp.mult(PlaceId::finite0(QQ().from_int(1))) == 2);

    // minimality: decrementing any entry loses some basis element
    for (const auto& [P, mult] : Dp.entries()) {
        Divisor smaller = Dp;
        smaller.add(P, -1);
        RRBasis rb = rr_basis(r, smaller);
        KSubspace rs = k_span(r, rb.basis);
        bool all_in = true;
        for (const auto& b : Sp.basis()) all_in = all_in && k_member(rs, b);
        REQUIRE(!all_in);
    }
}

TEST_CASE("rr_dim_identities across genus 0..2") {
    BaseField K = F101();
    for (ModelPtr m : {CurveModel::rational(K), genus1(K), genus2(K)}) {
        auto rows = rr_dim_identities(m, 0, 20);
        for (const auto& row : rows) {
            if (row.rr_exact_applies) REQUIRE(row.rr_exact_ok);
            if (row.clifford_applies) REQUIRE(row.clifford_ok);
        }
    }
}

TEST_CASE("gamma equals g on full Riemann-Roch spaces") {
    BaseField K = F101();
    for (ModelPtr m : {genus1(K), genus2(K)}) {
        const long g = m->genus();
        for (long n = 2 * g + 1; n <= 2 * g + 5; ++n) {
            Divisor D;
            D.add(PlaceId::infinity_hyp(), n);
            RRBasis rb = rr_basis(m, D);
            KSubspace S = k_span(m, rb.basis);
            REQUIRE(combinatorial_genus(S) == g);
        }
    }
}

TEST_CASE("rr_basis with imposed zeros (negative multiplicities)") {
    ModelPtr r = CurveModel::rational(QQ());
    Scalar zero = QQ().zero();
    Divisor D;
    D.add(PlaceId::infinity0(), 3);
    D.add(PlaceId::finite0(zero), -1);  // functions must vanish at 0
    RRBasis rb = rr_basis(r, D);
    REQUIRE(rb.dim == 3);  // deg D + 1 = 3
    for (const auto& b : rb.basis) {
        REQUIRE(valuation(b, PlaceId::finite0(zero)) >= 1);
        REQUIRE(valuation(b, PlaceId::infinity0()) >= -3);
    }
}

TEST_CASE("lattice identities hold for elements with denominators") {
    ModelPtr m = genus1(F101());
    Xorshift64Star rng(271);
    for (int t = 0; t < 60; ++t) {
        std::vector<FFElem> g1, g2;
        for (int i = 0; i < 3; ++i) g1.push_back(rand_elem(m, 2, rng));
        for (int i = 0; i < 3; ++i) g2.push_back(rand_elem(m, 2, rng));
        KSubspace A = k_span(m, g1), B = k_span(m, g2);
        REQUIRE(k_sum(A, B).dim() + k_intersect(A, B).dim() == A.dim() + B.dim());
        KSubspace inter = k_intersect(A, B);
        for (const auto& e : inter.basis()) {
            REQUIRE(k_member(A, e));
            REQUIRE(k_member(B, e));
        }
    }
}

TEST_CASE("Kneser checks hold for K(x)-subspaces with denominators") {
    BaseField K = F101();
    ModelPtr t = CurveModel::tower(K, RatFunc::from_poly(Poly::monomial(K.one(), 4)));
    Xorshift64Star rng(272);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<FFElem> gu{rand_elem(t, 1, rng)}, gv{rand_elem(t, 1, rng)};
        if (rng.coin()) gu.push_back(rand_elem(t, 1, rng));
        KxSubspace U = kx_span_elems(t, gu), V = kx_span_elems(t, gv);
        if (U.is_zero() || V.is_zero()) continue;
        auto pc = kx_product_checked(U, V);
        REQUIRE(pc.kneser_ok);
    }
}
