#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace fflab;
using namespace fflab::test;

// ===========================================================================
// Scalars
// ===========================================================================

TEST_CASE("field axioms hold on random triples") {
    for (const BaseField& K : {QQ(), F101(), BaseField::finite(2, 4), BaseField::finite(3, 2)}) {
        Xorshift64Star rng(7);
        for (int i = 0; i < 1000; ++i) {
            Scalar a = rand_scalar(K, rng), b = rand_scalar(K, rng), c = rand_scalar(K, rng);
            REQUIRE((a + b) + c == a + (b + c));
            REQUIRE((a * b) * c == a * (b * c));
            REQUIRE(a * (b + c) == a * b + a * c);
            REQUIRE(a + b == b + a);
            REQUIRE(a * b == b * a);
            REQUIRE(a + K.zero() == a);
            REQUIRE(a * K.one() == a);
            if (!a.is_zero()) REQUIRE(a * a.inv() == K.one());
        }
    }
}

TEST_CASE("canonical modulus is the lexicographically least irreducible") {
    // F_4 = F_2[t]/(t^2 + t + 1), the unique degree-2 irreducible
    BaseField f4 = BaseField::finite(2, 2);
    REQUIRE(f4.modulus() == std::vector<u64>{1, 1});
    // F_9: (c0, c1) lex order puts t^2 + 1 first
    BaseField f9 = BaseField::finite(3, 2);
    REQUIRE(f9.modulus() == std::vector<u64>{1, 0});
}

TEST_CASE("finite field sqrt squares back; non-residues rejected") {
    for (const BaseField& K : {F101(), BaseField::finite(13), BaseField::finite(3, 2)}) {
        mpz_class q = K.order();
        int with_root = 0;
        auto size = K.enum_size();
        for (u64 i = 0; i < *size; ++i) {
            Scalar a = K.enumerate(i);
            auto r = a.sqrt();
            if (r) {
                ++with_root;
                REQUIRE(*r * *r == a);
            }
        }
        // (q-1)/2 nonzero squares plus zero
        mpz_class expected = (q - 1) / 2 + 1;
        REQUIRE(mpz_class(with_root) == expected);
    }
}

TEST_CASE("rational sqrt handles perfect squares only") {
    BaseField K = QQ();
    REQUIRE(K.from_mpq(mpq_class(9, 4)).sqrt().has_value());
    REQUIRE(*K.from_mpq(mpq_class(9, 4)).sqrt() == K.from_mpq(mpq_class(3, 2)));
    REQUIRE(!K.from_int(2).sqrt().has_value());
    REQUIRE(!K.from_int(-4).sqrt().has_value());
}

// ===========================================================================
// Polynomials
// ===========================================================================

TEST_CASE("poly_gcd on examples") {
    BaseField K = QQ();
    Poly a = poly(K, {-1, 0, 1});  // x^2 - 1
    Poly b = poly(K, {-1, 1});     // x - 1
    REQUIRE(poly_gcd(a, b) == b);

    // gcd with zero is the monic version of the other argument
    Poly x2 = poly(K, {0, 2});
    REQUIRE(poly_gcd(x2, Poly::zero(K)) == poly(K, {0, 1}));
    REQUIRE(poly_gcd(Poly::zero(K), Poly::zero(K)).is_zero());
}

TEST_CASE("poly_gcd over F_5 agrees with the exhaustive divisor oracle") {
    BaseField K = F5();
    Poly a = poly(K, {0, -1, 0, 0, 0, 1});  // x^5 - x
    Poly b = poly(K, {1, 0, 1});            // x^2 + 1
    Poly g = poly_gcd(a, b);

    // oracle: scan all monic polynomials of degree <= 2 for the largest
    // common divisor
    Poly best = Poly::one(K);
    for (long deg = 1; deg <= 2; ++deg) {
        std::vector<u64> idx(static_cast<size_t>(deg), 0);
        u64 total = 1;
        for (long i = 0; i < deg; ++i) total *= 5;
        for (u64 code = 0; code < total; ++code) {
            std::vector<Scalar> cs;
            u64 rem = code;
            for (long i = 0; i < deg; ++i) {
                cs.push_back(K.from_int(static_cast<i64>(rem % 5)));
                rem /= 5;
            }
            cs.push_back(K.one());
            Poly cand(K, cs);
            if (cand.divides(a) && cand.divides(b) && cand.degree() > best.degree()) best = cand;
        }
    }
    REQUIRE(g == best);
    REQUIRE(g == b.monic());
}

TEST_CASE("poly_gcd divides its arguments and is maximal on planted factors") {
    for (const BaseField& K : {QQ(), F101()}) {
        Xorshift64Star rng(11);
        for (int i = 0; i < 100; ++i) {
            Poly g = rand_nonzero_poly(K, 3, rng);
            Poly u = rand_nonzero_poly(K, 3, rng);
            Poly v = rand_nonzero_poly(K, 3, rng);
            Poly a = g * u, b = g * v;
            Poly d = poly_gcd(a, b);
            REQUIRE(d.divides(a));
            REQUIRE(d.divides(b));
            REQUIRE(d.degree() >= g.degree());  // the planted factor divides d
            REQUIRE((g.monic()).divides(d));
        }
    }
}

TEST_CASE("is_squarefree on examples") {
    BaseField K = QQ();
    REQUIRE(is_squarefree(poly(K, {-1, 0, 1})));        // x^2 - 1
    REQUIRE(!is_squarefree(poly(K, {1, -2, 1})));       // (x-1)^2
    BaseField F = BaseField::finite(101);
    REQUIRE(is_squarefree(poly(F, {1, 1, 0, 1})));      // x^3 + x + 1, gcd oracle inside
    // characteristic-p caveat: x^3 over F_3 has zero derivative
    BaseField F3f = F3();
    REQUIRE(!is_squarefree(poly(F3f, {0, 0, 0, 1})));
    REQUIRE_THROWS_AS(is_squarefree(Poly::zero(K)), math_error);
}

TEST_CASE("poly_roots finds multiplicities over both field kinds") {
    BaseField K = QQ();
    // (x-1)^2 (2x+3)
    Poly f = poly(K, {1, -2, 1}) * poly(K, {3, 2});
    auto roots = poly_roots(f);
    REQUIRE(roots.size() == 2);
    bool saw1 = false, saw32 = false;
    for (const auto& [r, m] : roots) {
        if (r == K.from_int(1)) { saw1 = true; REQUIRE(m == 2); }
        if (r == K.from_mpq(mpq_class(-3, 2))) { saw32 = true; REQUIRE(m == 1); }
    }
    REQUIRE(saw1);
    REQUIRE(saw32);

    BaseField F = F7();
    Poly g = poly(F, {0, 1}) * poly(F, {0, 1}) * poly(F, {-2, 1});  // x^2 (x-2)
    auto fr = poly_roots(g);
    REQUIRE(fr.size() == 2);
}

// ===========================================================================
// Rational functions
// ===========================================================================

TEST_CASE("RatFunc canonical form strips planted common factors") {
    for (const BaseField& K : {QQ(), F101()}) {
        Xorshift64Star rng(13);
        for (int i = 0; i < 50; ++i) {
            Poly c = rand_nonzero_poly(K, 2, rng);
            Poly n = rand_poly(K, 3, rng);
            Poly d = rand_nonzero_poly(K, 3, rng);
            RatFunc r(n * c, d * c);
            REQUIRE(poly_gcd(r.num(), r.den()).degree() == 0);
            REQUIRE(r.den().lead().is_one());
            REQUIRE(r == RatFunc(n, d));
        }
    }
}

TEST_CASE("RatFunc field arithmetic and composition") {
    BaseField K = F7();
    RatFunc x = RatFunc::x(K);
    RatFunc r = (x + RatFunc::one(K)) / x;  // (x+1)/x
    REQUIRE(r * x == x + RatFunc::one(K));
    REQUIRE(r - r == RatFunc::zero(K));
    REQUIRE(r.inv() * r == RatFunc::one(K));
    // compose (x+1)/x with x^2: (x^2+1)/x^2
    RatFunc comp = r.compose(x * x);
    REQUIRE(comp == (x * x + RatFunc::one(K)) / (x * x));
}

// ===========================================================================
// Exact elimination
// ===========================================================================

TEST_CASE("rref_K on worked examples") {
    BaseField K = QQ();
    auto S = [&](i64 v) { return K.from_int(v); };
    {
        Matrix<Scalar> m = {{S(2), S(4)}, {S(1), S(2)}};
        auto r = rref_K(m);
        REQUIRE(r.rank == 1);
        REQUIRE(r.rows == Matrix<Scalar>{{S(1), S(2)}});
    }
    {
        Matrix<Scalar> m = {{S(1), S(0), S(0)}, {S(0), S(1), S(0)}, {S(0), S(0), S(1)}};
        auto r = rref_K(m);
        REQUIRE(r.rank == 3);
        REQUIRE(r.rows == m);
    }
    {
        Matrix<Scalar> m = {{S(1), S(1)}, {S(1), S(2)}, {S(0), S(1)}};
        auto r = rref_K(m);
        REQUIRE(r.rank == 2);
        REQUIRE(r.rows == Matrix<Scalar>{{S(1), S(0)}, {S(0), S(1)}});
    }
}

TEST_CASE("rref_K is canonical across row-equivalent inputs") {
    for (const BaseField& K : {QQ(), F101()}) {
        Xorshift64Star rng(17);
        for (int trial = 0; trial < 40; ++trial) {
            const int rows = 3, cols = 5;
            Matrix<Scalar> m(rows);
            for (auto& r : m)
                for (int c = 0; c < cols; ++c) r.push_back(rand_scalar(K, rng));
            // random invertible left multiplier: product of elementary ops
            Matrix<Scalar> m2 = m;
            for (int step = 0; step < 6; ++step) {
                size_t i = rng.below(rows), j = rng.below(rows);
                Scalar c = rand_scalar(K, rng);
                if (i == j) continue;
                for (int col = 0; col < cols; ++col) m2[i][col] = m2[i][col] + c * m2[j][col];
            }
            auto r1 = rref_K(m), r2 = rref_K(m2);
            REQUIRE(r1.rank == r2.rank);
            REQUIRE(r1.rows == r2.rows);
        }
    }
}

TEST_CASE("rref_Kx on worked examples") {
    BaseField K = QQ();
    RatFunc x = RatFunc::x(K);
    RatFunc one = RatFunc::one(K);
    {
        // [[x, x^2], [1, x]] -> rank 1, [[1, x]]
        auto r = rref_Kx({{x, x * x}, {one, x}});
        REQUIRE(r.rank == 1);
        REQUIRE(r.rows == Matrix<RatFunc>{{one, x}});
    }
    {
        auto r = rref_Kx({{one, RatFunc::zero(K)}, {RatFunc::zero(K), x}});
        REQUIRE(r.rank == 2);
        REQUIRE(r.rows == Matrix<RatFunc>{{one, RatFunc::zero(K)}, {RatFunc::zero(K), one}});
    }
    {
        // [[x/(x+1), 1], [1, (x+1)/x]] is rank 1 by cross-multiplication
        RatFunc a = x / (x + one);
        auto r = rref_Kx({{a, one}, {one, a.inv()}});
        REQUIRE(r.rank == 1);
    }
}

TEST_CASE("solve_Kx returns exact solutions verified by residual") {
    BaseField K = F7();
    RatFunc x = RatFunc::x(K);
    RatFunc one = RatFunc::one(K);
    {
        auto s = solve_Kx({{one}}, {x});
        REQUIRE(s.consistent);
        REQUIRE(s.particular == std::vector<RatFunc>{x});
    }
    {
        // one equation, two unknowns: x z0 - z1 = 0 has kernel [[1, x]]
        auto s = solve_Kx({{x, -one}}, {RatFunc::zero(K)});
        REQUIRE(s.consistent);
        REQUIRE(s.kernel.size() == 1);
        REQUIRE(s.kernel[0] == std::vector<RatFunc>{one, x});
    }
    {
        Xorshift64Star rng(23);
        for (int t = 0; t < 20; ++t) {
            Matrix<RatFunc> A(2);
            for (auto& row : A)
                for (int c = 0; c < 2; ++c) row.push_back(rand_ratfunc(K, 2, rng));
            std::vector<RatFunc> b{rand_ratfunc(K, 2, rng), rand_ratfunc(K, 2, rng)};
            auto s = solve_Kx(A, b);
            if (!s.consistent) continue;
            for (int i = 0; i < 2; ++i) {
                RatFunc acc = RatFunc::zero(K);
                for (int j = 0; j < 2; ++j) acc = acc + A[i][j] * s.particular[j];
                REQUIRE(acc == b[i]);
            }
        }
    }
}

TEST_CASE("kernels are actual kernels") {
    BaseField K = F101();
    Xorshift64Star rng(29);
    for (int t = 0; t < 20; ++t) {
        Matrix<RatFunc> A(2);
        for (auto& row : A)
            for (int c = 0; c < 4; ++c) row.push_back(rand_ratfunc(K, 1, rng));
        auto kern = right_kernel_Kx(A, 4);
        REQUIRE(kern.size() >= 2);  // rank <= 2
        for (const auto& v : kern) {
            for (int i = 0; i < 2; ++i) {
                RatFunc acc = RatFunc::zero(K);
                for (int j = 0; j < 4; ++j) acc = acc + A[i][j] * v[j];
                REQUIRE(acc.is_zero());
            }
        }
    }
}

// ===========================================================================
// FPoly
// ===========================================================================

TEST_CASE("fpoly gcd and modular inverse") {
    BaseField K = F7();
    RatFunc u = RatFunc::x(K);
    // mu(T) = T^4 - u, the K(x^4)-tower minimal polynomial
    FPoly mu(K, {-u, RatFunc::zero(K), RatFunc::zero(K), RatFunc::zero(K), RatFunc::one(K)});
    // invert T^2 + 1 modulo mu and check the product reduces to 1
    FPoly a(K, {RatFunc::one(K), RatFunc::zero(K), RatFunc::one(K)});
    FPoly inv = fpoly_invmod(a, mu);
    FPoly prod = (a * inv) % mu;
    REQUIRE(prod.degree() == 0);
    REQUIRE(prod.coeff(0) == RatFunc::one(K));

    FPoly g = fpoly_gcd(a * mu, a * a * mu);
    REQUIRE(g == (a * mu).monic());
}

TEST_CASE("F_25 modulus and enumeration follow the lexicographic convention") {
    BaseField f25 = BaseField::finite(5, 2);
    // lex-least monic irreducible over F_5: t^2 + t + 1 (disc -3 is a non-square)
    REQUIRE(f25.modulus() == std::vector<u64>{1, 1});
    // enumeration is increasing in the canonical order
    for (u64 i = 0; i + 1 < 25; ++i)
        REQUIRE(f25.enumerate(i).canonical_less(f25.enumerate(i + 1)));
    REQUIRE_THROWS_AS(f25.enumerate(25), search_exhausted);
}

TEST_CASE("rref_Kx is canonical across row-equivalent inputs") {
    BaseField K = F7();
    Xorshift64Star rng(83);
    for (int trial = 0; trial < 15; ++trial) {
        const int rows = 3, cols = 4;
        Matrix<RatFunc> m(rows);
        for (auto& r : m)
            for (int c = 0; c < cols; ++c) r.push_back(rand_ratfunc(K, 1, rng));
        Matrix<RatFunc> m2 = m;
        for (int step = 0; step < 5; ++step) {
            size_t i = rng.below(rows), j = rng.below(rows);
            if (i == j) continue;
            RatFunc c = rand_ratfunc(K, 1, rng);
            for (int col = 0; col < cols; ++col) m2[i][col] = m2[i][col] + c * m2[j][col];
        }
        auto r1 = rref_Kx(m), r2 = rref_Kx(m2);
        REQUIRE(r1.rank == r2.rank);
        REQUIRE(r1.rows == r2.rows);
    }
}
