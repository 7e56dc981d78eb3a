#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

#include <set>
using namespace fflab;
using namespace fflab::test;

TEST_CASE("IntSet parsing, normalization, caps") {
    IntSet a = IntSet::parse("3, 1,5");
    REQUIRE(a.elements() == std::vector<long>{1, 3, 5});
    REQUIRE(!a.is_normalized());
    REQUIRE(a.normalized().elements() == std::vector<long>{0, 1, 2});
    REQUIRE_THROWS_AS(IntSet::parse("1,foo"), input_error);
    REQUIRE_THROWS_AS(IntSet({-1, 3}), input_error);
    REQUIRE_THROWS_AS(IntSet({0, 600}), input_error);
}

TEST_CASE("sumset on examples") {
    IntSet A({0, 1, 3});
    REQUIRE(sumset(IntSet({0}), A) == A);
    REQUIRE(sumset(A, A).elements() == std::vector<long>{0, 1, 2, 3, 4, 6});
    IntSet B({0, 1, 2, 3, 5});
    IntSet BB = sumset(B, B);
    REQUIRE(BB.size() == 10);
    REQUIRE(BB.elements() == std::vector<long>{0, 1, 2, 3, 4, 5, 6, 7, 8, 10});
}

TEST_CASE("freiman_3k4_verify on examples") {
    {
        IntSet A({0, 1, 2, 3, 4});  // full interval: gamma 0
        auto r = freiman_3k4_verify(A);
        REQUIRE(r.gamma == 0);
        REQUIRE(r.hypothesis_met);
        REQUIRE(r.ap_cover_ok);
    }
    {
        auto r = freiman_3k4_verify(IntSet({0, 1, 2, 3, 5}));
        REQUIRE(r.gamma == 1);
        REQUIRE(r.hypothesis_met);
        REQUIRE(r.ap_cover_ok);  // max = 5 = 5 - 1 + 1
    }
    {
        auto r = freiman_3k4_verify(IntSet({0, 1, 3}));
        REQUIRE(r.gamma == 1);
        REQUIRE(!r.hypothesis_met);  // gamma > 0 = k - 3
        REQUIRE(!r.verified);
    }
    REQUIRE_THROWS_AS(freiman_3k4_verify(IntSet({0, 1})), math_error);
    // auto-normalization happens first
    auto r = freiman_3k4_verify(IntSet({2, 4, 6, 8, 12}));
    REQUIRE(r.A.elements() == std::vector<long>{0, 1, 2, 3, 5});
}

TEST_CASE("kneser_mod on examples") {
    {
        // Atilde = Z/4: H is everything
        auto r = kneser_mod(IntSet({0, 1, 2, 3}), 4);
        REQUIRE(r.H.size() == 4);
        REQUIRE(r.H_gen == 1);
    }
    {
        auto r = kneser_mod(IntSet({0, 2, 4}), 6);
        REQUIRE(r.H == std::vector<long>{0, 2, 4});
        REQUIRE(r.H_gen == 2);
        REQUIRE(r.sum2.size() == 3);  // = 2*3 - 3
        REQUIRE(r.bound_ok);
    }
    {
        auto r = kneser_mod(IntSet({0, 1}), 5);
        REQUIRE(r.H == std::vector<long>{0});
        REQUIRE(r.H_gen == 5);
        REQUIRE(r.sum2.size() == 3);
        REQUIRE(r.bound_ok);  // 3 >= 4 - 1
    }
}

TEST_CASE("kneser_mod stabilizer is exactly maximal on random sets") {
    Xorshift64Star rng(99);
    for (int t = 0; t < 100; ++t) {
        long n = 2 + static_cast<long>(rng.below(30));
        std::vector<long> elems{0};
        for (int i = 0; i < 6; ++i) elems.push_back(static_cast<long>(rng.below(64)));
        auto r = kneser_mod(IntSet(elems), n);
        // every h in H stabilizes; every h outside H does not
        std::set<long> s2(r.sum2.begin(), r.sum2.end());
        std::set<long> H(r.H.begin(), r.H.end());
        for (long h = 0; h < n; ++h) {
            bool stab = true;
            for (long v : r.sum2) stab = stab && s2.count((v + h) % n) > 0;
            REQUIRE(stab == (H.count(h) > 0));
        }
    }
}

TEST_CASE("lev_smeliansky_report on examples") {
    {
        auto r = lev_smeliansky_report(IntSet({0, 1, 2, 3, 5}));
        REQUIRE(r.n == 5);
        REQUIRE(r.atilde_size == 4);
        REQUIRE(r.sum2_size == 5);
        REQUIRE(r.hypothesis_met);
        REQUIRE(r.chain_ok);  // 5 <= 4 + 1
    }
    {
        // full interval: Atilde + Atilde covers Z/n
        auto r = lev_smeliansky_report(IntSet({0, 1, 2, 3, 4, 5}));
        REQUIRE(r.sum2_size == 5);
        REQUIRE(r.chain_ok);
    }
    {
        auto r = lev_smeliansky_report(IntSet({0, 1, 3}));
        REQUIRE(!r.hypothesis_met);  // inequalities reported, not asserted
    }
}

TEST_CASE("monomial_bridge on examples") {
    BaseField Q = QQ();
    {
        BridgeReport r = monomial_bridge(IntSet({0, 1, 2}), Q);
        REQUIRE(r.gamma_ff == 0);
        REQUIRE(r.codim == 0);
        REQUIRE(r.dims_match);
        REQUIRE(r.divisor_ok);
    }
    {
        BridgeReport r = monomial_bridge(IntSet({0, 1, 2, 3, 5}), Q);
        REQUIRE(r.dimS2 == 10);
        REQUIRE(r.codim == 1);
        REQUIRE(r.gamma_add == r.gamma_ff);
        REQUIRE(r.verdicts_agree);
        REQUIRE(r.theorem.codim_ok);
    }
    {
        BridgeReport r = monomial_bridge(IntSet({0, 1, 3}), Q);
        REQUIRE(!r.theorem.hypothesis_met);
        REQUIRE(r.verdicts_agree);
    }
}

TEST_CASE("bridge equality dim S^2 = |A+A| on random sets over Q and F_101") {
    for (const BaseField& K : {QQ(), F101()}) {
        Xorshift64Star rng(2718);
        for (int t = 0; t < 100; ++t) {
            std::vector<long> elems{0};
            long maxe = 2 + static_cast<long>(rng.below(20));
            for (int i = 0; i < 6; ++i) elems.push_back(1 + static_cast<long>(rng.below(maxe)));
            IntSet A = IntSet(elems).normalized();
            BridgeReport r = monomial_bridge(A, K);
            REQUIRE(r.dims_match);
            IntSet B(elems);
            IntSet AB = sumset(A, B);
            ModelPtr m = CurveModel::rational(K);
            KSubspace SA = monomial_span(m, A.elements());
            KSubspace SB = monomial_span(m, B.elements());
            REQUIRE(k_product(SA, SB).dim() == static_cast<int>(AB.size()));
        }
    }
}

TEST_CASE("additive and bridge verdicts agree on every normalized set, exhaustive small range") {
    // all normalized A with |A| in [3, 5], max A <= 8
    BaseField Q = QQ();
    for (unsigned mask = 0; mask < (1u << 8); ++mask) {
        std::vector<long> elems{0};
        for (int b = 0; b < 8; ++b)
            if (mask & (1u << b)) elems.push_back(b + 1);
        IntSet A(elems);
        if (A.size() < 3 || A.size() > 5) continue;
        if (!A.is_normalized()) continue;
        Freiman3k4Report add = freiman_3k4_verify(A);
        BridgeReport br = monomial_bridge(A, Q);
        REQUIRE(add.hypothesis_met == br.theorem.hypothesis_met);
        REQUIRE(add.gamma == br.gamma_ff);
        if (add.hypothesis_met) {
            REQUIRE(add.ap_cover_ok);
            REQUIRE(br.theorem.genus_ok);
            REQUIRE(br.theorem.codim_ok);
        }
    }
}
