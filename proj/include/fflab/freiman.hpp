#ifndef FFLAB_FREIMAN_HPP
#define FFLAB_FREIMAN_HPP

#include <optional>

#include "fflab/divisor.hpp"

namespace fflab {

// ---------------------------------------------------------------------------
// Pivot selection and the filtered basis
// ---------------------------------------------------------------------------

struct LocalData {
    long N = 0;  // -v_{Qinf}(w)
    long d = 0;  // v_{Qinf}(L) = dZ; defaults to N until a stabilizer refines it
};

struct PivotChoice {
    FFElem w;                     // pole divisor equals the minimal divisor of S
    Divisor D;
    std::vector<FFElem> filtered; // e_0 = 1, ..., e_{k-1} = w, strictly decreasing v
    LocalData local;
};

/// gamma = dim S^2 - 2 dim S + 1.
long combinatorial_genus(const KSubspace& S);

/// Basis with strictly decreasing valuations at the canonical infinite place,
/// produced by valuation-pivoted elimination.
std::vector<FFElem> filtered_basis(const KSubspace& S);

/// Multiplicative translate f0^{-1} S with 1 in the result, f0 the maximal-
/// valuation filtered element. Returns S itself when 1 is already in S and no
/// element has positive valuation.
KSubspace normalize_translate(const KSubspace& S);

/// The pivot w in S with (w)_inf = minimal_divisor(S), built by the
/// deficiency-fixing lambda scan; on rational models w is then shifted by a
/// constant until its zeros are simple. Requires 1 in S.
PivotChoice select_pivot(const KSubspace& S);

/// Rational model: exact subfield-degree test [K(x) : K(S)] = 1 via the
/// gcd of the numerators of s_i(T) - s_i(x) in K(x)[T]. Other models: the
/// iterated-span test dim_{K(coord)} K(coord) S^i = n (stationary limit).
bool generates_field(const KSubspace& S);

// ---------------------------------------------------------------------------
// Verification of the function-field 3k-4 theorem
// ---------------------------------------------------------------------------

struct TheoremReport {
    int k = 0;
    long gamma = 0;
    bool hypothesis_met = false;  // 0 <= gamma <= k - 3
    int g = 0;
    Divisor D;
    int rr_dim = 0;
    int codim = 0;
    bool genus_ok = false;   // g <= gamma
    bool codim_ok = false;   // codim <= gamma - g
    bool generates_field = false;
    bool asserted = false;   // hypothesis_met && generates_field && sound regime
};

TheoremReport verify_theorem(const KSubspace& S);

/// Throws invariant_error when a report that asserted the theorem fails it.
void theorem_assert(const TheoremReport& r);

// ---------------------------------------------------------------------------
// Stabilizer analysis over K(w)
// ---------------------------------------------------------------------------

/// Coordinate plan for K(w)-linear algebra: identity on hyperelliptic and
/// tower models (K(w) = K(model coordinate)), or a tower re-coordinatization
/// of the rational model by the pivot.
struct KxPlan {
    ModelPtr model;        // where S lives
    ModelPtr plan_model;   // where K(w)-linear algebra happens
    bool identity = true;
    std::optional<FFElem> w;  // pivot in model coordinates

    FFElem to_plan(const FFElem& e) const;
    FFElem from_plan(const FFElem& e) const;
};

struct StabilizerAnalysis {
    // report fields
    int k = 0;
    int ell = 0;
    int kappa = 0;
    long tau = 0;
    bool kx_dim_ok = false;      // dim_{K(w)} K(w)S == k-1
    bool kneser_ok = false;
    bool lemma_bound_ok = false; // (2 kappa - 1) ell <= 2k - 4
    bool L_is_full = false;      // ell == [F : K(w)]
    bool hypothesis_met = false;
    bool generates = false;
    bool sound = false;          // the regime where the 3k-4 theorem backs L = F
    LocalData local;
    // machinery for downstream operations
    KxPlan plan;
    KSubspace S_model;       // normalized S in model coordinates
    KSubspace S_plan;        // same space in plan coordinates
    KxSubspace kxS;          // K(w) S
    KxSubspace kxS2;         // K(w) S^2
    KxSubspace L;            // St(K(w) S^2), plan coordinates
    std::vector<FFElem> L_model;  // L basis pulled back to model coordinates
    std::optional<PivotChoice> pivot;
};

StabilizerAnalysis stabilizer_report(const KSubspace& S);

/// Throws invariant_error when the theorem-backed L = F conclusion fails on
/// an analysis inside the sound hypothesis regime.
void stabilizer_assert(const StabilizerAnalysis& a);

// ---------------------------------------------------------------------------
// Evaluation at a split fibre (the S0 experiment)
// ---------------------------------------------------------------------------

struct EvaluationReport {
    Scalar fibre_a;
    FFElem w_eval;                       // the evaluation pivot (w - a or x - a)
    std::vector<PlaceId> points;         // canonical order
    std::vector<std::vector<int>> blocks;
    KSubspace S0;                        // blockwise-constant part of S
    KSubspace SL;                        // S intersect L
    bool containment_ok = false;         // SL <= S0
    bool equality = false;               // SL == S0
    bool dim_bound_ok = false;           // dim S0 >= ell + 1 - tau
    bool kernel_ok = false;              // ker(pi | L((w_eval)_inf)) = K w_eval
    int ell = 0;
    long tau = 0;

    EvaluationReport(Scalar a, FFElem w, KSubspace S0_, KSubspace SL_)
        : fibre_a(std::move(a)), w_eval(std::move(w)), S0(std::move(S0_)), SL(std::move(SL_)) {}
};

/// Same-model form: S on a hyperelliptic model, L a K(x)-subspace on it.
EvaluationReport evaluation_report(const KSubspace& S, const KxSubspace& L);

/// Pivot-aware form driven by a stabilizer analysis (covers rational-model
/// towers, where S cap L must be computed in plan coordinates).
EvaluationReport evaluation_report(const StabilizerAnalysis& a);

// ---------------------------------------------------------------------------
// Kneser bound checks (the S + wS and W lemmas)
// ---------------------------------------------------------------------------

struct KneserBoundReport {
    int k = 0;
    int dimS2 = 0;
    bool freiman_hyp = false;   // dim S^2 <= 3k - 4
    int dimW = 0;               // W = S^2 cap LS
    int w_bar = 0;              // dim_L L W
    bool lemma_w_ok = false;    // dim S^2 >= dim W + (2 kappa - 1 - w_bar) ell
    int dim_sum = 0;            // dim(S + wS)
    bool sum_ok = false;        // dim(S + wS) == 2k - 1
    bool intersect_ok = false;  // S cap wS == K w
};

KneserBoundReport kneser_bound_checks(const StabilizerAnalysis& a);

// ---------------------------------------------------------------------------
// The A (+) B (+) C decomposition (exploration)
// ---------------------------------------------------------------------------

struct ABCReport {
    FFElem s_used;
    KxSubspace A, B, C;   // L-subspaces of LS, plan coordinates
    int a = 0, b = 0, c = 0;  // L-dimensions
    KSubspace A_cap_S;
    KSubspace Aplus_cap_S;
    bool cond1 = false;  // A s <= LS
    bool cond2 = false;  // LS cap B s = 0
    bool cond3 = false;  // dim A_cap_S <= dim S0 + (a-1) ell
    bool cond4 = false;  // dim Aplus_cap_S >= dim S - c ell
    int iterations = 0;

    ABCReport(FFElem s, KxSubspace A_, KxSubspace B_, KxSubspace C_, KSubspace a_cap,
              KSubspace ap_cap)
        : s_used(std::move(s)), A(std::move(A_)), B(std::move(B_)), C(std::move(C_)),
          A_cap_S(std::move(a_cap)), Aplus_cap_S(std::move(ap_cap)) {}
};

/// Candidates s_2, ..., s_kappa: per nonzero valuation class mod d, the
/// element of S of maximal valuation in that class.
std::vector<FFElem> abc_candidates(const KSubspace& S_plan, const KxSubspace& L, long N);

/// The iterative decomposition LS = A + B + C driven by the candidate list;
/// requires K(w) strictly inside L strictly inside F.
ABCReport abc_decomposition(const KSubspace& S_plan, const KxSubspace& L,
                            const std::vector<FFElem>& s_candidates);

}  // namespace fflab

#endif
