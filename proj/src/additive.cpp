#include "fflab/additive.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace fflab {

namespace {
constexpr long kMaxSetSize = 64;
constexpr long kMaxElement = 512;
constexpr long kMaxModulus = 4096;
}  // namespace

IntSet::IntSet(std::vector<long> elems) : elems_(std::move(elems)) {
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
    if (!elems_.empty() && elems_.front() < 0) throw input_error("integer sets are non-negative");
    if (static_cast<long>(elems_.size()) > kMaxSetSize)
        throw input_error("integer set exceeds the desk-scale cap of 64 elements");
    if (!elems_.empty() && elems_.back() > kMaxElement)
        throw input_error("integer set elements exceed the desk-scale cap of 512");
}

IntSet IntSet::parse(const std::string& csv) {
    std::vector<long> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t pos = 0;
        long v = 0;
        try {
            v = std::stol(tok, &pos);
        } catch (const std::exception&) {
            throw input_error("malformed integer set literal: " + tok);
        }
        while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
        if (pos != tok.size()) throw input_error("malformed integer set literal: " + tok);
        out.push_back(v);
    }
    if (out.empty()) throw input_error("empty integer set literal");
    return IntSet(std::move(out));
}

long IntSet::max() const {
    if (elems_.empty()) throw math_error("max of the empty set");
    return elems_.back();
}

bool IntSet::is_normalized() const {
    if (elems_.empty() || elems_.front() != 0) return false;
    long g = 0;
    for (long e : elems_) g = std::gcd(g, e);
    return elems_.size() == 1 ? true : g == 1;
}

IntSet IntSet::normalized() const {
    if (elems_.empty()) throw math_error("cannot normalize the empty set");
    long lo = elems_.front();
    std::vector<long> shifted;
    shifted.reserve(elems_.size());
    for (long e : elems_) shifted.push_back(e - lo);
    long g = 0;
    for (long e : shifted) g = std::gcd(g, e);
    if (g > 1)
        for (long& e : shifted) e /= g;
    return IntSet(std::move(shifted));
}

std::string IntSet::to_string() const {
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < elems_.size(); ++i) {
        if (i) os << ",";
        os << elems_[i];
    }
    os << "}";
    return os.str();
}

IntSet sumset(const IntSet& A, const IntSet& B) {
    std::set<long> out;
    for (long a : A.elements())
        for (long b : B.elements()) out.insert(a + b);
    return IntSet(std::vector<long>(out.begin(), out.end()));
}

Freiman3k4Report freiman_3k4_verify(const IntSet& A_in) {
    if (A_in.size() < 3) throw math_error("the 3k-4 statement needs |A| >= 3");
    Freiman3k4Report r;
    r.A = A_in.normalized();
    r.k = static_cast<long>(r.A.size());
    IntSet AA = sumset(r.A, r.A);
    r.sumset_size = static_cast<long>(AA.size());
    r.gamma = r.sumset_size - 2 * r.k + 1;
    r.hypothesis_met = (r.gamma <= r.k - 3);
    r.ap_cover_ok = (r.A.max() <= r.k - 1 + r.gamma);
    r.verified = r.hypothesis_met;
    return r;
}

KneserModReport kneser_mod(const IntSet& A, long n) {
    if (n < 1 || n > kMaxModulus) throw input_error("modulus out of range");
    KneserModReport r;
    r.n = n;
    std::set<long> at;
    for (long a : A.elements()) at.insert(((a % n) + n) % n);
    r.Atilde.assign(at.begin(), at.end());
    std::set<long> s2;
    for (long a : at)
        for (long b : at) s2.insert((a + b) % n);
    r.sum2.assign(s2.begin(), s2.end());
    // exhaustive stabilizer of the sumset
    for (long h = 0; h < n; ++h) {
        bool stab = true;
        for (long v : r.sum2)
            if (!s2.count((v + h) % n)) { stab = false; break; }
        if (stab) r.H.push_back(h);
    }
    r.H_gen = r.H.size() > 1 ? r.H[1] : n;
    // H must be the cyclic subgroup generated by its least positive element
    if (n % r.H_gen != 0 || static_cast<long>(r.H.size()) != n / r.H_gen)
        throw invariant_error("sumset stabilizer is not a subgroup (internal)");
    r.stab_ok = true;
    for (long h : r.H)
        for (long v : r.sum2) r.stab_ok = r.stab_ok && s2.count((v + h) % n) > 0;
    r.bound_ok = static_cast<long>(r.sum2.size()) >=
                 2 * static_cast<long>(r.Atilde.size()) - static_cast<long>(r.H.size());
    if (!r.stab_ok || !r.bound_ok)
        throw invariant_error("Kneser's theorem failed in Z/nZ (internal)");
    return r;
}

LevSmelianskyReport lev_smeliansky_report(const IntSet& A_in) {
    LevSmelianskyReport r;
    r.A = A_in.normalized();
    if (r.A.size() < 2) throw math_error("the reduction needs |A| >= 2");
    r.n = r.A.max();
    if (r.n < 1) throw math_error("the reduction needs max A >= 1");
    IntSet AA = sumset(r.A, r.A);
    long k = static_cast<long>(r.A.size());
    r.gamma = static_cast<long>(AA.size()) - 2 * k + 1;
    r.hypothesis_met = (r.gamma <= k - 3);
    KneserModReport km = kneser_mod(r.A, r.n);
    r.atilde_size = static_cast<long>(km.Atilde.size());
    r.sum2_size = static_cast<long>(km.sum2.size());
    if (r.atilde_size != k - 1)
        throw invariant_error("reduction mod max A must identify exactly the endpoints");
    // |Atilde+Atilde| <= |Atilde| + gamma, and the chain closes when the
    // hypothesis holds
    bool left = (r.sum2_size <= r.atilde_size + r.gamma);
    bool right = (r.atilde_size + r.gamma <= 2 * r.atilde_size - 2);
    r.chain_ok = r.hypothesis_met ? (left && right) : left;
    if (!left) throw invariant_error("the reduction inequality |A~+A~| <= |A~| + gamma failed");
    return r;
}

BridgeReport monomial_bridge(const IntSet& A_in, const BaseField& base) {
    BridgeReport r;
    r.A = A_in.normalized();
    IntSet AA = sumset(r.A, r.A);
    r.sumset_size = static_cast<long>(AA.size());
    r.gamma_add = r.sumset_size - 2 * static_cast<long>(r.A.size()) + 1;

    ModelPtr model = CurveModel::rational(base);
    std::vector<FFElem> gens;
    for (long a : r.A.elements())
        gens.push_back(FFElem::from_ratfunc(model, RatFunc::from_poly(
            Poly::monomial(base.one(), a))));
    KSubspace S = k_span(model, gens);
    r.dimS = S.dim();
    KSubspace S2 = k_product(S, S);
    r.dimS2 = S2.dim();
    r.gamma_ff = r.dimS2 - 2 * r.dimS + 1;

    r.theorem = verify_theorem(S);
    r.codim = r.theorem.codim;

    Divisor expected;
    expected.add(PlaceId::infinity0(), r.A.max());
    r.divisor_ok = (r.A.max() == 0 ? r.theorem.D.is_zero() : r.theorem.D == expected);
    r.dims_match = (r.dimS == static_cast<long>(r.A.size())) && (r.dimS2 == r.sumset_size) &&
                   (r.gamma_ff == r.gamma_add);
    r.ap_cover_ok = (r.A.max() <= static_cast<long>(r.A.size()) - 1 + r.gamma_add);

    if (r.A.size() >= 3) {
        Freiman3k4Report add = freiman_3k4_verify(r.A);
        r.verdicts_agree = (add.hypothesis_met == r.theorem.hypothesis_met) &&
                           (add.gamma == r.gamma_ff) &&
                           (!add.hypothesis_met ||
                            (add.ap_cover_ok == (r.theorem.genus_ok && r.theorem.codim_ok)));
    } else {
        r.verdicts_agree = true;  // report-only regime
    }
    if (!r.dims_match)
        throw invariant_error("monomial bridge dimension identities failed");
    return r;
}

}  // namespace fflab
