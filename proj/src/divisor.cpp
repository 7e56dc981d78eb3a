#include "fflab/divisor.hpp"

#include <sstream>

namespace fflab {

void Divisor::add(const PlaceId& P, long mult) {
    if (mult == 0) return;
    auto it = entries_.find(P);
    if (it == entries_.end()) {
        entries_.emplace(P, mult);
    } else {
        it->second += mult;
        if (it->second == 0) entries_.erase(it);
    }
}

long Divisor::mult(const PlaceId& P) const {
    auto it = entries_.find(P);
    return it == entries_.end() ? 0 : it->second;
}

long Divisor::degree() const {
    long d = 0;
    for (const auto& [p, m] : entries_) d += m;
    return d;
}

bool Divisor::leq(const Divisor& o) const {
    for (const auto& [p, m] : entries_)
        if (m > o.mult(p)) return false;
    for (const auto& [p, m] : o.entries_)
        if (mult(p) > m) return false;
    return true;
}

std::string Divisor::to_string() const {
    if (entries_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [p, m] : entries_) {
        if (!first) os << " + ";
        first = false;
        if (m != 1) os << m << "*";
        os << p.to_string();
    }
    return os.str();
}

// ---------------------------------------------------------------------------

namespace {

// Pole orders of one element at supported places, as a positive divisor.
Divisor pole_divisor(const FFElem& e) {
    const ModelPtr& model = e.model();
    Divisor D;
    if (e.is_zero()) return D;
    switch (model->kind()) {
        case CurveKind::Rational: {
            const RatFunc& r = e.coord(0);
            long vinf = r.v_infinity();
            if (vinf < 0) D.add(PlaceId::infinity0(), -vinf);
            if (r.den().degree() > 0) {
                auto roots = poly_roots(r.den());
                long covered = 0;
                for (const auto& [a, mult] : roots) {
                    covered += mult;
                    D.add(PlaceId::finite0(a), mult);
                }
                if (covered != r.den().degree())
                    throw math_error("pole at an unsupported place (denominator does not split)");
            }
            return D;
        }
        case CurveKind::Hyperelliptic: {
            for (const auto& c : e.coords())
                if (!c.is_zero() && !c.is_poly())
                    throw math_error("pole at an unsupported place (non-polynomial coordinates)");
            long v = v_infty(e);
            if (v < 0) D.add(PlaceId::infinity_hyp(), -v);
            return D;
        }
        case CurveKind::Tower:
            throw math_error("divisors are not supported on tower models");
    }
    throw math_error("unreachable");
}

}  // namespace

Divisor minimal_divisor(const KSubspace& S) {
    Divisor D;
    for (const auto& b : S.basis()) {
        Divisor Db = pole_divisor(b);
        for (const auto& [p, m] : Db.entries()) {
            long cur = D.mult(p);
            if (m > cur) D.add(p, m - cur);
        }
    }
    return D;
}

RRBasis rr_basis(const ModelPtr& model, const Divisor& D) {
    RRBasis out;
    out.divisor = D;
    out.genus_used = model->genus();
    const BaseField& K = model->base();

    if (model->kind() == CurveKind::Rational) {
        Poly U = Poly::one(K), V = Poly::one(K);
        long m_inf = 0;
        for (const auto& [p, m] : D.entries()) {
            if (p.kind == PlaceKind::Infinity0) {
                m_inf = m;
            } else if (p.kind == PlaceKind::Finite0) {
                Poly lin = Poly::x(K) - Poly::constant(*p.a);
                if (m > 0)
                    U = U * lin.pow(static_cast<unsigned>(m));
                else
                    V = V * lin.pow(static_cast<unsigned>(-m));
            } else {
                throw math_error("unsupported place in a rational-model divisor");
            }
        }
        (void)m_inf;
        long deg = D.degree();
        std::vector<FFElem> gens;
        ModelPtr mp = model;
        for (long j = 0; j <= deg; ++j) {
            Poly numer = Poly::monomial(K.one(), j) * V;
            gens.push_back(FFElem::from_ratfunc(mp, RatFunc(numer, U)));
        }
        KSubspace span = k_span(mp, gens);
        out.basis = span.basis();
        out.dim = span.dim();
        if (deg >= 0 && out.dim != deg + 1)
            throw invariant_error("rational Riemann-Roch dimension mismatch (internal)");
        return out;
    }

    if (model->kind() == CurveKind::Hyperelliptic) {
        long n = 0;
        for (const auto& [p, m] : D.entries()) {
            if (p.kind != PlaceKind::InfinityHyp)
                throw math_error("hyperelliptic Riemann-Roch supports multiples of Pinf only");
            n = m;
        }
        std::vector<FFElem> gens;
        if (n >= 0) {
            const long g = model->genus();
            ModelPtr mp = model;
            FFElem x = FFElem::coordinate(mp);
            FFElem y = FFElem::generator(mp);
            for (long i = 0; 2 * i <= n; ++i) gens.push_back(x.pow(i));
            for (long i = 0; 2 * i + 2 * g + 1 <= n; ++i) gens.push_back(x.pow(i) * y);
        }
        KSubspace span = k_span(model, gens);
        out.basis = span.basis();
        out.dim = span.dim();
        const long g = model->genus();
        if (n >= 2 * g - 1 && out.dim != n + 1 - g)
            throw invariant_error("hyperelliptic Riemann-Roch dimension mismatch (internal)");
        return out;
    }

    throw math_error("Riemann-Roch is not supported on tower models");
}

std::vector<RRIdentityRow> rr_dim_identities(const ModelPtr& model, long n_min, long n_max) {
    std::vector<RRIdentityRow> rows;
    const long g = model->genus();
    for (long n = n_min; n <= n_max; ++n) {
        Divisor D;
        D.add(canonical_infinity(model), n);
        RRBasis rb = rr_basis(model, D);
        RRIdentityRow row;
        row.n = n;
        row.dim = rb.dim;
        if (n >= 2 * g - 1) {
            row.rr_exact_applies = true;
            row.rr_exact_ok = (rb.dim == n + 1 - g);
        }
        if (n >= 0 && n <= 2 * g - 2) {
            row.clifford_applies = true;
            row.clifford_ok = (2 * rb.dim <= 2 + n);
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace fflab
