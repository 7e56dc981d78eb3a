#include "fflab/subspace.hpp"

#include <algorithm>

namespace fflab {

namespace {

void require_same_model(const ModelPtr& a, const ModelPtr& b) {
    if (a.get() == b.get()) return;
    if (!a || !b || !a->same(*b)) throw math_error("subspace model mismatch");
}

// Intrinsic common denominator of a spanning set: the lcm of the reduced
// coordinate denominators. Identical for every spanning set of the same span.
Poly common_denominator(const ModelPtr& model, const std::vector<FFElem>& gens) {
    Poly d = Poly::one(model->base());
    for (const auto& g : gens)
        for (const auto& c : g.coords())
            if (!c.is_zero()) d = poly_lcm(d, c.den());
    return d;
}

// Flatten elements to K-rows over a fixed common denominator. Slot order is
// (power-basis coordinate j, then coordinate-field degree i).
struct Flattening {
    long width = 0;  // slots per coordinate
    Matrix<Scalar> rows;
};

Flattening flatten(const ModelPtr& model, const std::vector<FFElem>& gens, const Poly& den) {
    Flattening out;
    const int n = model->n();
    std::vector<std::vector<Poly>> scaled;
    scaled.reserve(gens.size());
    long maxdeg = 0;
    for (const auto& g : gens) {
        std::vector<Poly> coords;
        coords.reserve(static_cast<size_t>(n));
        for (const auto& c : g.coords()) {
            Poly p = c.is_zero() ? Poly::zero(model->base()) : c.num() * (den / c.den());
            maxdeg = std::max(maxdeg, p.degree());
            coords.push_back(std::move(p));
        }
        scaled.push_back(std::move(coords));
    }
    out.width = maxdeg + 1;
    if (out.width < 1) out.width = 1;
    for (const auto& coords : scaled) {
        std::vector<Scalar> row;
        row.reserve(static_cast<size_t>(n) * static_cast<size_t>(out.width));
        for (const auto& p : coords)
            for (long i = 0; i < out.width; ++i) row.push_back(p.coeff(i));
        out.rows.push_back(std::move(row));
    }
    return out;
}

FFElem unflatten_row(const ModelPtr& model, const std::vector<Scalar>& row, long width,
                     const Poly& den) {
    const int n = model->n();
    std::vector<RatFunc> coords;
    coords.reserve(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        std::vector<Scalar> cs;
        cs.reserve(static_cast<size_t>(width));
        for (long i = 0; i < width; ++i) {
            size_t idx = static_cast<size_t>(j) * static_cast<size_t>(width) + static_cast<size_t>(i);
            cs.push_back(idx < row.size() ? row[idx] : model->base().zero());
        }
        coords.emplace_back(Poly(model->base(), std::move(cs)), den);
    }
    return FFElem(model, std::move(coords));
}

// Reduce a coordinate vector modulo an echelon basis (pivot entries are 1).
std::vector<RatFunc> kx_reduce(const KxSubspace& V, std::vector<RatFunc> vec) {
    for (size_t r = 0; r < V.basis().size(); ++r) {
        size_t p = static_cast<size_t>(V.pivots()[r]);
        if (vec[p].is_zero()) continue;
        RatFunc f = vec[p];
        const auto& row = V.basis()[r].coords();
        for (size_t c = 0; c < vec.size(); ++c)
            if (!row[c].is_zero()) vec[c] = vec[c] - f * row[c];
    }
    return vec;
}

}  // namespace

// ---------------------------------------------------------------------------

KSubspace::KSubspace(ModelPtr model, std::vector<FFElem> basis, Poly common_den)
    : model_(std::move(model)), basis_(std::move(basis)), common_den_(std::move(common_den)) {}

bool KSubspace::operator==(const KSubspace& o) const {
    require_same_model(model_, o.model_);
    if (basis_.size() != o.basis_.size()) return false;
    for (size_t i = 0; i < basis_.size(); ++i)
        if (!(basis_[i] == o.basis_[i])) return false;
    return true;
}

KxSubspace::KxSubspace(ModelPtr model, std::vector<FFElem> basis, std::vector<int> pivots)
    : model_(std::move(model)), basis_(std::move(basis)), pivots_(std::move(pivots)) {}

bool KxSubspace::operator==(const KxSubspace& o) const {
    require_same_model(model_, o.model_);
    if (basis_.size() != o.basis_.size()) return false;
    for (size_t i = 0; i < basis_.size(); ++i)
        if (!(basis_[i] == o.basis_[i])) return false;
    return true;
}

// ---------------------------------------------------------------------------

KSubspace k_span(const ModelPtr& model, const std::vector<FFElem>& gens) {
    std::vector<FFElem> nonzero;
    for (const auto& g : gens) {
        require_same_model(model, g.model());
        if (!g.is_zero()) nonzero.push_back(g);
    }
    if (nonzero.empty()) return KSubspace(model, {}, Poly::one(model->base()));
    Poly den = common_denominator(model, nonzero);
    Flattening fl = flatten(model, nonzero, den);
    auto red = rref_K(fl.rows);
    std::vector<FFElem> basis;
    basis.reserve(red.rows.size());
    for (const auto& row : red.rows) basis.push_back(unflatten_row(model, row, fl.width, den));
    return KSubspace(model, std::move(basis), std::move(den));
}

KSubspace k_product(const KSubspace& S, const KSubspace& T) {
    require_same_model(S.model(), T.model());
    std::vector<FFElem> prods;
    const bool symmetric = S == T;
    prods.reserve(S.basis().size() * T.basis().size());
    for (size_t i = 0; i < S.basis().size(); ++i) {
        size_t jstart = symmetric ? i : 0;
        for (size_t j = jstart; j < T.basis().size(); ++j)
            prods.push_back(S.basis()[i] * T.basis()[j]);
    }
    return k_span(S.model(), prods);
}

KSubspace k_sum(const KSubspace& S, const KSubspace& T) {
    require_same_model(S.model(), T.model());
    std::vector<FFElem> gens = S.basis();
    gens.insert(gens.end(), T.basis().begin(), T.basis().end());
    return k_span(S.model(), gens);
}

KSubspace k_intersect(const KSubspace& S, const KSubspace& T) {
    require_same_model(S.model(), T.model());
    if (S.is_zero() || T.is_zero()) return k_span(S.model(), {});
    Poly den = poly_lcm(S.common_den(), T.common_den());
    std::vector<FFElem> all = S.basis();
    all.insert(all.end(), T.basis().begin(), T.basis().end());
    Flattening fl = flatten(S.model(), all, den);
    auto kernel = left_kernel_K(fl.rows, static_cast<int>(fl.rows[0].size()));
    std::vector<FFElem> gens;
    for (const auto& c : kernel) {
        FFElem e = FFElem::zero(S.model());
        for (size_t i = 0; i < S.basis().size(); ++i)
            if (!c[i].is_zero()) e = e + S.basis()[i] * c[i];
        gens.push_back(std::move(e));
    }
    return k_span(S.model(), gens);
}

bool k_member(const KSubspace& S, const FFElem& u) {
    if (u.is_zero()) return true;
    std::vector<FFElem> gens = S.basis();
    gens.push_back(u);
    return k_span(S.model(), gens).dim() == S.dim();
}

KSubspace k_scale(const KSubspace& S, const FFElem& u) {
    std::vector<FFElem> gens;
    gens.reserve(S.basis().size());
    for (const auto& b : S.basis()) gens.push_back(b * u);
    return k_span(S.model(), gens);
}

// ---------------------------------------------------------------------------

KxSubspace kx_span_elems(const ModelPtr& model, const std::vector<FFElem>& gens) {
    Matrix<RatFunc> rows;
    for (const auto& g : gens) {
        require_same_model(model, g.model());
        if (!g.is_zero()) rows.push_back(g.coords());
    }
    if (rows.empty()) return KxSubspace(model, {}, {});
    auto red = rref_Kx(rows);
    std::vector<FFElem> basis;
    basis.reserve(red.rows.size());
    for (auto& row : red.rows) {
        row.resize(static_cast<size_t>(model->n()), RatFunc::zero(model->base()));
        basis.emplace_back(model, row);
    }
    return KxSubspace(model, std::move(basis), std::move(red.pivots));
}

KxSubspace kx_span(const KSubspace& S) { return kx_span_elems(S.model(), S.basis()); }

KxSubspace kx_sum(const KxSubspace& U, const KxSubspace& V) {
    require_same_model(U.model(), V.model());
    std::vector<FFElem> gens = U.basis();
    gens.insert(gens.end(), V.basis().begin(), V.basis().end());
    return kx_span_elems(U.model(), gens);
}

KxSubspace kx_intersect(const KxSubspace& U, const KxSubspace& V) {
    require_same_model(U.model(), V.model());
    if (U.is_zero() || V.is_zero()) return kx_span_elems(U.model(), {});
    Matrix<RatFunc> rows;
    for (const auto& b : U.basis()) rows.push_back(b.coords());
    for (const auto& b : V.basis()) rows.push_back(b.coords());
    auto kernel = left_kernel_Kx(rows, U.model()->n());
    std::vector<FFElem> gens;
    for (const auto& c : kernel) {
        FFElem e = FFElem::zero(U.model());
        for (size_t i = 0; i < U.basis().size(); ++i)
            if (!c[i].is_zero()) e = e + U.basis()[i] * c[i];
        gens.push_back(std::move(e));
    }
    return kx_span_elems(U.model(), gens);
}

bool kx_member(const KxSubspace& V, const FFElem& u) {
    require_same_model(V.model(), u.model());
    if (u.is_zero()) return true;
    auto residue = kx_reduce(V, u.coords());
    return std::all_of(residue.begin(), residue.end(),
                       [](const RatFunc& r) { return r.is_zero(); });
}

KxSubspace kx_product_raw(const KxSubspace& U, const KxSubspace& V) {
    require_same_model(U.model(), V.model());
    std::vector<FFElem> prods;
    const bool symmetric = U == V;
    for (size_t i = 0; i < U.basis().size(); ++i) {
        size_t jstart = symmetric ? i : 0;
        for (size_t j = jstart; j < V.basis().size(); ++j)
            prods.push_back(U.basis()[i] * V.basis()[j]);
    }
    return kx_span_elems(U.model(), prods);
}

KxSubspace stabilizer(const KxSubspace& V) {
    if (V.is_zero()) throw math_error("stabilizer of the zero subspace");
    const ModelPtr& model = V.model();
    const int n = model->n();
    const BaseField& K = model->base();

    // z = sum_j z_j gen^j stabilizes V iff every z_j-weighted residue of
    // gen^j * v_i modulo V vanishes; that is one K(x)-linear system.
    std::vector<FFElem> gen_pows;
    gen_pows.reserve(static_cast<size_t>(n));
    FFElem g = FFElem::one(model);
    FFElem gen = FFElem::generator(model);
    for (int j = 0; j < n; ++j) {
        gen_pows.push_back(g);
        if (j + 1 < n) g = g * gen;
    }

    std::vector<bool> is_pivot(static_cast<size_t>(n), false);
    for (int p : V.pivots()) is_pivot[static_cast<size_t>(p)] = true;

    Matrix<RatFunc> A;
    for (const auto& v : V.basis()) {
        // residues rho_j = (gen^j v) mod V, one column of the system per j
        std::vector<std::vector<RatFunc>> rho;
        rho.reserve(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) rho.push_back(kx_reduce(V, (gen_pows[static_cast<size_t>(j)] * v).coords()));
        for (int q = 0; q < n; ++q) {
            if (is_pivot[static_cast<size_t>(q)]) continue;
            std::vector<RatFunc> row;
            row.reserve(static_cast<size_t>(n));
            bool all_zero = true;
            for (int j = 0; j < n; ++j) {
                row.push_back(rho[static_cast<size_t>(j)][static_cast<size_t>(q)]);
                all_zero = all_zero && row.back().is_zero();
            }
            if (!all_zero) A.push_back(std::move(row));
        }
    }

    KxSubspace st = kx_span_elems(model, {});
    if (A.empty()) {
        // no constraints: every element stabilizes (V = F)
        std::vector<FFElem> gens;
        for (int j = 0; j < n; ++j) gens.push_back(gen_pows[static_cast<size_t>(j)]);
        st = kx_span_elems(model, gens);
    } else {
        auto kernel = right_kernel_Kx(A, n);
        std::vector<FFElem> gens;
        for (auto& z : kernel) {
            z.resize(static_cast<size_t>(n), RatFunc::zero(K));
            gens.emplace_back(model, z);
        }
        st = kx_span_elems(model, gens);
    }

    // field checks: contains 1, multiplicatively closed, St(V) V = V
    if (!kx_member(st, FFElem::one(model)))
        throw invariant_error("stabilizer does not contain 1");
    for (size_t i = 0; i < st.basis().size(); ++i)
        for (size_t j = i; j < st.basis().size(); ++j)
            if (!kx_member(st, st.basis()[i] * st.basis()[j]))
                throw invariant_error("stabilizer is not closed under multiplication");
    if (!(kx_product_raw(st, V) == V))
        throw invariant_error("stabilizer does not fix V under products");
    return st;
}

KxProductChecked kx_product_checked(const KxSubspace& U, const KxSubspace& V) {
    KxSubspace prod = kx_product_raw(U, V);
    if (U.is_zero() || V.is_zero())
        return {prod, kx_span_elems(U.model(), {FFElem::one(U.model())}), true};
    KxSubspace st = stabilizer(prod);
    bool ok = prod.dim() >= U.dim() + V.dim() - st.dim();
    if (!ok)
        throw invariant_error("Kneser inequality violated: dim UV < dim U + dim V - dim St(UV)");
    return {std::move(prod), std::move(st), ok};
}

KxSubspace kx_product(const KxSubspace& U, const KxSubspace& V) {
    return kx_product_checked(U, V).product;
}

KSubspace mixed_intersect(const KSubspace& S, const KxSubspace& V) {
    require_same_model(S.model(), V.model());
    const ModelPtr& model = S.model();
    const BaseField& K = model->base();
    if (S.is_zero()) return S;
    if (V.is_zero()) return k_span(model, {});

    // residues of the S-basis modulo V; s = sum a_i s_i lies in K(x)V iff
    // sum a_i rho_i = 0, one K-linear constraint per cleared coefficient.
    std::vector<std::vector<RatFunc>> rho;
    rho.reserve(S.basis().size());
    bool all_zero = true;
    for (const auto& s : S.basis()) {
        rho.push_back(kx_reduce(V, s.coords()));
        for (const auto& e : rho.back()) all_zero = all_zero && e.is_zero();
    }
    if (all_zero) return S;

    Poly den = Poly::one(K);
    for (const auto& r : rho)
        for (const auto& e : r)
            if (!e.is_zero()) den = poly_lcm(den, e.den());

    const int n = model->n();
    long maxdeg = 0;
    std::vector<std::vector<Poly>> cleared(rho.size());
    for (size_t i = 0; i < rho.size(); ++i) {
        for (const auto& e : rho[i]) {
            Poly p = e.is_zero() ? Poly::zero(K) : e.num() * (den / e.den());
            maxdeg = std::max(maxdeg, p.degree());
            cleared[i].push_back(std::move(p));
        }
    }

    Matrix<Scalar> A;  // rows: (coordinate q, degree d); cols: S-basis index
    for (int q = 0; q < n; ++q) {
        for (long d = 0; d <= maxdeg; ++d) {
            std::vector<Scalar> row;
            row.reserve(S.basis().size());
            bool nonzero = false;
            for (size_t i = 0; i < rho.size(); ++i) {
                Scalar c = cleared[i][static_cast<size_t>(q)].coeff(d);
                nonzero = nonzero || !c.is_zero();
                row.push_back(c);
            }
            if (nonzero) A.push_back(std::move(row));
        }
    }
    if (A.empty()) return S;
    auto kernel = right_kernel_K(A, S.dim());
    std::vector<FFElem> gens;
    for (const auto& a : kernel) {
        FFElem e = FFElem::zero(model);
        for (size_t i = 0; i < static_cast<size_t>(S.dim()); ++i)
            if (!a[i].is_zero()) e = e + S.basis()[i] * a[i];
        gens.push_back(std::move(e));
    }
    return k_span(model, gens);
}

}  // namespace fflab
