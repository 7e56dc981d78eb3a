#include "fflab/linalg.hpp"

#include <algorithm>

namespace fflab {

namespace {

// Shared Gauss-Jordan skeleton. Ops supplies the field arithmetic plus an
// optional row renormalization hook applied after each elimination step.
template <typename T, typename Ops>
RrefResult<T> rref_impl(Matrix<T> rows, const Ops& ops) {
    RrefResult<T> out;
    size_t ncols = 0;
    for (const auto& r : rows) ncols = std::max(ncols, r.size());
    for (auto& r : rows) r.resize(ncols, ops.zero());

    size_t pr = 0;  // current pivot row
    for (size_t pc = 0; pc < ncols && pr < rows.size(); ++pc) {
        size_t sel = pr;
        while (sel < rows.size() && ops.is_zero(rows[sel][pc])) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[pr], rows[sel]);
        // eliminate below and above
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == pr || ops.is_zero(rows[r][pc])) continue;
            T factor = ops.div(rows[r][pc], rows[pr][pc]);
            for (size_t c = pc; c < ncols; ++c)
                rows[r][c] = ops.sub(rows[r][c], ops.mul(factor, rows[pr][c]));
            ops.renorm(rows[r]);
        }
        out.pivots.push_back(static_cast<int>(pc));
        ++pr;
    }
    out.rank = static_cast<int>(pr);
    rows.resize(pr);
    // normalize pivots to 1
    for (size_t r = 0; r < rows.size(); ++r) {
        T inv = ops.invert(rows[r][static_cast<size_t>(out.pivots[r])]);
        for (auto& c : rows[r]) c = ops.mul(c, inv);
    }
    out.rows = std::move(rows);
    return out;
}

struct ScalarOps {
    BaseField f;
    Scalar zero() const { return f.zero(); }
    Scalar one() const { return f.one(); }
    bool is_zero(const Scalar& a) const { return a.is_zero(); }
    Scalar sub(const Scalar& a, const Scalar& b) const { return a - b; }
    Scalar mul(const Scalar& a, const Scalar& b) const { return a * b; }
    Scalar div(const Scalar& a, const Scalar& b) const { return a / b; }
    Scalar invert(const Scalar& a) const { return a.inv(); }
    void renorm(std::vector<Scalar>&) const {}
};

struct RatFuncOps {
    BaseField f;
    RatFunc zero() const { return RatFunc::zero(f); }
    RatFunc one() const { return RatFunc::one(f); }
    bool is_zero(const RatFunc& a) const { return a.is_zero(); }
    RatFunc sub(const RatFunc& a, const RatFunc& b) const { return a - b; }
    RatFunc mul(const RatFunc& a, const RatFunc& b) const { return a * b; }
    RatFunc div(const RatFunc& a, const RatFunc& b) const { return a / b; }
    RatFunc invert(const RatFunc& a) const { return a.inv(); }
    // Clear the row to polynomial entries and strip the polynomial content;
    // this is a nonzero K(x)-scaling, so the row space is untouched.
    void renorm(std::vector<RatFunc>& row) const {
        Poly den_lcm = Poly::one(f);
        for (const auto& e : row)
            if (!e.is_zero()) den_lcm = poly_lcm(den_lcm, e.den());
        if (den_lcm.degree() > 0) {
            RatFunc mult = RatFunc::from_poly(den_lcm);
            for (auto& e : row) e = e * mult;
        }
        Poly content = Poly::zero(f);
        for (const auto& e : row)
            if (!e.is_zero()) content = poly_gcd(content, e.num());
        if (content.degree() > 0) {
            RatFunc div = RatFunc::from_poly(content);
            for (auto& e : row)
                if (!e.is_zero()) e = e / div;
        }
    }
};

template <typename T>
BaseField field_of(const Matrix<T>& rows) {
    for (const auto& r : rows)
        for (const auto& e : r) return e.field();
    throw math_error("cannot infer the base field of an empty matrix");
}

template <typename T, typename Ops>
Matrix<T> left_kernel_impl(const Matrix<T>& rows, int ncols, const Ops& ops) {
    // rref of [A | I]; rows whose A-part vanished give the left kernel.
    const size_t nr = rows.size();
    Matrix<T> aug(nr);
    for (size_t i = 0; i < nr; ++i) {
        aug[i] = rows[i];
        aug[i].resize(static_cast<size_t>(ncols), ops.zero());
        for (size_t j = 0; j < nr; ++j)
            aug[i].push_back(i == j ? ops.one() : ops.zero());
    }
    auto red = rref_impl(std::move(aug), ops);
    Matrix<T> kernel;
    for (size_t r = 0; r < red.rows.size(); ++r) {
        if (red.pivots[r] >= ncols) {
            kernel.emplace_back(red.rows[r].begin() + ncols, red.rows[r].end());
        }
    }
    return kernel;
}

template <typename T, typename Ops>
Matrix<T> right_kernel_impl(const Matrix<T>& rows, int ncols, const Ops& ops) {
    auto red = rref_impl(rows, ops);
    std::vector<bool> is_pivot(static_cast<size_t>(ncols), false);
    for (int p : red.pivots) is_pivot[static_cast<size_t>(p)] = true;
    Matrix<T> kernel;
    for (int free_col = 0; free_col < ncols; ++free_col) {
        if (is_pivot[static_cast<size_t>(free_col)]) continue;
        std::vector<T> v(static_cast<size_t>(ncols), ops.zero());
        v[static_cast<size_t>(free_col)] = ops.one();
        for (size_t r = 0; r < red.rows.size(); ++r) {
            size_t col = static_cast<size_t>(free_col);
            if (col < red.rows[r].size())
                v[static_cast<size_t>(red.pivots[r])] =
                    ops.sub(ops.zero(), red.rows[r][col]);
        }
        // scale so the first nonzero entry is 1
        for (auto& entry : v) {
            if (ops.is_zero(entry)) continue;
            T inv = ops.invert(entry);
            for (auto& e : v) e = ops.mul(e, inv);
            break;
        }
        kernel.push_back(std::move(v));
    }
    return kernel;
}

template <typename T, typename Ops>
LinSolve<T> solve_impl(const Matrix<T>& A, const std::vector<T>& b, const Ops& ops) {
    const size_t nr = A.size();
    size_t nc = 0;
    for (const auto& r : A) nc = std::max(nc, r.size());
    Matrix<T> aug(nr);
    for (size_t i = 0; i < nr; ++i) {
        aug[i] = A[i];
        aug[i].resize(nc, ops.zero());
        aug[i].push_back(i < b.size() ? b[i] : ops.zero());
    }
    auto red = rref_impl(std::move(aug), ops);
    LinSolve<T> out;
    out.consistent = true;
    for (size_t r = 0; r < red.rows.size(); ++r)
        if (red.pivots[r] == static_cast<int>(nc)) out.consistent = false;
    out.kernel = right_kernel_impl(A, static_cast<int>(nc), ops);
    if (out.consistent) {
        out.particular.assign(nc, ops.zero());
        for (size_t r = 0; r < red.rows.size(); ++r) {
            if (red.pivots[r] < static_cast<int>(nc))
                out.particular[static_cast<size_t>(red.pivots[r])] = red.rows[r][nc];
        }
    }
    return out;
}

}  // namespace

RrefResult<Scalar> rref_K(const Matrix<Scalar>& rows) {
    if (rows.empty()) return {};
    return rref_impl(rows, ScalarOps{field_of(rows)});
}

RrefResult<RatFunc> rref_Kx(const Matrix<RatFunc>& rows) {
    if (rows.empty()) return {};
    return rref_impl(rows, RatFuncOps{field_of(rows)});
}

Matrix<Scalar> left_kernel_K(const Matrix<Scalar>& rows, int ncols) {
    if (rows.empty()) return {};
    return left_kernel_impl(rows, ncols, ScalarOps{field_of(rows)});
}

Matrix<RatFunc> left_kernel_Kx(const Matrix<RatFunc>& rows, int ncols) {
    if (rows.empty()) return {};
    return left_kernel_impl(rows, ncols, RatFuncOps{field_of(rows)});
}

Matrix<Scalar> right_kernel_K(const Matrix<Scalar>& rows, int ncols) {
    if (rows.empty()) return {};
    return right_kernel_impl(rows, ncols, ScalarOps{field_of(rows)});
}

Matrix<RatFunc> right_kernel_Kx(const Matrix<RatFunc>& rows, int ncols) {
    if (rows.empty()) return {};
    return right_kernel_impl(rows, ncols, RatFuncOps{field_of(rows)});
}

LinSolve<RatFunc> solve_Kx(const Matrix<RatFunc>& A, const std::vector<RatFunc>& b) {
    if (A.empty()) throw math_error("solve on an empty system");
    return solve_impl(A, b, RatFuncOps{field_of(A)});
}

LinSolve<Scalar> solve_K(const Matrix<Scalar>& A, const std::vector<Scalar>& b) {
    if (A.empty()) throw math_error("solve on an empty system");
    return solve_impl(A, b, ScalarOps{field_of(A)});
}

}  // namespace fflab
