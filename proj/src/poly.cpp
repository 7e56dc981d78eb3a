#include "fflab/poly.hpp"

#include <algorithm>
#include <sstream>

namespace fflab {

Poly::Poly(BaseField f, std::vector<Scalar> coeffs) : field_(std::move(f)), c_(std::move(coeffs)) {
    for (const auto& c : c_)
        if (c.field() != field_) throw math_error("polynomial coefficient field mismatch");
    trim();
    if (degree() > DeskScale::max_degree())
        throw input_error("polynomial degree exceeds desk-scale cap (set FFLAB_MAX_DEGREE to raise)");
}

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::constant(const Scalar& c) {
    Poly r(c.field());
    if (!c.is_zero()) r.c_ = {c};
    return r;
}

Poly Poly::monomial(const Scalar& c, long k) {
    Poly r(c.field());
    if (c.is_zero()) return r;
    r.c_.assign(static_cast<size_t>(k), c.field().zero());
    r.c_.push_back(c);
    return r;
}

Poly Poly::from_ints(const BaseField& f, const std::vector<i64>& cs) {
    std::vector<Scalar> v;
    v.reserve(cs.size());
    for (i64 x : cs) v.push_back(f.from_int(x));
    return Poly(f, std::move(v));
}

Scalar Poly::coeff(long i) const {
    if (i < 0 || i >= static_cast<long>(c_.size())) return field_.zero();
    return c_[static_cast<size_t>(i)];
}

Scalar Poly::lead() const {
    if (is_zero()) throw math_error("leading coefficient of zero polynomial");
    return c_.back();
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    if (field_ != o.field_) throw math_error("polynomial field mismatch");
    Poly r(field_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), field_.zero());
    for (size_t i = 0; i < r.c_.size(); ++i) {
        Scalar s = field_.zero();
        if (i < c_.size()) s = s + c_[i];
        if (i < o.c_.size()) s = s + o.c_[i];
        r.c_[i] = s;
    }
    r.trim();
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    if (field_ != o.field_) throw math_error("polynomial field mismatch");
    if (is_zero() || o.is_zero()) return Poly(field_);
    if (degree() + o.degree() > DeskScale::max_degree())
        throw input_error("polynomial degree exceeds desk-scale cap (set FFLAB_MAX_DEGREE to raise)");
    Poly r(field_);
    r.c_.assign(c_.size() + o.c_.size() - 1, field_.zero());
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            r.c_[i + j] = r.c_[i + j] + c_[i] * o.c_[j];
    }
    r.trim();
    return r;
}

Poly Poly::operator*(const Scalar& s) const {
    Poly r = *this;
    for (auto& c : r.c_) c = c * s;
    r.trim();
    return r;
}

std::pair<Poly, Poly> Poly::divrem(const Poly& d) const {
    if (d.is_zero()) throw math_error("polynomial division by zero");
    if (field_ != d.field_) throw math_error("polynomial field mismatch");
    Poly q(field_), r = *this;
    if (r.degree() < d.degree()) return {q, r};
    q.c_.assign(static_cast<size_t>(r.degree() - d.degree() + 1), field_.zero());
    Scalar lc_inv = d.lead().inv();
    while (!r.is_zero() && r.degree() >= d.degree()) {
        long shift = r.degree() - d.degree();
        Scalar coef = r.lead() * lc_inv;
        q.c_[static_cast<size_t>(shift)] = coef;
        for (long i = 0; i <= d.degree(); ++i) {
            size_t k = static_cast<size_t>(i + shift);
            r.c_[k] = r.c_[k] - coef * d.c_[static_cast<size_t>(i)];
        }
        r.trim();
    }
    q.trim();
    return {q, r};
}

bool Poly::divides(const Poly& multiple) const {
    if (is_zero()) return multiple.is_zero();
    return multiple.divrem(*this).second.is_zero();
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return *this * lead().inv();
}

Poly Poly::derivative() const {
    Poly r(field_);
    for (size_t i = 1; i < c_.size(); ++i)
        r.c_.push_back(c_[i] * field_.from_int(static_cast<i64>(i)));
    r.trim();
    return r;
}

Scalar Poly::eval(const Scalar& a) const {
    Scalar r = field_.zero();
    for (size_t i = c_.size(); i-- > 0;) r = r * a + c_[i];
    return r;
}

Poly Poly::pow(unsigned e) const {
    Poly r = Poly::one(field_);
    Poly b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

Poly Poly::shift(const Scalar& a) const {
    // Horner: f(x + a) built from the top coefficient down.
    Poly r(field_);
    Poly xa = Poly::x(field_) + Poly::constant(a);
    for (size_t i = c_.size(); i-- > 0;) r = r * xa + Poly::constant(c_[i]);
    return r;
}

std::string Poly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        bool unit = c_[i].is_one() && i > 0;
        if (!unit) os << c_[i].to_string();
        if (i > 0) {
            if (!unit) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

namespace {

// Strip the integer content from a rational-coefficient polynomial: returns a
// scalar multiple with integer, content-free coefficients. Keeps gcd bignums
// small during the Euclidean loop.
Poly strip_content_q(const Poly& f) {
    if (f.is_zero() || !f.field().is_rationals()) return f;
    mpz_class den_lcm = 1;
    for (const auto& c : f.coeffs())
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.rat().get_den().get_mpz_t());
    mpz_class num_gcd = 0;
    for (const auto& c : f.coeffs()) {
        mpq_class scaled = c.rat() * mpq_class(den_lcm);
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_num().get_mpz_t());
    }
    if (num_gcd == 0) return f;
    Scalar mult = f.field().from_mpq(mpq_class(den_lcm) / mpq_class(num_gcd));
    return f * mult;
}

}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.field() != b.field()) throw math_error("gcd field mismatch");
    Poly r0 = a, r1 = b;
    if (a.field().is_rationals()) {
        r0 = strip_content_q(r0);
        r1 = strip_content_q(r1);
    }
    while (!r1.is_zero()) {
        Poly r2 = r0 % r1;
        if (a.field().is_rationals()) r2 = strip_content_q(r2);
        r0 = std::move(r1);
        r1 = std::move(r2);
    }
    return r0.monic();
}

Poly poly_lcm(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly::zero(a.field());
    Poly g = poly_gcd(a, b);
    return ((a / g) * b).monic();
}

bool is_squarefree(const Poly& f) {
    if (f.is_zero()) throw math_error("squarefreeness of the zero polynomial");
    if (f.degree() == 0) return true;
    Poly d = f.derivative();
    if (d.is_zero()) return false;  // characteristic-p p-th power
    return poly_gcd(f, d).degree() == 0;
}

std::vector<std::pair<Scalar, long>> poly_roots(const Poly& f) {
    if (f.is_zero()) throw math_error("roots of the zero polynomial");
    std::vector<std::pair<Scalar, long>> out;
    const BaseField& K = f.field();
    Poly rem = f;

    auto extract = [&rem](const Scalar& a) -> long {
        long mult = 0;
        Poly lin = Poly::x(rem.field()) - Poly::constant(a);
        while (!rem.is_zero() && rem.eval(a).is_zero()) {
            rem = rem / lin;
            ++mult;
        }
        return mult;
    };

    if (!K.is_rationals()) {
        auto size = K.enum_size();
        if (!size || *size > (1ull << 20))
            throw search_exhausted("field too large for exhaustive root scan");
        for (u64 idx = 0; idx < *size && rem.degree() > 0; ++idx) {
            Scalar a = K.enumerate(idx);
            long m = extract(a);
            if (m > 0) out.emplace_back(a, m);
        }
        return out;
    }

    // Rational roots p/q: p | constant term, q | leading term (after clearing
    // denominators and content).
    Poly g = strip_content_q(rem);
    long low = 0;
    while (low <= g.degree() && g.coeff(low).is_zero()) ++low;
    if (low > 0) out.emplace_back(K.zero(), extract(K.zero()));
    if (rem.degree() <= 0) return out;
    g = strip_content_q(rem);
    mpz_class c0 = abs(g.coeff(0).rat().get_num());
    mpz_class cl = abs(g.lead().rat().get_num());
    const mpz_class bound(1000000);
    if (c0 > bound * bound || cl > bound * bound)
        throw search_exhausted("rational root search beyond divisor bound");
    auto divisors = [&bound](const mpz_class& n) {
        std::vector<mpz_class> ds;
        for (mpz_class d = 1; d * d <= n; ++d) {
            if (d > bound) throw search_exhausted("rational root search beyond divisor bound");
            if (n % d == 0) {
                ds.push_back(d);
                if (d * d != n) ds.push_back(n / d);
            }
        }
        return ds;
    };
    for (const mpz_class& pn : divisors(c0)) {
        for (const mpz_class& qn : divisors(cl)) {
            for (int sign : {1, -1}) {
                mpq_class cand(sign * pn, qn);
                cand.canonicalize();
                Scalar a = K.from_mpq(cand);
                if (rem.degree() > 0 && rem.eval(a).is_zero()) {
                    long m = extract(a);
                    if (m > 0) out.emplace_back(a, m);
                }
            }
        }
    }
    return out;
}

}  // namespace fflab
