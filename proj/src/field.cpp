#include "fflab/field.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <sstream>

namespace fflab {

namespace {

// ---------------------------------------------------------------------------
// F_p word arithmetic. p <= 2^16 so all products fit comfortably in u64.
// ---------------------------------------------------------------------------

u64 add_p(u64 a, u64 b, u64 p) { u64 s = a + b; return s >= p ? s - p : s; }
u64 sub_p(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
u64 mul_p(u64 a, u64 b, u64 p) { return (a * b) % p; }

u64 pow_p(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mul_p(r, a, p);
        a = mul_p(a, a, p);
        e >>= 1;
    }
    return r;
}

u64 inv_p(u64 a, u64 p) {
    if (a % p == 0) throw math_error("division by zero in F_p");
    return pow_p(a, p - 2, p);
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Dense polynomials over F_p, low-to-high coefficients, no trailing zeros.
using FpPoly = std::vector<u64>;

void fp_trim(FpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = add_p(r[i + j], mul_p(a[i], b[j], p), p);
    }
    fp_trim(r);
    return r;
}

// Remainder of a modulo monic-after-scaling b.
FpPoly fp_rem(FpPoly a, const FpPoly& b, u64 p) {
    if (b.empty()) throw math_error("polynomial division by zero");
    u64 lc_inv = inv_p(b.back(), p);
    while (a.size() >= b.size()) {
        u64 q = mul_p(a.back(), lc_inv, p);
        size_t shift = a.size() - b.size();
        if (q != 0)
            for (size_t i = 0; i < b.size(); ++i)
                a[shift + i] = sub_p(a[shift + i], mul_p(q, b[i], p), p);
        a.pop_back();
        fp_trim(a);
        if (a.size() < b.size()) break;
    }
    fp_trim(a);
    return a;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, u64 p) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        FpPoly r = fp_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        u64 s = inv_p(a.back(), p);
        for (auto& c : a) c = mul_p(c, s, p);
    }
    return a;
}

// x^e mod f, e given as a big integer (e can be p^m up to ~2^128).
FpPoly fp_xpow_mod(const mpz_class& e, const FpPoly& f, u64 p) {
    FpPoly base = {0, 1};
    base = fp_rem(base, f, p);
    FpPoly result = {1};
    mpz_class k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) result = fp_rem(fp_mul(result, base, p), f, p);
        base = fp_rem(fp_mul(base, base, p), f, p);
        k >>= 1;
    }
    return result;
}

// Rabin irreducibility test for a monic degree-m polynomial over F_p.
bool fp_is_irreducible(const FpPoly& f, u64 p) {
    const size_t m = f.size() - 1;
    if (m == 0) return false;
    mpz_class pm;
    mpz_ui_pow_ui(pm.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(m));
    FpPoly x = {0, 1};
    // x^{p^m} == x mod f
    FpPoly t = fp_xpow_mod(pm, f, p);
    if (t != fp_rem(x, f, p)) return false;
    // gcd(x^{p^{m/q}} - x, f) == 1 for every prime q | m
    for (size_t q = 2; q <= m; ++q) {
        if (m % q != 0) continue;
        bool prime = true;
        for (size_t d = 2; d * d <= q; ++d)
            if (q % d == 0) { prime = false; break; }
        if (!prime) continue;
        mpz_class pk;
        mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p),
                      static_cast<unsigned long>(m / q));
        FpPoly diff = fp_xpow_mod(pk, f, p);
        // diff -= x
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = sub_p(diff[1], 1, p);
        fp_trim(diff);
        FpPoly g = fp_gcd(f, diff, p);
        if (g.size() != 1) return false;
    }
    return true;
}

// Lexicographically least (on c_0..c_{m-1}) monic irreducible of degree m.
std::vector<u64> canonical_modulus(u64 p, unsigned m) {
    mpz_class total;
    mpz_ui_pow_ui(total.get_mpz_t(), static_cast<unsigned long>(p), m);
    for (mpz_class idx = 0; idx < total; ++idx) {
        // decode with c_0 as the most significant digit for lex order
        // the loop places the most significant digit at c[0], so counting
        // idx upward scans (c_0, ..., c_{m-1}) in lexicographic order
        std::vector<u64> c(m, 0);
        mpz_class rem = idx;
        for (unsigned i = 0; i < m; ++i) {
            mpz_class q = rem / static_cast<unsigned long>(p);
            mpz_class digit = rem - q * static_cast<unsigned long>(p);
            c[m - 1 - i] = digit.get_ui();
            rem = q;
        }
        FpPoly f(c.begin(), c.end());
        f.push_back(1);  // monic x^m
        if (fp_is_irreducible(f, p)) return c;
    }
    throw input_error("no irreducible modulus found (unreachable for m >= 1)");
}

// Interned canonical moduli, keyed by (p, m); entries live forever so
// BaseField can hold plain pointers.
const std::vector<u64>* modulus_for(u64 p, unsigned m) {
    static std::map<std::pair<u64, unsigned>, std::unique_ptr<const std::vector<u64>>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, m);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second.get();
    auto mod = std::make_unique<const std::vector<u64>>(canonical_modulus(p, m));
    const std::vector<u64>* raw = mod.get();
    cache[key] = std::move(mod);
    return raw;
}

}  // namespace

// ---------------------------------------------------------------------------
// BaseField
// ---------------------------------------------------------------------------

BaseField BaseField::rationals() {
    return BaseField(FieldKind::Rationals, 0, 1, nullptr);
}

BaseField BaseField::finite(u64 p, unsigned m) {
    if (!is_prime_u64(p)) throw input_error("finite field characteristic must be prime");
    if (p > DeskScale::max_p()) throw input_error("characteristic exceeds desk-scale cap");
    if (m == 0 || m > DeskScale::max_m()) throw input_error("extension degree out of range");
    const std::vector<u64>* mod = m > 1 ? modulus_for(p, m) : nullptr;
    return BaseField(FieldKind::Finite, p, m, mod);
}

mpz_class BaseField::order() const {
    if (is_rationals()) throw math_error("rationals have no finite order");
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p_), m_);
    return r;
}

Scalar BaseField::zero() const { return from_int(0); }
Scalar BaseField::one() const { return from_int(1); }

Scalar BaseField::from_int(i64 v) const {
    Scalar s;
    s.field_ = *this;
    if (is_rationals()) {
        s.v_ = mpq_class(static_cast<long>(v));
    } else {
        i64 r = v % static_cast<i64>(p_);
        if (r < 0) r += static_cast<i64>(p_);
        SmallCoeffs c(m_, 0);
        c[0] = static_cast<u64>(r);
        s.v_ = c;
    }
    return s;
}

Scalar BaseField::from_mpq(const mpq_class& q) const {
    if (!is_rationals()) throw input_error("from_mpq on a finite field");
    Scalar s;
    s.field_ = *this;
    mpq_class canon = q;
    canon.canonicalize();
    s.v_ = std::move(canon);
    return s;
}

Scalar BaseField::from_coeffs(std::vector<u64> coeffs) const {
    if (is_rationals()) throw input_error("from_coeffs on the rationals");
    if (coeffs.size() > m_) throw input_error("coefficient vector longer than extension degree");
    SmallCoeffs c(m_, 0);
    for (size_t i = 0; i < coeffs.size(); ++i) c[i] = coeffs[i] % p_;
    Scalar s;
    s.field_ = *this;
    s.v_ = c;
    return s;
}

Scalar BaseField::enumerate(u64 idx) const {
    if (is_rationals()) {
        // 0, 1, -1, 2, -2, ...
        if (idx == 0) return from_int(0);
        i64 k = static_cast<i64>((idx + 1) / 2);
        return from_int(idx % 2 == 1 ? k : -k);
    }
    // c[0] is the most significant digit: the scan follows the
    // lexicographic order on (c_0, ..., c_{m-1})
    std::vector<u64> c(m_, 0);
    u64 rem = idx;
    for (unsigned i = 0; i < m_; ++i) {
        c[m_ - 1 - i] = rem % p_;
        rem /= p_;
    }
    if (rem != 0) throw search_exhausted("enumeration index beyond field size");
    return from_coeffs(std::move(c));
}

std::optional<u64> BaseField::enum_size() const {
    if (is_rationals()) return std::nullopt;
    mpz_class o = order();
    if (o > (mpz_class(1) << 40)) return ~0ull;  // beyond any scan we attempt
    return o.get_ui();
}

std::string BaseField::describe() const {
    if (is_rationals()) return "Q";
    std::ostringstream os;
    os << "F_" << p_;
    if (m_ > 1) os << "^" << m_;
    return os.str();
}

// ---------------------------------------------------------------------------
// Scalar
// ---------------------------------------------------------------------------

namespace {
void require_same_field(const Scalar& a, const Scalar& b) {
    if (!a.is_valid() || !b.is_valid()) throw math_error("uninitialized scalar");
    if (a.field() != b.field()) throw math_error("scalar field mismatch");
}
}  // namespace

bool Scalar::is_zero() const {
    if (!is_valid()) throw math_error("uninitialized scalar");
    if (field().is_rationals()) return rat() == 0;
    const SmallCoeffs& c = coeffs();
    return std::all_of(c.begin(), c.end(), [](u64 x) { return x == 0; });
}

bool Scalar::is_one() const {
    if (field().is_rationals()) return rat() == 1;
    const SmallCoeffs& c = coeffs();
    if (c[0] != 1) return false;
    return std::all_of(c.begin() + 1, c.end(), [](u64 x) { return x == 0; });
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    if (field().is_rationals()) {
        r.mut_rat() = -rat();
    } else {
        const u64 p = field().p();
        SmallCoeffs& c = r.mut_coeffs();
        for (unsigned i = 0; i < c.size(); ++i) c[i] = c[i] == 0 ? 0 : p - c[i];
    }
    return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
    require_same_field(*this, o);
    Scalar r = *this;
    if (field().is_rationals()) {
        r.mut_rat() = rat() + o.rat();
    } else {
        const u64 p = field().p();
        SmallCoeffs& c = r.mut_coeffs();
        const SmallCoeffs& oc = o.coeffs();
        for (unsigned i = 0; i < field().m(); ++i) c[i] = add_p(c[i], oc[i], p);
    }
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
    require_same_field(*this, o);
    Scalar r = *this;
    if (field().is_rationals()) {
        r.mut_rat() = rat() - o.rat();
    } else {
        const u64 p = field().p();
        SmallCoeffs& c = r.mut_coeffs();
        const SmallCoeffs& oc = o.coeffs();
        for (unsigned i = 0; i < field().m(); ++i) c[i] = sub_p(c[i], oc[i], p);
    }
    return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
    require_same_field(*this, o);
    Scalar r = *this;
    if (field().is_rationals()) {
        r.mut_rat() = rat() * o.rat();
        return r;
    }
    const u64 p = field().p();
    const unsigned m = field().m();
    const SmallCoeffs& a = coeffs();
    const SmallCoeffs& b = o.coeffs();
    if (m == 1) {
        r.mut_coeffs()[0] = mul_p(a[0], b[0], p);
        return r;
    }
    std::array<u64, 15> prod{};
    for (unsigned i = 0; i < m; ++i) {
        if (a[i] == 0) continue;
        for (unsigned j = 0; j < m; ++j)
            prod[i + j] = add_p(prod[i + j], mul_p(a[i], b[j], p), p);
    }
    const auto& mod = field().modulus();
    for (unsigned i = 2 * m - 2; i >= m; --i) {
        u64 coef = prod[i];
        if (coef != 0)
            for (unsigned j = 0; j < m; ++j)
                prod[i - m + j] = sub_p(prod[i - m + j], mul_p(coef, mod[j], p), p);
        prod[i] = 0;
        if (i == m) break;
    }
    SmallCoeffs out(m, 0);
    for (unsigned i = 0; i < m; ++i) out[i] = prod[i];
    r.v_ = out;
    return r;
}

Scalar Scalar::inv() const {
    if (is_zero()) throw math_error("inversion of zero scalar");
    Scalar r = *this;
    if (field().is_rationals()) {
        r.mut_rat() = 1 / rat();
        return r;
    }
    const u64 p = field().p();
    const unsigned m = field().m();
    if (m == 1) {
        r.mut_coeffs()[0] = inv_p(coeffs()[0], p);
        return r;
    }
    // extended Euclid between this element and the modulus in F_p[t]
    FpPoly a(coeffs().begin(), coeffs().end());
    fp_trim(a);
    FpPoly b(field().modulus().begin(), field().modulus().end());
    b.push_back(1);
    FpPoly r0 = b, r1 = a;        // gcd(r0, r1)
    FpPoly s0 = {}, s1 = {1};     // coefficients on `a`
    while (!r1.empty()) {
        // r0 = q*r1 + r2
        FpPoly q;
        {
            FpPoly rem = r0;
            u64 lc_inv = inv_p(r1.back(), p);
            q.assign(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 0, 0);
            while (rem.size() >= r1.size() && !rem.empty()) {
                u64 coef = mul_p(rem.back(), lc_inv, p);
                size_t shift = rem.size() - r1.size();
                q[shift] = coef;
                for (size_t i = 0; i < r1.size(); ++i)
                    rem[shift + i] = sub_p(rem[shift + i], mul_p(coef, r1[i], p), p);
                fp_trim(rem);
            }
            r0 = rem;
            fp_trim(q);
        }
        std::swap(r0, r1);
        // s2 = s0 - q*s1
        FpPoly qs = fp_mul(q, s1, p);
        FpPoly s2 = s0;
        if (s2.size() < qs.size()) s2.resize(qs.size(), 0);
        for (size_t i = 0; i < qs.size(); ++i) s2[i] = sub_p(s2[i], qs[i], p);
        fp_trim(s2);
        s0 = s1;
        s1 = std::move(s2);
    }
    // r0 = gcd = nonzero constant; inverse is s0 / r0
    if (r0.size() != 1) throw math_error("modulus not irreducible (internal)");
    u64 scale = inv_p(r0[0], p);
    SmallCoeffs out(m, 0);
    for (size_t i = 0; i < s0.size(); ++i) out[i] = mul_p(s0[i], scale, p);
    r.v_ = out;
    return r;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inv(); }

Scalar Scalar::pow(const mpz_class& e) const {
    if (e < 0) return inv().pow(-e);
    Scalar base = *this;
    Scalar r = field().one();
    mpz_class k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) r = r * base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

bool Scalar::operator==(const Scalar& o) const {
    require_same_field(*this, o);
    if (field().is_rationals()) return rat() == o.rat();
    return coeffs() == o.coeffs();
}

int Scalar::canonical_cmp(const Scalar& o) const {
    require_same_field(*this, o);
    if (field().is_rationals()) {
        int c = cmp(rat().get_num(), o.rat().get_num());
        if (c != 0) return c;
        return cmp(rat().get_den(), o.rat().get_den());
    }
    const SmallCoeffs& a = coeffs();
    const SmallCoeffs& b = o.coeffs();
    for (unsigned i = 0; i < field().m(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

std::optional<Scalar> Scalar::sqrt() const {
    if (is_zero()) return field().zero();
    if (field().is_rationals()) {
        if (rat() < 0) return std::nullopt;
        mpz_class n = rat().get_num(), d = rat().get_den();
        if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
            return std::nullopt;
        mpz_class rn, rd;
        mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
        mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
        return field().from_mpq(mpq_class(rn) / mpq_class(rd));
    }
    if (field().p() == 2) {  // Frobenius: x -> x^{q/2} squares to x
        mpz_class e = field().order() / 2;
        return pow(e);
    }
    const mpz_class q = field().order();
    const mpz_class qm1 = q - 1;
    // Euler criterion
    if (pow(qm1 / 2) != field().one()) return std::nullopt;
    // Tonelli-Shanks; the non-residue is found by canonical enumeration.
    mpz_class s = qm1;
    unsigned long e = 0;
    while (mpz_even_p(s.get_mpz_t())) {
        s /= 2;
        ++e;
    }
    if (e == 1) {
        Scalar r = pow((q + 1) / 4);
        return r;
    }
    Scalar z = field().zero();
    for (u64 idx = 1;; ++idx) {
        z = field().enumerate(idx);
        if (z.is_zero()) continue;
        if (z.pow(qm1 / 2) != field().one()) break;
        if (idx > (1ull << 24)) throw search_exhausted("no quadratic non-residue found");
    }
    Scalar c = z.pow(s);
    Scalar t = pow(s);
    Scalar r = pow((s + 1) / 2);
    unsigned long mexp = e;
    while (!t.is_one()) {
        // find least i with t^{2^i} = 1
        unsigned long i = 0;
        Scalar probe = t;
        while (!probe.is_one()) {
            probe = probe * probe;
            ++i;
            if (i == mexp) return std::nullopt;
        }
        Scalar b = c;
        for (unsigned long j = 0; j + i + 1 < mexp; ++j) b = b * b;
        mexp = i;
        c = b * b;
        t = t * c;
        r = r * b;
    }
    return r;
}

std::string Scalar::to_string() const {
    if (!is_valid()) return "<invalid>";
    if (field().is_rationals()) {
        if (rat().get_den() == 1) return rat().get_num().get_str();
        return rat().get_num().get_str() + "/" + rat().get_den().get_str();
    }
    const SmallCoeffs& c = coeffs();
    if (field().m() == 1) return std::to_string(c[0]);
    std::string out = "[";
    for (unsigned i = 0; i < field().m(); ++i) {
        if (i) out += ",";
        out += std::to_string(c[i]);
    }
    out += "]";
    return out;
}

long DeskScale::max_degree() {
    static long cached = [] {
        if (const char* env = std::getenv("FFLAB_MAX_DEGREE")) {
            long v = std::atol(env);
            if (v > 0) return v;
        }
        return 4096L;
    }();
    return cached;
}

}  // namespace fflab
