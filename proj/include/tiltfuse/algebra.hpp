#ifndef TILTFUSE_ALGEBRA_HPP
#define TILTFUSE_ALGEBRA_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

// Exact polynomial, symmetric-Laurent and rational-function arithmetic.
// All coefficient paths use arbitrary-precision integers/rationals;
// coefficient storage is little-endian (index = degree) throughout.

namespace tiltfuse {

using Int = mpz_class;
using Rat = mpq_class;

// ---------------------------------------------------------------------------
// IntPoly: integer polynomial, trailing coefficient nonzero unless zero.

class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }
    static IntPoly constant(Int v) { return IntPoly({std::move(v)}); }
    static IntPoly x() { return IntPoly({Int(0), Int(1)}); }

    const std::vector<Int>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    // degree of the zero polynomial is -1
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    Int coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Int(0); }

    Int eval(const Int& x) const {
        Int r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
        return r;
    }
    Rat eval(const Rat& x) const {
        Rat r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
        return r;
    }

    IntPoly derivative() const {
        std::vector<Int> d;
        for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Int(static_cast<long>(i)));
        return IntPoly(std::move(d));
    }

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
        std::vector<Int> r(std::max(a.c_.size(), b.c_.size()), Int(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return IntPoly(std::move(r));
    }
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
        std::vector<Int> r(std::max(a.c_.size(), b.c_.size()), Int(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
        return IntPoly(std::move(r));
    }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return IntPoly();
        std::vector<Int> r(a.c_.size() + b.c_.size() - 1, Int(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return IntPoly(std::move(r));
    }
    friend IntPoly operator*(const IntPoly& a, const Int& s) {
        std::vector<Int> r = a.c_;
        for (auto& v : r) v *= s;
        return IntPoly(std::move(r));
    }
    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

    std::string str(const std::string& var = "x") const;

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Int> c_;
};

// ---------------------------------------------------------------------------
// RatPoly: polynomial with exact rational coefficients.

class RatPoly {
public:
    RatPoly() = default;
    explicit RatPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
    RatPoly(const IntPoly& p) {
        for (const auto& v : p.coeffs()) c_.emplace_back(v);
        trim();
    }
    static RatPoly constant(Rat v) { return RatPoly(std::vector<Rat>{std::move(v)}); }
    static RatPoly one() { return constant(Rat(1)); }
    static RatPoly x() { return RatPoly({Rat(0), Rat(1)}); }
    // t^k
    static RatPoly monomial(std::size_t k, Rat coeff = Rat(1)) {
        std::vector<Rat> c(k + 1, Rat(0));
        c[k] = std::move(coeff);
        return RatPoly(std::move(c));
    }

    const std::vector<Rat>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    Rat coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
    Rat leading() const { return c_.empty() ? Rat(0) : c_.back(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }

    Rat eval(const Rat& x) const {
        Rat r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
        return r;
    }

    RatPoly derivative() const {
        std::vector<Rat> d;
        for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Rat(static_cast<long>(i)));
        return RatPoly(std::move(d));
    }

    // t^k * this
    RatPoly shifted(std::size_t k) const {
        if (is_zero()) return RatPoly();
        std::vector<Rat> r(k, Rat(0));
        r.insert(r.end(), c_.begin(), c_.end());
        return RatPoly(std::move(r));
    }

    // x^n * f(1/x) for a fixed n >= deg f
    RatPoly reversed_to(std::size_t n) const {
        if (degree() > static_cast<long>(n)) throw std::invalid_argument("reversed_to: degree too large");
        std::vector<Rat> r(n + 1, Rat(0));
        for (std::size_t i = 0; i < c_.size(); ++i) r[n - i] = c_[i];
        return RatPoly(std::move(r));
    }

    RatPoly monic() const {
        if (is_zero()) return *this;
        return *this / leading();
    }

    friend RatPoly operator+(const RatPoly& a, const RatPoly& b) {
        std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return RatPoly(std::move(r));
    }
    friend RatPoly operator-(const RatPoly& a, const RatPoly& b) {
        std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
        return RatPoly(std::move(r));
    }
    friend RatPoly operator*(const RatPoly& a, const RatPoly& b) {
        if (a.is_zero() || b.is_zero()) return RatPoly();
        std::vector<Rat> r(a.c_.size() + b.c_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return RatPoly(std::move(r));
    }
    friend RatPoly operator*(const RatPoly& a, const Rat& s) {
        std::vector<Rat> r = a.c_;
        for (auto& v : r) v *= s;
        return RatPoly(std::move(r));
    }
    friend RatPoly operator/(const RatPoly& a, const Rat& s) {
        if (s == 0) throw std::invalid_argument("division by zero scalar");
        std::vector<Rat> r = a.c_;
        for (auto& v : r) v /= s;
        return RatPoly(std::move(r));
    }
    friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.c_ == b.c_; }

    std::string str(const std::string& var = "t") const;

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rat> c_;
};

enum class PolyOp { add, sub, mul };

inline RatPoly poly_arith(const RatPoly& a, const RatPoly& b, PolyOp op) {
    switch (op) {
        case PolyOp::add: return a + b;
        case PolyOp::sub: return a - b;
        case PolyOp::mul: return a * b;
    }
    throw std::logic_error("unreachable");
}

// quotient/remainder, b nonzero
inline std::pair<RatPoly, RatPoly> poly_divmod(const RatPoly& a, const RatPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
    std::vector<Rat> rem(a.coeffs());
    long db = b.degree();
    long da = static_cast<long>(rem.size()) - 1;
    if (da < db) return {RatPoly(), a};
    std::vector<Rat> quot(static_cast<std::size_t>(da - db + 1), Rat(0));
    const Rat& lb = b.leading();
    for (long i = da; i >= db; --i) {
        Rat q = rem[static_cast<std::size_t>(i)] / lb;
        if (q == 0) continue;
        quot[static_cast<std::size_t>(i - db)] = q;
        for (long j = 0; j <= db; ++j)
            rem[static_cast<std::size_t>(i - db + j)] -= q * b.coeff(static_cast<std::size_t>(j));
    }
    return {RatPoly(std::move(quot)), RatPoly(std::move(rem))};
}

// monic gcd via the Euclidean remainder sequence
inline RatPoly poly_gcd(RatPoly a, RatPoly b) {
    while (!b.is_zero()) {
        RatPoly r = poly_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.monic();
}

// substitute q into f
inline RatPoly poly_compose(const RatPoly& f, const RatPoly& q) {
    RatPoly r;
    for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it)
        r = r * q + RatPoly::constant(*it);
    return r;
}

// ---------------------------------------------------------------------------
// Chebyshev-style polynomials Q_n with Q_n(t + 1/t) = t^n + t^{-n}.
// Q_0 = 2, Q_1 = x, Q_{n+1} = x Q_n - Q_{n-1}.

inline IntPoly chebyshev_Q(std::size_t n) {
    IntPoly prev = IntPoly::constant(2);
    if (n == 0) return prev;
    IntPoly cur = IntPoly::x();
    for (std::size_t i = 1; i < n; ++i) {
        IntPoly next = IntPoly::x() * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

// P_0 = P_1 = 1, P_n = P_{n-1} - t^2 P_{n-2}  (path-graph determinant)
inline RatPoly path_poly_P(std::size_t m) {
    RatPoly prev = RatPoly::one();
    if (m == 0) return prev;
    RatPoly cur = RatPoly::one();
    RatPoly t2 = RatPoly::monomial(2);
    for (std::size_t i = 1; i < m; ++i) {
        RatPoly next = cur - t2 * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

// R_m(t) = t^m P_m(1/t), monic of degree m with roots 2 cos(k pi/(m+1))
inline RatPoly reciprocal_R(std::size_t m) { return path_poly_P(m).reversed_to(m); }

// R_{m,s} = R_m composed with Q_{p^s}
inline RatPoly compose_R_Q(std::size_t m, std::size_t s, unsigned long p) {
    Int ps_i;
    mpz_ui_pow_ui(ps_i.get_mpz_t(), p, s);
    if (!ps_i.fits_ulong_p()) throw std::invalid_argument("compose_R_Q: p^s too large");
    std::size_t ps = ps_i.get_ui();
    return poly_compose(reciprocal_R(m), RatPoly(chebyshev_Q(ps)));
}

// hat transform: coefficient reversal x^{deg f} f(1/x); rejects zero constant term
inline RatPoly hat(const RatPoly& f) {
    if (f.is_zero() || f.coeff(0) == 0)
        throw std::invalid_argument("hat: polynomial has a zero root (zero constant term)");
    return f.reversed_to(static_cast<std::size_t>(f.degree()));
}

// ---------------------------------------------------------------------------
// RatFn: reduced ratio of polynomials with monic denominator.

class RatFn {
public:
    RatFn() : num_(), den_(RatPoly::one()) {}
    RatFn(RatPoly num, RatPoly den) {
        if (den.is_zero()) throw std::invalid_argument("RatFn: zero denominator");
        RatPoly g = poly_gcd(num, den);
        if (!g.is_zero() && g.degree() > 0) {
            num = poly_divmod(num, g).first;
            den = poly_divmod(den, g).first;
        }
        normalize(std::move(num), std::move(den));
    }
    static RatFn from_poly(RatPoly p) {
        RatFn f;
        f.num_ = std::move(p);
        return f;
    }
    // caller guarantees gcd(num, den) is constant
    static RatFn from_coprime(RatPoly num, RatPoly den) {
        if (den.is_zero()) throw std::invalid_argument("RatFn: zero denominator");
        RatFn f;
        f.normalize(std::move(num), std::move(den));
        return f;
    }

    const RatPoly& num() const { return num_; }
    const RatPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    friend RatFn operator+(const RatFn& a, const RatFn& b) {
        return RatFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFn operator-(const RatFn& a, const RatFn& b) {
        return RatFn(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFn operator*(const RatFn& a, const RatFn& b) {
        return RatFn(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFn operator/(const RatFn& a, const RatFn& b) {
        if (b.is_zero()) throw std::invalid_argument("RatFn division by zero");
        return RatFn(a.num_ * b.den_, a.den_ * b.num_);
    }
    // product of functions known to stay coprime after multiplication
    static RatFn mul_coprime(const RatFn& a, const RatFn& b) {
        return from_coprime(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend bool operator==(const RatFn& a, const RatFn& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    std::string str(const std::string& var = "t") const {
        return num_.str(var) + " / " + den_.str(var);
    }

private:
    void normalize(RatPoly num, RatPoly den) {
        Rat lead = den.leading();
        num_ = num / lead;
        den_ = den / lead;
        if (num_.is_zero()) den_ = RatPoly::one();
    }
    RatPoly num_;
    RatPoly den_;
};

// substitute a rational function into a rational function
inline RatFn ratfn_compose(const RatFn& f, const RatFn& q) {
    // f = N/D; evaluate N(q) and D(q) as fractions with denominator q.den^deg
    auto eval_poly = [&q](const RatPoly& poly, long deg) {
        // returns numerator of poly(q) over q.den^deg
        RatPoly acc;  // zero
        for (long i = deg; i >= 0; --i) {
            acc = acc * q.num();
            Rat c = poly.coeff(static_cast<std::size_t>(i));
            if (c != 0) {
                // add c * q.den^{deg-i}
                RatPoly term = RatPoly::constant(c);
                for (long j = 0; j < deg - i; ++j) term = term * q.den();
                acc = acc + term;
            }
        }
        return acc;
    };
    long deg = std::max(f.num().degree(), f.den().degree());
    if (deg < 0) throw std::invalid_argument("ratfn_compose: zero/zero");
    return RatFn(eval_poly(f.num(), deg), eval_poly(f.den(), deg));
}

// exact Taylor coefficients at t = 0 via the denominator recurrence
inline std::vector<Rat> taylor_coeffs(const RatFn& f, std::size_t N) {
    if (f.den().coeff(0) == 0)
        throw std::invalid_argument("taylor_coeffs: denominator vanishes at t=0");
    const Rat d0 = f.den().coeff(0);
    std::vector<Rat> c(N + 1, Rat(0));
    for (std::size_t k = 0; k <= N; ++k) {
        Rat v = f.num().coeff(k);
        std::size_t jmax = std::min<std::size_t>(k, static_cast<std::size_t>(std::max<long>(f.den().degree(), 0)));
        for (std::size_t j = 1; j <= jmax; ++j) v -= f.den().coeff(j) * c[k - j];
        c[k] = v / d0;
    }
    return c;
}

// divide all coefficients by the content (gcd of numerators / lcm of denominators)
inline RatPoly primitive_part(const RatPoly& f) {
    if (f.is_zero()) return f;
    Int g = 0, l = 1;
    for (const auto& c : f.coeffs()) {
        if (c == 0) continue;
        Int num = abs(c.get_num());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
        Int den = c.get_den();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
    }
    Rat content(g, l);
    content.canonicalize();
    return f / content;
}

// ---------------------------------------------------------------------------
// SymLaurent: symmetric Laurent polynomial; entry m stands for c_m (t^m + t^-m)
// for m > 0 and the constant c_0 for m = 0.  Only the non-negative half is
// stored, so symmetry is structural.

class SymLaurent {
public:
    SymLaurent() = default;
    explicit SymLaurent(std::map<long, Int> coeffs) : c_(std::move(coeffs)) { trim(); }
    static SymLaurent one() { return SymLaurent({{0, Int(1)}}); }
    // t^m + t^{-m} (or 1 when m = 0)
    static SymLaurent pair(long m, Int coeff = Int(1)) { return SymLaurent({{m, std::move(coeff)}}); }

    const std::map<long, Int>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    Int coeff(long m) const {
        auto it = c_.find(m);
        return it == c_.end() ? Int(0) : it->second;
    }
    long max_exponent() const { return c_.empty() ? -1 : c_.rbegin()->first; }

    // value at t = 1: c_0 + 2 sum_{m>0} c_m  (the dimension, for a character)
    Int at_one() const {
        Int v = 0;
        for (const auto& [m, c] : c_) v += (m == 0) ? c : 2 * c;
        return v;
    }
    // value at t = -1: c_0 + 2 sum_{m>0} (-1)^m c_m
    Int at_minus_one() const {
        Int v = 0;
        for (const auto& [m, c] : c_) v += (m == 0) ? c : ((m % 2 == 0) ? 2 * c : -2 * c);
        return v;
    }

    friend SymLaurent operator+(const SymLaurent& a, const SymLaurent& b) {
        std::map<long, Int> r = a.c_;
        for (const auto& [m, c] : b.c_) r[m] += c;
        return SymLaurent(std::move(r));
    }
    friend SymLaurent operator-(const SymLaurent& a, const SymLaurent& b) {
        std::map<long, Int> r = a.c_;
        for (const auto& [m, c] : b.c_) r[m] -= c;
        return SymLaurent(std::move(r));
    }
    friend SymLaurent operator*(const SymLaurent& a, const Int& s) {
        std::map<long, Int> r = a.c_;
        for (auto& [m, c] : r) c *= s;
        return SymLaurent(std::move(r));
    }
    friend bool operator==(const SymLaurent& a, const SymLaurent& b) { return a.c_ == b.c_; }

    std::string str() const;

private:
    void trim() {
        for (auto it = c_.begin(); it != c_.end();) {
            if (it->second == 0) it = c_.erase(it);
            else ++it;
        }
    }
    std::map<long, Int> c_;
};

// exact product under the symmetric representation
inline SymLaurent sym_laurent_mul(const SymLaurent& a, const SymLaurent& b) {
    // expand to the full Laurent support, convolve, fold back
    std::map<long, Int> fa, fb;
    for (const auto& [m, c] : a.coeffs()) {
        fa[m] += c;
        if (m != 0) fa[-m] += c;
    }
    for (const auto& [m, c] : b.coeffs()) {
        fb[m] += c;
        if (m != 0) fb[-m] += c;
    }
    std::map<long, Int> full;
    for (const auto& [i, ci] : fa)
        for (const auto& [j, cj] : fb) full[i + j] += ci * cj;
    std::map<long, Int> half;
    for (const auto& [m, c] : full)
        if (m >= 0) half[m] = c;
    return SymLaurent(std::move(half));
}

inline SymLaurent sym_laurent_pow(SymLaurent base, Int k) {
    SymLaurent r = SymLaurent::one();
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) r = sym_laurent_mul(r, base);
        k >>= 1;
        if (k > 0) base = sym_laurent_mul(base, base);
    }
    return r;
}

// the unique Q with Q(t + 1/t) = chi (the Chebyshev-basis isomorphism)
inline IntPoly chebyshev_basis(SymLaurent chi) {
    IntPoly q;
    while (!chi.is_zero()) {
        long m = chi.max_exponent();
        Int c = chi.coeff(m);
        if (m == 0) {
            q = q + IntPoly::constant(c);
            break;
        }
        q = q + chebyshev_Q(static_cast<std::size_t>(m)) * c;
        // Q_m(t + 1/t) = t^m + t^{-m}, so the remainder drops exponent m entirely
        chi = chi - SymLaurent::pair(m, c);
    }
    return q;
}

// evaluate Q at the character t + 1/t (inverse direction of chebyshev_basis)
inline SymLaurent eval_at_chi_V(const IntPoly& q) {
    SymLaurent chiV = SymLaurent::pair(1);
    SymLaurent r;
    for (auto it = q.coeffs().rbegin(); it != q.coeffs().rend(); ++it)
        r = sym_laurent_mul(r, chiV) + SymLaurent({{0, *it}});
    return r;
}

// ---------------------------------------------------------------------------
// printing

inline std::string IntPoly::str(const std::string& var) const {
    if (c_.empty()) return "0";
    std::string out;
    for (long i = degree(); i >= 0; --i) {
        const Int& c = c_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        std::string term;
        Int a = abs(c);
        if (i == 0 || a != 1) term += a.get_str();
        if (i > 0) {
            term += var;
            if (i > 1) term += "^" + std::to_string(i);
        }
        if (out.empty()) out = (c < 0 ? "-" : "") + term;
        else out += (c < 0 ? " - " : " + ") + term;
    }
    return out;
}

inline std::string RatPoly::str(const std::string& var) const {
    if (c_.empty()) return "0";
    std::string out;
    for (long i = degree(); i >= 0; --i) {
        const Rat& c = c_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        std::string term;
        Rat a = abs(c);
        if (i == 0 || a != 1) term += a.get_str();
        if (i > 0) {
            if (i != 0 && a != 1) term += "*";
            term += var;
            if (i > 1) term += "^" + std::to_string(i);
        }
        if (out.empty()) out = (c < 0 ? "-" : "") + term;
        else out += (c < 0 ? " - " : " + ") + term;
    }
    return out;
}

inline std::string SymLaurent::str() const {
    if (c_.empty()) return "0";
    std::string out;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        auto [m, c] = *it;
        std::string term = c.get_str();
        if (m != 0) term += "*(t^" + std::to_string(m) + " + t^-" + std::to_string(m) + ")";
        if (!out.empty()) out += " + ";
        out += term;
    }
    return out;
}

}  // namespace tiltfuse

#endif
