#ifndef TILTFUSE_REAL_HPP
#define TILTFUSE_REAL_HPP

#include <cstring>
#include <string>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

namespace tiltfuse {

// RAII wrapper around mpfr_t with value semantics.  Binary operations carry
// the larger precision of the two operands.
class Real {
public:
    explicit Real(mpfr_prec_t prec = 256) { mpfr_init2(x_, prec); mpfr_set_zero(x_, 1); }
    Real(long v, mpfr_prec_t prec) { mpfr_init2(x_, prec); mpfr_set_si(x_, v, MPFR_RNDN); }
    Real(double v, mpfr_prec_t prec) { mpfr_init2(x_, prec); mpfr_set_d(x_, v, MPFR_RNDN); }
    Real(const mpz_class& v, mpfr_prec_t prec) { mpfr_init2(x_, prec); mpfr_set_z(x_, v.get_mpz_t(), MPFR_RNDN); }
    Real(const mpq_class& v, mpfr_prec_t prec) { mpfr_init2(x_, prec); mpfr_set_q(x_, v.get_mpq_t(), MPFR_RNDN); }

    Real(const Real& o) { mpfr_init2(x_, mpfr_get_prec(o.x_)); mpfr_set(x_, o.x_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(x_, mpfr_get_prec(o.x_)); mpfr_swap(x_, o.x_); }
    Real& operator=(Real o) noexcept { mpfr_swap(x_, o.x_); return *this; }
    ~Real() { mpfr_clear(x_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(x_); }
    mpfr_ptr raw() { return x_; }
    mpfr_srcptr raw() const { return x_; }

    static Real pi(mpfr_prec_t prec) { Real r(prec); mpfr_const_pi(r.x_, MPFR_RNDN); return r; }

    double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(x_); }
    int sign() const { return mpfr_sgn(x_); }

    mpz_class round_to_int() const {
        mpfr_t t;
        mpfr_init2(t, prec());
        mpfr_round(t, x_);
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDN);
        mpfr_clear(t);
        return z;
    }

    std::string str(std::size_t digits10 = 20) const {
        char* s = nullptr;
        if (mpfr_asprintf(&s, "%.*Rg", static_cast<int>(digits10), x_) < 0) return "nan";
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

#define TILTFUSE_REAL_BINOP(op, fn)                                            \
    friend Real operator op(const Real& a, const Real& b) {                    \
        Real r(std::max(a.prec(), b.prec()));                                  \
        fn(r.x_, a.x_, b.x_, MPFR_RNDN);                                       \
        return r;                                                              \
    }
    TILTFUSE_REAL_BINOP(+, mpfr_add)
    TILTFUSE_REAL_BINOP(-, mpfr_sub)
    TILTFUSE_REAL_BINOP(*, mpfr_mul)
    TILTFUSE_REAL_BINOP(/, mpfr_div)
#undef TILTFUSE_REAL_BINOP

    Real& operator+=(const Real& o) { *this = *this + o; return *this; }
    Real& operator-=(const Real& o) { *this = *this - o; return *this; }
    Real& operator*=(const Real& o) { *this = *this * o; return *this; }
    Real& operator/=(const Real& o) { *this = *this / o; return *this; }

    friend Real operator-(const Real& a) {
        Real r(a.prec());
        mpfr_neg(r.x_, a.x_, MPFR_RNDN);
        return r;
    }
    friend Real operator*(const Real& a, long b) { return a * Real(b, a.prec()); }
    friend Real operator/(const Real& a, long b) { return a / Real(b, a.prec()); }
    friend Real operator+(const Real& a, long b) { return a + Real(b, a.prec()); }
    friend Real operator-(const Real& a, long b) { return a - Real(b, a.prec()); }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) < 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) > 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) <= 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) >= 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) == 0; }

#define TILTFUSE_REAL_UNARY(name, fn)                                          \
    friend Real name(const Real& a) {                                          \
        Real r(a.prec());                                                      \
        fn(r.x_, a.x_, MPFR_RNDN);                                             \
        return r;                                                              \
    }
    TILTFUSE_REAL_UNARY(sin, mpfr_sin)
    TILTFUSE_REAL_UNARY(cos, mpfr_cos)
    TILTFUSE_REAL_UNARY(tan, mpfr_tan)
    TILTFUSE_REAL_UNARY(log, mpfr_log)
    TILTFUSE_REAL_UNARY(exp, mpfr_exp)
    TILTFUSE_REAL_UNARY(sqrt, mpfr_sqrt)
    TILTFUSE_REAL_UNARY(abs, mpfr_abs)
#undef TILTFUSE_REAL_UNARY

    friend Real pow(const Real& a, long e) {
        Real r(a.prec());
        mpfr_pow_si(r.x_, a.x_, e, MPFR_RNDN);
        return r;
    }
    friend Real pow(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_pow(r.x_, a.x_, b.x_, MPFR_RNDN);
        return r;
    }

private:
    mpfr_t x_;
};

}  // namespace tiltfuse

#endif
