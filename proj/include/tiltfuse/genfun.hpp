#ifndef TILTFUSE_GENFUN_HPP
#define TILTFUSE_GENFUN_HPP

#include <map>
#include <mutex>
#include <random>
#include <tuple>

#include "algebra.hpp"
#include "fusion.hpp"
#include "report.hpp"

// Closed-form rational generating functions Z_n = X_{n-1} and the functions
// c_s, plus exact verification of the identities relating them.
//
// The t^l coefficient of Z_n is the multiplicity of T(n-1) in V^{(x)l}.
// Writing n = [a_s, ..., a_0] base p,
//   t Z_n(t) = t^n prod_i Rhat_{p-a_i-1, i}(t) / prod_i Rhat_{p-1, i}(t),
// and factors at levels with a_i = 0 cancel, which makes the skip-zero-digit
// product already fully reduced.

namespace tiltfuse {

struct GenFunQuery {
    unsigned long p;
    unsigned long n;  // index of Z_n; n >= 1 (Z_0 = 1/t is a distinguished constant)
    unsigned long s;  // derived: number of base-p digits of n, minus 1

    GenFunQuery(unsigned long p_, unsigned long n_) : p(p_), n(n_) {
        require_odd_prime(p);
        if (n == 0) throw std::invalid_argument("GenFunQuery: n must be >= 1");
        s = digits(n, p).digits.size() - 1;
    }
};

// Rhat_{m,i} = reversal of R_m o Q_{p^i}, cached
inline const RatPoly& rhat_factor(std::size_t m, std::size_t i, unsigned long p) {
    static std::map<std::tuple<unsigned long, std::size_t, std::size_t>, RatPoly> cache;
    static std::mutex mu_;
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_tuple(p, m, i);
    auto it = cache.find(key);
    if (it == cache.end()) {
        RatPoly R = compose_R_Q(m, i, p);
        std::size_t deg = static_cast<std::size_t>(std::max<long>(R.degree(), 0));
        it = cache.emplace(key, R.reversed_to(deg)).first;
    }
    return it->second;
}

// t * Z_n over the level denominator prod_{i=0}^{S} Rhat_{p-1,i}:
// the numerator t^n prod_{i<=S} Rhat_{p-a_i-1,i} (digits a_i of n, zero beyond
// the top digit).  n = 0 yields the denominator itself (t Z_0 = 1).
inline RatPoly tz_numerator_over_level(unsigned long n, std::size_t S, unsigned long p) {
    std::vector<long> a(S + 1, 0);
    if (n > 0) {
        auto d = digits(n, p).digits;
        if (d.size() > S + 1) throw std::invalid_argument("tz_numerator_over_level: level too small");
        std::copy(d.begin(), d.end(), a.begin());
    }
    RatPoly num = RatPoly::one();
    for (std::size_t i = 0; i <= S; ++i)
        num = num * rhat_factor(static_cast<std::size_t>(p) - 1 - static_cast<std::size_t>(a[i]), i, p);
    return num.shifted(n);
}

inline RatPoly level_denominator(std::size_t S, unsigned long p) {
    RatPoly den = RatPoly::one();
    for (std::size_t i = 0; i <= S; ++i) den = den * rhat_factor(static_cast<std::size_t>(p) - 1, i, p);
    return den;
}

// fully reduced Z_n; Z_0 = 1/t
inline RatFn Z_closed(unsigned long p, unsigned long n) {
    require_odd_prime(p);
    if (n == 0) return RatFn::from_coprime(RatPoly::one(), RatPoly::x());
    auto d = digits(n, p).digits;
    RatPoly num = RatPoly::one();
    RatPoly den = RatPoly::one();
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] == 0) continue;  // these level factors cancel exactly
        num = num * rhat_factor(static_cast<std::size_t>(p) - 1 - static_cast<std::size_t>(d[i]), i, p);
        den = den * rhat_factor(static_cast<std::size_t>(p) - 1, i, p);
    }
    return RatFn::from_coprime(num.shifted(n - 1), den);
}

inline RatFn Z_closed(const GenFunQuery& q) { return Z_closed(q.p, q.n); }

// c_s as a reduced rational function: c_0 = t, c_s = 1 / Q_{p^s}(1/t)
inline RatFn c_s_fn(std::size_t s, unsigned long p) {
    require_odd_prime(p);
    if (s == 0) return RatFn::from_poly(RatPoly::x());
    Int ps_i;
    mpz_ui_pow_ui(ps_i.get_mpz_t(), p, static_cast<unsigned long>(s));
    std::size_t ps = ps_i.get_ui();
    RatPoly Q(chebyshev_Q(ps));
    RatPoly den = Q.reversed_to(ps);  // t^{p^s} Q(1/t), constant term 1
    return RatFn::from_coprime(RatPoly::monomial(ps), den);
}

// Z_{a p^s} via substitution of c_s into the single-digit formula
// (1/t) c_s^a P_{p-a-1}(c_s) / P_{p-1}(c_s)
inline RatFn Z_single_digit(std::size_t a, std::size_t s, unsigned long p) {
    require_odd_prime(p);
    if (a >= p) throw std::invalid_argument("Z_single_digit: digit out of range");
    RatFn F = RatFn(path_poly_P(static_cast<std::size_t>(p) - 1 - a).shifted(a),
                    path_poly_P(static_cast<std::size_t>(p) - 1));
    RatFn c = c_s_fn(s, p);
    return ratfn_compose(F, c) / RatFn::from_poly(RatPoly::x());
}

// ---------------------------------------------------------------------------
// Identity suites

// eq3/eq2: the linear recurrences among the X_n, keyed by the digits of n+1
inline Report verify_linear_recurrences(unsigned long p, unsigned long n_max) {
    require_odd_prime(p);
    Report rep{"linear_recurrences", p, {}};
    for (unsigned long n = 0; n <= n_max; ++n) {
        // term list: (coefficient, Z-index m1) with X_m = Z_{m+1}
        std::vector<std::pair<long, unsigned long>> rhs;
        std::string branch;
        unsigned long np1 = n + 1;
        long a0 = static_cast<long>(np1 % p);
        if (a0 >= 1 && a0 < static_cast<long>(p) - 1) {
            branch = "eq3_interior";
            rhs = {{1, n}, {1, n + 2}};  // t(X_{n-1} + X_{n+1})
        } else if (a0 == static_cast<long>(p) - 1) {
            branch = "eq3_top";
            rhs = {{1, n}};  // t X_{n-1}
        } else {
            branch = "eq2";
            unsigned long pw = 1;  // p^{d+1} after the loop
            long d = -1;
            while (np1 % (pw * p) == 0) {
                pw *= p;
                ++d;
            }
            rhs = {{1, n}, {2, n + 2}};
            unsigned long q = p;
            for (long i = 1; i <= d; ++i) {
                rhs.push_back({2, n + 2 * q});  // X_{n + 2 p^i - 1}
                q *= p;
            }
            long ad1 = static_cast<long>((np1 / pw) % p);
            if (ad1 >= 1 && ad1 <= static_cast<long>(p) - 2) rhs.push_back({1, n + 2 * pw});
            // ad1 == p-1: no correction term
        }
        unsigned long max_index = n + 1;
        for (const auto& [c, m1] : rhs) max_index = std::max(max_index, m1);
        std::size_t S = digits(max_index, p).digits.size() - 1;
        RatPoly lhs_num = tz_numerator_over_level(n + 1, S, p);
        RatPoly rhs_num;
        for (const auto& [c, m1] : rhs)
            rhs_num = rhs_num + tz_numerator_over_level(m1, S, p) * Rat(c);
        rhs_num = rhs_num.shifted(1);  // overall factor t on the right-hand side
        bool ok = lhs_num == rhs_num;
        rep.cases.push_back({{{"n", n}, {"branch", branch}},
                             ok,
                             stable_hash(lhs_num.str()),
                             stable_hash(rhs_num.str()),
                             ""});
    }
    return rep;
}

// Z_{a p^s + i} = t Z_{a p^s} Z_i, exhaustive for p^s <= 125 else sampled
inline Report verify_multiplicativity(unsigned long p, std::size_t s_max, unsigned long seed = 42,
                                      std::size_t sample_size = 50) {
    require_odd_prime(p);
    Report rep{"multiplicativity", p, {}};
    std::mt19937_64 rng(seed);
    for (std::size_t s = 1; s <= s_max; ++s) {
        Int ps_i;
        mpz_ui_pow_ui(ps_i.get_mpz_t(), p, static_cast<unsigned long>(s));
        unsigned long ps = ps_i.get_ui();
        std::vector<unsigned long> is;
        if (ps <= 125) {
            for (unsigned long i = 0; i < ps; ++i) is.push_back(i);
        } else {
            std::uniform_int_distribution<unsigned long> dist(0, ps - 1);
            for (std::size_t c = 0; c < sample_size; ++c) is.push_back(dist(rng));
        }
        for (unsigned long a = 1; a < p; ++a) {
            RatFn za = Z_closed(p, a * ps);
            for (unsigned long i : is) {
                RatFn lhs = Z_closed(p, a * ps + i);
                RatFn zi = Z_closed(p, i);
                // for i > 0 the factors live on disjoint digit levels, so the
                // product is already reduced; i = 0 has Z_0 = 1/t cancelling
                // the explicit factor t
                RatFn rhs = (i == 0) ? za
                                     : RatFn::from_coprime(za.num() * zi.num() * RatPoly::x(),
                                                           za.den() * zi.den());
                bool ok = lhs == rhs;
                rep.cases.push_back({{{"s", s}, {"a", a}, {"i", i}},
                                     ok,
                                     stable_hash(lhs.str()),
                                     stable_hash(rhs.str()),
                                     ""});
            }
        }
    }
    return rep;
}

// three characterizations of c_s agree as reduced rational functions
inline Report verify_cs_identities(unsigned long p, std::size_t s_max) {
    require_odd_prime(p);
    Report rep{"cs_identities", p, {}};
    RatFn t = RatFn::from_poly(RatPoly::x());
    RatFn one = RatFn::from_poly(RatPoly::one());
    for (std::size_t s = 0; s <= s_max; ++s) {
        Int ps_i;
        mpz_ui_pow_ui(ps_i.get_mpz_t(), p, static_cast<unsigned long>(s));
        unsigned long ps = ps_i.get_ui();
        RatFn direct = c_s_fn(s, p);
        // quotient form: t Z_{p^s} / (1 + t Z_{2 p^s})
        RatFn quot = (t * Z_closed(p, ps)) / (one + t * Z_closed(p, 2 * ps));
        // series form: t^2 Z_{p^s - 1} / (1 - 2 t^3 sum_{i<s} Z_{p^i} Z_{p^i - 1})
        RatFn acc;  // zero
        unsigned long pi = 1;
        for (std::size_t i = 0; i < s; ++i) {
            acc = acc + Z_closed(p, pi) * Z_closed(p, pi - 1);
            pi *= p;
        }
        RatFn t3 = RatFn::from_poly(RatPoly::monomial(3, Rat(2)));
        RatFn series = (t * t * Z_closed(p, ps - 1)) / (one - t3 * acc);
        bool ok = direct == quot && direct == series;
        std::string note;
        if (s >= 1) {
            RatFn composed = ratfn_compose(c_s_fn(1, p), c_s_fn(s - 1, p));
            ok = ok && direct == composed;
            note = "includes c_1(c_{s-1}) composition";
        }
        rep.cases.push_back({{{"s", s}},
                             ok,
                             stable_hash(direct.str()),
                             stable_hash(quot.str()),
                             note});
    }
    return rep;
}

// Taylor coefficients of Z_n against the fusion DP oracle
inline Report coeffs_vs_oracle(unsigned long p, unsigned long n, unsigned long L) {
    require_odd_prime(p);
    if (n == 0) throw std::invalid_argument("coeffs_vs_oracle: n = 0 is not Taylor-expandable");
    Report rep{"coeffs_vs_oracle", p, {}};
    auto coeffs = taylor_coeffs(Z_closed(p, n), L);
    for (unsigned long l = 0; l <= L; ++l) {
        Int oracle = v_power_multiplicity(static_cast<long>(n) - 1, l, p);
        bool ok = coeffs[l] == Rat(oracle);
        rep.cases.push_back({{{"n", n}, {"l", l}},
                             ok,
                             stable_hash(coeffs[l].get_str()),
                             stable_hash(oracle.get_str()),
                             ""});
    }
    return rep;
}

}  // namespace tiltfuse

#endif
