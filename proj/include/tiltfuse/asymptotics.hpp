#ifndef TILTFUSE_ASYMPTOTICS_HPP
#define TILTFUSE_ASYMPTOTICS_HPP

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "algebra.hpp"
#include "fusion.hpp"
#include "real.hpp"

// Tensor-power growth: the polynomial model Q of a tilting module, the growth
// exponent alpha_p, the l-selection and M_k diagnostic, tail-mass measurement,
// and the ratio table probing b_k ~ k^{-alpha_p} (dim T)^k.

namespace tiltfuse {

struct InvariantViolation : std::logic_error {
    using std::logic_error::logic_error;
};
struct NonpositiveBase : std::domain_error {
    using std::domain_error::domain_error;
};

enum class ParityClass { even, odd, mixed };
enum class WantParity { even, odd, match_Qk };

inline std::string to_string(ParityClass pc) {
    switch (pc) {
        case ParityClass::even: return "even";
        case ParityClass::odd: return "odd";
        default: return "mixed";
    }
}

inline Real horner(const IntPoly& f, const Real& x) {
    Real r(x.prec());
    for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it)
        r = r * x + Real(*it, x.prec());
    return r;
}

// chi_T(t) = Q(t + 1/t); dim = Q(2), parity from Q(-2)
struct TiltingPolySpec {
    unsigned long p;
    IntPoly Q;
    Int dim;
    Int derivative_at_2;
    Int minus2;
    ParityClass parity_class;
    std::string grid_note;  // near-boundary log from the |Q| < dim sweep

    TiltingPolySpec(unsigned long p_, IntPoly Q_) : p(p_), Q(std::move(Q_)) {
        dim = Q.eval(Int(2));
        derivative_at_2 = Q.derivative().eval(Int(2));
        minus2 = Q.eval(Int(-2));
        if (dim <= 0) throw InvariantViolation("Q(2) = dim must be positive");
        if (Q.degree() > 0 && derivative_at_2 <= 0)
            throw InvariantViolation("Q'(2) must be positive for deg Q > 0");
        if (minus2 == dim) parity_class = ParityClass::even;
        else if (minus2 == -dim) parity_class = ParityClass::odd;
        else parity_class = ParityClass::mixed;
        // |Q| < dim on (-2, 2), sampled on a 1000-point grid
        const double d = dim.get_d();
        for (int i = 1; i < 1000; ++i) {
            double x = -2.0 + 4.0 * i / 1000.0;
            double qx = 0;
            for (auto it = Q.coeffs().rbegin(); it != Q.coeffs().rend(); ++it)
                qx = qx * x + it->get_d();
            if (std::abs(qx) >= d)
                throw InvariantViolation("|Q(x)| < dim violated at grid point x=" + std::to_string(x));
            if (std::abs(qx) > d - 1e-6)
                grid_note += "near-boundary at x=" + std::to_string(x) + ";";
        }
    }
};

inline TiltingPolySpec spec_from_tilting(const TiltingMultiset& T, unsigned long p) {
    require_odd_prime(p);
    if (T.empty()) throw std::invalid_argument("spec_from_tilting: empty multiset");
    return TiltingPolySpec(p, chebyshev_basis(multiset_character(T, p)));
}

// alpha_p = 1 - (1/2) log_p((p+1)/2)
inline Real alpha_p(unsigned long p, mpfr_prec_t prec = 256) {
    require_odd_prime(p);
    Real half_next = Real(static_cast<long>(p) + 1, prec) / 2;
    return Real(1l, prec) - log(half_next) / (log(Real(static_cast<long>(p), prec)) * 2);
}

// l = floor(2k Q'(2)/dim), bumped by at most 1 to meet the requested parity
inline long choose_l(unsigned long k, const TiltingPolySpec& spec, WantParity want) {
    if (k < 1) throw std::invalid_argument("choose_l: k must be >= 1");
    Int base_z = (2 * Int(static_cast<unsigned long>(k)) * spec.derivative_at_2) / spec.dim;
    long base = base_z.get_si();
    int target;
    switch (want) {
        case WantParity::even: target = 0; break;
        case WantParity::odd: target = 1; break;
        default:
            if (spec.parity_class == ParityClass::odd) target = static_cast<int>(k % 2);
            else if (spec.parity_class == ParityClass::even) target = 0;
            else return base;  // mixed parity: no constraint
    }
    return (base % 2 == target) ? base : base + 1;
}

// M_k = (Q(beta)/dim)^k (2/beta)^l at beta = 2 cos theta; diagnostic only
inline Real mk_diagnostic(const TiltingPolySpec& spec, unsigned long k, const Real& theta) {
    Real beta = cos(theta) * 2;
    Real qb = horner(spec.Q, beta);
    if (qb.sign() <= 0) throw NonpositiveBase("Q(beta) <= 0 at this theta");
    long l = choose_l(k, spec, WantParity::match_Qk);
    Real ratio = qb / Real(spec.dim, theta.prec());
    return pow(ratio, static_cast<long>(k)) * pow(Real(2l, theta.prec()) / beta, l);
}

struct TailMass {
    Int mass;
    Real ratio;
    double cutoff;
};

// exact dimension of the weight-> cutoff part of T^{(x)k} by character powers
inline TailMass weight_tail_mass(const TiltingPolySpec& spec, unsigned long k, double cutoff,
                                 mpfr_prec_t prec = 128) {
    if (k < 1) throw std::invalid_argument("weight_tail_mass: k must be >= 1");
    SymLaurent chik = sym_laurent_pow(eval_at_chi_V(spec.Q), Int(static_cast<unsigned long>(k)));
    Int mass = 0;
    for (const auto& [m, c] : chik.coeffs())
        if (static_cast<double>(m) > cutoff) mass += c;
    Int denom;
    mpz_pow_ui(denom.get_mpz_t(), spec.dim.get_mpz_t(), k);
    return {mass, Real(mass, prec) / Real(denom, prec), cutoff};
}

inline double default_cutoff(unsigned long k) {
    return std::sqrt(static_cast<double>(k)) * std::log(static_cast<double>(k));
}

struct GrowthSample {
    unsigned long k;
    Int b_k;
    Real ratio;  // b_k k^{alpha_p} / (dim T)^k
};

// exact b_k at each requested k; one shared incremental engine walks the
// sorted k list, so the whole table costs a single pass to max(k_list)
inline std::vector<GrowthSample> growth_table(const TiltingMultiset& T, unsigned long p,
                                              std::vector<unsigned long> k_list,
                                              mpfr_prec_t prec = 128) {
    require_odd_prime(p);
    for (unsigned long k : k_list)
        if (k < 1) throw std::invalid_argument("growth_table: k entries must be >= 1");
    std::sort(k_list.begin(), k_list.end());
    k_list.erase(std::unique(k_list.begin(), k_list.end()), k_list.end());

    TiltingPolySpec spec = spec_from_tilting(T, p);
    Real alpha = alpha_p(p, prec);
    Real dim_r(spec.dim, prec);
    std::vector<GrowthSample> out;
    out.reserve(k_list.size());
    auto emit = [&](unsigned long k, Int bk) {
        Real ratio = Real(bk, prec) * exp(alpha * log(Real(static_cast<long>(k), prec))) /
                     exp(log(dim_r) * static_cast<long>(k));
        out.push_back({k, std::move(bk), ratio});
    };

    const bool is_V = T.size() == 1 && T.begin()->first == 1 && T.begin()->second == 1;
    if (is_V) {
        VPowerDP dp(p);
        for (unsigned long k : k_list) {
            dp.advance_to(k);
            emit(k, dp.summand_count());
        }
    } else {
        SymLaurent chi = multiset_character(T, p);
        SymLaurent cur = SymLaurent::one();
        unsigned long cur_k = 0;
        for (unsigned long k : k_list) {
            for (; cur_k < k; ++cur_k) cur = sym_laurent_mul(cur, chi);
            Int bk = 0;
            for (const auto& [n, c] : character_to_tilting(cur, p)) bk += c;
            emit(k, bk);
        }
    }
    return out;
}

// least-squares slope of log(ratio) against log(k)
inline double slope_fit(const std::vector<GrowthSample>& samples) {
    if (samples.size() < 2) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& s : samples) {
        double x = std::log(static_cast<double>(s.k));
        double y = std::log(s.ratio.to_double());
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double n = static_cast<double>(samples.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline std::string growth_csv(const std::vector<GrowthSample>& samples, const TiltingPolySpec& spec,
                              mpfr_prec_t prec = 128) {
    std::ostringstream os;
    os << "k,b_k,dim_T,alpha_p,ratio\n";
    Real alpha = alpha_p(spec.p, prec);
    for (const auto& s : samples)
        os << s.k << "," << s.b_k.get_str() << "," << spec.dim.get_str() << ","
           << alpha.str(20) << "," << s.ratio.str(20) << "\n";
    return os.str();
}

inline nlohmann::json growth_summary(const std::vector<GrowthSample>& samples,
                                     const TiltingPolySpec& spec, const std::string& t_label) {
    nlohmann::json window = nlohmann::json::array();
    std::string min_r, max_r;
    double min_v = 0, max_v = 0;
    for (const auto& s : samples) {
        window.push_back(s.k);
        double v = s.ratio.to_double();
        if (min_r.empty() || v < min_v) {
            min_v = v;
            min_r = s.ratio.str(20);
        }
        if (max_r.empty() || v > max_v) {
            max_v = v;
            max_r = s.ratio.str(20);
        }
    }
    return {{"p", spec.p},          {"T", t_label},        {"window", window},
            {"min_ratio", min_r},   {"max_ratio", max_r},  {"slope_fit", slope_fit(samples)}};
}

}  // namespace tiltfuse

#endif
