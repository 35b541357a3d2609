#ifndef TILTFUSE_FUSION_HPP
#define TILTFUSE_FUSION_HPP

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "algebra.hpp"

// Digit-combinatorial fusion rule T(n) (x) T(1), tilting characters, the exact
// DP oracle for tensor-power multiplicities, and the fusion graph.

namespace tiltfuse {

// multiset of indecomposable tilting summands: highest weight -> multiplicity
using TiltingMultiset = std::map<long, Int>;

struct NotATiltingCharacter : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline bool is_prime(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline void require_odd_prime(unsigned long p) {
    if (p == 2) throw std::invalid_argument("p = 2 is not supported (odd characteristic only)");
    if (!is_prime(p)) throw std::invalid_argument("p must be an odd prime, got " + std::to_string(p));
}

struct DigitExpansion {
    unsigned long p = 3;
    std::vector<long> digits;  // little-endian, digits[i] = a_i in [0, p)
};

inline DigitExpansion digits(unsigned long n, unsigned long p) {
    require_odd_prime(p);
    DigitExpansion d{p, {}};
    if (n == 0) {
        d.digits.push_back(0);
        return d;
    }
    while (n > 0) {
        d.digits.push_back(static_cast<long>(n % p));
        n /= p;
    }
    return d;
}

// supp(n) = { a_j p^j +- a_{j-1} p^{j-1} +- ... +- a_0 } over digits of n+1;
// the leading term always enters positively.
inline std::vector<long> supp(unsigned long n, unsigned long p) {
    DigitExpansion d = digits(n + 1, p);
    std::vector<long> powers(d.digits.size(), 1);
    for (std::size_t i = 1; i < powers.size(); ++i) powers[i] = powers[i - 1] * static_cast<long>(p);
    std::vector<long> vals{d.digits.back() * powers.back()};
    for (std::size_t k = d.digits.size() - 1; k-- > 0;) {
        long term = d.digits[k] * powers[k];
        std::vector<long> next;
        next.reserve(vals.size() * 2);
        for (long v : vals) {
            next.push_back(v + term);
            if (term != 0) next.push_back(v - term);
        }
        vals = std::move(next);
    }
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    return vals;
}

// chi_n = sum over k in supp(n) of (t^k - t^-k)/(t - t^-1)
inline SymLaurent tilting_character(unsigned long n, unsigned long p) {
    std::map<long, Int> c;
    for (long k : supp(n, p))
        for (long m = k - 1; m >= 0; m -= 2) c[m] += 1;
    return SymLaurent(std::move(c));
}

inline Int dim_T(unsigned long n, unsigned long p) {
    Int d = 0;
    for (long k : supp(n, p)) d += k;
    return d;
}

// decomposition of T(n) (x) T(1); T(-1) = 0 summands are silently dropped
inline TiltingMultiset tensor_by_V(long n, unsigned long p) {
    require_odd_prime(p);
    if (n < 0) throw std::invalid_argument("tensor_by_V: n must be non-negative");
    const long P = static_cast<long>(p);
    DigitExpansion d = digits(static_cast<unsigned long>(n) + 1, p);
    const long a0 = d.digits[0];
    TiltingMultiset out;
    auto add = [&out](long w, long c) {
        if (w >= 0) out[w] += c;
    };
    if (a0 == 0) {
        add(n + 1, 1);
    } else if (a0 == 1) {
        add(n + 1, 1);
        add(n - 1, 2);
    } else if (a0 < P - 1) {
        add(n + 1, 1);
        add(n - 1, 1);
    } else {
        // a0 = p-1: let d0 be maximal with p^{d0+1} | n+2
        long n2 = n + 2;
        long d0 = -1;
        long pw = 1;
        while (n2 % (pw * P) == 0) {
            pw *= P;
            ++d0;
        }
        // pw = p^{d0+1}
        add(n + 1, 1);
        add(n - 1, 1);
        long q = P;
        for (long i = 1; i <= d0; ++i) {
            add(n + 1 - 2 * q, 1);
            q *= P;
        }
        // q = p^{d0+1}
        long rest = n2 / pw;
        if (rest < P) {
            // n+2 = rest * p^{d0+1} with rest < p
            if (rest > 1) add(n + 1 - 2 * q, 1);  // n+2 = a p^{d0+1}, 1 < a < p
            // rest == 1: n+2 = p^{d0+1}, nothing extra
        } else {
            long ad1 = (d0 + 1 < static_cast<long>(d.digits.size())) ? d.digits[static_cast<std::size_t>(d0 + 1)] : 0;
            if (ad1 == 1) add(n + 1 - 2 * q, 2);
            else if (ad1 > 1 && ad1 < P - 1) add(n + 1 - 2 * q, 1);
            // ad1 == 0: nothing (and ad1 == p-1 cannot happen by maximality of d0)
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Fusion graph

struct FusionEdge {
    long src;
    long dst;
    long mult;
    bool boundary;  // dst >= n_max
};

struct FusionGraph {
    unsigned long p;
    long n_max;
    std::vector<FusionEdge> edges;  // sorted by (src, dst)
};

inline FusionGraph fusion_graph(unsigned long p, long n_max) {
    require_odd_prime(p);
    if (n_max < 1) throw std::invalid_argument("fusion_graph: n_max must be >= 1");
    FusionGraph g{p, n_max, {}};
    for (long n = 0; n < n_max; ++n)
        for (const auto& [m, c] : tensor_by_V(n, p))
            g.edges.push_back({n, m, static_cast<long>(c.get_si()), m >= n_max});
    return g;
}

inline std::string fusion_graph_dot(const FusionGraph& g) {
    std::ostringstream os;
    os << "digraph fusion {\n";
    long max_node = g.n_max - 1;
    for (const auto& e : g.edges) max_node = std::max(max_node, e.dst);
    for (long n = 0; n <= max_node; ++n) os << "  n" << n << " [label=\"" << n << "\"];\n";
    for (const auto& e : g.edges) {
        os << "  n" << e.src << " -> n" << e.dst;
        if (e.mult > 1) os << " [label=\"" << e.mult << "\"]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Tensor-power engines

// greedy expansion of a character into tilting characters, strictly decreasing
// highest weight; failure certifies a non-tilting character
inline TiltingMultiset character_to_tilting(SymLaurent chi, unsigned long p) {
    require_odd_prime(p);
    TiltingMultiset out;
    while (!chi.is_zero()) {
        long m = chi.max_exponent();
        Int c = chi.coeff(m);
        if (c < 0)
            throw NotATiltingCharacter("negative leading coefficient at weight " + std::to_string(m));
        chi = chi - tilting_character(static_cast<unsigned long>(m), p) * c;
        out[m] = c;
    }
    return out;
}

inline SymLaurent multiset_character(const TiltingMultiset& T, unsigned long p) {
    SymLaurent chi;
    for (const auto& [n, c] : T)
        chi = chi + tilting_character(static_cast<unsigned long>(n), p) * c;
    return chi;
}

// cached fusion edges, shared by the DP engine
inline const TiltingMultiset& fusion_edges_cached(long n, unsigned long p) {
    static std::map<unsigned long, std::map<long, TiltingMultiset>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto& per_p = cache[p];
    auto it = per_p.find(n);
    if (it == per_p.end()) it = per_p.emplace(n, tensor_by_V(n, p)).first;
    return it->second;
}

// one DP step: state (x) V
inline TiltingMultiset dp_step(const TiltingMultiset& state, unsigned long p) {
    TiltingMultiset next;
    for (const auto& [n, c] : state)
        for (const auto& [m, cm] : fusion_edges_cached(n, p)) next[m] += c * cm;
    return next;
}

// incremental DP over tensor powers of V; advance() is sequential in k
class VPowerDP {
public:
    explicit VPowerDP(unsigned long p) : p_(p), state_{{0, Int(1)}} { require_odd_prime(p); }
    void advance_to(unsigned long k) {
        while (k_ < k) {
            state_ = dp_step(state_, p_);
            ++k_;
        }
    }
    unsigned long k() const { return k_; }
    const TiltingMultiset& state() const { return state_; }
    Int summand_count() const {
        Int b = 0;
        for (const auto& [n, c] : state_) b += c;
        return b;
    }

private:
    unsigned long p_;
    unsigned long k_ = 0;
    TiltingMultiset state_;
};

// summands of T^{(x)k}; DP engine when T = V, character-power engine otherwise
inline TiltingMultiset tensor_power_multiplicities(const TiltingMultiset& T, unsigned long k,
                                                   unsigned long p) {
    require_odd_prime(p);
    if (k == 0) return {{0, Int(1)}};
    const bool is_V = T.size() == 1 && T.begin()->first == 1 && T.begin()->second == 1;
    if (is_V) {
        VPowerDP dp(p);
        dp.advance_to(k);
        return dp.state();
    }
    SymLaurent chi = multiset_character(T, p);
    return character_to_tilting(sym_laurent_pow(chi, Int(static_cast<unsigned long>(k))), p);
}

inline Int b_k(const TiltingMultiset& T, unsigned long k, unsigned long p) {
    Int b = 0;
    for (const auto& [n, c] : tensor_power_multiplicities(T, k, p)) b += c;
    return b;
}

// multiplicity of T(n) in Q(V)^{(x)k}
inline Int mu(long n, const IntPoly& Q, unsigned long k, unsigned long p) {
    require_odd_prime(p);
    SymLaurent chiQ = eval_at_chi_V(Q);
    character_to_tilting(chiQ, p);  // validates that Q(V) is a genuine tilting module
    TiltingMultiset full = character_to_tilting(sym_laurent_pow(chiQ, Int(static_cast<unsigned long>(k))), p);
    auto it = full.find(n);
    return it == full.end() ? Int(0) : it->second;
}

// DP oracle rows: multiplicity of T(n) in V^{(x)l}, cached per p across calls
inline Int v_power_multiplicity(long n, unsigned long l, unsigned long p) {
    static std::map<unsigned long, std::vector<TiltingMultiset>> cache;
    static std::mutex mu_;
    std::lock_guard<std::mutex> lock(mu_);
    auto& states = cache[p];
    if (states.empty()) states.push_back({{0, Int(1)}});
    while (states.size() <= l) states.push_back(dp_step(states.back(), p));
    const auto& st = states[l];
    auto it = st.find(n);
    return it == st.end() ? Int(0) : it->second;
}

}  // namespace tiltfuse

#endif
