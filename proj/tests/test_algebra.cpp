#include <catch_amalgamated.hpp>

#include <random>

#include "tiltfuse/algebra.hpp"
#include "tiltfuse/real.hpp"

using namespace tiltfuse;

namespace {
RatPoly rp(std::initializer_list<long> cs) {
    std::vector<Rat> v;
    for (long c : cs) v.emplace_back(c);
    return RatPoly(std::move(v));
}
IntPoly ip(std::initializer_list<long> cs) {
    std::vector<Int> v;
    for (long c : cs) v.emplace_back(c);
    return IntPoly(std::move(v));
}
}  // namespace

TEST_CASE("poly_arith basic identities") {
    RatPoly one = RatPoly::one();
    RatPoly p2 = rp({1, 0, -1});  // 1 - t^2
    CHECK(poly_arith(p2, one, PolyOp::mul) == p2);
    CHECK(poly_arith(one, RatPoly::monomial(2), PolyOp::sub) == p2);
    CHECK(poly_arith(rp({-1, 0, 1}), p2, PolyOp::add).is_zero());
}

TEST_CASE("chebyshev_Q small cases") {
    CHECK(chebyshev_Q(0) == ip({2}));
    CHECK(chebyshev_Q(1) == ip({0, 1}));
    CHECK(chebyshev_Q(2) == ip({-2, 0, 1}));
    CHECK(chebyshev_Q(3) == ip({0, -3, 0, 1}));
}

TEST_CASE("chebyshev_Q defining substitution up to n = 200") {
    for (std::size_t n = 0; n <= 200; ++n) {
        SymLaurent expect = (n == 0) ? SymLaurent({{0, Int(2)}}) : SymLaurent::pair(static_cast<long>(n));
        CHECK(eval_at_chi_V(chebyshev_Q(n)) == expect);
    }
}

TEST_CASE("path_poly_P small cases and recurrence") {
    CHECK(path_poly_P(0) == RatPoly::one());
    CHECK(path_poly_P(1) == RatPoly::one());
    CHECK(path_poly_P(2) == rp({1, 0, -1}));
    CHECK(path_poly_P(3) == rp({1, 0, -2}));
    RatPoly t2 = RatPoly::monomial(2);
    for (std::size_t m = 2; m <= 50; ++m)
        CHECK(path_poly_P(m) == path_poly_P(m - 1) - t2 * path_poly_P(m - 2));
}

TEST_CASE("path_poly_P product form at random rational points") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-20, 20), den(1, 9);
    const mpfr_prec_t prec = 256;
    Real pi_ = Real::pi(prec);
    for (int trial = 0; trial < 64; ++trial) {
        std::size_t m = 1 + (rng() % 12);
        Rat x(num(rng), den(rng));
        x.canonicalize();
        Real exact(path_poly_P(m).eval(x), prec);
        Real prod(1l, prec);
        for (std::size_t k = 1; k <= m; ++k)
            prod = prod * (Real(1l, prec) -
                           Real(x, prec) * cos(pi_ * static_cast<long>(k) / static_cast<long>(m + 1)) * 2);
        Real diff = abs(exact - prod);
        if (!(abs(exact).to_double() < 1e-28))
            CHECK(diff.to_double() <= abs(exact).to_double() * 1e-30);
        else
            CHECK(diff.to_double() < 1e-30);
    }
}

TEST_CASE("reciprocal_R reverses path_poly_P and has the right roots") {
    CHECK(reciprocal_R(0) == RatPoly::one());
    CHECK(reciprocal_R(1) == RatPoly::x());
    CHECK(reciprocal_R(2) == rp({-1, 0, 1}));
    for (std::size_t m = 0; m <= 50; ++m)
        CHECK(reciprocal_R(m) == path_poly_P(m).reversed_to(m));
    const mpfr_prec_t prec = 256;
    Real pi_ = Real::pi(prec);
    for (std::size_t m = 1; m <= 12; ++m) {
        RatPoly R = reciprocal_R(m);
        for (std::size_t k = 1; k <= m; ++k) {
            Real beta = cos(pi_ * static_cast<long>(k) / static_cast<long>(m + 1)) * 2;
            Real v(prec);
            for (auto it = R.coeffs().rbegin(); it != R.coeffs().rend(); ++it) v = v * beta + Real(*it, prec);
            CHECK(abs(v).to_double() < 1e-60);
        }
    }
}

TEST_CASE("compose_R_Q examples") {
    CHECK(compose_R_Q(2, 0, 3) == rp({-1, 0, 1}));
    CHECK(compose_R_Q(1, 1, 3) == rp({0, -3, 0, 1}));
    RatPoly q3 = RatPoly(chebyshev_Q(3));
    CHECK(compose_R_Q(2, 1, 3) == q3 * q3 - RatPoly::one());
}

TEST_CASE("hat transform") {
    CHECK(hat(rp({-1, 0, 1})) == rp({1, 0, -1}));
    CHECK(hat(RatPoly::one()) == RatPoly::one());
    CHECK(hat(rp({-2, 1})) == rp({1, -2}));
    CHECK_THROWS_AS(hat(RatPoly::x()), std::invalid_argument);

    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> cd(-9, 9);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Rat> cs;
        cs.emplace_back(cd(rng) * 2 + 1);  // nonzero constant term
        std::size_t deg = 1 + rng() % 8;
        for (std::size_t i = 0; i < deg; ++i) cs.emplace_back(cd(rng));
        RatPoly f(std::move(cs));
        RatPoly hh = hat(hat(f));
        // hat(hat(f)) = f when the leading coefficient is nonzero, else the
        // reversal pair agrees up to the monic/scalar normalization
        CHECK(hh.monic() == f.monic());
    }
}

TEST_CASE("taylor_coeffs") {
    auto geo = taylor_coeffs(RatFn(RatPoly::one(), rp({1, 0, -1})), 4);
    CHECK(geo == std::vector<Rat>{1, 0, 1, 0, 1});
    auto poly = taylor_coeffs(RatFn::from_poly(rp({1, 1})), 2);
    CHECK(poly == std::vector<Rat>{1, 1, 0});
    auto shifted = taylor_coeffs(RatFn(RatPoly::x(), rp({1, 0, -1})), 5);
    CHECK(shifted == std::vector<Rat>{0, 1, 0, 1, 0, 1});
    CHECK_THROWS_AS(taylor_coeffs(RatFn::from_coprime(RatPoly::one(), RatPoly::x()), 3),
                    std::invalid_argument);
}

TEST_CASE("taylor_coeffs respects Cauchy products") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<long> cd(-5, 5);
    auto random_fn = [&]() {
        std::vector<Rat> n{Rat(cd(rng)), Rat(cd(rng)), Rat(cd(rng))};
        std::vector<Rat> d{Rat(1), Rat(cd(rng)), Rat(cd(rng))};
        return RatFn(RatPoly(std::move(n)), RatPoly(std::move(d)));
    };
    const std::size_t N = 30;
    for (int trial = 0; trial < 20; ++trial) {
        RatFn f = random_fn(), g = random_fn();
        auto cf = taylor_coeffs(f, N), cg = taylor_coeffs(g, N), cfg = taylor_coeffs(f * g, N);
        for (std::size_t k = 0; k <= N; ++k) {
            Rat conv = 0;
            for (std::size_t j = 0; j <= k; ++j) conv += cf[j] * cg[k - j];
            CHECK(conv == cfg[k]);
        }
    }
}

TEST_CASE("sym_laurent_mul") {
    SymLaurent chiV = SymLaurent::pair(1);
    CHECK(sym_laurent_mul(chiV, chiV) == SymLaurent({{2, Int(1)}, {0, Int(2)}}));
    SymLaurent a({{3, Int(2)}, {1, Int(1)}, {0, Int(4)}});
    CHECK(sym_laurent_mul(a, SymLaurent::one()) == a);
    SymLaurent b({{2, Int(1)}, {0, Int(1)}});
    CHECK(sym_laurent_mul(chiV, b) == SymLaurent({{3, Int(1)}, {1, Int(2)}}));
    CHECK(sym_laurent_mul(a, b).at_one() == a.at_one() * b.at_one());
}

TEST_CASE("chebyshev_basis and round trips") {
    CHECK(chebyshev_basis(SymLaurent::pair(1)) == IntPoly::x());
    CHECK(chebyshev_basis(SymLaurent({{2, Int(1)}, {0, Int(1)}})) == ip({-1, 0, 1}));
    CHECK(chebyshev_basis(SymLaurent::one()) == IntPoly::constant(1));

    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> cd(-4, 4);
    for (int trial = 0; trial < 100; ++trial) {
        std::map<long, Int> cs;
        long top = 1 + static_cast<long>(rng() % 10);
        for (long m = 0; m <= top; ++m) {
            long c = cd(rng);
            if (c != 0) cs[m] = c;
        }
        SymLaurent chi(std::move(cs));
        CHECK(eval_at_chi_V(chebyshev_basis(chi)) == chi);
    }
}

TEST_CASE("RatFn canonical form") {
    RatFn f(rp({0, 2, 0, -2}), rp({2, 0, -2}));  // (2t - 2t^3)/(2 - 2t^2) = t
    CHECK(f == RatFn::from_poly(RatPoly::x()));
    CHECK(f.den() == RatPoly::one());
    RatFn g(rp({1}), rp({2, 0, -2}));
    CHECK(g.den().leading() == 1);  // monic denominator
    CHECK(poly_gcd(g.num(), g.den()).degree() <= 0);
    CHECK_THROWS_AS(RatFn(RatPoly::one(), RatPoly()), std::invalid_argument);
}
