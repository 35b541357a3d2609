#include <catch_amalgamated.hpp>

#include <random>

#include "tiltfuse/rootsum.hpp"

using namespace tiltfuse;

TEST_CASE("roots_of_B") {
    RootSumPlan p31(3, 1);
    auto r1 = roots_of_B(p31);
    REQUIRE(r1.size() == 2);
    CHECK(std::abs(r1[0].beta(128).to_double() - 1.0) < 1e-30);
    CHECK(std::abs(r1[1].beta(128).to_double() + 1.0) < 1e-30);

    RootSumPlan p33(3, 3);
    CHECK(p33.s == 1);
    CHECK(roots_of_B(p33).size() == 8);

    RootSumPlan p51(5, 1);
    auto r5 = roots_of_B(p51);
    REQUIRE(r5.size() == 4);
    for (const auto& root : r5) CHECK(std::abs(horner(p51.B, root.beta(256)).to_double()) < 1e-60);
}

TEST_CASE("root validity at high precision") {
    for (unsigned long p : {3ul, 5ul})
        for (unsigned long n : {1ul, p, p + 2, p * p}) {
            RootSumPlan plan(p, n, 256);
            auto roots = roots_of_B(plan);
            CHECK(roots.size() == plan.level_size() - 1);
            CHECK(static_cast<long>(roots.size()) == plan.B.degree());
            for (const auto& root : roots)
                CHECK(abs(horner(plan.B, root.beta(1024))).to_double() < std::ldexp(1.0, -512));
        }
}

TEST_CASE("R_trig against polynomial evaluation") {
    const mpfr_prec_t prec = 256;
    Real pi_ = Real::pi(prec);
    // R_2(0) = -1 at theta = pi/2
    CHECK(std::abs(R_trig(3, pi_ / 2).to_double() + 1.0) < 1e-60);
    // R_0 = 1 for every angle
    CHECK(std::abs(R_trig(1, Real(0.7, prec)).to_double() - 1.0) < 1e-60);
    // R_1(1) = 1 at theta = pi/3
    CHECK(std::abs(R_trig(2, pi_ / 3).to_double() - 1.0) < 1e-60);
    CHECK_THROWS_AS(R_trig(3, Real(0l, prec)), SingularAngle);
    CHECK_THROWS_AS(R_trig(0, pi_ / 2), std::invalid_argument);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> th(0.05, 3.09);
    for (int trial = 0; trial < 1000; ++trial) {
        unsigned long m = 1 + rng() % 9;
        Real theta(th(rng), prec);
        Real trig = R_trig(m, theta);
        Real poly = horner(RatPoly(reciprocal_R(m - 1)), cos(theta) * 2);
        double scale = std::max(std::abs(poly.to_double()), 1e-30);
        CHECK(std::abs((trig - poly).to_double()) <= scale * std::ldexp(1.0, -240));
    }
}

TEST_CASE("Bprime_trig against the symbolic derivative") {
    RootSumPlan p31(3, 1);
    // convention anchored to the polynomial derivative: B = t^2 - 1, B'(1) = 2
    CHECK(std::abs(Bprime_trig(p31, {1, 1, 3}).to_double() - 2.0) < 1e-60);
    CHECK(std::abs(std::abs(Bprime_trig(p31, {2, 1, 3}).to_double()) - 2.0) < 1e-60);

    RootSumPlan p51(5, 1);
    Real direct = Bprime_trig(p51, {1, 1, 5});
    Real sym = horner(p51.Bprime, RootAngle{1, 1, 5}.beta(256));
    CHECK(std::abs((direct - sym).to_double()) < 1e-60);

    for (unsigned long p : {3ul, 5ul})
        for (unsigned long n : {p - 1, p, p + 2, p * p, p * p + 3}) {
            RootSumPlan plan(p, n, 256);
            for (const auto& root : roots_of_B(plan)) {
                Real trig = Bprime_trig(plan, root);
                Real exact = horner(plan.Bprime, root.beta(256));
                double rel = std::abs(((trig - exact) / exact).to_double());
                CHECK(rel < 1e-20);
            }
        }
}

TEST_CASE("Bprime_trig rejects non-roots") {
    RootSumPlan plan(3, 3);  // level 2
    CHECK_THROWS_AS(Bprime_trig(plan, RootAngle{9, 2, 3}), MultipleVanishingFactors);
    CHECK_THROWS_AS(Bprime_trig(plan, RootAngle{1, 3, 3}), std::invalid_argument);
}

TEST_CASE("mu_rootsum") {
    RootSumPlan p31(3, 1);
    auto r = mu_rootsum(p31, 2);
    CHECK(r.rounded == 1);
    CHECK(r.residual < 1e-6);
    CHECK(mu_rootsum(p31, 3).rounded == 0);  // parity branch

    RootSumPlan p34(3, 4);
    CHECK(mu_rootsum(p34, 8).rounded == 0);  // parity-mismatched l
    CHECK(mu_rootsum(p34, 9).rounded == v_power_multiplicity(3, 9, 3));
    CHECK_THROWS_AS(mu_rootsum(p34, 5), RegimeViolation);
    CHECK(mu_rootsum(p34, 9).n_roots == 4);  // positive roots of the degree-8 B
}

TEST_CASE("mu_rootsum parity zeroes agree with the oracle") {
    for (unsigned long n : {2ul, 5ul, 7ul}) {
        RootSumPlan plan(3, n);
        unsigned long base = plan.level_size() - 2;
        for (unsigned long l = base; l < base + 6; ++l)
            if ((static_cast<long>(n) - 1 - static_cast<long>(l)) % 2 != 0) {
                CHECK(mu_rootsum(plan, l).rounded == 0);
                CHECK(v_power_multiplicity(static_cast<long>(n) - 1, l, 3) == 0);
            }
    }
}

TEST_CASE("sin_product_check") {
    const mpfr_prec_t prec = 256;
    Real pi_ = Real::pi(prec);
    auto [l1, r1] = sin_product_check(2, pi_ / 4);
    CHECK(std::abs((l1 - r1).to_double()) < 1e-70);
    CHECK(std::abs(l1.to_double() - 1.0) < 1e-70);
    auto [l2, r2] = sin_product_check(1, Real(1.234, prec));
    CHECK(std::abs((l2 - r2).to_double()) < 1e-70);
    auto [l3, r3] = sin_product_check(3, Real(0.3, prec));
    CHECK(std::abs((l3 - r3).to_double()) < 1e-70);
}

TEST_CASE("verify_estimates spot values") {
    const mpfr_prec_t prec = 256;
    Real pi_ = Real::pi(prec);
    // p=3, s=1, m=3, theta=pi/9: 2^3 > 2|R_2(2 cos pi/9)| >= 4/9
    Real v = abs(R_trig(3, pi_ / 9)) * 2;
    CHECK(v.to_double() < 8.0);
    CHECK(v.to_double() >= 4.0 / 9.0);
    // p=3, s=0: |sin(pi/3)| >= 2/3
    CHECK(sin(pi_ / 3).to_double() >= 2.0 / 3.0);

    for (unsigned long p : {3ul, 5ul})
        for (unsigned long s = 0; s <= 2; ++s) {
            Report rep = verify_estimates(p, s, 500, 99);
            CHECK(rep.all_pass());
        }
}
