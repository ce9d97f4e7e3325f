#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "superopt/nehari_scalar.hpp"

using namespace superopt;

namespace {

RationalScalar randomScalarSymbol(std::mt19937& rng, int maxAntiDeg = 4) {
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::uniform_int_distribution<int> deg(1, maxAntiDeg), analytic(0, 2);
    std::vector<cplx> cs;
    const int d = deg(rng);
    for (int i = 0; i < d + analytic(rng) + 1; ++i) cs.emplace_back(coef(rng), coef(rng));
    return RationalScalar(LaurentScalar::fromCoeffs(-d, cs));
}

} // namespace

TEST_CASE("scalar best approximation, closed-form cases") {
    SUBCASE("zbar") {
        const auto r = best_approx_scalar(RationalScalar::z(-1));
        CHECK(r.g.isZero());
        CHECK(r.e.approxEqualOnGrid(RationalScalar::z(-1), 1e-12));
        CHECK(std::abs(r.sigma - 1.0) <= 1e-12);
        CHECK(r.indexOfError == 1);
    }
    SUBCASE("2 zbar scales") {
        const auto r = best_approx_scalar(RationalScalar::z(-1).scaled(cplx(2, 0)));
        CHECK(r.g.isZero());
        CHECK(std::abs(r.sigma - 2.0) <= 1e-12);
        CHECK(r.indexOfError == 1);
    }
    SUBCASE("worked example zbar^2/2 + (3/4) zbar") {
        const RationalScalar phi(LaurentScalar::fromCoeffs(-2, {cplx(0.5, 0), cplx(0.75, 0)}));
        const auto r = best_approx_scalar(phi);
        CHECK(std::abs(r.sigma - 1.0) <= 1e-12);
        // e = zbar^2 (1+2z)/(2+z)
        const RationalScalar eRef(LaurentScalar::fromCoeffs(-2, {cplx(1, 0), cplx(2, 0)}),
                                  LaurentScalar::fromCoeffs(0, {cplx(2, 0), cplx(1, 0)}));
        CHECK(r.e.approxEqualOnGrid(eRef, 1e-9));
        CHECK(winding(r.e) == -1);
        CHECK(r.indexOfError == 1);
    }
    SUBCASE("analytic input degenerates") {
        const auto r = best_approx_scalar(RationalScalar::z(2));
        CHECK(r.degenerate);
        CHECK(r.sigma == 0.0);
        CHECK(r.e.isZero());
    }
}

TEST_CASE("AAK contract on random rational symbols") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const auto phi = randomScalarSymbol(rng);
        const auto r = best_approx_scalar(phi);
        const int N = 1024;

        // |e| is constant = sigma
        const auto ev = r.e.evalGrid(N);
        for (const auto& v : ev) CHECK(std::abs(std::abs(v) - r.sigma) <= 1e-8);

        // g is analytic
        CHECK(analyticity_residual(MatSymbol::scalar(r.g)) <= 1e-9);

        // optimality: sup |phi - g| matches the Hankel norm (Nehari)
        double sup = 0.0;
        const auto dv = (phi - r.g).evalGrid(N);
        for (const auto& v : dv) sup = std::max(sup, std::abs(v));
        CHECK(std::abs(sup - hankel_norm(MatSymbol::scalar(phi))) <= 1e-7);

        CHECK(r.indexOfError >= 1);
    }
}

TEST_CASE("uniqueness probe: perturbations strictly worsen the error") {
    std::mt19937 rng(57);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    const auto phi = randomScalarSymbol(rng);
    const auto r = best_approx_scalar(phi);
    const int N = 2048;
    double base = 0.0;
    for (const auto& v : (phi - r.g).evalGrid(N)) base = std::max(base, std::abs(v));
    for (int t = 0; t < 10; ++t) {
        std::vector<cplx> hc;
        for (int i = 0; i < 3; ++i) hc.emplace_back(coef(rng), coef(rng));
        RationalScalar h(LaurentScalar::fromCoeffs(0, hc));
        h = h.scaled(cplx(1e-3 / std::max(1e-12, h.maxAbsOnGrid(N)), 0));
        double pert = 0.0;
        for (const auto& v : (phi - r.g - h).evalGrid(N)) pert = std::max(pert, std::abs(v));
        CHECK(pert > base);
    }
}

TEST_CASE("badly approximable certificates") {
    SUBCASE("zbar is badly approximable") {
        const auto c = badly_approximable_check(RationalScalar::z(-1));
        CHECK(c.verdict);
        CHECK(c.toeplitzIndex == 1);
        CHECK(c.modulusVariation <= 1e-12);
    }
    SUBCASE("z is not (index <= 0)") {
        const auto c = badly_approximable_check(RationalScalar::z(1));
        CHECK_FALSE(c.verdict);
        CHECK(c.toeplitzIndex == -1);
    }
    SUBCASE("derived AAK error is badly approximable") {
        const RationalScalar e(LaurentScalar::fromCoeffs(-2, {cplx(1, 0), cplx(2, 0)}),
                               LaurentScalar::fromCoeffs(0, {cplx(2, 0), cplx(1, 0)}));
        const auto c = badly_approximable_check(e);
        CHECK(c.verdict);
        CHECK(c.toeplitzIndex == 1);
    }
    SUBCASE("non-unimodular fails on modulus variation") {
        const RationalScalar f(LaurentScalar::fromCoeffs(-1, {cplx(1, 0), cplx(0.3, 0)}));
        CHECK_FALSE(badly_approximable_check(f).verdict);
    }
}
