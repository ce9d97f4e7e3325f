#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "superopt/ring.hpp"

using namespace superopt;

namespace {

cplx circlePoint(double theta) { return std::polar(1.0, theta); }

RationalScalar randomZeroFreeRational(std::mt19937& rng) {
    // z^m * prod (z - r_i) / prod (1 - z/s_j) with all roots off the circle
    std::uniform_int_distribution<int> mDist(-2, 2), nIn(0, 2), nOut(0, 2);
    std::uniform_real_distribution<double> insideMod(0.1, 0.8), outsideMod(1.4, 3.0),
        angle(0.0, 2.0 * std::numbers::pi);
    LaurentScalar num(cplx(1.0, 0.0));
    const int ni = nIn(rng), no = nOut(rng);
    for (int i = 0; i < ni; ++i) {
        const cplx r = std::polar(insideMod(rng), angle(rng));
        num = num * (LaurentScalar::monomial(1) - LaurentScalar(r));
    }
    for (int i = 0; i < no; ++i) {
        const cplx r = std::polar(outsideMod(rng), angle(rng));
        num = num * (LaurentScalar::monomial(1) - LaurentScalar(r));
    }
    LaurentScalar den(cplx(1.0, 0.0));
    const int nd = nOut(rng);
    for (int i = 0; i < nd; ++i) {
        const cplx s = std::polar(outsideMod(rng), angle(rng));
        den = den * (LaurentScalar(cplx(1.0, 0.0)) -
                     LaurentScalar::monomial(1, cplx(1.0, 0.0) / s));
    }
    return RationalScalar(num.shifted(mDist(rng)), den);
}

} // namespace

TEST_CASE("laurent arithmetic and grid evaluation agree") {
    const LaurentScalar f =
        LaurentScalar::fromCoeffs(-2, {cplx(1, 0), cplx(0, 2), cplx(-0.5, 0), cplx(0, 0), cplx(3, 1)});
    const int N = 64;
    const auto vals = f.evalGrid(N);
    for (int k = 0; k < N; ++k) {
        const cplx direct = f.eval(circlePoint(2.0 * std::numbers::pi * k / N));
        CHECK(std::abs(vals[k] - direct) <= 1e-12 * std::max(1.0, std::abs(direct)));
    }
    const auto back = LaurentScalar::fromGrid(vals, -2, 2);
    CHECK(back.approxEqual(f, 1e-12));
}

TEST_CASE("roots of factored polynomials") {
    SUBCASE("z^2 - 1") {
        const auto rs = roots(LaurentScalar::fromCoeffs(0, {cplx(-1, 0), cplx(0, 0), cplx(1, 0)}));
        REQUIRE(rs.size() == 2);
        double d1 = std::min(std::abs(rs[0] - cplx(1, 0)), std::abs(rs[0] + cplx(1, 0)));
        double d2 = std::min(std::abs(rs[1] - cplx(1, 0)), std::abs(rs[1] + cplx(1, 0)));
        CHECK(d1 < 1e-10);
        CHECK(d2 < 1e-10);
    }
    SUBCASE("z^2 + 1/4") {
        const auto rs = roots(LaurentScalar::fromCoeffs(0, {cplx(0.25, 0), cplx(0, 0), cplx(1, 0)}));
        REQUIRE(rs.size() == 2);
        for (const auto& r : rs) CHECK(std::abs(std::abs(r.imag()) - 0.5) < 1e-10);
    }
    SUBCASE("(z - 1/2)(z - 2)") {
        const auto rs = roots(LaurentScalar::fromCoeffs(0, {cplx(1, 0), cplx(-2.5, 0), cplx(1, 0)}));
        REQUIRE(rs.size() == 2);
        const double lo = std::min(std::abs(rs[0]), std::abs(rs[1]));
        const double hi = std::max(std::abs(rs[0]), std::abs(rs[1]));
        CHECK(std::abs(lo - 0.5) < 1e-10);
        CHECK(std::abs(hi - 2.0) < 1e-10);
    }
    SUBCASE("monomial factor contributes origin roots") {
        const auto rs = roots(LaurentScalar::fromCoeffs(2, {cplx(-1, 0), cplx(1, 0)}));
        REQUIRE(rs.size() == 3);
        int zeros = 0;
        for (const auto& r : rs) zeros += std::abs(r) < 1e-12 ? 1 : 0;
        CHECK(zeros == 2);
    }
    SUBCASE("reconstruction from roots") {
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> re(-1.5, 1.5);
        for (int trial = 0; trial < 10; ++trial) {
            LaurentScalar p(cplx(re(rng), re(rng)));
            const int deg = 1 + trial % 6;
            for (int i = 0; i < deg; ++i)
                p = p * (LaurentScalar::monomial(1) - LaurentScalar(cplx(re(rng), re(rng))));
            const auto rs = roots(p);
            LaurentScalar rec(p.coeff(p.degHi()));
            for (const auto& r : rs)
                rec = rec * (LaurentScalar::monomial(1) - LaurentScalar(r));
            CHECK(rec.approxEqual(p, 1e-9 * std::max(1.0, p.maxAbsCoeff())));
        }
    }
    CHECK_THROWS_AS(roots(LaurentScalar()), DegenerateInput);
}

TEST_CASE("spectral factorization") {
    SUBCASE("constant") {
        const auto o = spectral_factor(LaurentScalar(cplx(1, 0)));
        CHECK(o.approxEqual(LaurentScalar(cplx(1, 0)), 1e-12));
    }
    SUBCASE("|1+z|^2, boundary double root") {
        const auto o = spectral_factor(
            LaurentScalar::fromCoeffs(-1, {cplx(1, 0), cplx(2, 0), cplx(1, 0)}));
        CHECK(o.approxEqual(LaurentScalar::fromCoeffs(0, {cplx(1, 0), cplx(1, 0)}), 1e-7));
    }
    SUBCASE("|1+z/2|^2") {
        const auto o = spectral_factor(
            LaurentScalar::fromCoeffs(-1, {cplx(0.5, 0), cplx(1.25, 0), cplx(0.5, 0)}));
        CHECK(o.approxEqual(LaurentScalar::fromCoeffs(0, {cplx(1, 0), cplx(0.5, 0)}), 1e-9));
    }
    SUBCASE("idempotence on random outer polynomials") {
        std::mt19937 rng(21);
        std::uniform_real_distribution<double> mod(1.2, 3.0), ang(0.0, 2 * std::numbers::pi);
        for (int trial = 0; trial < 8; ++trial) {
            LaurentScalar o(cplx(1.0, 0.0));
            for (int i = 0; i < 1 + trial % 4; ++i) {
                const cplx r = std::polar(mod(rng), ang(rng));
                o = o * (LaurentScalar(cplx(1, 0)) - LaurentScalar::monomial(1, 1.0 / r));
            }
            const auto rho = o * o.conjReflect();
            const auto o2 = spectral_factor(rho);
            // equal up to a unimodular constant; both normalized with o(0) > 0 real
            const cplx ratio = o2.coeff(0) / o.coeff(0);
            CHECK(o2.approxEqual(o.scaled(ratio), 1e-8 * std::max(1.0, o.maxAbsCoeff())));
            CHECK(std::abs(std::abs(ratio) - 1.0) < 1e-8);
        }
    }
    SUBCASE("negative rho is rejected") {
        CHECK_THROWS_AS(spectral_factor(LaurentScalar(cplx(-1, 0))), NotPositive);
    }
    SUBCASE("asymmetric rho is rejected") {
        CHECK_THROWS_AS(
            spectral_factor(LaurentScalar::fromCoeffs(-1, {cplx(1, 0), cplx(4, 0), cplx(2, 0)})),
            Asymmetric);
    }
}

TEST_CASE("rational canonical form") {
    // (2 + 4z)/(2 + z) -> den(0) = 1
    const RationalScalar f(LaurentScalar::fromCoeffs(0, {cplx(2, 0), cplx(4, 0)}),
                           LaurentScalar::fromCoeffs(0, {cplx(2, 0), cplx(1, 0)}));
    CHECK(f.den().coeff(0) == cplx(1, 0));
    CHECK(std::abs(f.eval(cplx(0.5, 0)) - cplx(4.0 / 2.5, 0)) < 1e-14);
    CHECK(f.denDiskZeroFree());

    CHECK_THROWS_AS(RationalScalar(LaurentScalar(cplx(1, 0)),
                                   LaurentScalar::fromCoeffs(0, {cplx(1, 0), cplx(-1, 0)})),
                    DenominatorNearCircle);
}

TEST_CASE("rational arithmetic and conjugation on the circle") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 8; ++trial) {
        const auto f = randomZeroFreeRational(rng);
        const auto g = randomZeroFreeRational(rng);
        const auto sum = f + g;
        const auto prod = f * g;
        const auto fc = f.conjReflect();
        for (int k = 0; k < 16; ++k) {
            const cplx zeta = circlePoint(2.0 * std::numbers::pi * (k + 0.31) / 16);
            const cplx fv = f.eval(zeta), gv = g.eval(zeta);
            CHECK(std::abs(sum.eval(zeta) - (fv + gv)) < 1e-9 * (1 + std::abs(fv) + std::abs(gv)));
            CHECK(std::abs(prod.eval(zeta) - fv * gv) < 1e-9 * (1 + std::abs(fv * gv)));
            CHECK(std::abs(fc.eval(zeta) - std::conj(fv)) < 1e-9 * (1 + std::abs(fv)));
        }
    }
}

TEST_CASE("fourier coefficients of rational functions") {
    // z^-1 (1+2z)/(2+z): long-division oracle going 30 terms deep
    const RationalScalar u0(LaurentScalar::fromCoeffs(-1, {cplx(1, 0), cplx(2, 0)}),
                            LaurentScalar::fromCoeffs(0, {cplx(2, 0), cplx(1, 0)}));
    std::vector<cplx> series =
        LaurentScalar::taylorDivide(LaurentScalar::fromCoeffs(0, {cplx(1, 0), cplx(2, 0)}),
                                    LaurentScalar::fromCoeffs(0, {cplx(2, 0), cplx(1, 0)}), 30);
    CHECK(std::abs(u0.fourierCoeff(-1) - cplx(0.5, 0)) < 1e-12);
    for (int j = 0; j <= 20; ++j)
        CHECK(std::abs(u0.fourierCoeff(j) - series[static_cast<size_t>(j + 1)]) < 1e-12);

    // conjugate has poles inside the disk; FFT path must agree with conj of coeffs
    const auto uc = u0.conjReflect();
    CHECK_FALSE(uc.denDiskZeroFree());
    for (int j = -6; j <= 6; ++j)
        CHECK(std::abs(uc.fourierCoeff(j) - std::conj(u0.fourierCoeff(-j))) < 1e-10);
}

TEST_CASE("inner-outer factorization") {
    SUBCASE("pure monomial") {
        const auto [b, o] = inner_outer(RationalScalar::z(2));
        CHECK(b.approxEqualOnGrid(RationalScalar::z(2), 1e-12));
        CHECK(o.approxEqualOnGrid(RationalScalar(1.0), 1e-12));
    }
    SUBCASE("z - 1/2") {
        const auto [b, o] =
            inner_outer(RationalScalar(LaurentScalar::fromCoeffs(0, {cplx(-0.5, 0), cplx(1, 0)})));
        const RationalScalar expectedInner(
            LaurentScalar::fromCoeffs(0, {cplx(-0.5, 0), cplx(1, 0)}),
            LaurentScalar::fromCoeffs(0, {cplx(1, 0), cplx(-0.5, 0)}));
        CHECK(b.approxEqualOnGrid(expectedInner, 1e-10));
        CHECK(o.approxEqualOnGrid(
            RationalScalar(LaurentScalar::fromCoeffs(0, {cplx(1, 0), cplx(-0.5, 0)})), 1e-10));
    }
    SUBCASE("constant tie-break") {
        const auto [b, o] = inner_outer(RationalScalar(cplx(0, -3)));
        CHECK(std::abs(b.eval(cplx(1, 0)) - cplx(0, -1)) < 1e-12);
        CHECK(std::abs(o.eval(cplx(1, 0)) - cplx(3, 0)) < 1e-12);
    }
    SUBCASE("boundary roots are refused") {
        CHECK_THROWS_AS(
            inner_outer(RationalScalar(LaurentScalar::fromCoeffs(0, {cplx(-1, 0), cplx(1, 0)}))),
            BoundaryRoot);
    }
    SUBCASE("random factorizations: |inner| = 1, outer zero-free inside") {
        std::mt19937 rng(11);
        for (int trial = 0; trial < 12; ++trial) {
            auto f = randomZeroFreeRational(rng);
            if (f.shift() < 0) f = f.shifted(-f.shift());
            const auto [b, o] = inner_outer(f);
            for (int k = 0; k < 32; ++k) {
                const cplx zeta = circlePoint(2.0 * std::numbers::pi * (k + 0.17) / 32);
                CHECK(std::abs(std::abs(b.eval(zeta)) - 1.0) <= 1e-9);
            }
            if (o.num().supportWidth() > 0)
                for (const auto& r : roots(o.num()))
                    CHECK(std::abs(r) >= 1.0 - 1e-10);
            const auto prod = b * o;
            CHECK(prod.approxEqualOnGrid(f, 1e-9 * std::max(1.0, f.maxAbsOnGrid())));
        }
    }
}

TEST_CASE("winding numbers") {
    CHECK(winding(RationalScalar::z(1)) == 1);
    CHECK(winding(RationalScalar::z(-2)) == -2);
    CHECK(winding(blaschke(cplx(0.5, 0))) == 1);
    SUBCASE("additivity on products") {
        std::mt19937 rng(5);
        for (int trial = 0; trial < 10; ++trial) {
            const auto f = randomZeroFreeRational(rng);
            const auto g = randomZeroFreeRational(rng);
            if (f.minAbsOnGrid() < 1e-6 || g.minAbsOnGrid() < 1e-6) continue;
            CHECK(winding(f * g) == winding(f) + winding(g));
        }
    }
}

TEST_CASE("simplification cancels common factors") {
    const RationalScalar f(LaurentScalar::fromCoeffs(0, {cplx(-0.5, 0), cplx(1, 0)}));
    const RationalScalar g = f * blaschke(cplx(0.5, 0)) / f; // den contains (z-1/2) pre-cancel
    CHECK(g.approxEqualOnGrid(blaschke(cplx(0.5, 0)), 1e-9));
    CHECK(g.den().supportWidth() <= 1);
}
