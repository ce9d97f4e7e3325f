#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "superopt/hankel_ops.hpp"

using namespace superopt;

namespace {

MatSymbol scalarSym(const RationalScalar& f) { return MatSymbol::scalar(f); }

RationalScalar poly(int degLo, std::initializer_list<cplx> cs) {
    return RationalScalar(LaurentScalar::fromCoeffs(degLo, std::vector<cplx>(cs)));
}

/// Random n x n symbol with polynomial antianalytic part of degree <= maxDeg.
MatSymbol randomAntianalytic(std::mt19937& rng, int n, int maxDeg) {
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    MatSymbol Phi(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<cplx> cs;
            for (int d = 0; d < maxDeg; ++d) cs.emplace_back(coef(rng), coef(rng));
            Phi.set(i, j, RationalScalar(LaurentScalar::fromCoeffs(-maxDeg, cs)));
        }
    return Phi;
}

// unimodular phase aligning a with b (for SVD vectors defined up to phase)
cplx phaseAlign(const RationalScalar& a, const RationalScalar& b) {
    const cplx va = a.eval(cplx(0.3, 0.1)), vb = b.eval(cplx(0.3, 0.1));
    return (vb / va) / std::abs(vb / va);
}

} // namespace

TEST_CASE("hankel norms") {
    CHECK(std::abs(hankel_norm(scalarSym(RationalScalar::z(-1))) - 1.0) <= 1e-12);

    // closed-form oracle: for c zbar + (1/2) zbar^2 the section is
    // [[c, 1/2],[1/2, 0]] with top singular value (c + sqrt(c^2+1))/2
    const double c = 0.75;
    const auto Phi = scalarSym(poly(-2, {cplx(0.5, 0), cplx(c, 0)}));
    const double expect = (c + std::sqrt(c * c + 1.0)) / 2.0;
    CHECK(std::abs(hankel_norm(Phi) - expect) <= 1e-12);
    CHECK(std::abs(expect - 1.0) <= 1e-15);

    CHECK(std::abs(hankel_norm(MatSymbol::diagonal(
                       {RationalScalar::z(-1), RationalScalar::z(-1).scaled(cplx(0.5, 0))})) -
                   1.0) <= 1e-12);

    SUBCASE("analytic symbols have zero norm") {
        CHECK(hankel_norm(MatSymbol::identity(2)) == 0.0);
    }
    SUBCASE("finite-rank exactness: larger sections move nothing") {
        std::mt19937 rng(4);
        const auto Phi2 = randomAntianalytic(rng, 2, 3);
        const auto small = hankel_section(Phi2);
        const auto large = hankel_section(Phi2, small.blocks + 3);
        Eigen::JacobiSVD<Eigen::MatrixXcd> s1(small.m), s2(large.m);
        for (int i = 0; i < s1.singularValues().size(); ++i)
            CHECK(std::abs(s1.singularValues()(i) - s2.singularValues()(i)) <= 1e-12);
    }
    SUBCASE("shift monotonicity") {
        std::mt19937 rng(9);
        const auto Phi2 = randomAntianalytic(rng, 2, 4);
        double prev = hankel_norm(Phi2);
        for (int k = 1; k <= 4; ++k) {
            const double cur = hankel_norm(Phi2.shifted(k));
            CHECK(cur <= prev + 1e-12);
            prev = cur;
        }
    }
}

TEST_CASE("schmidt pairs") {
    SUBCASE("zbar") {
        const auto p = schmidt(scalarSym(RationalScalar::z(-1)));
        CHECK(std::abs(p.sigma - 1.0) <= 1e-12);
        const cplx ph = phaseAlign(p.v[0], RationalScalar(1.0));
        CHECK(p.v[0].scaled(ph).approxEqualOnGrid(RationalScalar(1.0), 1e-10));
        CHECK(p.w[0].scaled(ph).approxEqualOnGrid(RationalScalar::z(-1), 1e-10));
    }
    SUBCASE("worked 2x2 section") {
        const auto Phi = scalarSym(poly(-2, {cplx(0.5, 0), cplx(0.75, 0)}));
        const auto p = schmidt(Phi);
        CHECK(std::abs(p.sigma - 1.0) <= 1e-12);
        const double r5 = std::sqrt(5.0);
        const auto vRef = poly(0, {cplx(2 / r5, 0), cplx(1 / r5, 0)});
        const auto wRef = poly(-2, {cplx(1 / r5, 0), cplx(2 / r5, 0)});
        const cplx ph = phaseAlign(p.v[0], vRef);
        CHECK(p.v[0].scaled(ph).approxEqualOnGrid(vRef, 1e-9));
        CHECK(p.w[0].scaled(ph).approxEqualOnGrid(wRef, 1e-9));
    }
    SUBCASE("zbar^2 has a two-dimensional maximizing space") {
        const auto p = schmidt(scalarSym(RationalScalar::z(-2)));
        CHECK(std::abs(p.sigma - 1.0) <= 1e-12);
        CHECK(std::abs(p.sigmaNext - 1.0) <= 1e-12);
        CHECK(p.vAlt.has_value());
    }
    SUBCASE("zero operator refused") {
        CHECK_THROWS_AS(schmidt(MatSymbol::identity(2)), ZeroOperator);
    }
}

TEST_CASE("maximizing-vector modulus identity") {
    // pointwise ||w(zeta)|| = sigma ||v(zeta)|| for top Schmidt pairs
    std::mt19937 rng(23);
    int done = 0;
    for (int trial = 0; done < 20 && trial < 40; ++trial) {
        const int n = 1 + (trial % 2);
        const auto Phi = randomAntianalytic(rng, n, 1 + trial % 4);
        const auto p = schmidt(Phi);
        const int N = 256;
        double worst = 0.0;
        std::vector<std::vector<cplx>> vg, wg;
        for (int i = 0; i < n; ++i) {
            vg.push_back(p.v[static_cast<size_t>(i)].evalGrid(N));
            wg.push_back(p.w[static_cast<size_t>(i)].evalGrid(N));
        }
        for (int k = 0; k < N; ++k) {
            double nv = 0.0, nw = 0.0;
            for (int i = 0; i < n; ++i) {
                nv += std::norm(vg[static_cast<size_t>(i)][static_cast<size_t>(k)]);
                nw += std::norm(wg[static_cast<size_t>(i)][static_cast<size_t>(k)]);
            }
            worst = std::max(worst, std::abs(std::sqrt(nw) - p.sigma * std::sqrt(nv)));
        }
        CHECK(worst <= 1e-6 * p.sigma);
        ++done;
    }
    CHECK(done == 20);
}

TEST_CASE("maximizing vectors divide by circle zeros") {
    // Phi = zbar^2, v = z - tau: the quotient v/(1 - conj(tau) z) is the
    // constant -tau and it maximizes again, exactly.
    for (int t = 0; t < 8; ++t) {
        const cplx tau = std::polar(1.0, 2.0 * std::numbers::pi * (t + 0.5) / 8.0);
        const RationalScalar v(LaurentScalar::fromCoeffs(0, {-tau, cplx(1.0, 0.0)}));
        const RationalScalar den(LaurentScalar::fromCoeffs(0, {cplx(1.0, 0.0), -std::conj(tau)}));
        const RationalScalar q = (v / den).simplified();
        CHECK(q.isConstant());
        CHECK(std::abs(q.eval(cplx(0.0, 0.0)) + tau) <= 1e-12);
        // ||H_{zbar^2} q||_2 = ||q||_2: the constant is again maximizing
        const auto sec = hankel_section(scalarSym(RationalScalar::z(-2)));
        Eigen::VectorXcd x = Eigen::VectorXcd::Zero(sec.blocks);
        x(0) = q.eval(cplx(0.0, 0.0));
        CHECK(std::abs((sec.m * x).norm() - x.norm()) <= 1e-14);
    }
}

TEST_CASE("toeplitz kernel dimensions") {
    CHECK(toeplitz_kernel_dim(scalarSym(RationalScalar::z(-1))) == 1);
    CHECK(toeplitz_kernel_dim(scalarSym(RationalScalar::z(1))) == 0);

    SUBCASE("planted factorization kernel count") {
        // Psi = Q2^* diag(zbar^2, z) Q1 with unitriangular polynomial Q's;
        // kernel dimension must equal 2 (= sum of -d_j over negative indices).
        MatSymbol Q1 = MatSymbol::identity(2);
        Q1.set(0, 1, RationalScalar(LaurentScalar::monomial(1, cplx(1.0 / 3.0, 0))));
        MatSymbol Q2 = MatSymbol::identity(2);
        Q2.set(1, 0, RationalScalar(LaurentScalar::monomial(1, cplx(0.5, 0))));
        const auto Lambda = MatSymbol::diagonal({RationalScalar::z(-2), RationalScalar::z(1)});
        const auto Psi = Q2.adjoint() * Lambda * Q1;
        KernelEvidence ev;
        CHECK(toeplitz_kernel_dim(Psi, 200, &ev) == 2);
        CHECK(ev.exactConvolution);
    }
    SUBCASE("near-singular symbols are refused") {
        MatSymbol S(2);
        S.set(0, 0, RationalScalar(1.0));
        S.set(0, 1, RationalScalar(1.0));
        S.set(1, 0, RationalScalar(1.0));
        S.set(1, 1, RationalScalar(1.0));
        CHECK_THROWS_AS(toeplitz_kernel_dim(S), NearSingularSymbol);
    }
}
