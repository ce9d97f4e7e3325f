#include "superopt/nehari_scalar.hpp"

#include <algorithm>
#include <cmath>

#include "fft_util.hpp"

namespace superopt {

AAKResult best_approx_scalar(const RationalScalar& phi) {
    AAKResult res;
    const double sigma = hankel_norm(MatSymbol::scalar(phi));
    if (sigma <= 1e-13 * std::max(1.0, phi.maxAbsOnGrid())) {
        res.g = phi;
        res.e = RationalScalar();
        res.sigma = 0.0;
        res.indexOfError = 0;
        res.degenerate = true;
        return res;
    }
    const auto pair = schmidt(MatSymbol::scalar(phi));
    res.sigma = pair.sigma;
    // e = w/v; zeros of v inside the disk cancel against w by uniqueness of
    // the scalar best approximation. Cancellation is mandatory, not cosmetic.
    res.e = (pair.w[0] / pair.v[0]).simplified().recompressed();
    res.g = phi - res.e;
    res.indexOfError = -winding(res.e);

    // with a multiple top singular value any maximizing vector must give the
    // same error function
    if (pair.vAlt) {
        const auto sec = hankel_section(MatSymbol::scalar(phi));
        Eigen::VectorXcd x = Eigen::VectorXcd::Zero(sec.blocks);
        for (int k = 0; k < sec.blocks; ++k) x(k) = (*pair.vAlt)[0].fourierCoeff(k);
        const Eigen::VectorXcd y = sec.m * x;
        std::vector<cplx> coefs;
        for (int k = sec.blocks - 1; k >= 0; --k) coefs.push_back(y(k));
        const RationalScalar wAlt(LaurentScalar::fromCoeffs(-sec.blocks, coefs));
        const auto eAlt = (wAlt / (*pair.vAlt)[0]).simplified();
        if (!eAlt.approxEqualOnGrid(res.e, 1e-8 * std::max(1.0, res.sigma)))
            throw ReductionFailed("best_approx_scalar: error function depends on the choice of "
                                  "maximizing vector");
    }
    return res;
}

BadlyApproxCert badly_approximable_check(const RationalScalar& phi) {
    if (phi.isZero()) throw DegenerateInput("badly_approximable_check of the zero function");
    BadlyApproxCert cert;
    const int N = detail::nextPow2(
        std::max(512, 8 * (phi.num().supportWidth() + phi.den().supportWidth() + 1)));
    double lo = 1e300, hi = 0.0;
    for (const auto& v : phi.evalGrid(N)) {
        lo = std::min(lo, std::abs(v));
        hi = std::max(hi, std::abs(v));
    }
    cert.modulusVariation = hi - lo;
    cert.minModulus = lo;
    if (lo >= 1e-8) {
        cert.toeplitzIndex = -winding(phi);
        cert.verdict = cert.modulusVariation <= 1e-8 * std::max(1.0, hi) && cert.toeplitzIndex > 0;
    }
    return cert;
}

} // namespace superopt
