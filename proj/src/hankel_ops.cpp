#include "superopt/hankel_ops.hpp"

#include <algorithm>
#include <cmath>

#include "fft_util.hpp"

namespace superopt {

namespace {

/// Per-entry Fourier windows [lo, hi] of a symbol, row-major.
std::vector<LaurentScalar> entryWindows(const MatSymbol& Phi, int lo, int hi) {
    std::vector<LaurentScalar> w;
    w.reserve(static_cast<size_t>(Phi.size()) * Phi.size());
    for (int i = 0; i < Phi.size(); ++i)
        for (int j = 0; j < Phi.size(); ++j) w.push_back(Phi.at(i, j).fourierWindow(lo, hi));
    return w;
}

int svdNullity(const Eigen::MatrixXcd& A, double relThreshold, double* absThreshold) {
    if (A.cols() == 0) return 0;
    if (A.rows() == 0) return static_cast<int>(A.cols());
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
    const auto& s = svd.singularValues();
    const double cut = relThreshold * s(0);
    if (absThreshold) *absThreshold = cut;
    int nullity = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) <= cut) ++nullity;
    nullity += static_cast<int>(A.cols()) - static_cast<int>(s.size());
    return nullity;
}

} // namespace

HankelSection hankel_section(const MatSymbol& Phi, int minBlocks) {
    HankelSection sec;
    sec.n = Phi.size();
    sec.exact = Phi.diskPoleFree();
    const int d = Phi.antiAnalyticDegree(1e-14);
    sec.blocks = std::max({d, minBlocks, 1});
    const int B = sec.blocks;
    const int lo = -(2 * B + 1);
    const auto win = entryWindows(Phi, lo, -1);
    sec.m = Eigen::MatrixXcd::Zero(B * sec.n, B * sec.n);
    for (int j = 0; j < B; ++j)
        for (int k = 0; k < B; ++k) {
            const int deg = -(j + k + 1);
            for (int r = 0; r < sec.n; ++r)
                for (int c = 0; c < sec.n; ++c)
                    sec.m(j * sec.n + r, k * sec.n + c) =
                        win[static_cast<size_t>(r) * sec.n + c].coeff(deg);
        }
    for (const auto& w : win) {
        sec.tailBound = std::max(sec.tailBound, std::abs(w.coeff(-(2 * B))));
        sec.tailBound = std::max(sec.tailBound, std::abs(w.coeff(-(2 * B + 1))));
    }
    return sec;
}

double hankel_norm(const MatSymbol& Phi) {
    const auto sec = hankel_section(Phi);
    if (sec.m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sec.m);
    return svd.singularValues()(0);
}

SchmidtPair schmidt(const MatSymbol& Phi) {
    const auto sec = hankel_section(Phi);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sec.m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) <= 1e-12)
        throw ZeroOperator("schmidt: Hankel operator is numerically zero");

    SchmidtPair pair;
    pair.sigma = s(0);
    pair.sigmaNext = s.size() > 1 ? s(1) : 0.0;
    const int n = sec.n, B = sec.blocks;

    auto toPolyVector = [&](const Eigen::VectorXcd& x) {
        std::vector<RationalScalar> v;
        for (int i = 0; i < n; ++i) {
            std::vector<cplx> coefs(static_cast<size_t>(B));
            for (int k = 0; k < B; ++k) coefs[static_cast<size_t>(k)] = x(k * n + i);
            v.emplace_back(LaurentScalar::fromCoeffs(0, coefs));
        }
        return v;
    };
    auto toAntiVector = [&](const Eigen::VectorXcd& y) {
        std::vector<RationalScalar> w;
        for (int i = 0; i < n; ++i) {
            std::vector<cplx> coefs;
            for (int k = B - 1; k >= 0; --k) coefs.push_back(y(k * n + i));
            w.emplace_back(LaurentScalar::fromCoeffs(-B, coefs));
        }
        return w;
    };

    const Eigen::VectorXcd x = svd.matrixV().col(0);
    pair.v = toPolyVector(x);
    pair.w = toAntiVector(sec.m * x);
    if (pair.sigmaNext > pair.sigma * (1.0 - 1e-9))
        pair.vAlt = toPolyVector(svd.matrixV().col(1));
    return pair;
}

int toeplitz_kernel_dim(const MatSymbol& Psi, int degCap, KernelEvidence* evidence) {
    const int n = Psi.size();
    {
        const int N = detail::nextPow2(std::max(256, 8 * (Psi.degreeEstimate() + 1)));
        const auto g = Psi.grid(N);
        for (const auto& m : *g) {
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
            if (svd.singularValues()(svd.singularValues().size() - 1) < 1e-8)
                throw NearSingularSymbol("toeplitz_kernel_dim: symbol nearly singular pointwise");
        }
    }

    const int analyticBound = Psi.analyticDegree(1e-14);
    const bool polynomialSymbol = [&] {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (!Psi.at(i, j).isPolynomial()) return false;
        return true;
    }();
    // windows wide enough for every candidate degree up to degCap
    const auto win = entryWindows(Psi, -(degCap + 2), analyticBound + degCap + 2);

    KernelEvidence ev;
    ev.exactConvolution = polynomialSymbol;

    std::vector<int> dims;
    for (int D = 0; D <= degCap; ++D) {
        const int J = analyticBound + D;
        Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero((J + 1) * n, (D + 1) * n);
        for (int k = 0; k <= D; ++k)
            for (int c = 0; c < n; ++c) {
                const int col = k * n + c;
                for (int j = 0; j <= J; ++j)
                    for (int i = 0; i < n; ++i)
                        A(j * n + i, col) = win[static_cast<size_t>(i) * n + c].coeff(j - k);
            }
        double absCut = 0.0;
        const int nullity = svdNullity(A, 1e-9, &absCut);
        dims.push_back(nullity);
        if (D >= 5 && dims[static_cast<size_t>(D)] == dims[static_cast<size_t>(D - 5)]) {
            ev.stabilizedDegree = D - 5;
            ev.dimension = nullity;
            ev.rankThreshold = absCut;
            ev.gridRows = (J + 1) * n;
            if (evidence) *evidence = ev;
            return nullity;
        }
    }
    throw Unstable("toeplitz_kernel_dim: no stabilization before degCap");
}

} // namespace superopt
