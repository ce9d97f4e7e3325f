#include "superopt/wh_index.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "superopt/hankel_ops.hpp"
#include "superopt/interpolant.hpp"
#include "superopt/thematic.hpp"

namespace superopt {

namespace {

/// One full sweep attempt for a given monomial normalization M. Returns the
/// recovered profile or nothing when the self-checks show M was too small.
std::optional<IndexProfile> sweepAttempt(const MatSymbol& U, int M, int detW) {
    const int n = U.size();
    IndexProfile prof;
    prof.detWinding = detW;
    prof.shiftM = M;

    std::vector<int> g;
    const int kappaCap = 2 * M + std::abs(detW) + 8;
    for (int kappa = 0;; ++kappa) {
        const int dim = toeplitz_kernel_dim(U.shifted(kappa - M));
        prof.kernelSweep[kappa] = dim;
        g.push_back(dim);
        if (dim == 0) break;
        if (kappa > kappaCap) return std::nullopt;
    }
    // dim Ker T_{z^{-M} U} must see all n indices: g(0) = n M - det winding
    if (g.front() != n * M - detW) return std::nullopt;

    const int K = static_cast<int>(g.size()) - 1; // g[K] == 0
    std::vector<int> counts; // counts[kappa] = #{j : d_j <= M - kappa - 1}
    for (int kappa = 0; kappa < K; ++kappa)
        counts.push_back(g[static_cast<size_t>(kappa)] - g[static_cast<size_t>(kappa + 1)]);
    if (!counts.empty() && counts.front() != n) return std::nullopt;

    for (int kappa = K - 1; kappa >= 0; --kappa) {
        const int next = (kappa + 1 < K) ? counts[static_cast<size_t>(kappa + 1)] : 0;
        const int mult = counts[static_cast<size_t>(kappa)] - next;
        if (mult < 0) return std::nullopt;
        for (int i = 0; i < mult; ++i) prof.d.push_back(M - kappa - 1);
    }
    std::sort(prof.d.begin(), prof.d.end());
    int sum = 0;
    for (int dj : prof.d) sum += dj;
    if (sum != detW || static_cast<int>(prof.d.size()) != n) return std::nullopt;

    // the sweep must reproduce the piecewise-linear count exactly
    for (const auto& [kappa, dim] : prof.kernelSweep) {
        int expect = 0;
        for (int dj : prof.d) expect += std::max(M - dj - kappa, 0);
        if (expect != dim) return std::nullopt;
    }
    return prof;
}

} // namespace

IndexProfile wh_indices(const MatSymbol& U, bool requireUnitary) {
    if (requireUnitary && unitarity_residual(U) > 1e-6)
        throw NotUnitary("wh_indices: symbol is not unitary-valued");

    const RationalScalar det = U.det();
    const int detW = winding(det);
    const int width = det.num().supportWidth() + det.den().supportWidth();

    int M = std::max(0, detW) + width + 2;
    for (int attempt = 0; attempt < 3; ++attempt) {
        if (auto prof = sweepAttempt(U, M, detW)) return *prof;
        M = 2 * M + 4;
    }
    throw Unstable("wh_indices: kernel sweep did not certify a profile");
}

VerifyCertificate verify_interpolant(const MatSymbol& Phi, const InterpolantResult& result,
                                     const FactorizationReport& report) {
    VerifyCertificate cert;
    auto push = [&](const std::string& name, double measured, double threshold) {
        const bool ok = measured <= threshold;
        cert.checks.push_back({name, measured, threshold, ok});
        cert.pass = cert.pass && ok;
    };
    auto pushFlag = [&](const std::string& name, bool ok) {
        cert.checks.push_back({name, ok ? 0.0 : 1.0, 0.5, ok});
        cert.pass = cert.pass && ok;
    };

    const ResidualReport rep = make_residual_report(result.U, Phi);
    push("unitarity_residual", rep.unitarityResidual, 1e-8);
    push("analyticity_residual", rep.analyticityResidual, 1e-7);
    push("fourier_match_residual", rep.fourierMatchResidual, 1e-8);

    cert.profile = wh_indices(result.U);

    // negative part forced to -k_j over the unit-value group
    std::vector<int> negatives, expectedNeg;
    for (int dj : cert.profile.d)
        if (dj < 0) negatives.push_back(dj);
    for (int j = 0; j < report.unitValueCount && j < static_cast<int>(report.k.size()); ++j)
        expectedNeg.push_back(-report.k[static_cast<size_t>(j)]);
    std::sort(expectedNeg.begin(), expectedNeg.end());
    pushFlag("negative_indices_equal_minus_k", negatives == expectedNeg);

    std::vector<int> nonneg;
    for (int dj : cert.profile.d)
        if (dj >= 0) nonneg.push_back(dj);
    pushFlag("nonnegative_indices_as_requested", nonneg == result.requestedIndices);

    // counting identity: dim Ker T_{z^kappa U} = sum_{k_j > kappa} (k_j - kappa)
    int kMax = 0;
    for (int j = 0; j < report.unitValueCount && j < static_cast<int>(report.k.size()); ++j)
        kMax = std::max(kMax, report.k[static_cast<size_t>(j)]);
    for (int kappa = 0; kappa <= kMax + 1; ++kappa) {
        int expect = 0;
        for (int j = 0; j < report.unitValueCount && j < static_cast<int>(report.k.size()); ++j)
            expect += std::max(report.k[static_cast<size_t>(j)] - kappa, 0);
        const int got = toeplitz_kernel_dim(result.U.shifted(kappa));
        pushFlag("kernel_count_at_kappa_" + std::to_string(kappa), got == expect);
    }
    return cert;
}

} // namespace superopt
