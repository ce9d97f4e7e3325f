#include "superopt/interpolant.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace superopt {

namespace {

constexpr double kBoundaryTol = 1e-9;

/// First crossing of ||H_{B(c)}|| = 1 over c >= 0: coarse 1/8 scan for a
/// bracket, then bisection. The norm is continuous with nu(0) < 1 and
/// nu(c) >= c - ||Psi'||, so a crossing exists; no monotonicity is assumed
/// and the smallest crossing is taken.
double calibrateNormOne(const std::function<double(double)>& nu, double scanLimit) {
    const double nu0 = nu(0.0);
    if (nu0 >= 1.0) throw BracketFailed("calibration: norm already >= 1 at c = 0");
    double lo = 0.0, hi = -1.0;
    for (double c = 0.125; c <= scanLimit + 0.126; c += 0.125) {
        const double v = nu(c);
        if (v >= 1.0) { hi = c; break; }
        lo = c;
    }
    if (hi < 0.0) throw BracketFailed("calibration: no crossing of norm 1 before the scan limit");
    double flo = nu(lo);
    while (true) {
        const double mid = 0.5 * (lo + hi);
        const double v = nu(mid);
        if (std::abs(v - 1.0) <= 1e-10) return mid;
        if (hi - lo <= 1e-15 * std::max(1.0, hi)) return mid;
        if (v < 1.0) { lo = mid; flo = v; } else { hi = mid; }
        (void)flo;
    }
}

void validateTail(const std::vector<int>& d) {
    for (size_t i = 0; i < d.size(); ++i) {
        if (d[i] < 0) throw DegenerateInput("requested indices must be nonnegative");
        if (i > 0 && d[i] < d[i - 1])
            throw DegenerateInput("requested indices must be nondecreasing");
    }
}

ResidualReport verifiedReport(const MatSymbol& U, const MatSymbol& Phi) {
    const ResidualReport rep = make_residual_report(U, Phi);
    if (rep.unitarityResidual > 1e-8)
        throw ReductionFailed("interpolant: unitarity residual above 1e-8");
    if (rep.analyticityResidual > 1e-7)
        throw ReductionFailed("interpolant: U - Phi analyticity residual above 1e-7");
    if (rep.fourierMatchResidual > 1e-8)
        throw ReductionFailed("interpolant: negative Fourier coefficients do not match");
    return rep;
}

} // namespace

ScalarStepRecord scalar_interpolant(const RationalScalar& psi, int d) {
    if (d < 0) throw DegenerateInput("scalar_interpolant: negative index requested");
    const double normPsi = hankel_norm(MatSymbol::scalar(psi));
    if (normPsi >= 1.0 - kBoundaryTol)
        throw NormNotBelowOne("scalar_interpolant requires ||H_psi|| < 1");

    // normalize so ||psi'|| < 1 in sup norm, not only in Hankel norm
    const AAKResult base = best_approx_scalar(psi);
    const RationalScalar psiP = base.degenerate ? RationalScalar() : base.e;

    ScalarStepRecord rec;
    rec.d = d;
    auto B = [&](double c) {
        return psiP.shifted(-(d + 1)) + RationalScalar::z(-1).scaled(cplx(c, 0.0));
    };
    rec.c = calibrateNormOne([&](double c) { return hankel_norm(MatSymbol::scalar(B(c))); },
                             4.0 + 2.0 * normPsi);
    rec.aak = best_approx_scalar(B(rec.c));
    if (std::abs(rec.aak.sigma - 1.0) > 1e-9)
        throw BracketFailed("scalar_interpolant: calibrated norm drifted from 1");
    if (rec.aak.indexOfError != 1)
        throw UnexpectedIndex("scalar_interpolant: error function index is not 1");
    rec.u0 = rec.aak.e.shifted(d + 1).simplified();
    if (winding(rec.u0) != d)
        throw UnexpectedIndex("scalar_interpolant: u0 winding disagrees with the request");
    return rec;
}

InterpolantResult matrix_interpolant(const MatSymbol& Psi, const std::vector<int>& dList) {
    const int n = Psi.size();
    if (static_cast<int>(dList.size()) != n)
        throw WrongTailLength("matrix_interpolant: index list length must equal the size");
    validateTail(dList);
    const double norm = hankel_norm(Psi);
    if (norm >= 1.0 - kBoundaryTol)
        throw NormNotBelowOne("matrix_interpolant requires ||H_Psi|| < 1");

    InterpolantResult out;
    out.requestedIndices = dList;

    if (n == 1) {
        const auto rec = scalar_interpolant(Psi.at(0, 0), dList[0]);
        out.U = MatSymbol::scalar(rec.u0);
    } else {
        // minimal-norm representative of Psi modulo analytic functions
        MatSymbol psiP = MatSymbol::zero(n);
        if (norm > 1e-12) psiP = step_reconstruct(thematic_peel(Psi));

        const int d0 = dList[0];
        auto B = [&](double c) {
            return psiP.shifted(-(d0 + 1)) +
                   MatSymbol::identity(n).shifted(-1).scaled(cplx(c, 0.0));
        };
        const double c = calibrateNormOne([&](double cc) { return hankel_norm(B(cc)); },
                                          4.0 + 2.0 * norm);
        const ThematicStep step = thematic_peel(B(c));
        if (step.k != 1)
            throw UnexpectedIndex("matrix_interpolant: peeled index is not 1");

        const MatSymbol shiftedResidual = step.residual.shifted(d0 + 1);
        if (hankel_norm(shiftedResidual) >= 1.0 - kBoundaryTol)
            throw UnexpectedIndex(
                "matrix_interpolant: shifted residual is not strictly contractive");

        const std::vector<int> tail(dList.begin() + 1, dList.end());
        const InterpolantResult inner = matrix_interpolant(shiftedResidual, tail);

        const RationalScalar u0 = step.u.shifted(d0 + 1).simplified();
        const MatSymbol D = MatSymbol::blockDiag(u0, inner.U);
        out.U = step.W.adjoint() * D * step.V.adjoint();
    }

    out.F = out.U - Psi;
    out.residuals = verifiedReport(out.U, Psi);
    out.certifiedProfile = wh_indices(out.U);
    return out;
}

InterpolantResult unitary_interpolant(const MatSymbol& Phi, const std::vector<int>& dTail) {
    const int n = Phi.size();
    const double norm = hankel_norm(Phi);
    if (norm > 1.0 + kBoundaryTol)
        throw NormTooLarge("unitary_interpolant: ||H_Phi|| exceeds 1, no interpolant exists",
                           norm);

    // peel the unit-value group; each step's index is forced
    std::vector<ThematicStep> unitSteps;
    MatSymbol cur = Phi;
    while (!cur.empty()) {
        const double s = hankel_norm(cur);
        if (std::abs(s - 1.0) > kBoundaryTol) break;
        const ThematicStep step = thematic_peel(cur);
        cur = step.residual;
        unitSteps.push_back(step);
    }
    const int r = static_cast<int>(unitSteps.size());

    if (static_cast<int>(dTail.size()) != n - r)
        throw WrongTailLength("unitary_interpolant: expected " + std::to_string(n - r) +
                              " nonnegative indices");
    validateTail(dTail);

    InterpolantResult out;
    out.requestedIndices = dTail;

    MatSymbol X;
    if (r == n) {
        X = MatSymbol(); // empty; the bordered product alone is the interpolant
    } else {
        const InterpolantResult inner = matrix_interpolant(cur, dTail);
        X = inner.U;
    }
    for (auto it = unitSteps.rbegin(); it != unitSteps.rend(); ++it) {
        ThematicStep tmp = *it;
        tmp.residual = X;
        X = step_reconstruct(tmp);
    }
    out.U = X;
    out.F = out.U - Phi;
    out.residuals = verifiedReport(out.U, Phi);
    out.certifiedProfile = wh_indices(out.U);

    // Wiener-Hopf forcing: exactly r negative indices, matching {-k_j}
    std::vector<int> negatives, expected;
    for (int dj : out.certifiedProfile.d)
        if (dj < 0) negatives.push_back(dj);
    for (const auto& st : unitSteps) expected.push_back(-st.k);
    std::sort(expected.begin(), expected.end());
    if (negatives != expected)
        throw UnexpectedIndex("unitary_interpolant: negative indices disagree with the "
                              "unit-value thematic indices");
    return out;
}

} // namespace superopt
