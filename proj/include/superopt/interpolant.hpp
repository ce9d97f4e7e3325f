#pragma once

#include "superopt/thematic.hpp"
#include "superopt/wh_index.hpp"

namespace superopt {

/// One scalar interpolation step: the calibration constant, the requested
/// index and the resulting unimodular interpolant u0 = z^(d+1) u.
struct ScalarStepRecord {
    double c = 0.0;
    int d = 0;
    RationalScalar u0;
    AAKResult aak; ///< for zbar^(d+1) psi' + c zbar
};

/// Unitary interpolant of a scalar symbol with ||H_psi|| < 1 and prescribed
/// nonnegative index: winding(u0) = d and u0 matches psi at all negative
/// Fourier coefficients.
ScalarStepRecord scalar_interpolant(const RationalScalar& psi, int d);

struct InterpolantResult {
    MatSymbol U;                      ///< unitary-valued interpolant
    MatSymbol F;                      ///< U - Phi, analytic
    ResidualReport residuals;
    std::vector<int> requestedIndices;
    IndexProfile certifiedProfile;
};

/// Induction step over the size: calibrate, reduce, peel one diagonal
/// function of index -d_0, recurse on the residual.
InterpolantResult matrix_interpolant(const MatSymbol& Psi, const std::vector<int>& dList);

/// Full pipeline: peel the unit-value thematic steps of Phi (their indices
/// are forced to -k_j), then realize the requested nonnegative indices on
/// the strictly contractive residual.
InterpolantResult unitary_interpolant(const MatSymbol& Phi, const std::vector<int>& dTail);

} // namespace superopt
