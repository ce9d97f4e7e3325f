#pragma once

#include <map>
#include <string>

#include "superopt/matfun.hpp"

namespace superopt {

struct InterpolantResult;
struct FactorizationReport;

/// Wiener-Hopf factorization indices of a pointwise invertible symbol,
/// recovered from kernel-dimension sweeps and determinant winding. No
/// numerical Wiener-Hopf factorization is attempted; only the integer index
/// data is certified.
struct IndexProfile {
    std::vector<int> d;              ///< nondecreasing indices
    std::map<int, int> kernelSweep;  ///< kappa -> dim Ker T_{z^(kappa-M) U}
    int detWinding = 0;
    int shiftM = 0;
};

/// requireUnitary = false relaxes the precondition to pointwise
/// invertibility (used by the planted-factorization oracle; products
/// Q2^* Lambda Q1 are not unitary-valued).
IndexProfile wh_indices(const MatSymbol& U, bool requireUnitary = true);

struct VerifyCheck {
    std::string name;
    double measured = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct VerifyCertificate {
    std::vector<VerifyCheck> checks;
    IndexProfile profile;
    bool pass = true;
};

/// Certification closing the loop on a constructed interpolant: residual
/// bounds, index profile against the thematic indices and the requested
/// tail, and the kernel-sweep counting identity.
VerifyCertificate verify_interpolant(const MatSymbol& Phi, const InterpolantResult& result,
                                     const FactorizationReport& report);

} // namespace superopt
