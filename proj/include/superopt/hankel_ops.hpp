#pragma once

#include <optional>

#include "superopt/matfun.hpp"

namespace superopt {

/// Dense finite section of the block Hankel operator of Phi, block (j,k) =
/// Phi^(-(j+k+1)). For symbols whose antianalytic part is a polynomial of
/// degree d, sections with at least d block rows/cols carry all nonzero
/// singular values exactly; symbols with poles inside the disk are truncated
/// at a geometric tail recorded in tailBound.
struct HankelSection {
    int n = 0;          // block size
    int blocks = 0;     // block rows = block cols
    Eigen::MatrixXcd m; // (blocks*n) x (blocks*n)
    double tailBound = 0.0;
    bool exact = true;
};

HankelSection hankel_section(const MatSymbol& Phi, int minBlocks = 0);

/// ||H_Phi|| = largest singular value of the exact finite-rank section; equals
/// the distance from Phi to the bounded analytic matrix functions.
double hankel_norm(const MatSymbol& Phi);

/// Top Schmidt pair of H_Phi: sigma with a maximizing analytic polynomial
/// vector v (||v||_2 = 1) and its image w = H_Phi v (antianalytic).
struct SchmidtPair {
    double sigma = 0.0;
    std::vector<RationalScalar> v;
    std::vector<RationalScalar> w;
    /// Second singular value of the section (ties diagnosis).
    double sigmaNext = 0.0;
    /// An independent maximizing vector when sigma has multiplicity > 1.
    std::optional<std::vector<RationalScalar>> vAlt;
};

SchmidtPair schmidt(const MatSymbol& Phi);

/// Evidence attached to a kernel-dimension computation.
struct KernelEvidence {
    int stabilizedDegree = 0;   // D at which dim(D) == dim(D+5)
    int dimension = 0;
    double rankThreshold = 0.0; // absolute singular value cutoff used
    int gridRows = 0;           // analytic coefficient rows in the system
    bool exactConvolution = false;
};

/// dim of the analytic-polynomial kernel of the Toeplitz operator T_Psi,
/// stabilized over the candidate degree. Computed in coefficient space from
/// the action of Psi on polynomials (finite Toeplitz truncations are never
/// used; their kernels do not converge to dim Ker T_Psi).
int toeplitz_kernel_dim(const MatSymbol& Psi, int degCap = 200,
                        KernelEvidence* evidence = nullptr);

} // namespace superopt
