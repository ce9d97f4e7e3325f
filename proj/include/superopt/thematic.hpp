#pragma once

#include "superopt/hankel_ops.hpp"
#include "superopt/nehari_scalar.hpp"

namespace superopt {

using RatColumn = std::vector<RationalScalar>;

/// b * o * vhat decomposition of an analytic column: b the common scalar
/// inner factor, o the scalar outer factor with |o| = |v| pointwise, vhat
/// inner and co-outer (pointwise unit norm, entries without a common inner
/// divisor).
struct VectorInnerOuter {
    RationalScalar b;
    RationalScalar o;
    RatColumn vhat;
};

VectorInnerOuter vector_inner_outer(const RatColumn& v);

/// Unitary-valued completion V = (v | conj(Theta)) of an inner co-outer
/// column; Theta and an analytic left inverse of it come along for
/// residual extraction.
struct ThematicMatrix {
    MatSymbol V;
    RatColumn v;
    std::vector<RatColumn> theta;        ///< n-1 analytic columns
    std::vector<RatColumn> thetaLeftInv; ///< analytic, leftInv_j^T theta_k = delta_jk
};

/// Supported columns: any column for n = 2, constant columns for any n, and
/// columns supported on at most two coordinates. Anything else raises
/// UnsupportedCompletion (general-n completion is nonconstructive).
ThematicMatrix thematic_complete(const RatColumn& vhat);

/// One peeling step of the bordered representation
/// Phi = W^* (s u 0; 0 Psi) V^*.
struct ThematicStep {
    double s = 0.0;          ///< the step's superoptimal value
    RationalScalar u;        ///< unimodular diagonal function
    int k = 0;               ///< = ind T_u >= 1
    MatSymbol V;             ///< thematic right factor
    MatSymbol W;             ///< left factor, W^t thematic
    MatSymbol residual;      ///< Psi, one size smaller (possibly 0 x 0)
};

/// Reduction of a badly approximable symbol (callers subtract a best
/// approximation first; the contract is checked).
ThematicStep thematic_reduce(const MatSymbol& Phi);

/// Fused "subtract a best approximation, then reduce": accepts any symbol
/// with ||H_Phi|| > 0 and produces a step whose reconstruction is congruent
/// to Phi modulo the bounded analytic functions.
ThematicStep thematic_peel(const MatSymbol& Phi);

/// W^* diag(s u, residual) V^* put back together.
MatSymbol step_reconstruct(const ThematicStep& step);

struct FactorizationReport {
    std::vector<double> t;   ///< superoptimal singular values, nonincreasing, length n
    std::vector<int> k;      ///< thematic indices for the positive t's
    MatSymbol F;             ///< superoptimal analytic approximant
    std::vector<ThematicStep> chain;
    bool monotone = true;    ///< within equal-t groups the k's are nonincreasing
    double tieTol = 1e-9;    ///< tolerance used to group equal t values
    int unitValueCount = 0;  ///< r = #{j : |t_j - 1| <= tieTol}
};

/// Full superoptimal recursion: peel, recurse on the residual until it is
/// analytic or the size is exhausted.
FactorizationReport superoptimal(const MatSymbol& Phi);

} // namespace superopt
