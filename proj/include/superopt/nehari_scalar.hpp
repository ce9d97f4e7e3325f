#pragma once

#include "superopt/hankel_ops.hpp"
#include "superopt/ring.hpp"

namespace superopt {

/// Result of scalar best approximation by bounded analytic functions.
struct AAKResult {
    RationalScalar g;      ///< best analytic approximant
    RationalScalar e;      ///< error phi - g, |e| = sigma on the circle
    double sigma = 0.0;    ///< = ||H_phi|| = dist(phi, Hinf)
    int indexOfError = 0;  ///< ind T_{e/sigma} = -winding(e)
    bool degenerate = false; ///< phi was already analytic (sigma = 0, e = 0)
};

/// Unique best analytic approximation of a scalar rational symbol, via the
/// top Schmidt pair: e = (H_phi v)/v. Common roots of the ratio are always
/// cancelled; v may legitimately vanish inside the disk.
AAKResult best_approx_scalar(const RationalScalar& phi);

/// Certificate for the badly-approximable test: constant modulus, bounded
/// away from zero, and positive Toeplitz index.
struct BadlyApproxCert {
    bool verdict = false;
    double modulusVariation = 0.0; ///< max - min of |phi| over the grid
    double minModulus = 0.0;
    int toeplitzIndex = 0;         ///< ind T_phi = -winding(phi)
};

BadlyApproxCert badly_approximable_check(const RationalScalar& phi);

} // namespace superopt
