#pragma once

#include <complex>
#include <vector>

namespace superopt::detail {

using cplx = std::complex<double>;

/// values[k] = sum_j buf[j] * exp(+2*pi*i*j*k/N)  (synthesis at grid points).
std::vector<cplx> synthesize(const std::vector<cplx>& buf);

/// buf[j] = (1/N) sum_k values[k] * exp(-2*pi*i*j*k/N)  (analysis).
std::vector<cplx> analyze(const std::vector<cplx>& values);

/// Smallest power of two >= n (at least 2).
int nextPow2(int n);

} // namespace superopt::detail
