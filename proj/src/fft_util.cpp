#include "fft_util.hpp"

#include <unsupported/Eigen/FFT>

namespace superopt::detail {

std::vector<cplx> synthesize(const std::vector<cplx>& buf) {
    // Eigen's inv computes (1/N) sum_j in[j] exp(+2 pi i j k / N).
    Eigen::FFT<double> fft;
    std::vector<cplx> out;
    fft.inv(out, buf);
    const double n = static_cast<double>(buf.size());
    for (auto& v : out) v *= n;
    return out;
}

std::vector<cplx> analyze(const std::vector<cplx>& values) {
    Eigen::FFT<double> fft;
    std::vector<cplx> out;
    fft.fwd(out, values);
    const double n = static_cast<double>(values.size());
    for (auto& v : out) v /= n;
    return out;
}

int nextPow2(int n) {
    int p = 2;
    while (p < n) p <<= 1;
    return p;
}

} // namespace superopt::detail
