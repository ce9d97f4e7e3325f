#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include <Eigen/Dense>

#include "superopt/ring.hpp"

namespace superopt {

/// Default power-of-two evaluation grid.
inline constexpr int kDefaultGridN = 4096;
/// Products whose symbolic degree estimate exceeds this run on grids with FFT
/// re-projection instead (unbounded symbolic growth is the main engineering
/// risk of long factor-chain products).
inline constexpr int kSymbolicDegreeCap = 256;

/// A square matrix of rational scalars on the unit circle.
class MatSymbol {
public:
    MatSymbol() : n_(0) {}
    explicit MatSymbol(int n);

    static MatSymbol identity(int n);
    static MatSymbol zero(int n) { return MatSymbol(n); }
    static MatSymbol scalar(const RationalScalar& f);
    static MatSymbol diagonal(const std::vector<RationalScalar>& d);
    static MatSymbol constant(const Eigen::MatrixXcd& m);

    int size() const { return n_; }
    bool empty() const { return n_ == 0; }
    const RationalScalar& at(int i, int j) const { return e_[idx(i, j)]; }
    void set(int i, int j, RationalScalar f);

    int gridN() const { return gridN_; }
    void setGridN(int N);

    MatSymbol operator+(const MatSymbol& o) const;
    MatSymbol operator-(const MatSymbol& o) const;
    /// Symbolic product while the degree estimate stays under
    /// kSymbolicDegreeCap, otherwise pointwise on a grid with FFT
    /// re-projection; projResidual (if given) receives the projection tail.
    MatSymbol mul(const MatSymbol& o, double* projResidual = nullptr) const;
    MatSymbol operator*(const MatSymbol& o) const { return mul(o); }
    MatSymbol scaled(cplx a) const;
    MatSymbol shifted(int k) const;        // multiplication by z^k
    MatSymbol transpose() const;
    MatSymbol conjReflect() const;         // entrywise conjugate on the circle
    MatSymbol adjoint() const;             // conjugate transpose on the circle

    MatSymbol submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const;
    /// Places `inner` at the lower-right corner of an identity of size n.
    static MatSymbol bordered(int n, const MatSymbol& inner);
    /// Block diagonal of a scalar entry and a smaller symbol.
    static MatSymbol blockDiag(const RationalScalar& a, const MatSymbol& rest);

    RationalScalar det() const;
    /// Largest symbolic degree across entries, num plus den support.
    int degreeEstimate() const;
    /// Largest antianalytic degree bound over entries.
    int antiAnalyticDegree(double tail = 1e-14) const;
    /// Largest analytic degree bound over entries.
    int analyticDegree(double tail = 1e-14) const;
    /// True when every denominator is zero-free in the closed disk.
    bool diskPoleFree() const;

    Eigen::MatrixXcd evalAt(cplx z) const;
    /// Values at the N-point circle grid (cached per N; safe for concurrent
    /// readers).
    std::shared_ptr<const std::vector<Eigen::MatrixXcd>> grid(int N) const;

    /// Matrix of j-th Fourier coefficients via FFT of the grid evaluations.
    Eigen::MatrixXcd fourierCoeff(int j) const;
    /// Exact Fourier coefficient from the rational representation.
    Eigen::MatrixXcd fourierCoeffExact(int j) const;

    bool approxEqualOnGrid(const MatSymbol& o, double tol, int N = 512) const;

private:
    size_t idx(int i, int j) const { return static_cast<size_t>(i) * n_ + j; }
    int n_;
    std::vector<RationalScalar> e_;
    int gridN_ = kDefaultGridN;
    mutable std::mutex cacheMutex_;
    mutable std::vector<std::pair<int, std::shared_ptr<const std::vector<Eigen::MatrixXcd>>>>
        gridCache_;

public:
    MatSymbol(const MatSymbol& o);
    MatSymbol& operator=(const MatSymbol& o);
    MatSymbol(MatSymbol&& o) noexcept;
    MatSymbol& operator=(MatSymbol&& o) noexcept;
};

/// Evidence record attached to interpolation results.
struct ResidualReport {
    double unitarityResidual = 0.0;
    double analyticityResidual = 0.0;
    double fourierMatchResidual = 0.0;
    int gridSize = kDefaultGridN;
};

/// max over a grid of the pointwise operator norm (the L-infinity norm).
double sup_norm(const MatSymbol& F);

/// max over the grid of ||U(zeta) U(zeta)* - I||  (operator norm per point).
double unitarity_residual(const MatSymbol& U);

/// max over j < 0 and entries of |F^(j)| as seen by the FFT on the active
/// grid. Throws GridTooSmall when the grid cannot resolve the support.
double analyticity_residual(const MatSymbol& F);

/// max_{j<0} ||U^(j) - Phi^(j)|| over the antianalytic window of Phi.
double fourier_match_residual(const MatSymbol& U, const MatSymbol& Phi);

/// Builds the evidence record for U against Phi, doubling the grid until the
/// residual estimates stabilize within 10%.
ResidualReport make_residual_report(const MatSymbol& U, const MatSymbol& Phi);

} // namespace superopt
