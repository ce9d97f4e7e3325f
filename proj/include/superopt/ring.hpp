#pragma once

#include <complex>
#include <map>
#include <vector>

#include "superopt/errors.hpp"

namespace superopt {

using cplx = std::complex<double>;

/// Relative tolerance below which stored coefficients are dropped.
inline constexpr double kCoeffDropTol = 1e-13;

/// A Laurent polynomial sum_j c_j z^j on the unit circle, held as a sparse
/// map from integer degree to complex coefficient. Coefficients below
/// kCoeffDropTol relative to the largest one are pruned, so supports stay
/// finite through FFT round-trips.
class LaurentScalar {
public:
    LaurentScalar() = default;
    explicit LaurentScalar(cplx c);
    explicit LaurentScalar(double c) : LaurentScalar(cplx(c, 0.0)) {}

    static LaurentScalar monomial(int deg, cplx c = cplx(1.0, 0.0));
    /// Coefficients c[0..] for degrees degLo, degLo+1, ...
    static LaurentScalar fromCoeffs(int degLo, const std::vector<cplx>& c);

    bool isZero() const { return coeffs_.empty(); }
    /// Support bounds; only valid when nonzero.
    int degLo() const;
    int degHi() const;
    int supportWidth() const { return isZero() ? 0 : degHi() - degLo(); }
    bool isPolynomial() const { return isZero() || degLo() >= 0; }
    bool isConstant() const { return isZero() || (degLo() == 0 && degHi() == 0); }

    cplx coeff(int j) const;
    const std::map<int, cplx>& coeffs() const { return coeffs_; }
    double maxAbsCoeff() const;
    /// l2 norm of the coefficient sequence (= L2 norm on the circle).
    double l2Norm() const;

    LaurentScalar operator+(const LaurentScalar& o) const;
    LaurentScalar operator-(const LaurentScalar& o) const;
    LaurentScalar operator*(const LaurentScalar& o) const;
    LaurentScalar operator-() const;
    LaurentScalar scaled(cplx a) const;
    /// Multiplication by z^k.
    LaurentScalar shifted(int k) const;
    /// conj-reflect: coefficient at j becomes conj(coefficient at -j);
    /// equals pointwise complex conjugation on the unit circle.
    LaurentScalar conjReflect() const;
    /// Keep only degrees in [lo, hi].
    LaurentScalar truncated(int lo, int hi) const;
    /// Copy with coefficients below relTol * max|coeff| dropped.
    LaurentScalar prunedCopy(double relTol) const;

    cplx eval(cplx z) const;
    /// Values at the N-point grid zeta_k = exp(2*pi*i*k/N). N power of two.
    std::vector<cplx> evalGrid(int N) const;
    /// Least-squares projection of grid values onto degrees [lo, hi] by FFT.
    static LaurentScalar fromGrid(const std::vector<cplx>& values, int lo, int hi);

    /// Taylor coefficients of p/q up to z^order (p, q polynomials, q(0) != 0).
    static std::vector<cplx> taylorDivide(const LaurentScalar& p, const LaurentScalar& q,
                                          int order);
    /// Exact polynomial division by the linear factor (z - root); the caller
    /// asserts that root is (numerically) a root. Remainder is discarded.
    LaurentScalar deflated(cplx root) const;

    bool approxEqual(const LaurentScalar& o, double tol) const;

private:
    void prune();
    std::map<int, cplx> coeffs_;
};

/// All roots of the polynomial part of p, with multiplicity, via companion
/// matrix eigenvalues plus one Newton polish step. A positive lower support
/// bound contributes roots at the origin.
std::vector<cplx> roots(const LaurentScalar& p);

/// Outer spectral factor o of a real symmetric Laurent polynomial rho >= 0 on
/// the circle: |o|^2 = rho on the circle, o(0) > 0, no roots in |z| < 1.
LaurentScalar spectral_factor(const LaurentScalar& rho);

/// A rational function z^shift * num(z)/den(z) on the unit circle.
/// num is a polynomial with num(0) != 0 (the monomial factor is kept in the
/// shift), den a polynomial with den(0) = 1 and no roots within
/// kDenCircleMargin of the circle. Denominator roots strictly inside the open
/// disk are representable (they arise from conjugation of analytic factors);
/// symbols ingested from files are additionally required to have
/// disk-zero-free denominators, see denDiskZeroFree().
class RationalScalar {
public:
    RationalScalar() = default;                       // zero
    RationalScalar(cplx c);                           // NOLINT: implicit constant
    RationalScalar(double c) : RationalScalar(cplx(c, 0.0)) {}
    explicit RationalScalar(const LaurentScalar& num);
    RationalScalar(const LaurentScalar& num, const LaurentScalar& den);

    static RationalScalar z(int power = 1);

    bool isZero() const { return num_.isZero(); }
    /// Numerator including the monomial shift (support starts at shift()).
    const LaurentScalar& num() const { return num_; }
    const LaurentScalar& den() const { return den_; }
    int shift() const { return num_.isZero() ? 0 : num_.degLo(); }
    bool isPolynomial() const { return den_.isConstant(); }
    /// Analytic in the disk as far as the representation shows: nonnegative
    /// shift and denominator zero-free in the closed disk.
    bool isAnalytic() const { return num_.isZero() || (shift() >= 0 && denDiskZeroFree()); }
    bool isConstant() const { return num_.isConstant() && den_.isConstant(); }

    /// True when den has no roots in |z| <= 1 + tol (the spec's ingestion
    /// invariant; conjugated factors legitimately violate it).
    bool denDiskZeroFree(double tol = 1e-10) const;
    /// Smallest | |r| - 1 | over denominator roots (infinity for constants).
    double denDistanceToCircle() const;

    RationalScalar operator+(const RationalScalar& o) const;
    RationalScalar operator-(const RationalScalar& o) const;
    RationalScalar operator*(const RationalScalar& o) const;
    RationalScalar operator/(const RationalScalar& o) const;
    RationalScalar operator-() const;
    RationalScalar scaled(cplx a) const;
    RationalScalar shifted(int k) const;
    RationalScalar conjReflect() const;

    /// Cancel common numerator/denominator roots (tolerance tol); mandatory
    /// after divisions that the theory guarantees to be exact.
    RationalScalar simplified(double tol = 1e-8) const;

    /// Search for a lower-degree representation matching this function on
    /// the circle within tol (relative). Long chains of rational additions
    /// carry blocks of removable factors that pairwise root cancellation
    /// cannot see; the fit is verified on a finer grid before it replaces
    /// the original.
    RationalScalar recompressed(double tol = 1e-10) const;

    cplx eval(cplx zv) const;
    std::vector<cplx> evalGrid(int N) const;

    /// Fourier coefficient on the circle. Exact series division when the
    /// denominator is disk-zero-free, FFT on an adaptively sized grid
    /// otherwise.
    cplx fourierCoeff(int j) const;
    /// Fourier coefficients for degrees [lo, hi] as a Laurent polynomial.
    LaurentScalar fourierWindow(int lo, int hi) const;
    /// Degree bound d such that |f^(j)| <= tail for all j < -d.
    int antiAnalyticDegree(double tail = 1e-14) const;
    /// Degree bound d such that |f^(j)| <= tail for all j > d.
    int analyticDegree(double tail = 1e-14) const;

    double maxAbsOnGrid(int N = 1024) const;
    double minAbsOnGrid(int N = 1024) const;

    bool approxEqualOnGrid(const RationalScalar& o, double tol, int N = 512) const;

private:
    void normalize();
    LaurentScalar num_;                    // includes the monomial shift
    LaurentScalar den_{cplx(1.0, 0.0)};    // den(0) = 1
};

/// Margin around the unit circle inside which denominator roots are refused.
inline constexpr double kDenCircleMargin = 1e-8;

/// Scalar inner-outer factorization of an analytic rational function:
/// f = inner * outer with |inner| = 1 on the circle (finite Blaschke product
/// times z^m) and outer zero-free in the open disk, outer(0) > 0.
std::pair<RationalScalar, RationalScalar> inner_outer(const RationalScalar& f);

/// Winding number of f around 0, by total argument increment over an
/// adaptively refined circle grid.
int winding(const RationalScalar& f);

/// Blaschke factor (z - root)/(1 - conj(root) z) for |root| < 1.
RationalScalar blaschke(cplx root);

} // namespace superopt
