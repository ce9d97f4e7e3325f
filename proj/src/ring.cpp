#include "superopt/ring.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "fft_util.hpp"

namespace superopt {

namespace {

constexpr double kPi = std::numbers::pi;

cplx evalPoly(const std::vector<cplx>& a, cplx z) {
    cplx acc(0.0, 0.0);
    for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * z + *it;
    return acc;
}

std::vector<cplx> denseCoeffs(const LaurentScalar& p) {
    // densifies the shifted polynomial part z^{-degLo} p
    std::vector<cplx> a(static_cast<size_t>(p.supportWidth()) + 1, cplx(0.0, 0.0));
    const int lo = p.degLo();
    for (const auto& [d, c] : p.coeffs()) a[static_cast<size_t>(d - lo)] = c;
    return a;
}

LaurentScalar polyTimesLinear(const LaurentScalar& p, cplx a, cplx b) {
    // p * (a + b z)
    return p.scaled(a) + p.shifted(1).scaled(b);
}

} // namespace

// ---------------------------------------------------------------------------
// LaurentScalar

LaurentScalar::LaurentScalar(cplx c) {
    if (c != cplx(0.0, 0.0)) coeffs_[0] = c;
    prune();
}

LaurentScalar LaurentScalar::monomial(int deg, cplx c) {
    LaurentScalar r;
    if (c != cplx(0.0, 0.0)) r.coeffs_[deg] = c;
    r.prune();
    return r;
}

LaurentScalar LaurentScalar::fromCoeffs(int degLo, const std::vector<cplx>& c) {
    LaurentScalar r;
    for (size_t i = 0; i < c.size(); ++i)
        if (c[i] != cplx(0.0, 0.0)) r.coeffs_[degLo + static_cast<int>(i)] = c[i];
    r.prune();
    return r;
}

int LaurentScalar::degLo() const { return coeffs_.empty() ? 0 : coeffs_.begin()->first; }
int LaurentScalar::degHi() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

cplx LaurentScalar::coeff(int j) const {
    auto it = coeffs_.find(j);
    return it == coeffs_.end() ? cplx(0.0, 0.0) : it->second;
}

double LaurentScalar::maxAbsCoeff() const {
    double m = 0.0;
    for (const auto& [d, c] : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

double LaurentScalar::l2Norm() const {
    double s = 0.0;
    for (const auto& [d, c] : coeffs_) s += std::norm(c);
    return std::sqrt(s);
}

void LaurentScalar::prune() {
    const double cut = kCoeffDropTol * maxAbsCoeff();
    for (auto it = coeffs_.begin(); it != coeffs_.end();)
        it = (std::abs(it->second) <= cut) ? coeffs_.erase(it) : std::next(it);
}

LaurentScalar LaurentScalar::operator+(const LaurentScalar& o) const {
    LaurentScalar r = *this;
    for (const auto& [d, c] : o.coeffs_) r.coeffs_[d] += c;
    r.prune();
    return r;
}

LaurentScalar LaurentScalar::operator-(const LaurentScalar& o) const {
    LaurentScalar r = *this;
    for (const auto& [d, c] : o.coeffs_) r.coeffs_[d] -= c;
    r.prune();
    return r;
}

LaurentScalar LaurentScalar::operator-() const { return scaled(cplx(-1.0, 0.0)); }

LaurentScalar LaurentScalar::operator*(const LaurentScalar& o) const {
    LaurentScalar r;
    for (const auto& [d1, c1] : coeffs_)
        for (const auto& [d2, c2] : o.coeffs_) r.coeffs_[d1 + d2] += c1 * c2;
    r.prune();
    return r;
}

LaurentScalar LaurentScalar::scaled(cplx a) const {
    LaurentScalar r;
    if (a == cplx(0.0, 0.0)) return r;
    for (const auto& [d, c] : coeffs_) r.coeffs_[d] = a * c;
    r.prune();
    return r;
}

LaurentScalar LaurentScalar::shifted(int k) const {
    LaurentScalar r;
    for (const auto& [d, c] : coeffs_) r.coeffs_[d + k] = c;
    return r;
}

LaurentScalar LaurentScalar::conjReflect() const {
    LaurentScalar r;
    for (const auto& [d, c] : coeffs_) r.coeffs_[-d] = std::conj(c);
    return r;
}

LaurentScalar LaurentScalar::truncated(int lo, int hi) const {
    LaurentScalar r;
    for (const auto& [d, c] : coeffs_)
        if (d >= lo && d <= hi) r.coeffs_[d] = c;
    return r;
}

LaurentScalar LaurentScalar::prunedCopy(double relTol) const {
    const double cut = relTol * maxAbsCoeff();
    LaurentScalar r;
    for (const auto& [d, c] : coeffs_)
        if (std::abs(c) > cut) r.coeffs_[d] = c;
    return r;
}

cplx LaurentScalar::eval(cplx z) const {
    // analytic part by Horner in z, antianalytic part by descending powers of 1/z
    cplx pos(0.0, 0.0);
    int degPos = -1;
    auto it = coeffs_.rbegin();
    for (; it != coeffs_.rend() && it->first >= 0; ++it) {
        if (degPos < 0)
            degPos = it->first;
        else {
            for (int k = degPos; k > it->first; --k) pos *= z;
            degPos = it->first;
        }
        pos += it->second;
    }
    if (degPos > 0)
        for (int k = degPos; k > 0; --k) pos *= z;

    cplx neg(0.0, 0.0);
    if (it != coeffs_.rend()) {
        const cplx zi = cplx(1.0, 0.0) / z;
        int prev = 0;
        cplx zp(1.0, 0.0);
        for (; it != coeffs_.rend(); ++it) {
            for (int k = prev; k > it->first; --k) zp *= zi;
            prev = it->first;
            neg += it->second * zp;
        }
    }
    return pos + neg;
}

std::vector<cplx> LaurentScalar::evalGrid(int N) const {
    // Exact for every N: placing c_j at j mod N and synthesizing uses
    // zeta_k^j = zeta_k^{j mod N}.
    std::vector<cplx> buf(static_cast<size_t>(N), cplx(0.0, 0.0));
    for (const auto& [d, c] : coeffs_) {
        int idx = d % N;
        if (idx < 0) idx += N;
        buf[static_cast<size_t>(idx)] += c;
    }
    return detail::synthesize(buf);
}

LaurentScalar LaurentScalar::fromGrid(const std::vector<cplx>& values, int lo, int hi) {
    const int N = static_cast<int>(values.size());
    if (hi - lo + 1 > N) throw GridTooSmall("fromGrid: window exceeds grid size");
    const auto buf = detail::analyze(values);
    LaurentScalar r;
    for (int d = lo; d <= hi; ++d) {
        int idx = d % N;
        if (idx < 0) idx += N;
        const cplx c = buf[static_cast<size_t>(idx)];
        if (c != cplx(0.0, 0.0)) r.coeffs_[d] = c;
    }
    r.prune();
    return r;
}

std::vector<cplx> LaurentScalar::taylorDivide(const LaurentScalar& p, const LaurentScalar& q,
                                              int order) {
    if (!p.isPolynomial() || !q.isPolynomial())
        throw DegenerateInput("taylorDivide expects polynomials");
    const cplx q0 = q.coeff(0);
    if (std::abs(q0) == 0.0) throw DegenerateInput("taylorDivide: q(0) = 0");
    std::vector<cplx> c(static_cast<size_t>(order) + 1, cplx(0.0, 0.0));
    for (int k = 0; k <= order; ++k) {
        cplx acc = p.coeff(k);
        for (int i = 1; i <= k; ++i) {
            const cplx qi = q.coeff(i);
            if (qi != cplx(0.0, 0.0)) acc -= qi * c[static_cast<size_t>(k - i)];
        }
        c[static_cast<size_t>(k)] = acc / q0;
    }
    return c;
}

LaurentScalar LaurentScalar::deflated(cplx root) const {
    if (isZero()) throw DegenerateInput("deflated: zero polynomial");
    const int lo = degLo();
    const auto a = denseCoeffs(*this);
    const int d = static_cast<int>(a.size()) - 1;
    if (d == 0) throw DegenerateInput("deflated: constant has no roots");
    std::vector<cplx> b(static_cast<size_t>(d), cplx(0.0, 0.0));
    cplx carry = a[static_cast<size_t>(d)];
    for (int k = d - 1; k >= 0; --k) {
        b[static_cast<size_t>(k)] = carry;
        carry = a[static_cast<size_t>(k)] + root * carry;
    }
    return fromCoeffs(lo, b);
}

bool LaurentScalar::approxEqual(const LaurentScalar& o, double tol) const {
    const LaurentScalar d = *this - o;
    return d.maxAbsCoeff() <= tol;
}

// ---------------------------------------------------------------------------
// roots

std::vector<cplx> roots(const LaurentScalar& p) {
    if (p.isZero()) throw DegenerateInput("roots of the zero polynomial");
    std::vector<cplx> out;
    const int lo = p.degLo();
    for (int i = 0; i < lo; ++i) out.push_back(cplx(0.0, 0.0));

    const auto a = denseCoeffs(p);
    const int d = static_cast<int>(a.size()) - 1;
    if (d == 0) return out;

    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 1; i < d; ++i) C(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) C(i, d - 1) = -a[static_cast<size_t>(i)] / a[static_cast<size_t>(d)];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, /*computeEigenvectors=*/false);

    // one Newton polish step per root
    std::vector<cplx> da(static_cast<size_t>(d), cplx(0.0, 0.0));
    for (int i = 1; i <= d; ++i) da[static_cast<size_t>(i - 1)] = a[static_cast<size_t>(i)] * double(i);
    for (int i = 0; i < d; ++i) {
        cplx r = es.eigenvalues()(i);
        const cplx dp = evalPoly(da, r);
        if (std::abs(dp) > 1e-14) {
            const cplx step = evalPoly(a, r) / dp;
            if (std::abs(step) < 0.5 * (1.0 + std::abs(r))) r -= step;
        }
        out.push_back(r);
    }
    return out;
}

// ---------------------------------------------------------------------------
// spectral_factor

LaurentScalar spectral_factor(const LaurentScalar& rho) {
    if (rho.isZero()) throw NotPositive("spectral_factor of the zero function");
    const double scale = rho.maxAbsCoeff();
    // symmetry rho^(-j) = conj(rho^(j))
    for (const auto& [d, c] : rho.coeffs()) {
        if (std::abs(c - std::conj(rho.coeff(-d))) > 1e-9 * scale)
            throw Asymmetric("spectral_factor: rho^(-j) != conj(rho^(j))");
    }
    const int d = rho.degHi();
    {
        const int N = detail::nextPow2(std::max(256, 8 * (2 * d + 1)));
        const auto vals = rho.evalGrid(N);
        for (const auto& v : vals) {
            if (std::abs(v.imag()) > 1e-9 * std::max(1.0, scale))
                throw Asymmetric("spectral_factor: rho not real on the circle");
            // Boundary zeros (double roots on the circle) are admitted; genuine
            // negativity is not.
            if (v.real() < -1e-10 * std::max(1.0, scale))
                throw NotPositive("spectral_factor: rho attains negative values");
        }
    }
    if (d == 0) {
        const double c = rho.coeff(0).real();
        if (c <= 0.0) throw NotPositive("spectral_factor: nonpositive constant");
        return LaurentScalar(std::sqrt(c));
    }

    const auto rs = roots(rho.shifted(d));
    std::vector<cplx> outside, inside, boundary;
    constexpr double btol = 1e-7;
    for (const auto& r : rs) {
        const double m = std::abs(r);
        if (m > 1.0 + btol)
            outside.push_back(r);
        else if (m < 1.0 - btol)
            inside.push_back(r);
        else
            boundary.push_back(r);
    }
    if (boundary.size() % 2 != 0 ||
        outside.size() + boundary.size() / 2 != static_cast<size_t>(d))
        throw NotPositive("spectral_factor: root pattern inconsistent with rho >= 0");

    std::vector<cplx> factors = outside;
    std::vector<cplx> pending = boundary;
    while (!pending.empty()) {
        const cplx r1 = pending.back();
        pending.pop_back();
        if (pending.empty()) throw NotPositive("spectral_factor: unpaired boundary root");
        const cplx target = cplx(1.0, 0.0) / std::conj(r1);
        size_t best = 0;
        double bestDist = 1e300;
        for (size_t i = 0; i < pending.size(); ++i) {
            const double dist = std::abs(pending[i] - target);
            if (dist < bestDist) { bestDist = dist; best = i; }
        }
        const cplx r2 = pending[best];
        pending.erase(pending.begin() + static_cast<long>(best));
        factors.push_back(0.5 * (r1 + cplx(1.0, 0.0) / std::conj(r2)));
    }

    LaurentScalar o(cplx(1.0, 0.0));
    for (const auto& r : factors) o = polyTimesLinear(o, cplx(1.0, 0.0), -cplx(1.0, 0.0) / r);

    // calibrate the positive constant so |o|^2 = rho
    const int N = detail::nextPow2(std::max(256, 8 * (2 * d + 1)));
    const auto ov = o.evalGrid(N);
    const auto rv = rho.evalGrid(N);
    std::vector<double> ratios;
    for (int k = 0; k < N; ++k) {
        const double oo = std::norm(ov[static_cast<size_t>(k)]);
        if (oo > 1e-8)
            ratios.push_back(std::max(0.0, rv[static_cast<size_t>(k)].real()) / oo);
    }
    if (ratios.empty()) throw NotPositive("spectral_factor: cannot calibrate");
    std::nth_element(ratios.begin(), ratios.begin() + static_cast<long>(ratios.size() / 2),
                     ratios.end());
    const double c2 = ratios[ratios.size() / 2];
    if (c2 <= 0.0) throw NotPositive("spectral_factor: nonpositive calibration");
    o = o.scaled(cplx(std::sqrt(c2), 0.0));

    // verify |o|^2 = rho
    const auto ov2 = o.evalGrid(N);
    double worst = 0.0;
    for (int k = 0; k < N; ++k)
        worst = std::max(worst, std::abs(std::norm(ov2[static_cast<size_t>(k)]) -
                                         rv[static_cast<size_t>(k)].real()));
    if (worst > 1e-8 * std::max(1.0, scale))
        throw NotPositive("spectral_factor: residual too large; rho not factorable");
    return o;
}

// ---------------------------------------------------------------------------
// RationalScalar

RationalScalar::RationalScalar(cplx c) : num_(c) {}

RationalScalar::RationalScalar(const LaurentScalar& num) : num_(num) { normalize(); }

RationalScalar::RationalScalar(const LaurentScalar& num, const LaurentScalar& den)
    : num_(num), den_(den) {
    normalize();
}

RationalScalar RationalScalar::z(int power) {
    return RationalScalar(LaurentScalar::monomial(power));
}

void RationalScalar::normalize() {
    if (den_.isZero()) throw DegenerateInput("rational with zero denominator");
    if (num_.isZero()) {
        den_ = LaurentScalar(cplx(1.0, 0.0));
        return;
    }
    if (!den_.isPolynomial() || den_.degLo() > 0) {
        // move the denominator's monomial factor into the numerator shift
        const int k = den_.degLo();
        den_ = den_.shifted(-k);
        num_ = num_.shifted(-k);
    }
    const cplx d0 = den_.coeff(0);
    if (std::abs(d0) == 0.0) throw DegenerateInput("denominator vanishes at 0 after shift");
    if (!(d0 == cplx(1.0, 0.0))) {
        den_ = den_.scaled(cplx(1.0, 0.0) / d0);
        num_ = num_.scaled(cplx(1.0, 0.0) / d0);
    }
    if (den_.supportWidth() > 0) {
        for (const auto& r : roots(den_))
            if (std::abs(std::abs(r) - 1.0) < kDenCircleMargin)
                throw DenominatorNearCircle("denominator root within 1e-8 of the circle");
    }
}

bool RationalScalar::denDiskZeroFree(double tol) const {
    if (den_.supportWidth() == 0) return true;
    for (const auto& r : roots(den_))
        if (std::abs(r) <= 1.0 + tol) return false;
    return true;
}

double RationalScalar::denDistanceToCircle() const {
    if (den_.supportWidth() == 0) return 1e300;
    double d = 1e300;
    for (const auto& r : roots(den_)) d = std::min(d, std::abs(std::abs(r) - 1.0));
    return d;
}

RationalScalar RationalScalar::operator+(const RationalScalar& o) const {
    if (isZero()) return o;
    if (o.isZero()) return *this;
    if (den_.approxEqual(o.den_, 1e-14 * std::max(1.0, den_.maxAbsCoeff())))
        return RationalScalar(num_ + o.num_, den_);
    RationalScalar r(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    r = r.simplified();
    if (r.den_.supportWidth() > 12) r = r.recompressed();
    return r;
}

RationalScalar RationalScalar::operator-(const RationalScalar& o) const { return *this + (-o); }

RationalScalar RationalScalar::operator-() const {
    RationalScalar r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalScalar RationalScalar::operator*(const RationalScalar& o) const {
    if (isZero() || o.isZero()) return RationalScalar();
    RationalScalar r(num_ * o.num_, den_ * o.den_);
    if (r.den_.supportWidth() > 0 && r.num_.supportWidth() > 0) return r.simplified();
    return r;
}

namespace {

/// Cancel common roots of a raw numerator/denominator pair before the
/// validating constructor runs; divisions that the theory guarantees exact
/// (maximizing vectors vanishing on the circle) pass through here.
std::pair<LaurentScalar, LaurentScalar> cancelCommonRoots(LaurentScalar n, LaurentScalar d,
                                                          double tol) {
    if (n.isZero() || d.supportWidth() == 0 || n.supportWidth() == 0) return {n, d};
    auto nr = roots(n);
    for (const auto& rd : roots(d)) {
        auto best = nr.end();
        double bestDist = tol * std::max(1.0, std::abs(rd));
        for (auto it = nr.begin(); it != nr.end(); ++it) {
            const double dist = std::abs(*it - rd);
            if (dist <= bestDist) { bestDist = dist; best = it; }
        }
        if (best != nr.end()) {
            n = n.deflated(rd);
            d = d.deflated(rd);
            nr.erase(best);
        }
    }
    return {n, d};
}

} // namespace

RationalScalar RationalScalar::operator/(const RationalScalar& o) const {
    if (o.isZero()) throw DegenerateInput("division by the zero function");
    if (isZero()) return RationalScalar();
    auto [n, d] = cancelCommonRoots(num_ * o.den_, den_ * o.num_, 1e-8);
    return RationalScalar(n, d);
}

RationalScalar RationalScalar::scaled(cplx a) const {
    if (a == cplx(0.0, 0.0)) return RationalScalar();
    RationalScalar r = *this;
    r.num_ = r.num_.scaled(a);
    return r;
}

RationalScalar RationalScalar::shifted(int k) const {
    RationalScalar r = *this;
    r.num_ = r.num_.shifted(k);
    return r;
}

RationalScalar RationalScalar::conjReflect() const {
    if (isZero()) return RationalScalar();
    const int dq = den_.degHi();
    return RationalScalar(num_.conjReflect().shifted(dq), den_.conjReflect().shifted(dq));
}

RationalScalar RationalScalar::simplified(double tol) const {
    if (isZero() || den_.supportWidth() == 0 || num_.supportWidth() == 0) return *this;
    auto [n, d] = cancelCommonRoots(num_, den_, tol);
    if (d.supportWidth() == den_.supportWidth()) return *this;
    return RationalScalar(n, d);
}

RationalScalar RationalScalar::recompressed(double tol) const {
    if (isZero() || den_.supportWidth() <= 4) return *this;
    // window from the numerator with truncation noise stripped: long chains
    // leave tiny coefficients that would otherwise pin the monomial shift
    const LaurentScalar numP = num_.prunedCopy(tol);
    if (numP.isZero()) return *this;
    const int m = numP.degLo();
    const int nn = numP.supportWidth(), nd = den_.supportWidth();
    const int N = detail::nextPow2(std::max(256, 4 * (nn + nd + 1)));
    const auto fv = evalGrid(N);
    double scale = 0.0;
    for (const auto& x : fv) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) return *this;

    std::vector<cplx> zeta(static_cast<size_t>(N));
    for (int k = 0; k < N; ++k)
        zeta[static_cast<size_t>(k)] = std::polar(1.0, 2.0 * std::numbers::pi * k / N);

    const int capT = std::min(nn + nd - 1, 64);
    for (int T = 0; T <= capT; ++T) {
        for (int dd = 0; dd <= std::min(T, nd); ++dd) {
            const int dn = T - dd;
            if (dn > nn) continue;
            // p(zeta) - f(zeta) (q(zeta) - 1) = f(zeta), p on degrees [m, m+dn]
            Eigen::MatrixXcd A(N, dn + 1 + dd);
            Eigen::VectorXcd rhs(N);
            for (int k = 0; k < N; ++k) {
                const cplx zk = zeta[static_cast<size_t>(k)];
                cplx zp = std::pow(zk, m);
                for (int j = 0; j <= dn; ++j) {
                    A(k, j) = zp;
                    zp *= zk;
                }
                cplx zq = zk;
                for (int i = 1; i <= dd; ++i) {
                    A(k, dn + i) = -fv[static_cast<size_t>(k)] * zq;
                    zq *= zk;
                }
                rhs(k) = fv[static_cast<size_t>(k)];
            }
            const Eigen::VectorXcd x = A.colPivHouseholderQr().solve(rhs);
            if ((A * x - rhs).norm() > tol * scale * std::sqrt(double(N))) continue;
            std::vector<cplx> pc(x.data(), x.data() + dn + 1);
            std::vector<cplx> qc{cplx(1.0, 0.0)};
            qc.insert(qc.end(), x.data() + dn + 1, x.data() + dn + 1 + dd);
            try {
                const RationalScalar cand(LaurentScalar::fromCoeffs(m, pc),
                                          LaurentScalar::fromCoeffs(0, qc));
                if (cand.num().supportWidth() + cand.den().supportWidth() >= nn + nd)
                    continue;
                // verify on a finer, offset-free grid
                const int M2 = 2 * N;
                const auto cv = cand.evalGrid(M2);
                const auto fv2 = evalGrid(M2);
                double worst = 0.0;
                for (int k = 0; k < M2; ++k)
                    worst = std::max(worst,
                                     std::abs(cv[static_cast<size_t>(k)] - fv2[static_cast<size_t>(k)]));
                if (worst <= 10.0 * tol * scale) return cand;
            } catch (const Error&) {
                continue; // candidate denominator touched the circle
            }
        }
    }
    return *this;
}

cplx RationalScalar::eval(cplx zv) const { return num_.eval(zv) / den_.eval(zv); }

std::vector<cplx> RationalScalar::evalGrid(int N) const {
    auto nv = num_.evalGrid(N);
    if (den_.isConstant()) {
        const cplx d = den_.coeff(0);
        for (auto& v : nv) v /= d;
        return nv;
    }
    const auto dv = den_.evalGrid(N);
    for (size_t k = 0; k < nv.size(); ++k) nv[k] /= dv[k];
    return nv;
}

cplx RationalScalar::fourierCoeff(int j) const {
    if (isZero()) return cplx(0.0, 0.0);
    if (den_.isConstant()) return num_.coeff(j) / den_.coeff(0);
    const int m = shift();
    if (denDiskZeroFree()) {
        if (j < m) return cplx(0.0, 0.0);
        const auto t = LaurentScalar::taylorDivide(num_.shifted(-m), den_, j - m);
        return t[static_cast<size_t>(j - m)];
    }
    return fourierWindow(j, j).coeff(j);
}

LaurentScalar RationalScalar::fourierWindow(int lo, int hi) const {
    if (isZero()) return LaurentScalar();
    if (den_.isConstant()) {
        LaurentScalar r = num_.scaled(cplx(1.0, 0.0) / den_.coeff(0));
        return r.truncated(lo, hi);
    }
    const int m = shift();
    if (denDiskZeroFree()) {
        if (hi < m) return LaurentScalar();
        const int order = hi - m;
        const auto t = LaurentScalar::taylorDivide(num_.shifted(-m), den_, order);
        std::vector<cplx> win;
        const int from = std::max(lo, m);
        for (int jj = from; jj <= hi; ++jj) win.push_back(t[static_cast<size_t>(jj - m)]);
        return LaurentScalar::fromCoeffs(from, win);
    }
    // denominator roots on both sides of the circle: adaptive FFT
    const double dist = denDistanceToCircle();
    const int tailTerms = static_cast<int>(std::ceil(38.0 / std::log1p(dist)));
    const int need = num_.supportWidth() + den_.supportWidth() + std::abs(lo) + std::abs(hi) +
                     tailTerms + 16;
    const int N = detail::nextPow2(std::max(256, need));
    return LaurentScalar::fromGrid(evalGrid(N), lo, hi);
}

int RationalScalar::antiAnalyticDegree(double tail) const {
    if (isZero()) return 0;
    const int m = shift();
    if (denDiskZeroFree()) return std::max(0, -m);
    double rmax = 0.0;
    for (const auto& r : roots(den_))
        if (std::abs(r) < 1.0) rmax = std::max(rmax, std::abs(r));
    const double scale = std::max(1.0, num_.maxAbsCoeff());
    const int extra =
        rmax > 0.0 ? static_cast<int>(std::ceil(std::log(tail / scale) / std::log(rmax))) : 0;
    return std::max(0, -m) + std::max(0, extra) + den_.supportWidth() + 2;
}

int RationalScalar::analyticDegree(double tail) const {
    if (isZero()) return 0;
    if (den_.isConstant()) return std::max(0, num_.degHi());
    double rmin = 1e300;
    for (const auto& r : roots(den_))
        if (std::abs(r) > 1.0) rmin = std::min(rmin, std::abs(r));
    const double scale = std::max(1.0, num_.maxAbsCoeff());
    const int extra = rmin < 1e300
                          ? static_cast<int>(std::ceil(std::log(scale / tail) / std::log(rmin)))
                          : 0;
    return std::max(0, num_.degHi()) + std::max(0, extra) + den_.supportWidth() + 2;
}

double RationalScalar::maxAbsOnGrid(int N) const {
    double m = 0.0;
    for (const auto& v : evalGrid(N)) m = std::max(m, std::abs(v));
    return m;
}

double RationalScalar::minAbsOnGrid(int N) const {
    double m = 1e300;
    for (const auto& v : evalGrid(N)) m = std::min(m, std::abs(v));
    return m;
}

bool RationalScalar::approxEqualOnGrid(const RationalScalar& o, double tol, int N) const {
    const auto a = evalGrid(N), b = o.evalGrid(N);
    for (size_t k = 0; k < a.size(); ++k)
        if (std::abs(a[k] - b[k]) > tol) return false;
    return true;
}

// ---------------------------------------------------------------------------
// inner_outer / winding / blaschke

RationalScalar blaschke(cplx root) {
    if (std::abs(root) >= 1.0) throw DegenerateInput("blaschke factor needs |root| < 1");
    const LaurentScalar num = LaurentScalar::monomial(1) - LaurentScalar(root);
    const LaurentScalar den =
        LaurentScalar(cplx(1.0, 0.0)) - LaurentScalar::monomial(1, std::conj(root));
    return RationalScalar(num, den);
}

std::pair<RationalScalar, RationalScalar> inner_outer(const RationalScalar& f) {
    if (f.isZero()) throw DegenerateInput("inner_outer of the zero function");
    if (f.shift() < 0 || !f.denDiskZeroFree())
        throw DegenerateInput("inner_outer requires an analytic function");
    const int m = f.shift();
    const LaurentScalar P = f.num().shifted(-m);

    std::vector<cplx> insideRoots;
    if (P.supportWidth() > 0) {
        for (const auto& r : roots(P)) {
            const double a = std::abs(r);
            if (std::abs(a - 1.0) < kDenCircleMargin)
                throw BoundaryRoot("numerator root within 1e-8 of the circle");
            if (a < 1.0) insideRoots.push_back(r);
        }
    }

    RationalScalar inner = RationalScalar::z(0).shifted(m);
    LaurentScalar pDef = P;
    LaurentScalar blaschkeDen(cplx(1.0, 0.0));
    for (const auto& r : insideRoots) {
        pDef = pDef.deflated(r);
        blaschkeDen = polyTimesLinear(blaschkeDen, cplx(1.0, 0.0), -std::conj(r));
        inner = inner * blaschke(r);
    }
    RationalScalar outer(pDef * blaschkeDen, f.den());

    // canonical phases: outer(0) > 0
    const cplx c = outer.eval(cplx(0.0, 0.0));
    const cplx phase = c / std::abs(c);
    outer = outer.scaled(std::conj(phase));
    inner = inner.scaled(phase);
    return {inner, outer};
}

int winding(const RationalScalar& f) {
    if (f.isZero()) throw NearZeroOnCircle("winding of the zero function");
    int N = detail::nextPow2(
        std::max(512, 8 * (f.num().supportWidth() + f.den().supportWidth() + 1)));
    constexpr int kMaxN = 1 << 20;
    while (true) {
        const auto v = f.evalGrid(N);
        double minAbs = 1e300;
        for (const auto& x : v) minAbs = std::min(minAbs, std::abs(x));
        bool ok = minAbs >= 1e-8;
        double total = 0.0;
        if (ok) {
            for (int k = 0; k < N; ++k) {
                const cplx ratio = v[static_cast<size_t>((k + 1) % N)] / v[static_cast<size_t>(k)];
                const double inc = std::arg(ratio);
                if (std::abs(inc) >= kPi / 2.0) { ok = false; break; }
                total += inc;
            }
        }
        if (ok) {
            const double w = total / (2.0 * kPi);
            const long long r = std::llround(w);
            if (std::abs(w - static_cast<double>(r)) > 0.1)
                throw NearZeroOnCircle("winding did not converge to an integer");
            return static_cast<int>(r);
        }
        if (N >= kMaxN) throw NearZeroOnCircle("f too close to zero on the circle");
        N <<= 1;
    }
}

} // namespace superopt
