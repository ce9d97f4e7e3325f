#include "superopt/matfun.hpp"

#include <algorithm>
#include <cmath>

#include "fft_util.hpp"

namespace superopt {

MatSymbol::MatSymbol(int n) : n_(n), e_(static_cast<size_t>(n) * n) {}

MatSymbol::MatSymbol(const MatSymbol& o) : n_(o.n_), e_(o.e_), gridN_(o.gridN_) {}

MatSymbol& MatSymbol::operator=(const MatSymbol& o) {
    if (this != &o) {
        n_ = o.n_;
        e_ = o.e_;
        gridN_ = o.gridN_;
        std::lock_guard<std::mutex> lk(cacheMutex_);
        gridCache_.clear();
    }
    return *this;
}

MatSymbol::MatSymbol(MatSymbol&& o) noexcept
    : n_(o.n_), e_(std::move(o.e_)), gridN_(o.gridN_), gridCache_(std::move(o.gridCache_)) {}

MatSymbol& MatSymbol::operator=(MatSymbol&& o) noexcept {
    n_ = o.n_;
    e_ = std::move(o.e_);
    gridN_ = o.gridN_;
    gridCache_ = std::move(o.gridCache_);
    return *this;
}

MatSymbol MatSymbol::identity(int n) {
    MatSymbol m(n);
    for (int i = 0; i < n; ++i) m.set(i, i, RationalScalar(1.0));
    return m;
}

MatSymbol MatSymbol::scalar(const RationalScalar& f) {
    MatSymbol m(1);
    m.set(0, 0, f);
    return m;
}

MatSymbol MatSymbol::diagonal(const std::vector<RationalScalar>& d) {
    MatSymbol m(static_cast<int>(d.size()));
    for (int i = 0; i < m.size(); ++i) m.set(i, i, d[static_cast<size_t>(i)]);
    return m;
}

MatSymbol MatSymbol::constant(const Eigen::MatrixXcd& c) {
    MatSymbol m(static_cast<int>(c.rows()));
    for (int i = 0; i < m.size(); ++i)
        for (int j = 0; j < m.size(); ++j)
            if (c(i, j) != cplx(0.0, 0.0)) m.set(i, j, RationalScalar(c(i, j)));
    return m;
}

void MatSymbol::set(int i, int j, RationalScalar f) {
    e_[idx(i, j)] = std::move(f);
    std::lock_guard<std::mutex> lk(cacheMutex_);
    gridCache_.clear();
}

void MatSymbol::setGridN(int N) { gridN_ = detail::nextPow2(N); }

MatSymbol MatSymbol::operator+(const MatSymbol& o) const {
    MatSymbol r(n_);
    r.gridN_ = std::max(gridN_, o.gridN_);
    for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] + o.e_[k];
    return r;
}

MatSymbol MatSymbol::operator-(const MatSymbol& o) const {
    MatSymbol r(n_);
    r.gridN_ = std::max(gridN_, o.gridN_);
    for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] - o.e_[k];
    return r;
}

MatSymbol MatSymbol::mul(const MatSymbol& o, double* projResidual) const {
    MatSymbol r(n_);
    r.gridN_ = std::max(gridN_, o.gridN_);
    if (projResidual) *projResidual = 0.0;
    if (degreeEstimate() + o.degreeEstimate() <= kSymbolicDegreeCap) {
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                RationalScalar acc;
                for (int k = 0; k < n_; ++k) acc = acc + at(i, k) * o.at(k, j);
                r.e_[r.idx(i, j)] = acc;
            }
        return r;
    }
    // grid product with FFT re-projection
    const int N = detail::nextPow2(
        std::max({gridN_, o.gridN_, 4 * (degreeEstimate() + o.degreeEstimate())}));
    const auto ga = grid(N);
    const auto gb = o.grid(N);
    double tail = 0.0;
    const int half = N / 2 - 1;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            std::vector<cplx> vals(static_cast<size_t>(N));
            for (int k = 0; k < N; ++k) {
                cplx acc(0.0, 0.0);
                for (int l = 0; l < n_; ++l)
                    acc += (*ga)[static_cast<size_t>(k)](i, l) * (*gb)[static_cast<size_t>(k)](l, j);
                vals[static_cast<size_t>(k)] = acc;
            }
            const auto buf = detail::analyze(vals);
            // energy at the window edge measures the dropped tail
            tail = std::max(tail, std::abs(buf[static_cast<size_t>(half)]));
            tail = std::max(tail, std::abs(buf[static_cast<size_t>(N - half)]));
            r.e_[r.idx(i, j)] = RationalScalar(LaurentScalar::fromGrid(vals, -half, half));
        }
    if (projResidual) *projResidual = tail;
    return r;
}

MatSymbol MatSymbol::scaled(cplx a) const {
    MatSymbol r(n_);
    r.gridN_ = gridN_;
    for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k].scaled(a);
    return r;
}

MatSymbol MatSymbol::shifted(int k) const {
    MatSymbol r(n_);
    r.gridN_ = gridN_;
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i].shifted(k);
    return r;
}

MatSymbol MatSymbol::transpose() const {
    MatSymbol r(n_);
    r.gridN_ = gridN_;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r.e_[r.idx(i, j)] = at(j, i);
    return r;
}

MatSymbol MatSymbol::conjReflect() const {
    MatSymbol r(n_);
    r.gridN_ = gridN_;
    for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k].conjReflect();
    return r;
}

MatSymbol MatSymbol::adjoint() const { return conjReflect().transpose(); }

MatSymbol MatSymbol::submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const {
    MatSymbol r(static_cast<int>(rows.size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j)
            r.e_[r.idx(static_cast<int>(i), static_cast<int>(j))] = at(rows[i], cols[j]);
    return r;
}

MatSymbol MatSymbol::bordered(int n, const MatSymbol& inner) {
    MatSymbol r = identity(n);
    const int off = n - inner.size();
    for (int i = 0; i < inner.size(); ++i)
        for (int j = 0; j < inner.size(); ++j) r.set(off + i, off + j, inner.at(i, j));
    return r;
}

MatSymbol MatSymbol::blockDiag(const RationalScalar& a, const MatSymbol& rest) {
    MatSymbol r(rest.size() + 1);
    r.set(0, 0, a);
    for (int i = 0; i < rest.size(); ++i)
        for (int j = 0; j < rest.size(); ++j) r.set(1 + i, 1 + j, rest.at(i, j));
    return r;
}

RationalScalar MatSymbol::det() const {
    if (n_ == 0) return RationalScalar(1.0);
    if (n_ == 1) return at(0, 0);
    if (n_ == 2) return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
    RationalScalar acc;
    std::vector<int> rows;
    for (int i = 1; i < n_; ++i) rows.push_back(i);
    std::vector<int> cols;
    for (int j = 0; j < n_; ++j) {
        if (at(0, j).isZero()) continue;
        cols.clear();
        for (int c = 0; c < n_; ++c)
            if (c != j) cols.push_back(c);
        const RationalScalar minor = submatrix(rows, cols).det();
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        acc = acc + at(0, j).scaled(cplx(sign, 0.0)) * minor;
    }
    return acc;
}

int MatSymbol::degreeEstimate() const {
    int d = 0;
    for (const auto& f : e_)
        d = std::max(d, f.num().supportWidth() + f.den().supportWidth());
    return d;
}

int MatSymbol::antiAnalyticDegree(double tail) const {
    int d = 0;
    for (const auto& f : e_) d = std::max(d, f.antiAnalyticDegree(tail));
    return d;
}

int MatSymbol::analyticDegree(double tail) const {
    int d = 0;
    for (const auto& f : e_) d = std::max(d, f.analyticDegree(tail));
    return d;
}

bool MatSymbol::diskPoleFree() const {
    for (const auto& f : e_)
        if (!f.denDiskZeroFree()) return false;
    return true;
}

Eigen::MatrixXcd MatSymbol::evalAt(cplx z) const {
    Eigen::MatrixXcd m(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) m(i, j) = at(i, j).isZero() ? cplx(0, 0) : at(i, j).eval(z);
    return m;
}

std::shared_ptr<const std::vector<Eigen::MatrixXcd>> MatSymbol::grid(int N) const {
    {
        std::lock_guard<std::mutex> lk(cacheMutex_);
        for (const auto& [n, g] : gridCache_)
            if (n == N) return g;
    }
    auto vals = std::make_shared<std::vector<Eigen::MatrixXcd>>(
        static_cast<size_t>(N), Eigen::MatrixXcd::Zero(n_, n_));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            if (at(i, j).isZero()) continue;
            const auto col = at(i, j).evalGrid(N);
            for (int k = 0; k < N; ++k)
                (*vals)[static_cast<size_t>(k)](i, j) = col[static_cast<size_t>(k)];
        }
    std::lock_guard<std::mutex> lk(cacheMutex_);
    if (gridCache_.size() > 4) gridCache_.erase(gridCache_.begin());
    gridCache_.emplace_back(N, vals);
    return vals;
}

Eigen::MatrixXcd MatSymbol::fourierCoeff(int j) const {
    const int N = gridN_;
    if (std::abs(j) > N / 2 - 1)
        throw GridTooSmall("fourierCoeff: |j| out of range for the active grid");
    const auto g = grid(N);
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n_, n_);
    std::vector<cplx> vals(static_cast<size_t>(N));
    for (int i = 0; i < n_; ++i)
        for (int c = 0; c < n_; ++c) {
            for (int k = 0; k < N; ++k)
                vals[static_cast<size_t>(k)] = (*g)[static_cast<size_t>(k)](i, c);
            const auto buf = detail::analyze(vals);
            int iidx = j % N;
            if (iidx < 0) iidx += N;
            acc(i, c) = buf[static_cast<size_t>(iidx)];
        }
    return acc;
}

Eigen::MatrixXcd MatSymbol::fourierCoeffExact(int j) const {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int c = 0; c < n_; ++c) acc(i, c) = at(i, c).fourierCoeff(j);
    return acc;
}

bool MatSymbol::approxEqualOnGrid(const MatSymbol& o, double tol, int N) const {
    if (n_ != o.n_) return false;
    const auto a = grid(N), b = o.grid(N);
    for (int k = 0; k < N; ++k)
        if (((*a)[static_cast<size_t>(k)] - (*b)[static_cast<size_t>(k)]).norm() > tol)
            return false;
    return true;
}

// ---------------------------------------------------------------------------

double sup_norm(const MatSymbol& F) {
    const int N = std::max(512, detail::nextPow2(8 * (F.degreeEstimate() + 1)));
    const auto g = F.grid(N);
    double worst = 0.0;
    for (const auto& m : *g) worst = std::max(worst, m.jacobiSvd().singularValues()(0));
    return worst;
}

double unitarity_residual(const MatSymbol& U) {
    const int N = U.gridN();
    const auto g = U.grid(N);
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(U.size(), U.size());
    double worst = 0.0;
    for (const auto& m : *g) {
        const Eigen::MatrixXcd d = m * m.adjoint() - eye;
        worst = std::max(worst, d.jacobiSvd().singularValues()(0));
    }
    return worst;
}

double analyticity_residual(const MatSymbol& F) {
    const int N = F.gridN();
    if (N < 4 * (F.degreeEstimate() + 1))
        throw GridTooSmall("analyticity_residual: grid under 4x coefficient support");
    const auto g = F.grid(N);
    std::vector<cplx> vals(static_cast<size_t>(N));
    double worst = 0.0;
    for (int i = 0; i < F.size(); ++i)
        for (int c = 0; c < F.size(); ++c) {
            for (int k = 0; k < N; ++k)
                vals[static_cast<size_t>(k)] = (*g)[static_cast<size_t>(k)](i, c);
            const auto buf = detail::analyze(vals);
            for (int j = 1; j <= N / 2; ++j)
                worst = std::max(worst, std::abs(buf[static_cast<size_t>(N - j)]));
        }
    return worst;
}

double fourier_match_residual(const MatSymbol& U, const MatSymbol& Phi) {
    const int window = std::max(1, Phi.antiAnalyticDegree() + 4);
    MatSymbol D = U - Phi;
    D.setGridN(std::max(U.gridN(), 4 * (D.degreeEstimate() + window + 1)));
    double worst = 0.0;
    for (int j = -window; j <= -1; ++j)
        worst = std::max(worst, D.fourierCoeff(j).norm());
    return worst;
}

ResidualReport make_residual_report(const MatSymbol& U, const MatSymbol& Phi) {
    int N = std::max(kDefaultGridN,
                     detail::nextPow2(4 * (U.degreeEstimate() + Phi.degreeEstimate() + 1)));
    constexpr int kMaxN = 1 << 17;
    auto measure = [&](int n) {
        MatSymbol u = U, d = U - Phi;
        u.setGridN(n);
        d.setGridN(n);
        ResidualReport r;
        r.unitarityResidual = unitarity_residual(u);
        r.analyticityResidual = analyticity_residual(d);
        r.fourierMatchResidual = fourier_match_residual(u, Phi);
        r.gridSize = n;
        return r;
    };
    ResidualReport rep = measure(N);
    while (N < kMaxN) {
        const ResidualReport next = measure(2 * N);
        const auto stable = [](double a, double b) {
            return std::abs(a - b) <= 0.1 * std::max({a, b, 1e-13});
        };
        if (stable(rep.unitarityResidual, next.unitarityResidual) &&
            stable(rep.analyticityResidual, next.analyticityResidual) &&
            stable(rep.fourierMatchResidual, next.fourierMatchResidual)) {
            return next;
        }
        rep = next;
        N *= 2;
    }
    return rep;
}

} // namespace superopt
