#include "superopt/thematic.hpp"

#include <algorithm>
#include <cmath>

#include "fft_util.hpp"

namespace superopt {

namespace {

RatColumn conjReflectColumn(const RatColumn& c) {
    RatColumn r;
    r.reserve(c.size());
    for (const auto& f : c) r.push_back(f.conjReflect());
    return r;
}

MatSymbol outerProduct(const RationalScalar& scale, const RatColumn& a, const RatColumn& b) {
    const int n = static_cast<int>(a.size());
    MatSymbol m(n);
    for (int i = 0; i < n; ++i) {
        if (a[static_cast<size_t>(i)].isZero()) continue;
        for (int j = 0; j < n; ++j) {
            if (b[static_cast<size_t>(j)].isZero()) continue;
            m.set(i, j, scale * a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)]);
        }
    }
    return m;
}

MatSymbol fromColumns(const std::vector<RatColumn>& cols) {
    const int n = static_cast<int>(cols.size());
    MatSymbol m(n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            if (!cols[static_cast<size_t>(j)][static_cast<size_t>(i)].isZero())
                m.set(i, j, cols[static_cast<size_t>(j)][static_cast<size_t>(i)]);
    return m;
}

/// Greedy multiset intersection of root lists under a matching tolerance.
std::vector<cplx> commonRoots(std::vector<std::vector<cplx>> lists, double tol) {
    if (lists.empty()) return {};
    std::vector<cplx> common = lists[0];
    for (size_t l = 1; l < lists.size() && !common.empty(); ++l) {
        std::vector<cplx> next;
        auto& other = lists[l];
        for (const auto& r : common) {
            auto best = other.end();
            double bestDist = tol * std::max(1.0, std::abs(r));
            for (auto it = other.begin(); it != other.end(); ++it) {
                const double d = std::abs(*it - r);
                if (d <= bestDist) { bestDist = d; best = it; }
            }
            if (best != other.end()) {
                next.push_back(0.5 * (r + *best));
                other.erase(best);
            }
        }
        common = std::move(next);
    }
    return common;
}

/// Analytic solution of x1 th1 + x2 th2 = 1 for a co-outer pair: the common
/// outer polynomial factor is split off by root matching, the cofactors come
/// from a least-squares coefficient solve.
std::pair<RationalScalar, RationalScalar> bezoutPair(const RationalScalar& th1,
                                                     const RationalScalar& th2) {
    const LaurentScalar q = th1.den() * th2.den();
    const LaurentScalar t1 = th1.num() * th2.den();
    const LaurentScalar t2 = th2.num() * th1.den();
    if (!t1.isPolynomial() || !t2.isPolynomial())
        throw ReductionFailed("bezout: columns are not analytic");

    std::vector<cplx> shared;
    if (t1.supportWidth() > 0 && t2.supportWidth() > 0)
        shared = commonRoots({roots(t1), roots(t2)}, 1e-8);
    LaurentScalar g(cplx(1.0, 0.0));
    for (const auto& r : shared) {
        if (std::abs(r) <= 1.0 + 1e-8)
            throw ReductionFailed("bezout: common inner factor, column not co-outer");
        g = g * (LaurentScalar::monomial(1) - LaurentScalar(r));
    }

    const int h1 = t1.degHi(), h2 = t2.degHi(), dg = g.supportWidth();
    for (int slack = 0; slack <= 10; slack += 2) {
        const int d1 = std::max(h2 - dg, 0) + slack;
        const int d2 = std::max(h1 - dg, 0) + slack;
        const int rows = std::max({h1 + d1, h2 + d2, dg}) + 1;
        Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(rows, d1 + d2 + 2);
        for (int c = 0; c <= d1; ++c)
            for (int j = 0; j <= h1; ++j) A(c + j, c) += t1.coeff(j);
        for (int c = 0; c <= d2; ++c)
            for (int j = 0; j <= h2; ++j) A(c + j, d1 + 1 + c) += t2.coeff(j);
        Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(rows);
        for (int j = 0; j <= dg && j < rows; ++j) rhs(j) = g.coeff(j);
        const Eigen::VectorXcd y = A.completeOrthogonalDecomposition().solve(rhs);
        if ((A * y - rhs).norm() <= 1e-10 * std::max(1.0, rhs.norm())) {
            std::vector<cplx> y1(y.data(), y.data() + d1 + 1);
            std::vector<cplx> y2(y.data() + d1 + 1, y.data() + d1 + d2 + 2);
            const RationalScalar x1(LaurentScalar::fromCoeffs(0, y1) * q, g);
            const RationalScalar x2(LaurentScalar::fromCoeffs(0, y2) * q, g);
            return {x1, x2};
        }
    }
    throw ReductionFailed("bezout: no analytic cofactors found");
}

} // namespace

// ---------------------------------------------------------------------------

VectorInnerOuter vector_inner_outer(const RatColumn& v) {
    const int n = static_cast<int>(v.size());
    bool any = false;
    for (const auto& f : v) any = any || !f.isZero();
    if (!any) throw DegenerateInput("vector_inner_outer of the zero column");
    for (const auto& f : v)
        if (!f.isZero() && (f.shift() < 0 || !f.denDiskZeroFree()))
            throw DegenerateInput("vector_inner_outer requires an analytic column");

    // common denominator: root-multiset union (lcm)
    std::vector<cplx> qRoots;
    for (const auto& f : v) {
        if (f.isZero() || f.den().supportWidth() == 0) continue;
        std::vector<cplx> pool = qRoots;
        for (const auto& r : roots(f.den())) {
            auto best = pool.end();
            double bestDist = 1e-8 * std::max(1.0, std::abs(r));
            for (auto it = pool.begin(); it != pool.end(); ++it) {
                const double d = std::abs(*it - r);
                if (d <= bestDist) { bestDist = d; best = it; }
            }
            if (best != pool.end())
                pool.erase(best); // already present in the union
            else
                qRoots.push_back(r);
        }
    }
    LaurentScalar Q(cplx(1.0, 0.0));
    for (const auto& r : qRoots)
        Q = Q * (LaurentScalar(cplx(1.0, 0.0)) - LaurentScalar::monomial(1, cplx(1.0, 0.0) / r));
    const RationalScalar Qr{Q};

    std::vector<LaurentScalar> nums(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        if (v[static_cast<size_t>(i)].isZero()) continue;
        const RationalScalar ni = v[static_cast<size_t>(i)] * Qr;
        if (ni.den().supportWidth() != 0)
            throw ReductionFailed("vector_inner_outer: common denominator construction failed");
        nums[static_cast<size_t>(i)] = ni.num().scaled(cplx(1.0, 0.0) / ni.den().coeff(0));
    }

    LaurentScalar rho;
    for (const auto& ni : nums)
        if (!ni.isZero()) rho = rho + ni.conjReflect() * ni;
    const LaurentScalar oNum = spectral_factor(rho);

    VectorInnerOuter out;
    out.o = RationalScalar(oNum, Q);

    int mCommon = 1 << 20;
    for (const auto& ni : nums)
        if (!ni.isZero()) mCommon = std::min(mCommon, ni.degLo());
    std::vector<std::vector<cplx>> insideLists;
    for (const auto& ni : nums) {
        if (ni.isZero()) continue;
        std::vector<cplx> inside;
        if (ni.supportWidth() > 0)
            for (const auto& r : roots(ni.shifted(-ni.degLo())))
                if (std::abs(r) < 1.0 - 1e-8) inside.push_back(r);
        insideLists.push_back(inside);
    }
    out.b = RationalScalar::z(mCommon);
    for (const auto& r : commonRoots(insideLists, 1e-8)) out.b = out.b * blaschke(r);

    const RationalScalar bo = out.b * out.o;
    out.vhat.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        if (!v[static_cast<size_t>(i)].isZero())
            out.vhat[static_cast<size_t>(i)] = (v[static_cast<size_t>(i)] / bo).simplified();

    // contract: pointwise unit norm and factorization residual
    const int N = 512;
    double vmax = 0.0;
    std::vector<std::vector<cplx>> vg, hg;
    for (int i = 0; i < n; ++i) {
        vg.push_back(v[static_cast<size_t>(i)].isZero() ? std::vector<cplx>(N, cplx(0, 0))
                                                        : v[static_cast<size_t>(i)].evalGrid(N));
        hg.push_back(out.vhat[static_cast<size_t>(i)].isZero()
                         ? std::vector<cplx>(N, cplx(0, 0))
                         : out.vhat[static_cast<size_t>(i)].evalGrid(N));
        for (const auto& x : vg.back()) vmax = std::max(vmax, std::abs(x));
    }
    const auto bog = bo.evalGrid(N);
    for (int k = 0; k < N; ++k) {
        double unit = 0.0;
        double resid = 0.0;
        for (int i = 0; i < n; ++i) {
            unit += std::norm(hg[static_cast<size_t>(i)][static_cast<size_t>(k)]);
            resid = std::max(resid,
                             std::abs(bog[static_cast<size_t>(k)] *
                                          hg[static_cast<size_t>(i)][static_cast<size_t>(k)] -
                                      vg[static_cast<size_t>(i)][static_cast<size_t>(k)]));
        }
        if (std::abs(std::sqrt(unit) - 1.0) > 1e-7 || resid > 1e-8 * std::max(1.0, vmax))
            throw ReductionFailed("vector_inner_outer: contract violated");
    }
    return out;
}

// ---------------------------------------------------------------------------

ThematicMatrix thematic_complete(const RatColumn& vhat) {
    const int n = static_cast<int>(vhat.size());
    if (n == 0) throw DegenerateInput("thematic_complete of an empty column");

    {
        const int N = 256;
        std::vector<std::vector<cplx>> g;
        for (const auto& f : vhat)
            g.push_back(f.isZero() ? std::vector<cplx>(N, cplx(0, 0)) : f.evalGrid(N));
        for (int k = 0; k < N; ++k) {
            double s = 0.0;
            for (int i = 0; i < n; ++i)
                s += std::norm(g[static_cast<size_t>(i)][static_cast<size_t>(k)]);
            if (std::abs(std::sqrt(s) - 1.0) > 1e-6)
                throw DegenerateInput("thematic_complete: column is not inner");
        }
    }

    ThematicMatrix tm;
    tm.v = vhat;
    if (n == 1) {
        tm.V = MatSymbol::scalar(vhat[0]);
        return tm;
    }

    std::vector<int> support;
    bool allConstant = true;
    for (int i = 0; i < n; ++i) {
        if (!vhat[static_cast<size_t>(i)].isZero()) support.push_back(i);
        allConstant = allConstant && (vhat[static_cast<size_t>(i)].isZero() ||
                                      vhat[static_cast<size_t>(i)].isConstant());
    }

    auto coordColumn = [n](int i) {
        RatColumn c(static_cast<size_t>(n));
        c[static_cast<size_t>(i)] = RationalScalar(1.0);
        return c;
    };

    if (support.size() == 1) {
        const int i0 = support[0];
        std::vector<RatColumn> cols;
        cols.push_back(vhat);
        for (int j = 0; j < n; ++j)
            if (j != i0) {
                cols.push_back(coordColumn(j));
                tm.theta.push_back(coordColumn(j));
                tm.thetaLeftInv.push_back(coordColumn(j));
            }
        tm.V = fromColumns(cols);
        return tm;
    }

    if (allConstant) {
        Eigen::VectorXcd c(n);
        for (int i = 0; i < n; ++i)
            c(i) = vhat[static_cast<size_t>(i)].isZero()
                       ? cplx(0, 0)
                       : vhat[static_cast<size_t>(i)].eval(cplx(1.0, 0.0));
        Eigen::MatrixXcd A(n, 1);
        A.col(0) = c;
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(A);
        Eigen::MatrixXcd Q = qr.householderQ();
        const cplx r = (Q.adjoint() * c)(0);
        Q.col(0) *= r; // align: now Q.col(0) = c and |r| = ||c|| = 1
        tm.V = MatSymbol::constant(Q);
        for (int j = 1; j < n; ++j) {
            RatColumn th(static_cast<size_t>(n)), li(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i) {
                if (std::abs(Q(i, j)) > 1e-15) {
                    th[static_cast<size_t>(i)] = RationalScalar(std::conj(Q(i, j)));
                    li[static_cast<size_t>(i)] = RationalScalar(Q(i, j));
                }
            }
            tm.theta.push_back(th);
            tm.thetaLeftInv.push_back(li);
        }
        return tm;
    }

    if (support.size() == 2) {
        const int i1 = support[0], i2 = support[1];
        const RationalScalar a = vhat[static_cast<size_t>(i1)];
        const RationalScalar b = vhat[static_cast<size_t>(i2)];
        RatColumn theta(static_cast<size_t>(n));
        theta[static_cast<size_t>(i1)] = -b;
        theta[static_cast<size_t>(i2)] = a;
        const auto [x1, x2] = bezoutPair(-b, a);
        RatColumn leftInv(static_cast<size_t>(n));
        leftInv[static_cast<size_t>(i1)] = x1;
        leftInv[static_cast<size_t>(i2)] = x2;

        std::vector<RatColumn> cols;
        cols.push_back(vhat);
        cols.push_back(conjReflectColumn(theta));
        tm.theta.push_back(theta);
        tm.thetaLeftInv.push_back(leftInv);
        for (int j = 0; j < n; ++j)
            if (j != i1 && j != i2) {
                cols.push_back(coordColumn(j));
                tm.theta.push_back(coordColumn(j));
                tm.thetaLeftInv.push_back(coordColumn(j));
            }
        tm.V = fromColumns(cols);
        return tm;
    }

    throw UnsupportedCompletion(
        "thematic_complete: non-constant column supported on 3+ coordinates");
}

// ---------------------------------------------------------------------------

MatSymbol step_reconstruct(const ThematicStep& step) {
    const RationalScalar su = step.u.scaled(cplx(step.s, 0.0));
    const MatSymbol D = step.residual.empty() ? MatSymbol::scalar(su)
                                              : MatSymbol::blockDiag(su, step.residual);
    return step.W.adjoint() * D * step.V.adjoint();
}

namespace {

ThematicStep peelImpl(const MatSymbol& Phi, bool assumeBadlyApproximable) {
    const int n = Phi.size();
    ThematicStep step;
    step.s = hankel_norm(Phi);
    if (step.s <= 1e-12) throw ZeroOperator("thematic step on an analytic symbol");

    if (n == 1) {
        const auto aak = best_approx_scalar(Phi.at(0, 0));
        step.s = aak.sigma;
        step.u = aak.e.scaled(cplx(1.0 / aak.sigma, 0.0));
        step.k = aak.indexOfError;
        step.V = MatSymbol::identity(1);
        step.W = MatSymbol::identity(1);
        step.residual = MatSymbol();
    } else {
        const auto pair = schmidt(Phi);
        const auto vio = vector_inner_outer(pair.v);
        RatColumn wana;
        for (const auto& wi : pair.w) wana.push_back(wi.conjReflect().shifted(-1));
        const auto wio = vector_inner_outer(wana);

        step.u = (RationalScalar::z(-1) * (wio.b * wio.o).conjReflect() / (vio.b * vio.o))
                     .scaled(cplx(1.0 / step.s, 0.0))
                     .simplified()
                     .recompressed();
        step.k = -winding(step.u);

        const auto Vt = thematic_complete(vio.vhat);
        const auto Wt = thematic_complete(wio.vhat);
        step.V = Vt.V;
        step.W = Wt.V.transpose();

        const MatSymbol R =
            Phi - outerProduct(step.u.scaled(cplx(step.s, 0.0)), conjReflectColumn(wio.vhat),
                               conjReflectColumn(vio.vhat));
        MatSymbol Y0(n - 1);
        for (int j = 0; j < n - 1; ++j)
            for (int kk = 0; kk < n - 1; ++kk) {
                RationalScalar acc;
                const auto& xw = Wt.thetaLeftInv[static_cast<size_t>(j)];
                const auto& xv = Vt.thetaLeftInv[static_cast<size_t>(kk)];
                for (int p = 0; p < n; ++p) {
                    if (xw[static_cast<size_t>(p)].isZero()) continue;
                    for (int q = 0; q < n; ++q) {
                        if (xv[static_cast<size_t>(q)].isZero() || R.at(p, q).isZero()) continue;
                        acc = acc +
                              xw[static_cast<size_t>(p)] * R.at(p, q) * xv[static_cast<size_t>(q)];
                    }
                }
                if (!acc.isZero()) Y0.set(j, kk, acc.simplified().recompressed());
            }

        if (assumeBadlyApproximable) {
            step.residual = Y0;
        } else {
            // Y0 determines the residual only modulo bounded analytic
            // functions; switch to the minimal-norm representative.
            const double sy = hankel_norm(Y0);
            if (sy <= 1e-12) {
                step.residual = MatSymbol::zero(n - 1);
            } else if (n - 1 == 1) {
                const auto aak = best_approx_scalar(Y0.at(0, 0));
                step.residual = MatSymbol::scalar(aak.e);
            } else {
                step.residual = step_reconstruct(peelImpl(Y0, false));
            }
        }
    }

    const auto cert = badly_approximable_check(step.u);
    if (!cert.verdict || step.k < 1)
        throw ReductionFailed("thematic step: diagonal function is not badly approximable");
    if (!step.residual.empty() && sup_norm(step.residual) > step.s * (1.0 + 1e-8) + 1e-8)
        throw ReductionFailed("thematic step: residual exceeds the step value");

    const MatSymbol rec = step_reconstruct(step);
    if (assumeBadlyApproximable) {
        if (sup_norm(Phi - rec) > 1e-7 * std::max(1.0, step.s))
            throw ReductionFailed("thematic step: reconstruction mismatch");
    } else {
        MatSymbol diff = Phi - rec;
        diff.setGridN(std::max(kDefaultGridN, 8 * (diff.degreeEstimate() + 1)));
        if (analyticity_residual(diff) > 1e-7 * std::max(1.0, step.s))
            throw ReductionFailed("thematic step: reconstruction not congruent to the symbol");
    }
    return step;
}

} // namespace

ThematicStep thematic_reduce(const MatSymbol& Phi) {
    // For a badly approximable input the bordered form reproduces Phi
    // exactly and the residual extraction is direct. Otherwise the input
    // still carries an analytic part (the callers' worked symbols do) and
    // the representation holds modulo bounded analytic functions.
    const double s = hankel_norm(Phi);
    const bool badly = sup_norm(Phi) <= s * (1.0 + 1e-7) + 1e-9;
    return peelImpl(Phi, badly);
}

ThematicStep thematic_peel(const MatSymbol& Phi) { return peelImpl(Phi, false); }

// ---------------------------------------------------------------------------

FactorizationReport superoptimal(const MatSymbol& Phi) {
    FactorizationReport rep;
    const int n = Phi.size();
    const double scale = std::max(1.0, sup_norm(Phi));

    MatSymbol cur = Phi;
    while (!cur.empty()) {
        if (hankel_norm(cur) <= 1e-11 * scale) break;
        const ThematicStep step = thematic_peel(cur);
        rep.t.push_back(step.s);
        rep.k.push_back(step.k);
        cur = step.residual;
        rep.chain.push_back(step);
    }
    const int analyticTail = cur.size();
    while (static_cast<int>(rep.t.size()) < n) rep.t.push_back(0.0);

    // rebuild the very badly approximable part bottom-up
    MatSymbol X = MatSymbol::zero(analyticTail);
    for (auto it = rep.chain.rbegin(); it != rep.chain.rend(); ++it) {
        ThematicStep tmp = *it;
        tmp.residual = X;
        X = step_reconstruct(tmp);
    }
    rep.F = Phi - X;
    if (!rep.chain.empty()) {
        MatSymbol F = rep.F;
        F.setGridN(std::max(kDefaultGridN, 8 * (F.degreeEstimate() + 1)));
        if (analyticity_residual(F) > 1e-7 * scale)
            throw ReductionFailed("superoptimal: assembled approximant is not analytic");
    }

    rep.monotone = true;
    for (size_t i = 0; i + 1 < rep.k.size(); ++i) {
        const bool sameGroup = std::abs(rep.t[i] - rep.t[i + 1]) <= rep.tieTol;
        if (sameGroup && rep.k[i] < rep.k[i + 1]) rep.monotone = false;
    }
    for (double t : rep.t)
        if (std::abs(t - 1.0) <= rep.tieTol) ++rep.unitValueCount;
    return rep;
}

} // namespace superopt
