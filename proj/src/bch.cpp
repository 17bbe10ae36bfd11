#include "xxchain/bch.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "xxchain/metric.hpp"

namespace xxchain {

namespace {

Rational rat_factorial(int n) {
    Rational f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

Rational pow2(int n) {
    Rational p = 1;
    for (int k = 0; k < n; ++k) p *= 2;
    return p;
}

bool is_half_pi_theta(double theta) { return std::abs(std::cos(theta)) < 1e-14; }

}  // namespace

RationalSequence lambda_sequence(int n) {
    RationalSequence seq;
    seq.kind = CoeffKind::Lambda;
    for (int k = 1; k <= n; ++k) {
        Rational v = Rational(2 * k - 1) / rat_factorial(2 * k + 1);
        for (int j = 1; j < k; ++j) v -= seq.values[k - j - 1] / rat_factorial(2 * j + 1);
        seq.values.push_back(v);
    }
    return seq;
}

RationalSequence lambda_prime_sequence(int n) {
    auto lam = lambda_sequence(n > 1 ? n - 1 : 0);
    RationalSequence seq;
    seq.kind = CoeffKind::LambdaPrime;
    for (int k = 1; k <= n; ++k) {
        Rational v = Rational(2 * k - 1) / (pow2(2 * k - 1) * rat_factorial(2 * k));
        for (int j = 1; j < k; ++j)
            v -= lam.values[k - j - 1] / (pow2(2 * j) * rat_factorial(2 * j));
        seq.values.push_back(v);
    }
    return seq;
}

RatMat rat_mul(const RatMat& A, const RatMat& B) {
    const int n = A.n;
    RatMat C(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const Rational& a = A(i, k);
            if (a.is_zero()) continue;
            for (int j = 0; j < n; ++j) {
                const Rational& b = B(k, j);
                if (!b.is_zero()) C(i, j) += a * b;
            }
        }
    return C;
}

RatMat rat_comm(const RatMat& A, const RatMat& B) {
    RatMat C = rat_mul(A, B);
    RatMat D = rat_mul(B, A);
    for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] -= D.a[i];
    return C;
}

Mat rat_to_complex(const RatMat& A, cxd scale) {
    Mat M = Mat::Zero(A.n, A.n);
    for (int i = 0; i < A.n; ++i)
        for (int j = 0; j < A.n; ++j)
            if (!A(i, j).is_zero())
                M(i, j) = scale * static_cast<double>(A(i, j));
    return M;
}

namespace {

void rat_axpy(RatMat& A, const RatMat& B, const Rational& s) {
    for (std::size_t i = 0; i < A.a.size(); ++i) A.a[i] += s * B.a[i];
}

bool rat_is_zero(const RatMat& A) {
    return std::all_of(A.a.begin(), A.a.end(), [](const Rational& r) { return r.is_zero(); });
}

// ---- exact theta = pi/2 pipeline --------------------------------------------

// Solves [K0, R] = B for real antisymmetric rational R (K0 = free hopping).
// Variables are the strictly-upper entries; plain Gaussian elimination on the
// M^2 x M(M-1)/2 system, with an exact consistency check on the leftover rows.
struct SylvesterSolver {
    int M;
    std::vector<std::pair<int, int>> idx;  // variable -> (i,j), i<j
    std::vector<RatMat> cols;              // [K0, e_ij - e_ji]

    explicit SylvesterSolver(int M_) : M(M_) {
        RatMat K0(M);
        for (int x = 0; x + 1 < M; ++x) K0(x, x + 1) = K0(x + 1, x) = -1;
        for (int i = 0; i < M; ++i)
            for (int j = i + 1; j < M; ++j) {
                idx.emplace_back(i, j);
                RatMat E(M);
                E(i, j) = 1;
                E(j, i) = -1;
                cols.push_back(rat_comm(K0, E));
            }
    }

    RatMat solve(const RatMat& B) const {
        const int nv = int(idx.size());
        const int nrow = M * M;
        std::vector<std::vector<Rational>> A(nrow, std::vector<Rational>(nv));
        std::vector<Rational> b(nrow);
        for (int r = 0; r < M; ++r)
            for (int c = 0; c < M; ++c) {
                const int row = r * M + c;
                for (int v = 0; v < nv; ++v) A[row][v] = cols[v](r, c);
                b[row] = B(r, c);
            }
        int r0 = 0;
        std::vector<int> pivot_col(nv, -1);
        for (int col = 0; col < nv; ++col) {
            int p = -1;
            for (int r = r0; r < nrow; ++r)
                if (!A[r][col].is_zero()) {
                    p = r;
                    break;
                }
            if (p < 0) throw ValidationError("bch: singular Sylvester system");
            std::swap(A[r0], A[p]);
            std::swap(b[r0], b[p]);
            const Rational inv = Rational(1) / A[r0][col];
            for (int v = col; v < nv; ++v) A[r0][v] *= inv;
            b[r0] *= inv;
            for (int r = 0; r < nrow; ++r) {
                if (r == r0 || A[r][col].is_zero()) continue;
                const Rational f = A[r][col];
                for (int v = col; v < nv; ++v) A[r][v] -= f * A[r0][v];
                b[r] -= f * b[r0];
            }
            pivot_col[col] = r0;
            ++r0;
        }
        for (int r = r0; r < nrow; ++r)
            if (!b[r].is_zero())
                throw ValidationError("bch: inconsistent right-hand side "
                                      "(composition sum defect)");
        RatMat R(M);
        for (int v = 0; v < nv; ++v) {
            auto [i, j] = idx[v];
            R(i, j) = b[pivot_col[v]];
            R(j, i) = -b[pivot_col[v]];
        }
        return R;
    }
};

struct ExactSeries {
    std::map<int, RatMat> A;  // odd order -> R (A = i * bilinear(R))
    std::map<int, RatMat> h;  // even order -> K
};

// Nested-commutator DP: W(s,t) = sum over compositions of s into t odd parts
// p_1..p_t of [R_{p_1}, [..., [R_{p_t}, K1]...]].
class WTable {
  public:
    WTable(int M, const std::map<int, RatMat>* R) : M_(M), R_(R) {
        K1_ = RatMat(M);
        K1_(0, 0) = 1;
        K1_(M - 1, M - 1) = -1;
    }
    const RatMat& get(int s, int t) {
        auto key = std::make_pair(s, t);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        RatMat val(M_);
        if (t == 1) {
            auto rit = R_->find(s);
            if (s % 2 == 1 && rit != R_->end()) val = rat_comm(rit->second, K1_);
        } else {
            for (int p = 1; p <= s - (t - 1); p += 2) {
                auto rit = R_->find(p);
                if (rit == R_->end()) continue;
                const RatMat& inner = get(s - p, t - 1);
                if (rat_is_zero(inner)) continue;
                RatMat c = rat_comm(rit->second, inner);
                rat_axpy(val, c, 1);
            }
        }
        return cache_.emplace(key, std::move(val)).first->second;
    }

  private:
    int M_;
    const std::map<int, RatMat>* R_;
    RatMat K1_;
    std::map<std::pair<int, int>, RatMat> cache_;
};

ExactSeries solve_exact(int M, int max_order) {
    if (max_order > 11)
        throw ValidationError("bch: exact series supported up to order 11");
    ExactSeries out;
    SylvesterSolver sylv(M);
    auto lam = lambda_sequence(max_order / 2 + 1).values;
    auto lp = lambda_prime_sequence(max_order / 2 + 1).values;
    WTable W(M, &out.A);
    for (int n = 0; 2 * n + 1 <= max_order || 2 * n + 2 <= max_order; ++n) {
        const int order = 2 * n + 1;
        if (order <= max_order) {
            RatMat B(M);
            if (n == 0) {
                B(0, 0) = 2;
                B(M - 1, M - 1) = -2;
            } else {
                for (int k = 1; k <= n; ++k) {
                    const Rational w = (k % 2 ? -lam[k - 1] : lam[k - 1]);
                    rat_axpy(B, W.get(2 * n, 2 * k), w);
                }
            }
            out.A.emplace(order, sylv.solve(B));
        }
        const int m = n + 1;
        if (2 * m <= max_order && 2 * m - 1 <= max_order) {
            RatMat K(M);
            for (int k = 1; k <= m; ++k) {
                const Rational w = (k % 2 ? -lp[k - 1] : lp[k - 1]);
                rat_axpy(K, W.get(2 * m - 1, 2 * k - 1), w);
            }
            out.h.emplace(2 * m, std::move(K));
        }
    }
    return out;
}

// ---- general-theta floating pipeline ----------------------------------------

void enum_compositions(int total, int parts, std::vector<int>& cur,
                       std::vector<std::vector<int>>& out) {
    if (parts == 1) {
        if (total >= 1) {
            cur.push_back(total);
            out.push_back(cur);
            cur.pop_back();
        }
        return;
    }
    for (int p = 1; p <= total - (parts - 1); ++p) {
        cur.push_back(p);
        enum_compositions(total - p, parts - 1, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> compositions(int total, int parts) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    if (total >= parts && parts >= 1) enum_compositions(total, parts, cur, out);
    return out;
}

Mat comm(const Mat& A, const Mat& B) { return A * B - B * A; }

struct FloatSeries {
    std::vector<Mat> a;       // a[p-1] = one-particle matrix of A_p
    std::vector<Mat> C;       // C[p-1] = [K0, a_p]
    std::vector<Mat> h;       // h[p-1] = one-particle matrix of h_p
    std::vector<double> a_kernel, a_herm, h_herm;
};

FloatSeries solve_float(int M, int max_order, double theta) {
    if (max_order > 8)
        throw ValidationError("bch: general-theta series supported up to order 8");
    Mat K0 = Mat::Zero(M, M);
    for (int x = 0; x + 1 < M; ++x) K0(x, x + 1) = K0(x + 1, x) = -1.0;
    Mat K1 = Mat::Zero(M, M);
    K1(0, 0) = std::exp(cxd(0.0, theta));
    K1(M - 1, M - 1) = std::exp(cxd(0.0, -theta));
    Mat Kminus = 0.5 * (K1 - K1.adjoint());

    Eigen::SelfAdjointEigenSolver<Mat> es(K0);
    const Vec d = es.eigenvalues().cast<cxd>();
    for (int i = 0; i + 1 < M; ++i)
        if (std::abs(d(i + 1) - d(i)) < 1e-9)
            throw ValidationError("bch: degenerate free-chain spectrum");
    const Mat U = es.eigenvectors();

    FloatSeries out;
    auto fact = [](int k) {
        double f = 1.0;
        for (int j = 2; j <= k; ++j) f *= j;
        return f;
    };
    for (int N = 1; N <= max_order; ++N) {
        Mat rhs = Mat::Zero(M, M);
        if (N == 1) rhs = 2.0 * Kminus;
        // H0-branch: k >= 2 parts; innermost ad on H0 replaced by -[K0, a_p]
        for (int k = 2; k <= N; ++k)
            for (const auto& p : compositions(N, k)) {
                Mat T = -out.C[p[k - 1] - 1];
                for (int i = k - 2; i >= 0; --i) T = comm(out.a[p[i] - 1], T);
                rhs += T / fact(k);
            }
        // H1-branch
        for (int k = 1; k <= N - 1; ++k)
            for (const auto& p : compositions(N - 1, k)) {
                Mat T = K1;
                for (int i = k - 1; i >= 0; --i) T = comm(out.a[p[i] - 1], T);
                rhs += T / fact(k);
            }
        // Sylvester solve in the K0 eigenbasis; zero the kernel component
        Mat rt = U.adjoint() * rhs * U;
        const double scale = std::max(1.0, maxabs(rt));
        double kern = 0.0;
        Mat at = Mat::Zero(M, M);
        for (int i = 0; i < M; ++i)
            for (int j = 0; j < M; ++j) {
                if (i == j) {
                    kern = std::max(kern, std::abs(rt(i, j)));
                    continue;
                }
                at(i, j) = rt(i, j) / (d(i) - d(j));
            }
        if (kern > 1e-9 * scale)
            throw ValidationError("bch: nonzero kernel projection in Sylvester solve");
        Mat aN = U * at * U.adjoint();
        out.a_kernel.push_back(kern);
        out.a_herm.push_back(maxabs(aN - aN.adjoint()));
        out.a.push_back(aN);
        out.C.push_back(comm(K0, out.a.back()));

        // h_N = sum_k 1/(2^k k!) [ad-chains on H0 and H1] (+ K1 at k = 0, N = 1)
        Mat hN = Mat::Zero(M, M);
        if (N == 1) hN = K1;
        for (int k = 1; k <= N; ++k) {
            const double w = 1.0 / (std::pow(2.0, k) * fact(k));
            for (const auto& p : compositions(N, k)) {
                Mat T = -out.C[p[k - 1] - 1];
                for (int i = k - 2; i >= 0; --i) T = comm(out.a[p[i] - 1], T);
                hN += w * T;
            }
            for (const auto& p : compositions(N - 1, k)) {
                Mat T = K1;
                for (int i = k - 1; i >= 0; --i) T = comm(out.a[p[i] - 1], T);
                hN += w * T;
            }
        }
        out.h_herm.push_back(maxabs(hN - hN.adjoint()));
        if (out.h_herm.back() > 1e-9)
            throw ValidationError("bch: non-Hermitian h term");
        out.h.push_back(hN);
    }
    return out;
}

SeriesExpansion assemble(int M, int order, double theta, bool want_h) {
    SeriesExpansion se;
    se.M = M;
    se.order = order;
    se.theta = theta;
    if (M < 2) throw ValidationError("bch: need M >= 2");
    if (order < 1) throw ValidationError("bch: need order >= 1");
    se.exact = is_half_pi_theta(theta);
    if (se.exact) {
        auto ex = solve_exact(M, order);
        for (auto& [o, R] : ex.A) {
            if (o > order) continue;
            se.A_orders.push_back(o);
            se.A_exact.push_back(R);
        }
        if (want_h) {
            for (auto& [o, K] : ex.h) {
                if (o > order) continue;
                se.h_orders.push_back(o);
                se.h_exact.push_back(K);
            }
            // p_x^{(n)}(g^2): h = -sum p_x^{(n)} (c*_x c_{x+n} - c_x c*_{x+n})
            for (int n = 1; n < M; n += 2)
                for (int x = 1; x <= M - n; ++x) {
                    PTableEntry e;
                    e.x = x;
                    e.n = n;
                    e.c.push_back(n == 1 ? Rational(1) : Rational(0));
                    for (auto& K : se.h_exact) e.c.push_back(-K(x - 1, x + n - 1));
                    const bool nonzero = std::any_of(e.c.begin(), e.c.end(),
                                                     [](const Rational& r) { return !r.is_zero(); });
                    if (nonzero) se.p_table.push_back(std::move(e));
                }
        }
    } else {
        auto fl = solve_float(M, order, theta);
        for (int p = 1; p <= order; ++p) {
            OneParticleOp op;
            op.order = p;
            op.K = fl.a[p - 1];
            op.herm_residual = fl.a_herm[p - 1];
            op.kernel_residual = fl.a_kernel[p - 1];
            se.A_orders.push_back(p);
            se.A_float.push_back(std::move(op));
        }
        if (want_h)
            for (int p = 1; p <= order; ++p) {
                OneParticleOp op;
                op.order = p;
                op.K = fl.h[p - 1];
                // constant part of H carried through the similarity transform:
                // -(alpha+beta)/2 = -g cos(theta) enters at first order
                op.scalar = (p == 1) ? cxd(-std::cos(theta), 0.0) : cxd(0.0);
                op.herm_residual = fl.h_herm[p - 1];
                se.h_orders.push_back(p);
                se.h_float.push_back(std::move(op));
            }
    }
    return se;
}

}  // namespace

SeriesExpansion solve_A_series(int M, int order, double theta) {
    return assemble(M, order, theta, false);
}

SeriesExpansion solve_h_series(int M, int order, double theta) {
    return assemble(M, order, theta, true);
}

Mat one_particle_to_full(const Mat& K, cxd scalar) {
    const int M = int(K.rows());
    const std::size_t dim = std::size_t(1) << M;
    check_dense_dim(dim, "one_particle_to_full");
    auto jw = jordan_wigner_ops(M);
    Mat out = scalar * Mat::Identity(dim, dim);
    for (int x = 0; x < M; ++x)
        for (int y = 0; y < M; ++y)
            if (K(x, y) != 0.0) out += K(x, y) * (jw.cdag[x] * jw.c[y]);
    return out;
}

CrossValidation cross_validate_with_exact(int M, double g, double theta, int order) {
    CrossValidation cv;
    cv.M = M;
    cv.order = order;
    cv.theta = theta;
    auto se = solve_h_series(M, order, theta);
    const std::size_t dim = std::size_t(1) << M;
    check_dense_dim(dim, "cross_validate_with_exact");

    // promote all series terms once
    std::vector<Mat> A_full, h_full;
    std::vector<int> A_ord = se.A_orders, h_ord = se.h_orders;
    std::vector<cxd> h_scalar;
    if (se.exact) {
        for (auto& R : se.A_exact) A_full.push_back(one_particle_to_full(rat_to_complex(R, cxd(0, 1))));
        for (auto& K : se.h_exact) {
            h_full.push_back(one_particle_to_full(rat_to_complex(K, 1.0)));
            h_scalar.push_back(0.0);
        }
    } else {
        for (auto& op : se.A_float) A_full.push_back(one_particle_to_full(op.K));
        for (auto& op : se.h_float) {
            h_full.push_back(one_particle_to_full(op.K));
            h_scalar.push_back(op.scalar);
        }
    }
    Mat K0 = Mat::Zero(M, M);
    for (int x = 0; x + 1 < M; ++x) K0(x, x + 1) = K0(x + 1, x) = -1.0;
    Mat H0_full = one_particle_to_full(K0);

    double gv = g;
    for (int step = 0; step < 4; ++step, gv *= 0.5) {
        auto spec = HamiltonianSpec::polar(M, gv, theta);
        auto bundle = build_metric(spec, build_quasifermions(build_wavefunctions(spec)));

        Mat A = Mat::Zero(dim, dim);
        for (std::size_t t = 0; t < A_full.size(); ++t)
            A += std::pow(gv, A_ord[t]) * A_full[t];
        A = 0.5 * (A + A.adjoint());
        Eigen::SelfAdjointEigenSolver<Mat> es(A);
        Mat eta_series = es.eigenvectors() *
                         es.eigenvalues().array().exp().matrix().asDiagonal() *
                         es.eigenvectors().adjoint();
        cv.g.push_back(gv);
        cv.eta_residual.push_back(maxabs(eta_series - bundle.eta.mat));

        Mat hs = H0_full;
        for (std::size_t t = 0; t < h_full.size(); ++t) {
            const double gp = std::pow(gv, h_ord[t]);
            hs += gp * h_full[t];
            hs += gp * h_scalar[t] * Mat::Identity(dim, dim);
        }
        cv.h_residual.push_back(maxabs(hs - bundle.h.mat));
    }
    auto fit_slope = [&](const std::vector<double>& res) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = 0;
        for (std::size_t i = 0; i < cv.g.size(); ++i) {
            if (res[i] < 1e-14) continue;  // at machine precision already
            const double x = std::log(cv.g[i]), y = std::log(res[i]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++n;
        }
        if (n < 2) return double(cv.order + 1);  // residuals vanished: pass trivially
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    };
    cv.eta_slope = fit_slope(cv.eta_residual);
    cv.h_slope = fit_slope(cv.h_residual);
    return cv;
}

}  // namespace xxchain
