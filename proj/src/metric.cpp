#include "xxchain/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace xxchain {

namespace {

// Apply sum_x phi(x) c*_x to a full-space vector via bit operations.
// Occupied = spin up = bit 0; vacuum is all-down = index 2^M - 1.
Vec apply_creation(int M, const Vec& phi, const Vec& v) {
    const std::size_t dim = std::size_t(1) << M;
    Vec out = Vec::Zero(dim);
    for (std::size_t s = 0; s < dim; ++s) {
        const cxd a = v(s);
        if (a == 0.0) continue;
        int down_before = 0;  // string: product of sigma^z eigenvalues at y < x
        for (int x = 1; x <= M; ++x) {
            const std::size_t bit = (s >> (M - x)) & 1u;
            if (bit) {  // site empty: can create
                const std::size_t t = s ^ (std::size_t(1) << (M - x));
                out(t) += (down_before & 1 ? -1.0 : 1.0) * phi(x - 1) * a;
                ++down_before;
            }
        }
    }
    return out;
}

// Columns over all mode subsets: column(mask) = A*_{j1} ... A*_{jn} |0>
// where j1 < ... < jn are the set bits of mask and A*_j has single-particle
// coefficients coeff[j].  The lowest set bit is the outermost operator.
Mat subset_columns(int M, const std::vector<Vec>& coeff) {
    const std::size_t dim = std::size_t(1) << M;
    Mat cols(dim, dim);
    Vec vac = Vec::Zero(dim);
    vac(dim - 1) = 1.0;
    cols.col(0) = vac;
    for (std::size_t mask = 1; mask < dim; ++mask) {
        const int j = std::countr_zero(mask);
        cols.col(mask) = apply_creation(M, coeff[j], cols.col(mask ^ (std::size_t(1) << j)));
    }
    return cols;
}

}  // namespace

bool WaveFunctionSet::any_zero_norm() const {
    return std::any_of(zero_norm.begin(), zero_norm.end(), [](bool b) { return b; });
}

WaveFunctionSet build_wavefunctions(const HamiltonianSpec& spec, const BetheSpectrum& sp,
                                    bool force_off_circle) {
    spec.require_pt("build_wavefunctions");
    if (!sp.on_circle && !force_off_circle)
        throw ValidationError("build_wavefunctions: roots off the unit circle "
                              "(pass force_off_circle to proceed)");
    WaveFunctionSet w;
    w.M = spec.M;
    w.alpha = spec.alpha;
    w.spectrum = sp;
    // sort modes by quasi-momentum ascending (fixes subset ordering downstream)
    std::vector<std::size_t> order(sp.z.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return sp.k[a] < sp.k[b]; });
    BetheSpectrum sorted = sp;
    for (std::size_t i = 0; i < order.size(); ++i) {
        sorted.z[i] = sp.z[order[i]];
        sorted.k[i] = sp.k[order[i]];
        sorted.eps[i] = sp.eps[order[i]];
        sorted.residual[i] = sp.residual[order[i]];
    }
    w.spectrum = sorted;
    for (cxd z : w.spectrum.z) {
        const cxd A = (1.0 + spec.alpha * z) / (1.0 + spec.alpha / z);
        Vec psi(spec.M);
        cxd zz = z;
        for (int x = 1; x <= spec.M; ++x, zz *= z) psi(x - 1) = zz - A / zz;
        const cxd n2 = (psi.array() * psi.array()).sum();
        w.raw_norm2.push_back(n2);
        w.zero_norm.push_back(std::abs(n2) < 1e-12);
        if (!w.zero_norm.back()) psi /= std::sqrt(n2);  // principal branch
        w.psi.push_back(std::move(psi));
    }
    return w;
}

WaveFunctionSet build_wavefunctions(const HamiltonianSpec& spec) {
    return build_wavefunctions(spec, solve_roots(build_palindromic(spec)));
}

QuasiFermionBasis build_quasifermions(const WaveFunctionSet& wfs) {
    if (wfs.any_zero_norm())
        throw ExceptionalPointError("build_quasifermions: zero-norm wave function "
                                    "(Jordan block at this coupling)");
    const int M = wfs.M;
    const std::size_t dim = std::size_t(1) << M;
    check_dense_dim(dim, "build_quasifermions");
    auto jw = jordan_wigner_ops(M);
    QuasiFermionBasis b;
    b.M = M;
    b.wfs = wfs;
    for (int j = 0; j < M; ++j) {
        Mat cd = Mat::Zero(dim, dim), dh = Mat::Zero(dim, dim);
        for (int x = 0; x < M; ++x) {
            cd += wfs.psi[j](x) * jw.cdag[x];
            dh += wfs.psi[j](x) * jw.c[x];
        }
        b.chat_dag.push_back(std::move(cd));
        b.dhat.push_back(std::move(dh));
    }
    Mat I = Mat::Identity(dim, dim);
    double worst = 0.0;
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) {
            worst = std::max(worst, maxabs(b.chat_dag[i] * b.dhat[j] + b.dhat[j] * b.chat_dag[i] -
                                           (i == j ? I : Mat(Mat::Zero(dim, dim)))));
            worst = std::max(worst, maxabs(b.chat_dag[i] * b.chat_dag[j] + b.chat_dag[j] * b.chat_dag[i]));
            worst = std::max(worst, maxabs(b.dhat[i] * b.dhat[j] + b.dhat[j] * b.dhat[i]));
        }
    b.car_residual = worst;
    if (worst > 1e-8)
        throw ValidationError("build_quasifermions: CAR residual " + std::to_string(worst));
    return b;
}

MetricBundle build_metric(const HamiltonianSpec& spec, const QuasiFermionBasis& basis) {
    const int M = basis.M;
    const std::size_t dim = std::size_t(1) << M;
    const auto& wfs = basis.wfs;

    std::vector<Vec> dstar_coeff, cstar_coeff;
    for (int j = 0; j < M; ++j) {
        dstar_coeff.push_back(wfs.psi[j].conjugate());  // dhat*_j = sum conj(psi) c*_x
        cstar_coeff.push_back(wfs.psi[j]);              // chat*_j = sum psi c*_x
    }
    Mat Phi_d = subset_columns(M, dstar_coeff);
    Mat Phi_c = subset_columns(M, cstar_coeff);

    MetricBundle mb;
    Mat eta = Phi_d * Phi_d.adjoint();
    eta = 0.5 * (eta + eta.adjoint());  // Hermitian by construction; symmetrize roundoff
    Mat eta_inv = Phi_c * Phi_c.adjoint();
    eta_inv = 0.5 * (eta_inv + eta_inv.adjoint());
    mb.eta_inv_residual = maxabs(eta * eta_inv - Mat::Identity(dim, dim));

    Eigen::SelfAdjointEigenSolver<Mat> es(eta);
    mb.positivity_margin = es.eigenvalues().minCoeff();
    if (mb.positivity_margin <= 1e-12)
        throw ExceptionalPointError("build_metric: eta not positive (min eigenvalue " +
                                    std::to_string(mb.positivity_margin) +
                                    "), Jordan block suspected");
    Vec sq = es.eigenvalues().array().sqrt();
    Mat eta_sqrt = es.eigenvectors() * sq.asDiagonal() * es.eigenvectors().adjoint();
    Mat eta_inv_sqrt = es.eigenvectors() * sq.cwiseInverse().asDiagonal() * es.eigenvectors().adjoint();

    auto sym = symmetry_ops(M);
    auto H = build_hamiltonian(spec);
    mb.C = DenseOperator::full(sym.P * eta);
    mb.h = DenseOperator::full(eta_sqrt * H.mat * eta_inv_sqrt);
    mb.eta = DenseOperator::full(std::move(eta));
    mb.eta_inv = DenseOperator::full(std::move(eta_inv));
    mb.eta_sqrt = DenseOperator::full(std::move(eta_sqrt));
    mb.eta_inv_sqrt = DenseOperator::full(std::move(eta_inv_sqrt));
    return mb;
}

COperatorCheck c_operator_closed_form_check(const QuasiFermionBasis& basis,
                                            const MetricBundle& bundle, double tol) {
    const int M = basis.M;
    const std::size_t dim = std::size_t(1) << M;
    const auto& wfs = basis.wfs;
    COperatorCheck out;

    // per-mode parity sign psi(M+1-x) = W conj(psi(x))
    for (int j = 0; j < M; ++j) {
        const Vec& p = wfs.psi[j];
        const cxd W = p(M - 1) / std::conj(p(0));
        double worst = std::abs(W - std::round(W.real()));
        for (int x = 0; x < M; ++x)
            worst = std::max(worst, std::abs(p(M - 1 - x) - W * std::conj(p(x))));
        out.parity_residual = std::max(out.parity_residual, worst);
        out.parity_sign.push_back(std::round(W.real()));
    }

    std::vector<Vec> dstar_coeff, cstar_coeff;
    for (int j = 0; j < M; ++j) {
        dstar_coeff.push_back(wfs.psi[j].conjugate());
        cstar_coeff.push_back(wfs.psi[j]);
    }
    Mat Phi_d = subset_columns(M, dstar_coeff);  // columns dhat*_S |0>
    Mat Phi_c = subset_columns(M, cstar_coeff);  // columns chat*_S |0>

    Mat Cw = Mat::Zero(dim, dim), Cn = Mat::Zero(dim, dim);
    for (std::size_t mask = 0; mask < dim; ++mask) {
        const int n = std::popcount(mask);
        double w = ((n * (n + 1) / 2 + M * n) % 2) ? -1.0 : 1.0;
        cxd naive = (n % 2) ? cxd(-1.0) : cxd(1.0);
        for (int j = 0; j < M; ++j)
            if (mask & (std::size_t(1) << j)) {
                w *= out.parity_sign[j];
                naive *= std::exp(cxd(0.0, (M + 1) * wfs.spectrum.k[j]));
            }
        Cw.noalias() += w * Phi_c.col(mask) * Phi_d.col(mask).adjoint();
        Cn.noalias() += naive * Phi_c.col(mask) * Phi_d.col(mask).adjoint();
    }
    out.residual = maxabs(bundle.C.mat - Cw);
    out.residual_naive = maxabs(bundle.C.mat - Cn);
    if (out.residual > tol)
        throw ValidationError("c_operator_closed_form_check: residual " +
                              std::to_string(out.residual) + " exceeds tolerance");
    return out;
}

double diagonal_form_check(const HamiltonianSpec& spec, const QuasiFermionBasis& basis) {
    const std::size_t dim = std::size_t(1) << basis.M;
    Mat Hrec = -0.5 * (spec.alpha + spec.beta) * Mat::Identity(dim, dim);
    for (int j = 0; j < basis.M; ++j)
        Hrec -= basis.wfs.spectrum.eps[j] * (basis.chat_dag[j] * basis.dhat[j]);
    HamiltonianSpec hs = spec;
    hs.variant = Variant::H;
    auto H = build_hamiltonian(hs);
    return maxabs(H.mat - Hrec);
}

}  // namespace xxchain
