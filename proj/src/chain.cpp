#include "xxchain/chain.hpp"

#include <bit>
#include <cstdlib>

namespace xxchain {

std::size_t max_dense_dim() {
    if (const char* env = std::getenv("XXCHAIN_MAX_DIM")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return std::size_t(1) << 16;  // sector builds up to M = 16
}

void check_dense_dim(std::size_t dim, const std::string& what) {
    if (dim > max_dense_dim())
        throw ResourceError(what + ": dense dimension " + std::to_string(dim) +
                            " exceeds cap " + std::to_string(max_dense_dim()) +
                            " (set XXCHAIN_MAX_DIM to override)");
}

HamiltonianSpec HamiltonianSpec::polar(int M, double g, double theta, Variant v) {
    if (g < 0) throw ValidationError("polar form requires g >= 0");
    HamiltonianSpec s;
    s.M = M;
    s.alpha = g * std::exp(cxd(0.0, theta));
    s.beta = std::conj(s.alpha);
    s.variant = v;
    s.validate();
    return s;
}

bool HamiltonianSpec::pt_symmetric(double tol) const {
    return std::abs(alpha - std::conj(beta)) <= tol * (1.0 + std::abs(alpha));
}

void HamiltonianSpec::require_pt(const std::string& who) const {
    if (!pt_symmetric())
        throw ValidationError(who + " requires alpha = conj(beta); got alpha=(" +
                              std::to_string(alpha.real()) + "," + std::to_string(alpha.imag()) +
                              ") beta=(" + std::to_string(beta.real()) + "," +
                              std::to_string(beta.imag()) + ")");
}

void HamiltonianSpec::validate() const {
    if (M < 2) throw ValidationError("chain length must satisfy M >= 2");
    if (variant == Variant::Periodic && M % 2 != 0)
        throw ValidationError("periodic variant needs even M (paper condition: M/2 even for symmetry claims)");
    if ((variant == Variant::Hg || variant == Variant::HgTruncated || variant == Variant::Periodic)) {
        // these variants are parametrised by g alone (theta = pi/2 family)
        if (std::abs(alpha.real()) > 1e-12 || std::abs(alpha + beta) > 1e-12)
            throw ValidationError("Hg/HgTruncated/Periodic require alpha = ig = -beta (theta = pi/2)");
    }
}

DenseOperator DenseOperator::full(Mat m) {
    DenseOperator op;
    op.dim = std::size_t(m.rows());
    op.mat = std::move(m);
    op.basis = BasisTag{BasisKind::FullSpin, 0.0, ""};
    return op;
}

DenseOperator DenseOperator::sector(Mat m, double sz) {
    DenseOperator op;
    op.dim = std::size_t(m.rows());
    op.mat = std::move(m);
    op.basis = BasisTag{BasisKind::Sector, sz, ""};
    return op;
}

int ndown(std::size_t s, int M) {
    return std::popcount(s & ((std::size_t(1) << M) - 1));
}

std::vector<std::size_t> sector_states(int M, int nd) {
    std::vector<std::size_t> out;
    const std::size_t dim = std::size_t(1) << M;
    for (std::size_t s = 0; s < dim; ++s)
        if (ndown(s, M) == nd) out.push_back(s);
    return out;
}

namespace {

// Apply c_x or c*_x to basis state s (site x = 1..M).  Occupied = spin up =
// bit 0.  Returns false if the state is annihilated, else updates s and sign.
// The string prefactor is the product of sigma^z eigenvalues at y < x, i.e.
// (-1)^{# down spins before x}.
bool apply_fermion(int M, int x, bool create, std::size_t& s, int& sign) {
    const int bit = spin_bit(s, M, x);
    const int occ = 1 - bit;
    if (create ? occ == 1 : occ == 0) return false;
    int down_before = 0;
    for (int y = 1; y < x; ++y) down_before += spin_bit(s, M, y);
    if (down_before & 1) sign = -sign;
    s ^= std::size_t(1) << (M - x);
    return true;
}

// Accumulate coeff * op_a(x) op_b(y) into H, where each op is c or c*.
void add_quadratic(Mat& H, int M, int x, bool create_x, int y, bool create_y, cxd coeff) {
    const std::size_t dim = std::size_t(1) << M;
    for (std::size_t s = 0; s < dim; ++s) {
        std::size_t t = s;
        int sign = 1;
        if (!apply_fermion(M, y, create_y, t, sign)) continue;
        if (!apply_fermion(M, x, create_x, t, sign)) continue;
        H(t, s) += double(sign) * coeff;
    }
}

Mat tl_sum(int M, double g, int x_first, int x_last, bool wrap) {
    const std::size_t dim = std::size_t(1) << M;
    check_dense_dim(dim, "build_hamiltonian");
    Mat H = Mat::Zero(dim, dim);
    const cxd ig(0.0, g);
    for (int x = x_first; x <= x_last; ++x) {
        const int xp = (x == M && wrap) ? 1 : x + 1;
        // e_x = c_x c*_xp - c*_x c_xp + i g (n_x - n_xp)
        add_quadratic(H, M, x, false, xp, true, 1.0);
        add_quadratic(H, M, x, true, xp, false, -1.0);
        add_quadratic(H, M, x, true, x, false, ig);
        add_quadratic(H, M, xp, true, xp, false, -ig);
    }
    return H;
}

}  // namespace

Mat tl_generator(const JordanWignerOps& jw, int x, double g) {
    const cxd ig(0.0, g);
    return jw.c[x - 1] * jw.cdag[x] - jw.cdag[x - 1] * jw.c[x] +
           ig * (jw.n(x) - jw.n(x + 1));
}

DenseOperator build_hamiltonian(const HamiltonianSpec& spec) {
    spec.validate();
    const int M = spec.M;
    const std::size_t dim = std::size_t(1) << M;
    check_dense_dim(dim, "build_hamiltonian");

    if (spec.variant == Variant::Hg)
        return DenseOperator::full(tl_sum(M, spec.alpha.imag(), 1, M - 1, false));
    if (spec.variant == Variant::HgTruncated)
        return DenseOperator::full(tl_sum(M, spec.alpha.imag(), 1, M - 2, false));
    if (spec.variant == Variant::Periodic)
        return DenseOperator::full(tl_sum(M, spec.alpha.imag(), 1, M, true));

    // H = -sum_x (c*_x c_{x+1} - c_x c*_{x+1}) + alpha n_1 + beta n_M - (alpha+beta)/2
    Mat H = Mat::Zero(dim, dim);
    for (int x = 1; x < M; ++x) {
        add_quadratic(H, M, x, true, x + 1, false, -1.0);
        add_quadratic(H, M, x, false, x + 1, true, 1.0);
    }
    add_quadratic(H, M, 1, true, 1, false, spec.alpha);
    add_quadratic(H, M, M, true, M, false, spec.beta);
    const cxd shift = (spec.alpha + spec.beta) / 2.0;
    H -= shift * Mat::Identity(dim, dim);

    if (spec.variant == Variant::Hprime) {
        // H' = H - (alpha+beta)/2 sum_x sigma^z_x,  sigma^z = 2n - 1
        for (int x = 1; x <= M; ++x)
            add_quadratic(H, M, x, true, x, false, -(spec.alpha + spec.beta));
        H += double(M) * shift * Mat::Identity(dim, dim);
    }
    return DenseOperator::full(std::move(H));
}

JordanWignerOps jordan_wigner_ops(int M) {
    const std::size_t dim = std::size_t(1) << M;
    check_dense_dim(dim, "jordan_wigner_ops");
    JordanWignerOps jw;
    jw.M = M;
    jw.c.reserve(M);
    jw.cdag.reserve(M);
    for (int x = 1; x <= M; ++x) {
        Mat cm = Mat::Zero(dim, dim);
        for (std::size_t s = 0; s < dim; ++s) {
            std::size_t t = s;
            int sign = 1;
            if (apply_fermion(M, x, false, t, sign)) cm(t, s) = double(sign);
        }
        jw.cdag.push_back(cm.transpose());  // real matrix: adjoint = transpose
        jw.c.push_back(std::move(cm));
    }
    return jw;
}

SymmetryOps symmetry_ops(int M) {
    const std::size_t dim = std::size_t(1) << M;
    check_dense_dim(dim, "symmetry_ops");
    SymmetryOps ops;
    ops.P = Mat::Zero(dim, dim);
    ops.R = Mat::Zero(dim, dim);
    ops.Sz = Mat::Zero(dim, dim);
    const std::size_t mask = dim - 1;
    for (std::size_t s = 0; s < dim; ++s) {
        std::size_t rev = 0;
        for (int m = 0; m < M; ++m)
            if ((s >> m) & 1u) rev |= std::size_t(1) << (M - 1 - m);
        ops.P(rev, s) = 1.0;
        ops.R(s ^ mask, s) = 1.0;
        ops.Sz(s, s) = 0.5 * (M - 2 * ndown(s, M));
    }
    return ops;
}

StateVector time_reverse(const StateVector& v) {
    StateVector out = v;
    out.amp = v.amp.conjugate();
    return out;
}

Mat time_reverse_conj(const Mat& op) { return op.conjugate(); }

std::vector<DenseOperator> sector_decompose(const DenseOperator& op, int M) {
    const std::size_t dim = std::size_t(1) << M;
    if (op.dim != dim) throw ValidationError("sector_decompose: operator is not full-space");
    SymmetryOps sym = symmetry_ops(M);
    const double comm = maxabs(op.mat * sym.Sz - sym.Sz * op.mat);
    const double scale = std::max(1.0, maxabs(op.mat));
    if (comm > 1e-10 * scale)
        throw ValidationError("sector_decompose: [op, S^z] norm " + std::to_string(comm) +
                              " exceeds tolerance");
    std::vector<DenseOperator> blocks;
    for (int nd = 0; nd <= M; ++nd) {
        auto states = sector_states(M, nd);
        Mat blk(states.size(), states.size());
        for (std::size_t i = 0; i < states.size(); ++i)
            for (std::size_t j = 0; j < states.size(); ++j)
                blk(i, j) = op.mat(states[i], states[j]);
        blocks.push_back(DenseOperator::sector(std::move(blk), 0.5 * (M - 2 * nd)));
    }
    return blocks;
}

Mat sector_assemble(const std::vector<DenseOperator>& blocks, int M) {
    const std::size_t dim = std::size_t(1) << M;
    Mat full = Mat::Zero(dim, dim);
    for (const auto& blk : blocks) {
        const int nd = int(std::lround(0.5 * M - blk.basis.sz));
        auto states = sector_states(M, nd);
        if (states.size() != blk.dim)
            throw ValidationError("sector_assemble: block dimension mismatch");
        for (std::size_t i = 0; i < states.size(); ++i)
            for (std::size_t j = 0; j < states.size(); ++j)
                full(states[i], states[j]) = blk.mat(i, j);
    }
    return full;
}

}  // namespace xxchain
