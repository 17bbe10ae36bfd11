#include "xxchain/tl.hpp"

#include <algorithm>
#include <numeric>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace xxchain {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int u) {
        while (parent[u] != u) {
            parent[u] = parent[parent[u]];
            u = parent[u];
        }
        return u;
    }
    // returns true when u and v were already connected (a loop closes)
    bool unite(int u, int v) {
        int ru = find(u), rv = find(v);
        if (ru == rv) return true;
        parent[ru] = rv;
        return false;
    }
};

// circular boundary position used by the nesting test: top left-to-right,
// then bottom right-to-left
int boundary_pos(int p, int M) { return p < M ? p : 2 * M - 1 - (p - M); }

long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::vector<int> row_word(int m, int row, int len) {
    // row i contributes e_{m + len - i} e_{m + len - i - 1} ... e_{m + 1 - i}
    std::vector<int> w;
    for (int j = m + len - row; j >= m + 1 - row; --j) w.push_back(j);
    return w;
}

std::vector<std::vector<int>> young_subdiagrams(int rows, int width) {
    // all weakly decreasing sequences of length `rows` with entries 0..width
    std::vector<std::vector<int>> out;
    std::vector<int> cur(rows, 0);
    auto rec = [&](auto&& self, int i, int maxv) -> void {
        if (i == rows) {
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= maxv; ++v) {
            cur[i] = v;
            self(self, i + 1, v);
        }
    };
    rec(rec, 0, width);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        int sa = std::accumulate(a.begin(), a.end(), 0);
        int sb = std::accumulate(b.begin(), b.end(), 0);
        if (sa != sb) return sa < sb;
        return a < b;
    });
    return out;
}

}  // namespace

PlanarDiagram PlanarDiagram::identity(int M) {
    PlanarDiagram d;
    d.strands = M;
    d.pairing.resize(2 * M);
    for (int i = 0; i < M; ++i) {
        d.pairing[i] = M + i;
        d.pairing[M + i] = i;
    }
    return d;
}

PlanarDiagram PlanarDiagram::generator(int M, int x) {
    if (x < 1 || x >= M) throw ValidationError("generator index out of range");
    PlanarDiagram d = identity(M);
    const int a = x - 1, b = x;
    d.pairing[a] = b;
    d.pairing[b] = a;
    d.pairing[M + a] = M + b;
    d.pairing[M + b] = M + a;
    return d;
}

bool PlanarDiagram::noncrossing() const {
    const int M = strands;
    // nesting test on the circular boundary order
    std::vector<int> partner(2 * M);
    for (int p = 0; p < 2 * M; ++p) partner[boundary_pos(p, M)] = boundary_pos(pairing[p], M);
    std::vector<int> stack;
    for (int pos = 0; pos < 2 * M; ++pos) {
        if (partner[pos] > pos) {
            stack.push_back(pos);
        } else {
            if (stack.empty() || stack.back() != partner[pos]) return false;
            stack.pop_back();
        }
    }
    return stack.empty();
}

bool PlanarDiagram::same_matching(const PlanarDiagram& other) const {
    return strands == other.strands && pairing == other.pairing;
}

PlanarDiagram compose(const PlanarDiagram& d1, const PlanarDiagram& d2) {
    if (d1.strands != d2.strands) throw ValidationError("strand count mismatch");
    const int M = d1.strands;
    // nodes: 0..M-1 d1 top; M..2M-1 shared middle; 2M..3M-1 d2 bottom.
    // d1 lives on 0..2M-1 directly; d2's point p maps to M+p.
    UnionFind uf(3 * M);
    long loops = d1.loops + d2.loops;
    for (int i = 0; i < 2 * M; ++i)
        if (i < d1.pairing[i] && uf.unite(i, d1.pairing[i])) ++loops;
    for (int i = 0; i < 2 * M; ++i)
        if (i < d2.pairing[i] && uf.unite(M + i, M + d2.pairing[i])) ++loops;

    PlanarDiagram out;
    out.strands = M;
    out.loops = loops;
    out.pairing.assign(2 * M, -1);
    std::vector<int> rep_end(3 * M, -1);
    auto label = [M](int node) { return node < M ? node : node - M; };  // 2M+i -> M+i
    for (int e = 0; e < 3 * M; ++e) {
        if (e >= M && e < 2 * M) continue;  // interior nodes are not endpoints
        const int r = uf.find(e);
        if (rep_end[r] < 0) {
            rep_end[r] = e;
        } else {
            out.pairing[label(rep_end[r])] = label(e);
            out.pairing[label(e)] = label(rep_end[r]);
        }
    }
    return out;
}

PlanarDiagram word_diagram(const std::vector<int>& word, int M) {
    PlanarDiagram d = PlanarDiagram::identity(M);
    for (int x : word) d = compose(d, PlanarDiagram::generator(M, x));
    return d;
}

long trace_closure(const PlanarDiagram& d) {
    const int M = d.strands;
    UnionFind uf(2 * M);
    long loops = d.loops;
    for (int i = 0; i < 2 * M; ++i)
        if (i < d.pairing[i] && uf.unite(i, d.pairing[i])) ++loops;
    for (int i = 0; i < M; ++i)
        if (uf.unite(i, M + i)) ++loops;
    return loops;
}

std::string diagram_art(const PlanarDiagram& d) {
    const int M = d.strands;
    std::string top, mid, bot;
    for (int i = 0; i < M; ++i) {
        const int p = d.pairing[i];
        top += (p < M) ? (p == i + 1 ? "*-" : (p == i - 1 ? "* " : "*~")) : "* ";
        mid += (p < M) ? "  " : "| ";
    }
    for (int i = 0; i < M; ++i) {
        const int p = d.pairing[M + i];
        bot += (p >= M) ? (p == M + i + 1 ? "*-" : (p == M + i - 1 ? "* " : "*~")) : "* ";
    }
    return top + "\n" + mid + "\n" + bot + "  (loops " + std::to_string(d.loops) + ")";
}

std::vector<CanonicalBasisElement> generate_basis(int M, int m) {
    if (M < 2 || M % 2 == 0) throw ValidationError("basis generation expects odd M");
    if (m < 0 || m > M) throw ValidationError("sector out of range");
    check_dense_dim(std::size_t(1) << M, "canonical basis");

    std::vector<std::vector<int>> diagrams;
    if (M == 5 && m == 2) {
        // conventional printed ordering of the ten subdiagrams
        diagrams = {{0, 0}, {1, 0}, {1, 1}, {2, 0}, {3, 0},
                    {2, 1}, {2, 2}, {3, 1}, {3, 2}, {3, 3}};
    } else {
        diagrams = young_subdiagrams(m, M - m);
    }
    if (long(diagrams.size()) != binomial(M, m))
        throw ValidationError("subdiagram enumeration does not match the sector dimension");

    auto jw = jordan_wigner_ops(M);
    std::vector<Mat> e;
    for (int x = 1; x < M; ++x) e.push_back(tl_generator(jw, x, 1.0));

    const std::size_t dim = std::size_t(1) << M;
    // Omega_m: down spins at sites 1..m
    std::size_t omega = 0;
    for (int site = 1; site <= m; ++site) omega |= std::size_t(1) << (M - site);

    std::vector<CanonicalBasisElement> out;
    for (auto& lam : diagrams) {
        CanonicalBasisElement el;
        el.young = lam;
        for (int i = m; i >= 1; --i)
            if (lam[i - 1] > 0) {
                auto seg = row_word(m, i, lam[i - 1]);
                el.word.insert(el.word.end(), seg.begin(), seg.end());
            }
        el.diagram = word_diagram(el.word, M);
        Vec t = Vec::Zero(dim);
        t(omega) = 1.0;
        for (auto it = el.word.rbegin(); it != el.word.rend(); ++it) t = e[*it - 1] * t;
        el.t = t;
        out.push_back(std::move(el));
    }
    return out;
}

GramMatrix gram_matrix(int M, int m, const MetricBundle& bundle) {
    auto basis = generate_basis(M, m);
    const int K = int(basis.size());
    const std::size_t dim = std::size_t(1) << M;
    if (bundle.eta.dim != dim) throw ValidationError("metric dimension mismatch");

    Mat T(dim, K);
    for (int j = 0; j < K; ++j) T.col(j) = basis[j].t;

    GramMatrix gm;
    gm.M = M;
    gm.m = m;
    Mat Gc = T.adjoint() * bundle.eta.mat * T;
    gm.g_imag = Gc.imag().cwiseAbs().maxCoeff();
    gm.G = Gc.real();
    gm.g_asym = (gm.G - gm.G.transpose()).cwiseAbs().maxCoeff();
    gm.det_err = std::abs(gm.G.determinant() - 1.0);
    Eigen::SelfAdjointEigenSolver<RMat> es(0.5 * (gm.G + gm.G.transpose()));
    gm.positivity = es.eigenvalues().minCoeff();

    auto H = build_hamiltonian(HamiltonianSpec::polar(M, 1.0, PI / 2, Variant::Hg));
    Mat HT = H.mat * T;
    Mat X = T.colPivHouseholderQr().solve(HT);
    gm.hcal_int_err = 0.0;
    gm.Hcal.resize(K, K);
    for (int i = 0; i < K; ++i)
        for (int j = 0; j < K; ++j) {
            const double re = X(i, j).real();
            const long r = std::lround(re);
            gm.hcal_int_err = std::max(gm.hcal_int_err,
                                       std::abs(re - double(r)) + std::abs(X(i, j).imag()));
            gm.Hcal(i, j) = int(r);
        }
    if (gm.hcal_int_err > 1e-9)
        throw ValidationError("non-integer structure constants: basis word order suspect");
    gm.hcal_residual = maxabs(Mat(T * gm.Hcal.cast<double>().cast<cxd>() - HT));
    gm.gh_residual =
        (gm.G * gm.Hcal.cast<double>() - gm.Hcal.cast<double>().transpose() * gm.G)
            .cwiseAbs()
            .maxCoeff();

    // PT matrix: P conj(t_i) expanded over the basis
    auto sym = symmetry_ops(M);
    Mat PT = sym.P * T.conjugate();
    gm.Mcal = T.colPivHouseholderQr().solve(PT);
    gm.ptg_residual = maxabs(Mat(gm.Mcal.adjoint() * Gc * gm.Mcal - Gc));
    return gm;
}

ConjectureReport check_conjecture(int M, int m) {
    auto spec = HamiltonianSpec::polar(M, 1.0, PI / 2);
    auto bundle = build_metric(spec, build_quasifermions(build_wavefunctions(spec)));
    auto basis = generate_basis(M, m);
    auto gm = gram_matrix(M, m, bundle);

    ConjectureReport rep;
    rep.M = M;
    rep.m = m;
    const int K = int(basis.size());
    for (int i = 0; i < K; ++i)
        for (int j = 0; j < K; ++j) {
            ++rep.pairs;
            const PlanarDiagram prod = compose(basis[i].diagram, basis[j].diagram);
            const long loops = trace_closure(prod);
            const bool zero = std::abs(gm.G(i, j)) < 1e-9;
            if (loops % 2 == 0) {
                if (!zero) rep.violations.emplace_back(i, j);
            } else if (zero) {
                ++rep.vacuous_count;
            }
        }
    return rep;
}

}  // namespace xxchain
