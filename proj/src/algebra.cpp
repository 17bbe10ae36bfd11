#include "xxchain/algebra.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace xxchain {

namespace {

Mat comm(const Mat& a, const Mat& b) { return a * b - b * a; }
Mat acomm(const Mat& a, const Mat& b) { return a * b + b * a; }

Mat sigma_z_product(const JordanWignerOps& jw) {
    const std::size_t dim = std::size_t(1) << jw.M;
    Mat P = Mat::Identity(dim, dim);
    // sigma^z_x = 2 n_x - 1
    for (int x = 1; x <= jw.M; ++x) P = P * (2.0 * jw.n(x) - Mat::Identity(dim, dim));
    return P;
}

// U = sum_{x odd} (-1)^{(x-1)/2} c_x,  V = sum_{x even} (-1)^{x/2} c_x
std::pair<Mat, Mat> uv_operators(const JordanWignerOps& jw) {
    const std::size_t dim = std::size_t(1) << jw.M;
    Mat U = Mat::Zero(dim, dim), V = Mat::Zero(dim, dim);
    for (int x = 1; x <= jw.M; x += 2) U += double(((x - 1) / 2) % 2 ? -1 : 1) * jw.c[x - 1];
    for (int x = 2; x <= jw.M; x += 2) V += double((x / 2) % 2 ? -1 : 1) * jw.c[x - 1];
    return {U, V};
}

void add_rel(AlgebraRep& rep, const std::string& name, double r) {
    rep.relations.push_back({name, r});
}

cxd gl11_z_scalar(int M, double g) {
    return (M % 2) ? 0.5 * (M + 1) - 0.5 * g * g * (M - 1) : 0.5 * M * (1.0 - g * g);
}

AlgebraRep build_gl11(int M, double g) {
    auto jw = jordan_wigner_ops(M);
    const std::size_t dim = std::size_t(1) << M;
    Mat I = Mat::Identity(dim, dim);
    auto [U, V] = uv_operators(jw);
    Mat Ud = U.adjoint(), Vd = V.adjoint();

    AlgebraRep rep;
    rep.tag = AlgebraTag::Gl11;
    rep.M = M;
    rep.g = g;
    rep.theta = PI / 2;
    rep.even_sites = (M % 2 == 0);
    rep.z_scalar = gl11_z_scalar(M, g);

    Mat Xp = Ud - cxd(0, g) * Vd;
    Mat Xm = U - cxd(0, g) * V;
    rep.generators = {{"U", U}, {"V", V}, {"Xp", Xp}, {"Xm", Xm}};

    const double cU = (M % 2) ? 0.5 * (M + 1) : 0.5 * M;
    const double cV = (M % 2) ? 0.5 * (M - 1) : 0.5 * M;
    add_rel(rep, "{U,U*} = (M+1)/2 resp. M/2", maxabs(acomm(U, Ud) - cU * I));
    add_rel(rep, "{V,V*} = (M-1)/2 resp. M/2", maxabs(acomm(V, Vd) - cV * I));
    add_rel(rep, "{U,V} = 0", maxabs(acomm(U, V)));
    add_rel(rep, "{U,V*} = 0", maxabs(acomm(U, Vd)));
    add_rel(rep, "U^2 = 0", maxabs(Mat(U * U)));
    add_rel(rep, "V^2 = 0", maxabs(Mat(V * V)));
    add_rel(rep, "(X+)^2 = 0", maxabs(Mat(Xp * Xp)));
    add_rel(rep, "(X-)^2 = 0", maxabs(Mat(Xm * Xm)));
    add_rel(rep, "{X+,X-} = Z", maxabs(acomm(Xp, Xm) - rep.z_scalar * I));
    return rep;
}

AlgebraRep build_uqsl2(int M, double g, bool pt_variant) {
    if (pt_variant && M % 2) throw ValidationError("pt_variant requires even M");
    const double domain = (M % 2) ? std::sqrt(double(M + 1) / (M - 1)) : 1.0;
    if (g > domain + 1e-12)
        throw ValidationError("UqSl2 representation defined for g below the threshold");
    const cxd Z = gl11_z_scalar(M, g);
    if (std::abs(Z) < 1e-12)
        throw ExceptionalPointError("vanishing normalizer Z: exceptional coupling");

    auto jw = jordan_wigner_ops(M);
    const std::size_t dim = std::size_t(1) << M;
    Mat I = Mat::Identity(dim, dim);
    auto [U, V] = uv_operators(jw);
    Mat Ud = U.adjoint(), Vd = V.adjoint();
    Mat Pz = sigma_z_product(jw);
    const cxd i(0, 1);
    const double N = std::sqrt(std::abs(Z));

    AlgebraRep rep;
    rep.tag = AlgebraTag::UqSl2;
    rep.M = M;
    rep.g = g;
    rep.theta = PI / 2;
    rep.even_sites = (M % 2 == 0);
    rep.pt_variant = pt_variant;
    rep.q = pt_variant ? cxd(0, -1) : cxd(0, 1);
    rep.z_scalar = Z;

    Mat K, E, F;
    if (M % 2) {
        K = std::pow(i, M) * Pz;
        E = (Ud - i * g * Vd) / N;
        F = -(g * V + i * U) * K / N;
    } else if (!pt_variant) {
        K = std::pow(i, M - 1) * Pz;
        E = (Ud - i * g * Vd) / N;
        F = -(g * V + i * U) * K / N;
    } else {
        K = std::pow(i, -(M - 1)) * Pz;
        E = (Vd + i * g * Ud) / N;
        F = -(g * U - i * V) * K / N;
    }
    Mat Kinv = K.adjoint();  // K is unitary here
    rep.generators = {{"E", E}, {"F", F}, {"K", K}};

    const cxd q = rep.q;
    add_rel(rep, "K K^-1 = 1", maxabs(Mat(K * Kinv) - I));
    add_rel(rep, "K E K^-1 = q^2 E", maxabs(Mat(K * E * Kinv) - q * q * E));
    add_rel(rep, "K F K^-1 = q^-2 F", maxabs(Mat(K * F * Kinv) - F / (q * q)));
    add_rel(rep, "[E,F] = (K - K^-1)/(q - q^-1)",
            maxabs(comm(E, F) - (K - Kinv) / (q - 1.0 / q)));
    add_rel(rep, "E^2 = 0", maxabs(Mat(E * E)));
    add_rel(rep, "F^2 = 0", maxabs(Mat(F * F)));
    add_rel(rep, "K^2 = -1", maxabs(Mat(K * K) + I));
    return rep;
}

AlgebraRep build_tl(int M, double g) {
    auto jw = jordan_wigner_ops(M);
    AlgebraRep rep;
    rep.tag = AlgebraTag::TemperleyLieb;
    rep.M = M;
    rep.g = g;
    rep.theta = PI / 2;
    rep.even_sites = (M % 2 == 0);
    rep.q = cxd(0, 1);
    std::vector<Mat> e;
    for (int x = 1; x < M; ++x) {
        e.push_back(tl_generator(jw, x, g));
        rep.generators.emplace_back("e" + std::to_string(x), e.back());
    }
    for (int x = 0; x + 2 < M - 1; ++x)
        for (int y = x + 2; y < M - 1; ++y)
            add_rel(rep, "[e" + std::to_string(x + 1) + ",e" + std::to_string(y + 1) + "] = 0",
                    maxabs(comm(e[x], e[y])));
    return rep;
}

std::pair<std::vector<Mat>, std::vector<Mat>> hecke_generators(const JordanWignerOps& jw,
                                                               cxd alpha) {
    const int M = jw.M;
    const std::size_t dim = std::size_t(1) << M;
    Mat I = Mat::Identity(dim, dim);
    std::vector<Mat> b, binv;
    for (int x = 1; x < M; ++x) {
        Mat hop = jw.c[x - 1] * jw.cdag[x] - jw.cdag[x - 1] * jw.c[x];
        b.push_back(hop - jw.n(x) / alpha - alpha * (jw.n(x + 1) - I));
        binv.push_back(hop - (jw.n(x) - I) / alpha - alpha * jw.n(x + 1));
    }
    return {b, binv};
}

}  // namespace

std::string algebra_name(AlgebraTag tag) {
    switch (tag) {
        case AlgebraTag::UqSl2: return "UqSl2";
        case AlgebraTag::Gl11: return "Gl11";
        case AlgebraTag::UqGl11: return "UqGl11";
        case AlgebraTag::TemperleyLieb: return "TemperleyLieb";
        case AlgebraTag::Hecke: return "Hecke";
    }
    return "?";
}

const Mat& AlgebraRep::gen(const std::string& name) const {
    for (auto& [n, m] : generators)
        if (n == name) return m;
    throw ValidationError("no generator named " + name);
}

double AlgebraRep::worst_relation() const {
    double w = 0.0;
    for (auto& r : relations) w = std::max(w, r.residual);
    return w;
}

AlgebraRep build_rep(AlgebraTag tag, int M, double g, double theta, bool pt_variant) {
    if (M < 2) throw ValidationError("need at least two sites");
    check_dense_dim(std::size_t(1) << M, "algebra representation");
    switch (tag) {
        case AlgebraTag::Gl11: return build_gl11(M, g);
        case AlgebraTag::UqSl2: return build_uqsl2(M, g, pt_variant);
        case AlgebraTag::TemperleyLieb: return build_tl(M, g);
        case AlgebraTag::Hecke: return hecke_rep(M, theta);
        case AlgebraTag::UqGl11: return uqgl11_rep(M, theta, g);
    }
    throw ValidationError("unknown algebra tag");
}

AlgebraRep hecke_rep(int M, double theta) {
    if (M < 2) throw ValidationError("need at least two sites");
    check_dense_dim(std::size_t(1) << M, "Hecke representation");
    const cxd alpha = -std::exp(cxd(0, -theta));
    const cxd q = -1.0 / alpha;
    if (std::abs(q) < 1e-14) throw ValidationError("q undefined");
    auto jw = jordan_wigner_ops(M);
    const std::size_t dim = std::size_t(1) << M;
    Mat I = Mat::Identity(dim, dim);
    auto [b, binv] = hecke_generators(jw, alpha);

    AlgebraRep rep;
    rep.tag = AlgebraTag::Hecke;
    rep.M = M;
    rep.g = 1.0;
    rep.theta = theta;
    rep.q = q;
    rep.even_sites = (M % 2 == 0);
    for (int x = 0; x < M - 1; ++x) {
        rep.generators.emplace_back("b" + std::to_string(x + 1), b[x]);
        rep.generators.emplace_back("b" + std::to_string(x + 1) + "inv", binv[x]);
    }
    for (int x = 0; x < M - 1; ++x) {
        auto sx = std::to_string(x + 1);
        add_rel(rep, "b" + sx + " b" + sx + "inv = 1", maxabs(Mat(b[x] * binv[x]) - I));
        add_rel(rep, "b" + sx + "^2 - (q-q^-1) b" + sx + " = 1",
                maxabs(Mat(b[x] * b[x]) - (q - 1.0 / q) * b[x] - I));
    }
    for (int x = 0; x + 1 < M - 1; ++x)
        add_rel(rep, "braid " + std::to_string(x + 1),
                maxabs(Mat(b[x] * b[x + 1] * b[x]) - Mat(b[x + 1] * b[x] * b[x + 1])));
    for (int x = 0; x + 2 < M - 1; ++x)
        for (int y = x + 2; y < M - 1; ++y)
            add_rel(rep, "[b" + std::to_string(x + 1) + ",b" + std::to_string(y + 1) + "] = 0",
                    maxabs(comm(b[x], b[y])));
    return rep;
}

AlgebraRep uqgl11_rep(int M, double theta, double g) {
    if (M < 2) throw ValidationError("need at least two sites");
    if (g <= 0.0 || g > 1.0) throw ValidationError("coupling must lie in (0, 1]");
    check_dense_dim(std::size_t(1) << M, "UqGl11 representation");
    const double sMt = std::sin(M * theta);
    if (std::abs(sMt) < 1e-12)
        throw ExceptionalPointError("sin(M theta) = 0: singular wave-function norm");

    auto jw = jordan_wigner_ops(M);
    const std::size_t dim = std::size_t(1) << M;
    Mat I = Mat::Identity(dim, dim);
    const cxd alpha = -g * std::exp(cxd(0, theta));
    const cxd q = -1.0 / alpha;

    AlgebraRep rep;
    rep.tag = AlgebraTag::UqGl11;
    rep.M = M;
    rep.g = g;
    rep.theta = theta;
    rep.q = q;
    rep.even_sites = (M % 2 == 0);

    Mat Xp = Mat::Zero(dim, dim), Xm = Mat::Zero(dim, dim);
    if (g == 1.0) {
        rep.z_scalar = std::pow(q, M);
        rep.phi = Vec(M);
        const cxd nrm = std::sqrt(cxd(std::sin(theta) / sMt));
        for (int x = 1; x <= M; ++x) {
            const cxd w = std::pow(q, x - 0.5 * (M + 1));
            rep.phi(x - 1) = nrm * w;
            Xp += w * jw.cdag[x - 1];
            Xm += w * jw.c[x - 1];
        }
        // Y = q^{S^z}
        Mat Y = Mat::Zero(dim, dim);
        const cxd lq = std::log(q);
        for (std::size_t s = 0; s < dim; ++s)
            Y(s, s) = std::exp(lq * (0.5 * M - ndown(s, M)));
        Mat Yinv = Y.inverse();
        rep.generators = {{"Xp", Xp}, {"Xm", Xm}, {"Y", Y}};
        add_rel(rep, "Y X+ Y^-1 = q X+", maxabs(Mat(Y * Xp * Yinv) - q * Xp));
        add_rel(rep, "Y X- Y^-1 = q^-1 X-", maxabs(Mat(Y * Xm * Yinv) - Xm / q));
        add_rel(rep, "{X+,X-} = (Z - Z^-1)/(q - q^-1)",
                maxabs(acomm(Xp, Xm) -
                       (rep.z_scalar - 1.0 / rep.z_scalar) / (q - 1.0 / q) * I));
        add_rel(rep, "(X+)^2 = 0", maxabs(Mat(Xp * Xp)));
        add_rel(rep, "(X-)^2 = 0", maxabs(Mat(Xm * Xm)));

        HamiltonianSpec spec;
        spec.M = M;
        spec.alpha = alpha;
        spec.beta = std::conj(alpha);
        auto H = build_hamiltonian(spec);
        Mat chat = Xp * std::sqrt(cxd(std::sin(theta) / sMt));
        add_rel(rep, "[H, chat*_theta] = -2 cos(theta) chat*_theta",
                maxabs(comm(H.mat, chat) + 2.0 * std::cos(theta) * chat));
    } else {
        // deformed generators: quasi-fermion mode closest to energy -2cos(theta)
        auto spec = HamiltonianSpec::polar(M, g, theta + PI);  // alpha = -g e^{i theta}
        auto basis = build_quasifermions(build_wavefunctions(spec));
        int j0 = 0;
        double best = 1e300;
        for (int j = 0; j < M; ++j) {
            const double d = std::abs(basis.wfs.spectrum.eps[j] - 2.0 * std::cos(theta));
            if (d < best) { best = d; j0 = j; }
        }
        Xp = basis.chat_dag[j0];
        Xm = basis.dhat[j0];
        rep.phi = basis.wfs.psi[j0];
        rep.z_scalar = 1.0;  // CAR-normalized pair
        rep.generators = {{"Xp", Xp}, {"Xm", Xm}};
        add_rel(rep, "{X+,X-} = 1", maxabs(acomm(Xp, Xm) - I));
        add_rel(rep, "(X+)^2 = 0", maxabs(Mat(Xp * Xp)));
        add_rel(rep, "(X-)^2 = 0", maxabs(Mat(Xm * Xm)));
        auto H = build_hamiltonian(spec);
        const cxd eps = basis.wfs.spectrum.eps[j0];
        add_rel(rep, "[H, X+] = -eps X+", maxabs(comm(H.mat, Xp) + eps * Xp));
    }
    return rep;
}

std::vector<RelationResidual> check_symmetry(const AlgebraRep& rep, const Mat& op) {
    std::vector<RelationResidual> out;
    for (auto& [name, m] : rep.generators)
        out.push_back({name, maxabs(comm(op, m))});
    return out;
}

TLAudit tl_relation_audit(int M, double g) {
    if (M < 3) throw ValidationError("need at least three sites");
    check_dense_dim(std::size_t(1) << M, "TL relation audit");
    auto jw = jordan_wigner_ops(M);
    const std::size_t dim = std::size_t(1) << M;
    Mat I = Mat::Identity(dim, dim);
    std::vector<Mat> e, n;
    for (int x = 1; x < M; ++x) e.push_back(tl_generator(jw, x, g));
    for (int x = 1; x <= M; ++x) n.push_back(jw.n(x));

    TLAudit audit;
    audit.M = M;
    audit.g = g;
    auto add = [&](const std::string& name, double r) {
        audit.relations.push_back({name, r});
        audit.worst = std::max(audit.worst, r);
    };
    const double gg = g * g;
    for (int x = 0; x < M - 1; ++x) {
        Mat rhs = (1.0 - gg) * ((I - n[x]) * n[x + 1] + n[x] * (I - n[x + 1]));
        add("e" + std::to_string(x + 1) + "^2 modified", maxabs(Mat(e[x] * e[x]) - rhs));
    }
    const cxd ig(0, g);
    for (int x = 0; x + 1 < M - 1; ++x) {
        Mat d1 = n[x] - n[x + 1], d2 = n[x + 1] - n[x + 2];
        Mat rhs = gg * e[x] + ig * (1.0 - gg) * d1 * (I + d2 * d1);
        add("e" + std::to_string(x + 1) + " e" + std::to_string(x + 2) + " e" +
                std::to_string(x + 1),
            maxabs(Mat(e[x] * e[x + 1] * e[x]) - rhs));
        Mat rhs2 = gg * e[x + 1] + ig * (1.0 - gg) * d2 * (I + d1 * d2);
        add("e" + std::to_string(x + 2) + " e" + std::to_string(x + 1) + " e" +
                std::to_string(x + 2),
            maxabs(Mat(e[x + 1] * e[x] * e[x + 1]) - rhs2));
    }
    return audit;
}

int JordanCluster::largest_block() const {
    int b = 0;
    for (auto& [size, count] : blocks)
        if (count > 0) b = std::max(b, size);
    return b;
}

JordanReport jordan_analyze(const DenseOperator& op, double cluster_tol, double rank_tol) {
    const std::size_t dim = op.dim;
    if (dim == 0 || op.mat.rows() != Eigen::Index(dim) || op.mat.cols() != Eigen::Index(dim))
        throw ValidationError("jordan_analyze needs a square matrix");
    JordanReport rep;
    rep.dim = dim;

    Eigen::ComplexEigenSolver<Mat> es(op.mat, false);
    std::vector<cxd> ev(es.eigenvalues().data(), es.eigenvalues().data() + dim);
    std::sort(ev.begin(), ev.end(),
              [](cxd a, cxd b) { return a.real() != b.real() ? a.real() < b.real()
                                                             : a.imag() < b.imag(); });
    // greedy clustering of the sorted list by chained distance
    std::vector<std::vector<cxd>> clusters;
    for (cxd v : ev) {
        bool placed = false;
        for (auto& c : clusters)
            if (std::abs(v - c.back()) < cluster_tol || std::abs(v - c.front()) < cluster_tol) {
                c.push_back(v);
                placed = true;
                break;
            }
        if (!placed) clusters.push_back({v});
    }

    int total_alg = 0;
    for (auto& c : clusters) {
        cxd mean = 0.0;
        for (cxd v : c) mean += v;
        mean /= double(c.size());

        JordanCluster jc;
        jc.eigenvalue = mean;
        Mat A = op.mat - mean * Mat::Identity(dim, dim);
        std::vector<int> ranks{int(dim)};
        Mat P = Mat::Identity(dim, dim);
        for (std::size_t k = 1; k <= dim; ++k) {
            P = P * A;
            Eigen::JacobiSVD<Mat> svd(P);
            const auto& s = svd.singularValues();
            int r = 0;
            const double thresh = rank_tol * std::max(s(0), 1.0);
            for (Eigen::Index i = 0; i < s.size(); ++i)
                if (s(i) > thresh) ++r;
            ranks.push_back(r);
            if (ranks[k] == ranks[k - 1]) break;
        }
        ranks.push_back(ranks.back());
        jc.geometric = ranks[0] - ranks[1];
        jc.algebraic = int(dim) - ranks[ranks.size() - 2];
        for (std::size_t k = 1; k + 1 < ranks.size(); ++k) {
            const int nb = ranks[k - 1] - 2 * ranks[k] + ranks[k + 1];
            if (nb > 0) jc.blocks[int(k)] = nb;
        }
        if (jc.largest_block() > 1) rep.diagonalizable = false;
        total_alg += jc.algebraic;
        rep.clusters.push_back(std::move(jc));
    }
    // algebraic multiplicities from rank sequences refer to the whole matrix;
    // cross-talk between nearby clusters shows up as a total != dim
    if (total_alg != int(dim)) rep.ill_conditioned = true;
    for (std::size_t i = 0; i < rep.clusters.size(); ++i)
        for (std::size_t j = i + 1; j < rep.clusters.size(); ++j)
            if (std::abs(rep.clusters[i].eigenvalue - rep.clusters[j].eigenvalue) <
                10.0 * cluster_tol)
                rep.ill_conditioned = true;
    return rep;
}

std::vector<RelationResidual> metric_star_structure_check(const AlgebraRep& rep,
                                                          const MetricBundle& bundle) {
    std::vector<RelationResidual> out;
    const Mat& eta = bundle.eta.mat;
    auto star_pair = [&](const std::string& name, const Mat& plus, const Mat& minus) {
        out.push_back({"eta " + name + "+ = (" + name + "-)* eta",
                       maxabs(Mat(eta * plus) - Mat(minus.adjoint() * eta))});
        out.push_back({"eta " + name + "- = (" + name + "+)* eta",
                       maxabs(Mat(eta * minus) - Mat(plus.adjoint() * eta))});
    };
    switch (rep.tag) {
        case AlgebraTag::Gl11:
        case AlgebraTag::UqGl11:
            star_pair("X", rep.gen("Xp"), rep.gen("Xm"));
            break;
        case AlgebraTag::UqSl2: {
            // E = X+/N with N real; the matching annihilator is recovered from
            // F by stripping the K factor: X-/N = +-i F K^-1
            const cxd ph = rep.pt_variant ? cxd(0, -1) : cxd(0, 1);
            star_pair("X", rep.gen("E"), Mat(ph * rep.gen("F") * rep.gen("K").adjoint()));
            break;
        }
        default:
            break;
    }
    return out;
}

}  // namespace xxchain
