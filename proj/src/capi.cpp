#include "xxchain/capi.h"

#include <cmath>
#include <cstring>
#include <memory>
#include <numeric>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "xxchain/algebra.hpp"
#include "xxchain/bch.hpp"
#include "xxchain/bethe.hpp"
#include "xxchain/chain.hpp"
#include "xxchain/json_io.hpp"
#include "xxchain/metric.hpp"
#include "xxchain/tl.hpp"

using namespace xxchain;

struct xx_chain {
    HamiltonianSpec spec;
    double g = 0.0;
    double theta = 0.0;
    std::string variant;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

int guard(const std::function<void()>& fn) {
    try {
        fn();
        g_last_error.clear();
        return 0;
    } catch (const Error& e) {
        g_last_error = e.what();
        return int(e.code);
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return int(Status::Resource);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return int(Status::Validation);
    }
}

Variant parse_variant(const std::string& v) {
    if (v == "H") return Variant::H;
    if (v == "Hprime") return Variant::Hprime;
    if (v == "Hg") return Variant::Hg;
    if (v == "HgTruncated") return Variant::HgTruncated;
    if (v == "Periodic") return Variant::Periodic;
    throw ValidationError("unknown variant: " + v);
}

std::string trim(const std::string& s) {
    auto a = s.find_first_not_of(" \t");
    auto b = s.find_last_not_of(" \t");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

double parse_number(const std::string& s, const std::string& raw) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw ValidationError("bad angle: " + raw);
        return v;
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        throw ValidationError("bad angle: " + raw);
    }
}

double parse_angle(const std::string& raw) {
    std::string s = trim(raw);
    if (s.empty()) throw ValidationError("empty angle");
    const auto pos = s.find("pi");
    if (pos == std::string::npos) return parse_number(s, raw);
    std::string pre = trim(s.substr(0, pos));
    std::string post = trim(s.substr(pos + 2));
    double mult = 1.0;
    if (pre == "-") mult = -1.0;
    else if (!pre.empty() && pre != "+") mult = parse_number(pre, raw);
    double div = 1.0;
    if (!post.empty()) {
        if (post[0] != '/') throw ValidationError("bad angle: " + raw);
        div = parse_number(post.substr(1), raw);
        if (div == 0.0) throw ValidationError("bad angle: " + raw);
    }
    return mult * PI / div;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string spectrum_metadata(const xx_chain& c, double tol, bool on_circle) {
    return "# M=" + std::to_string(c.spec.M) + " g=" + fmt(c.g) + " theta=" + fmt(c.theta) +
           " variant=" + c.variant + " regime=" + (on_circle ? "OnCircle" : "OffCircle") +
           " residual_tol=" + fmt(tol) + "\n";
}

AlgebraTag parse_algebra(const std::string& name) {
    if (name == "gl11") return AlgebraTag::Gl11;
    if (name == "uqsl2") return AlgebraTag::UqSl2;
    if (name == "uqgl11") return AlgebraTag::UqGl11;
    if (name == "tl") return AlgebraTag::TemperleyLieb;
    if (name == "hecke") return AlgebraTag::Hecke;
    throw ValidationError("unknown algebra: " + name);
}

// --- verify suite -----------------------------------------------------------

struct Check {
    std::string name;
    double value = 0.0;
    double bound = 0.0;
    bool ok() const { return value < bound; }
};

void run_fast_checks(std::vector<Check>& out, bool tamper) {
    {  // chain invariants
        auto spec = HamiltonianSpec::polar(5, 0.7, 0.9);
        auto H = build_hamiltonian(spec);
        auto sym = symmetry_ops(5);
        out.push_back({"chain: P H P = conj(H)",
                       maxabs(Mat(sym.P * H.mat * sym.P) - H.mat.conjugate()), 1e-13});
        auto jw = jordan_wigner_ops(6);
        double car = 0.0;
        const Mat I = Mat::Identity(64, 64);
        for (int x = 1; x <= 6; ++x)
            for (int y = 1; y <= 6; ++y)
                car = std::max(car, maxabs(Mat(jw.cdag[x - 1] * jw.c[y - 1] +
                                               jw.c[y - 1] * jw.cdag[x - 1]) -
                                           (x == y ? I : Mat(Mat::Zero(64, 64)))));
        out.push_back({"chain: CAR residual", car, 1e-13});
    }
    {  // Bethe roots on the unit circle and dense spectrum match
        auto spec = HamiltonianSpec::polar(5, 0.8, 1.2);
        auto sp = solve_roots(build_palindromic(spec));
        double circ = 0.0;
        for (auto z : sp.z) circ = std::max(circ, std::abs(std::abs(z) - 1.0));
        out.push_back({"bethe: roots on unit circle", circ, 1e-10});
        auto mb = many_body_spectrum(spec, sp);
        auto H = build_hamiltonian(spec);
        Eigen::ComplexEigenSolver<Mat> es(H.mat, false);
        std::vector<cxd> dense(es.eigenvalues().data(), es.eigenvalues().data() + 32);
        std::sort(dense.begin(), dense.end(), [](cxd a, cxd b) {
            return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
        });
        double diff = 0.0;
        for (std::size_t i = 0; i < dense.size(); ++i)
            diff = std::max(diff, std::abs(mb[i] - dense[i]));
        out.push_back({"bethe: many-body vs dense multiset", diff, 1e-8});
    }
    {  // metric bundle invariants
        auto spec = HamiltonianSpec::polar(5, 1.0, PI / 2);
        auto H = build_hamiltonian(spec);
        auto bundle = build_metric(spec, build_quasifermions(build_wavefunctions(spec)));
        Mat eta = bundle.eta.mat;
        if (tamper) eta = eta.transpose().eval();  // negative control
        out.push_back({"metric: eta H = H^dag eta",
                       maxabs(Mat(eta * H.mat) - Mat(H.mat.adjoint() * eta)), 1e-9});
        out.push_back({"metric: eta positivity margin",
                       -bundle.positivity_margin, 0.0 + 1e-300});
        const Mat C = bundle.C.mat;
        out.push_back({"metric: C^2 = 1",
                       maxabs(Mat(C * C) - Mat(Mat::Identity(32, 32))), 1e-9});
        out.push_back({"metric: [H, C] = 0", maxabs(Mat(H.mat * C - C * H.mat)), 1e-9});
        out.push_back({"metric: h Hermitian",
                       maxabs(bundle.h.mat - Mat(bundle.h.mat.adjoint())), 1e-9});
    }
    {  // series against the exact metric
        auto cv = cross_validate_with_exact(4, 0.1, PI / 2, 3);
        out.push_back({"bch: eta-series convergence order", 4.0 - cv.eta_slope, 0.5});
        out.push_back({"bch: h-series convergence order", 4.0 - cv.h_slope, 0.5});
    }
    {  // algebra relation audits
        out.push_back({"algebra: gl(1|1) relations",
                       build_rep(AlgebraTag::Gl11, 5, 0.5).worst_relation(), 1e-10});
        out.push_back({"algebra: U_q(sl2) relations",
                       build_rep(AlgebraTag::UqSl2, 5, 1.0).worst_relation(), 1e-10});
        out.push_back({"algebra: Hecke relations",
                       hecke_rep(5, PI / 3).worst_relation(), 1e-10});
        out.push_back({"algebra: U_q(gl(1|1)) relations",
                       uqgl11_rep(5, PI / 3).worst_relation(), 1e-10});
        out.push_back({"algebra: modified TL relations",
                       tl_relation_audit(5, 0.7).worst, 1e-10});
        auto rep = build_rep(AlgebraTag::Gl11, 5, 0.5);
        auto Hg = build_hamiltonian(HamiltonianSpec::polar(5, 0.5, PI / 2, Variant::Hg));
        double sym = 0.0;  // the symmetry generators are X+-, not U, V themselves
        for (auto& r : check_symmetry(rep, Hg.mat))
            if (r.name == "Xp" || r.name == "Xm") sym = std::max(sym, r.residual);
        out.push_back({"algebra: [H_g, gl(1|1)] = 0", sym, 1e-10});
    }
    {  // Gram data and the loop-parity conjecture, small sectors
        auto spec = HamiltonianSpec::polar(5, 1.0, PI / 2);
        auto bundle = build_metric(spec, build_quasifermions(build_wavefunctions(spec)));
        auto gm = gram_matrix(5, 2, bundle);
        out.push_back({"tl: Gram residual bundle",
                       std::max({gm.g_imag, gm.g_asym, gm.det_err, gm.hcal_residual,
                                 gm.gh_residual, gm.ptg_residual}),
                       1e-8});
        double viol = 0.0;
        for (int m = 0; m <= 3; ++m) viol += double(check_conjecture(3, m).violations.size());
        out.push_back({"tl: loop-parity conjecture M=3", viol, 0.5});
    }
}

void run_full_checks(std::vector<Check>& out) {
    {  // larger chains: Bethe vs dense across sizes up to M = 10
        for (int M : {8, 10}) {
            auto spec = HamiltonianSpec::polar(M, 0.6, 0.8);
            auto sp = solve_roots(build_palindromic(spec));
            auto mb = many_body_spectrum(spec, sp);
            auto H = build_hamiltonian(spec);
            std::vector<cxd> dense;  // sector-wise: [H, S^z] = 0
            for (auto& blk : sector_decompose(H, M)) {
                Eigen::ComplexEigenSolver<Mat> es(blk.mat, false);
                for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
                    dense.push_back(es.eigenvalues()(i));
            }
            std::sort(dense.begin(), dense.end(), [](cxd a, cxd b) {
                return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
            });
            double diff = 0.0;
            for (std::size_t i = 0; i < dense.size(); ++i)
                diff = std::max(diff, std::abs(mb[i] - dense[i]));
            out.push_back({"bethe: many-body vs dense, M=" + std::to_string(M), diff, 1e-7});
        }
    }
    {  // full conjecture run including the M = 7 sector
        double viol = 0.0;
        for (int m = 0; m <= 5; ++m) viol += double(check_conjecture(5, m).violations.size());
        out.push_back({"tl: loop-parity conjecture M=5, all sectors", viol, 0.5});
        out.push_back({"tl: loop-parity conjecture M=7, m=2",
                       double(check_conjecture(7, 2).violations.size()), 0.5});
    }
    {  // central-charge fits
        std::vector<int> even, odd;
        for (int M = 64; M <= 1024; M *= 2) {
            even.push_back(M);
            odd.push_back(M + 1);
        }
        out.push_back({"bethe: c_eff(g=0, even M) = 1",
                       std::abs(groundstate_scan(0.0, even).fit.c_eff - 1.0), 0.01});
        out.push_back({"bethe: c_eff(g=1, even M) = -2",
                       std::abs(groundstate_scan(1.0, even).fit.c_eff + 2.0), 0.02});
    }
}

}  // namespace

extern "C" {

const char* xx_last_error(void) { return g_last_error.c_str(); }

void xx_free(char* s) { std::free(s); }

int xx_parse_angle(const char* text, double* out) {
    return guard([&] {
        if (!text || !out) throw ValidationError("null argument");
        *out = parse_angle(text);
    });
}

int xx_chain_create(int sites, double g, double theta, const char* variant,
                    xx_chain** out) {
    return guard([&] {
        if (!out) throw ValidationError("null output handle");
        const std::string v = variant ? variant : "H";
        auto c = std::make_unique<xx_chain>();
        c->spec = HamiltonianSpec::polar(sites, g, theta, parse_variant(v));
        c->spec.validate();
        c->g = g;
        c->theta = theta;
        c->variant = v;
        *out = c.release();
    });
}

void xx_chain_destroy(xx_chain* chain) { delete chain; }

int xx_spectrum_csv(xx_chain* chain, double residual_tol, int* on_circle, char** out) {
    return guard([&] {
        if (!chain || !out) throw ValidationError("null argument");
        const double tol = residual_tol > 0 ? residual_tol : 1e-10;
        auto sp = solve_roots(build_palindromic(chain->spec), tol);
        if (on_circle) *on_circle = sp.on_circle ? 1 : 0;
        *out = dup_string(spectrum_metadata(*chain, tol, sp.on_circle) +
                          csv_spectrum(chain->spec, sp));
    });
}

int xx_sector_spectrum_csv(xx_chain* chain, int twice_sz, char** out) {
    return guard([&] {
        if (!chain || !out) throw ValidationError("null argument");
        const int M = chain->spec.M;
        if ((M - twice_sz) % 2 != 0 || twice_sz < -M || twice_sz > M)
            throw ValidationError("sector 2 S^z must match the chain parity and range");
        const int nd = (M - twice_sz) / 2;
        auto H = build_hamiltonian(chain->spec);
        auto blocks = sector_decompose(H, M);
        const Mat& B = blocks[std::size_t(nd)].mat;
        Eigen::ComplexEigenSolver<Mat> es(B, true);
        std::vector<int> idx(B.rows());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) {
            const cxd x = es.eigenvalues()(a), y = es.eigenvalues()(b);
            return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
        });
        std::string csv = "# M=" + std::to_string(M) + " g=" + fmt(chain->g) +
                          " theta=" + fmt(chain->theta) + " variant=" + chain->variant +
                          " sector_2sz=" + std::to_string(twice_sz) + "\n";
        csv += "M,g,theta,j,Re_eps,Im_eps,residual\n";
        for (std::size_t j = 0; j < idx.size(); ++j) {
            const cxd ev = es.eigenvalues()(idx[j]);
            const Vec v = es.eigenvectors().col(idx[j]);
            const double res = (B * v - ev * v).cwiseAbs().maxCoeff();
            csv += std::to_string(M) + "," + fmt(chain->g) + "," + fmt(chain->theta) + "," +
                   std::to_string(j + 1) + "," + fmt(ev.real()) + "," + fmt(ev.imag()) +
                   "," + fmt(res) + "\n";
        }
        *out = dup_string(csv);
    });
}

int xx_metric_json(xx_chain* chain, int force, char** out) {
    return guard([&] {
        if (!chain || !out) throw ValidationError("null argument");
        if (!force && !chain->spec.pt_symmetric())
            throw ValidationError("metric requires alpha = conj(beta); pass force to override");
        auto sp = solve_roots(build_palindromic(chain->spec));
        for (std::size_t i = 0; i < sp.eps.size(); ++i)
            for (std::size_t j = i + 1; j < sp.eps.size(); ++j)
                if (std::abs(sp.eps[i] - sp.eps[j]) < 1e-3)
                    throw ExceptionalPointError(
                        "colliding Bethe roots: Jordan block suspected at this coupling");
        if (!sp.on_circle && !force)
            throw ValidationError("roots off the unit circle; pass force to override");
        auto wfs = build_wavefunctions(chain->spec, sp, force != 0);
        auto bundle = build_metric(chain->spec, build_quasifermions(wfs));
        *out = dup_string(json_metric_report(chain->spec, bundle));
    });
}

int xx_lambda_json(int order, int prime, char** out) {
    return guard([&] {
        if (!out) throw ValidationError("null argument");
        auto seq = prime ? lambda_prime_sequence(order) : lambda_sequence(order);
        *out = dup_string(json_lambda(seq));
    });
}

int xx_series_json(int sites, int order, double theta, char** out) {
    return guard([&] {
        if (!out) throw ValidationError("null argument");
        if (order == 0) {  // empty expansion
            SeriesExpansion se;
            se.M = sites;
            se.theta = theta;
            se.exact = true;
            *out = dup_string(json_series(se));
            return;
        }
        *out = dup_string(json_series(solve_h_series(sites, order, theta)));
    });
}

int xx_ptable_csv(int sites, int order, char** out) {
    return guard([&] {
        if (!out) throw ValidationError("null argument");
        if (order == 0) {  // empty table
            *out = dup_string("x,n\n");
            return;
        }
        *out = dup_string(csv_ptable(solve_h_series(sites, order, PI / 2)));
    });
}

int xx_algebra_json(const char* algebra, int sites, double g, double theta,
                    int pt_variant, char** out) {
    return guard([&] {
        if (!algebra || !out) throw ValidationError("null argument");
        const AlgebraTag tag = parse_algebra(algebra);
        auto rep = build_rep(tag, sites, g, theta, pt_variant != 0);
        std::vector<RelationResidual> symmetry;
        if (tag == AlgebraTag::Gl11 || tag == AlgebraTag::UqSl2) {
            Mat op;
            if (sites % 2 == 1) {
                op = build_hamiltonian(
                         HamiltonianSpec::polar(sites, g, PI / 2, Variant::Hg))
                         .mat;
            } else if (rep.pt_variant) {
                // the q = -i partner commutes with the opposite truncation
                auto jw = jordan_wigner_ops(sites);
                op = Mat::Zero(std::size_t(1) << sites, std::size_t(1) << sites);
                for (int x = 2; x < sites; ++x) op += tl_generator(jw, x, g);
            } else {
                op = build_hamiltonian(
                         HamiltonianSpec::polar(sites, g, PI / 2, Variant::HgTruncated))
                         .mat;
            }
            symmetry = check_symmetry(rep, op);
            if (tag == AlgebraTag::Gl11) {  // X+- are the symmetry generators
                std::erase_if(symmetry, [](const RelationResidual& r) {
                    return r.name != "Xp" && r.name != "Xm";
                });
            }
        }
        *out = dup_string(json_algebra_report(rep, symmetry));
    });
}

int xx_gram_json(int sites, int m, char** out) {
    return guard([&] {
        if (!out) throw ValidationError("null argument");
        auto spec = HamiltonianSpec::polar(sites, 1.0, PI / 2);
        auto bundle = build_metric(spec, build_quasifermions(build_wavefunctions(spec)));
        *out = dup_string(json_gram(gram_matrix(sites, m, bundle)));
    });
}

int xx_verify(int full, int tamper, char** report, int* failures) {
    std::vector<Check> checks;
    const int rc = guard([&] {
        run_fast_checks(checks, tamper != 0);
        if (full) run_full_checks(checks);
    });
    int bad = 0;
    std::ostringstream os;
    for (auto& c : checks) {
        if (!c.ok()) ++bad;
        os << (c.ok() ? "PASS" : "FAIL") << "  " << c.name << "  (" << fmt(c.value)
           << " < " << fmt(c.bound) << ")\n";
    }
    if (rc != 0) {
        ++bad;
        os << "FAIL  suite aborted: " << g_last_error << "\n";
    }
    os << (bad == 0 ? "all checks passed" : std::to_string(bad) + " check(s) failed")
       << "\n";
    if (failures) *failures = bad;
    if (report) *report = dup_string(os.str());
    return bad == 0 ? 0 : 1;
}

}  // extern "C"
