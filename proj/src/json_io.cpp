#include "xxchain/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace xxchain {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// sorted-key, fixed-precision dump (nlohmann objects iterate sorted already)
void dump(const json& j, std::string& out) {
    switch (j.type()) {
        case json::value_t::object: {
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                out += json(it.key()).dump();
                out += ':';
                dump(it.value(), out);
            }
            out += '}';
            break;
        }
        case json::value_t::array: {
            out += '[';
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ',';
                dump(j[i], out);
            }
            out += ']';
            break;
        }
        case json::value_t::number_float:
            out += fmt_double(j.get<double>());
            break;
        default:
            out += j.dump();
            break;
    }
}

std::string dump(const json& j) {
    std::string out;
    dump(j, out);
    out += '\n';
    return out;
}

json matrix_parts(const Mat& m) {
    json re = json::array(), im = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json rrow = json::array(), irow = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            rrow.push_back(m(i, j).real());
            irow.push_back(m(i, j).imag());
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

json basis_tag(const BasisTag& b) {
    switch (b.kind) {
        case BasisKind::FullSpin: return json{{"kind", "full"}};
        case BasisKind::Sector: return json{{"kind", "sector"}, {"sz", b.sz}};
        case BasisKind::Custom: return json{{"kind", "custom"}, {"label", b.label}};
    }
    return json{{"kind", "full"}};
}

std::string rat_str(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

}  // namespace

std::string json_operator(const DenseOperator& op) {
    json j = matrix_parts(op.mat);
    j["dim"] = op.dim;
    j["basis"] = basis_tag(op.basis);
    return dump(j);
}

DenseOperator parse_operator(const std::string& text) {
    json j = json::parse(text);
    const std::size_t dim = j.at("dim").get<std::size_t>();
    DenseOperator op;
    op.dim = dim;
    op.mat = Mat::Zero(dim, dim);
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (re.size() != dim || im.size() != dim) throw ValidationError("operator JSON shape");
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t k = 0; k < dim; ++k)
            op.mat(i, k) = cxd(re[i][k].get<double>(), im[i][k].get<double>());
    const auto& b = j.at("basis");
    const std::string kind = b.at("kind").get<std::string>();
    if (kind == "sector") {
        op.basis.kind = BasisKind::Sector;
        op.basis.sz = b.at("sz").get<double>();
    } else if (kind == "custom") {
        op.basis.kind = BasisKind::Custom;
        op.basis.label = b.at("label").get<std::string>();
    }
    return op;
}

std::string csv_spectrum(const HamiltonianSpec& spec, const BetheSpectrum& sp) {
    std::string out = "M,g,theta,j,Re_eps,Im_eps,residual\n";
    for (std::size_t j = 0; j < sp.eps.size(); ++j) {
        out += std::to_string(spec.M) + "," + fmt_double(sp.g) + "," + fmt_double(sp.theta) +
               "," + std::to_string(j + 1) + "," + fmt_double(sp.eps[j].real()) + "," +
               fmt_double(sp.eps[j].imag()) + "," + fmt_double(sp.residual[j]) + "\n";
    }
    return out;
}

std::string json_fit(const ScanResult& scan, double g) {
    json j{{"g", g},
           {"f_inf", scan.fit.f_inf},
           {"f_s", scan.fit.f_s},
           {"c_eff", scan.fit.c_eff},
           {"rms", scan.fit.rms},
           {"M", scan.M},
           {"E0", scan.E0}};
    return dump(j);
}

std::string json_metric_report(const HamiltonianSpec& spec, const MetricBundle& bundle) {
    json j{{"M", spec.M},
           {"alpha", json{{"re", spec.alpha.real()}, {"im", spec.alpha.imag()}}},
           {"beta", json{{"re", spec.beta.real()}, {"im", spec.beta.imag()}}},
           {"positivity_margin", bundle.positivity_margin},
           {"eta_inv_residual", bundle.eta_inv_residual},
           {"eta", json::parse(json_operator(bundle.eta))},
           {"h", json::parse(json_operator(bundle.h))},
           {"C", json::parse(json_operator(bundle.C))}};
    return dump(j);
}

std::string json_series(const SeriesExpansion& se) {
    json terms_a = json::array(), terms_h = json::array();
    auto emit = [&](json& arr, int order, const Mat& K, cxd scalar) {
        json terms = json::array();
        for (Eigen::Index x = 0; x < K.rows(); ++x)
            for (Eigen::Index y = 0; y < K.cols(); ++y)
                if (std::abs(K(x, y)) > 0) {
                    // split the bilinear into a+ (antisymmetric) and a-
                    // (symmetric) pieces only on demand; emit raw entries here
                    terms.push_back(json{{"x", x + 1},
                                         {"y", y + 1},
                                         {"re", K(x, y).real()},
                                         {"im", K(x, y).imag()},
                                         {"basis", x <= y ? "a+" : "a-"}});
                }
        arr.push_back(json{{"order", order},
                           {"scalar_re", scalar.real()},
                           {"scalar_im", scalar.imag()},
                           {"terms", std::move(terms)}});
    };
    if (se.exact) {
        for (std::size_t i = 0; i < se.A_exact.size(); ++i)
            emit(terms_a, se.A_orders[i], rat_to_complex(se.A_exact[i], cxd(0, 1)), 0.0);
        for (std::size_t i = 0; i < se.h_exact.size(); ++i)
            emit(terms_h, se.h_orders[i], rat_to_complex(se.h_exact[i], 1.0), 0.0);
    } else {
        for (auto& op : se.A_float) emit(terms_a, op.order, op.K, op.scalar);
        for (auto& op : se.h_float) emit(terms_h, op.order, op.K, op.scalar);
    }
    json j{{"M", se.M},
           {"order", se.order},
           {"theta", se.theta},
           {"exact", se.exact},
           {"A", std::move(terms_a)},
           {"h", std::move(terms_h)}};
    return dump(j);
}

std::string csv_ptable(const SeriesExpansion& se) {
    std::size_t width = 0;
    for (auto& e : se.p_table) width = std::max(width, e.c.size());
    std::string out = "x,n";
    for (std::size_t i = 0; i < width; ++i) out += ",c" + std::to_string(i);
    out += "\n";
    for (auto& e : se.p_table) {
        out += std::to_string(e.x) + "," + std::to_string(e.n);
        for (std::size_t i = 0; i < width; ++i)
            out += "," + (i < e.c.size() ? rat_str(e.c[i]) : std::string("0"));
        out += "\n";
    }
    return out;
}

std::string json_lambda(const RationalSequence& seq) {
    json vals = json::array();
    for (auto& v : seq.values) vals.push_back(rat_str(v));
    json j{{"kind", seq.kind == CoeffKind::Lambda ? "lambda" : "lambda_prime"},
           {"values", std::move(vals)}};
    return dump(j);
}

std::string json_algebra_report(const AlgebraRep& rep,
                                const std::vector<RelationResidual>& symmetry) {
    json rels = json::array(), syms = json::array();
    for (auto& r : rep.relations) rels.push_back(json{{"name", r.name}, {"residual", r.residual}});
    for (auto& s : symmetry)
        syms.push_back(json{{"generator", s.name}, {"commutator_norm", s.residual}});
    json j{{"algebra", algebra_name(rep.tag)},
           {"params", json{{"M", rep.M},
                           {"g", rep.g},
                           {"theta", rep.theta},
                           {"q", json{{"re", rep.q.real()}, {"im", rep.q.imag()}}}}},
           {"relations", std::move(rels)},
           {"symmetry", std::move(syms)}};
    return dump(j);
}

std::string json_gram(const GramMatrix& gm) {
    json G = json::array(), H = json::array(), Mre = json::array(), Mim = json::array();
    const int K = int(gm.G.rows());
    for (int i = 0; i < K; ++i) {
        json grow = json::array(), hrow = json::array(), mre = json::array(),
             mim = json::array();
        for (int j = 0; j < K; ++j) {
            grow.push_back(gm.G(i, j));
            hrow.push_back(gm.Hcal(i, j));
            mre.push_back(gm.Mcal(i, j).real());
            mim.push_back(gm.Mcal(i, j).imag());
        }
        G.push_back(std::move(grow));
        H.push_back(std::move(hrow));
        Mre.push_back(std::move(mre));
        Mim.push_back(std::move(mim));
    }
    json j{{"M", gm.M},
           {"m", gm.m},
           {"G", std::move(G)},
           {"Hcal", std::move(H)},
           {"Mcal_re", std::move(Mre)},
           {"Mcal_im", std::move(Mim)},
           {"det_err", gm.det_err},
           {"gh_residual", gm.gh_residual},
           {"ptg_residual", gm.ptg_residual}};
    return dump(j);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ResourceError("cannot open " + path + " for writing");
    f << content;
    if (!f.good()) throw ResourceError("write failed: " + path);
}

}  // namespace xxchain
