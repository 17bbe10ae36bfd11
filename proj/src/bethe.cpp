#include "xxchain/bethe.hpp"

#include <algorithm>
#include <cmath>

namespace xxchain {

namespace {

bool is_half_pi(double theta) { return std::abs(std::cos(theta)) < 1e-14; }

std::vector<double> palindromic_coeffs(int M, double g, double theta) {
    std::vector<double> f(2 * M + 1, 0.0);
    f[0] = f[2 * M] = 1.0;
    for (int m = 1; m < M; ++m) f[2 * m] = 1.0 + g * g;
    const double odd = is_half_pi(theta) ? 0.0 : 2.0 * g * std::cos(theta);
    for (int m = 0; m < M; ++m) f[2 * m + 1] = odd;
    return f;
}

// F(eps) = f(z)/z^M expanded through Dickson polynomials z^j + z^{-j} = D_j(eps)
std::vector<double> dickson_reduce(int M, double g, double theta) {
    std::vector<std::vector<double>> D(M + 1);
    D[0] = {2.0};
    if (M >= 1) D[1] = {0.0, 1.0};
    for (int j = 2; j <= M; ++j) {
        D[j].assign(j + 1, 0.0);
        for (std::size_t i = 0; i < D[j - 1].size(); ++i) D[j][i + 1] += D[j - 1][i];
        for (std::size_t i = 0; i < D[j - 2].size(); ++i) D[j][i] -= D[j - 2][i];
    }
    std::vector<double> F(M + 1, 0.0);
    auto add = [&](const std::vector<double>& p, double w) {
        for (std::size_t i = 0; i < p.size(); ++i) F[i] += w * p[i];
    };
    add(D[M], 1.0);
    const double even_w = 1.0 + g * g;
    for (int j = M - 2; j > 0; j -= 2) add(D[j], even_w);
    if (M % 2 == 0) F[0] += even_w;
    const double odd_w = 2.0 * g * std::cos(theta);
    if (odd_w != 0.0) {
        for (int j = M - 1; j > 0; j -= 2) add(D[j], odd_w);
        if (M % 2 == 1) F[0] += odd_w;
    }
    return F;
}

Rational factorial(int n) {
    Rational r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// explicit theta=pi/2 reduced polynomials, exact in g^2; zero mode divided
// out for M odd
std::vector<Rational> exact_F_half_pi(int M, const Rational& g2) {
    std::vector<Rational> F;
    if (M % 2 == 1) {
        const int m = (M - 1) / 2;
        F.assign(2 * m + 1, Rational(0));
        const int sm = (m % 2 == 0) ? 1 : -1;
        for (int k = 0; k <= m; ++k) {
            const int sk = (k % 2 == 0) ? 1 : -1;
            Rational val = factorial(m + 1 + k) / factorial(m - k);
            if (m - 1 - k >= 0) val -= g2 * factorial(m + k) / factorial(m - 1 - k);
            F[2 * k] = Rational(sm * sk) * val / factorial(2 * k + 1);
        }
    } else {
        const int m = M / 2;
        F.assign(2 * m + 1, Rational(0));
        const int sm = (m % 2 == 0) ? 1 : -1;
        for (int k = 0; k <= m; ++k) {
            const int sk = (k % 2 == 0) ? 1 : -1;
            Rational val = factorial(m + k) / factorial(m - k);
            if (m - 1 - k >= 0) val -= g2 * factorial(m - 1 + k) / factorial(m - 1 - k);
            F[2 * k] = Rational(sm * sk) * val / factorial(2 * k);
        }
    }
    return F;
}

cxd horner(const std::vector<double>& c, cxd z) {
    cxd v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * z + *it;
    return v;
}

cxd horner_deriv(const std::vector<double>& c, cxd z) {
    cxd v = 0.0;
    for (std::size_t i = c.size(); i-- > 1;) v = v * z + double(i) * c[i];
    return v;
}

}  // namespace

ReducedPolynomial build_palindromic(const HamiltonianSpec& spec) {
    spec.require_pt("build_palindromic");
    ReducedPolynomial p;
    p.M = spec.M;
    p.g = std::abs(spec.alpha);
    p.theta = std::arg(spec.alpha);
    if (p.theta < 0) p.theta += 2 * PI;
    p.f = palindromic_coeffs(p.M, p.g, p.theta);
    if (is_half_pi(p.theta)) {
        ReducedPolynomial q = build_reduced_F(p.M, p.g);
        p.F = q.F;
        p.F_exact = q.F_exact;
        p.exact = true;
        p.zero_mode_removed = q.zero_mode_removed;
    } else {
        p.F = dickson_reduce(p.M, p.g, p.theta);
    }
    return p;
}

ReducedPolynomial build_reduced_F(int M, double g) {
    if (M < 2) throw ValidationError("build_reduced_F: M >= 2 required");
    ReducedPolynomial p;
    p.M = M;
    p.g = g;
    p.theta = PI / 2;
    p.f = palindromic_coeffs(M, g, p.theta);
    const Rational g2 = Rational(g) * Rational(g);
    p.F_exact = exact_F_half_pi(M, g2);
    p.exact = true;
    p.zero_mode_removed = (M % 2 == 1);
    p.F.reserve(p.F_exact.size());
    for (const auto& c : p.F_exact) p.F.push_back(double(c));
    return p;
}

std::vector<double> single_particle_momenta_trig(int M, double g) {
    const double g2 = g * g;
    auto h = [&](double z) { return std::sin((M + 1) * z) + g2 * std::sin((M - 1) * z); };
    std::vector<double> roots;
    if (M % 2 == 1) roots.push_back(PI / 2);  // exact zero mode
    for (int refine = 0; refine < 3; ++refine) {
        roots.erase(std::remove_if(roots.begin(), roots.end(),
                                   [&](double r) { return std::abs(r - PI / 2) > 1e-12; }),
                    roots.end());
        const int N = 20 * (M + 1) << (2 * refine);
        const double lo = 0.05 * PI / (M + 1), hi = PI - 0.05 * PI / (M + 1);
        double a = lo, ha = h(a);
        for (int i = 1; i <= N; ++i) {
            double b = lo + (hi - lo) * i / N, hb = h(b);
            if (ha == 0.0 && std::abs(a - PI / 2) > 1e-12) roots.push_back(a);
            else if (ha * hb < 0.0) {
                double x = a, y = b;
                for (int it = 0; it < 60; ++it) {
                    double mid = 0.5 * (x + y);
                    (h(x) * h(mid) <= 0.0 ? y : x) = mid;
                }
                double r = 0.5 * (x + y);
                if (std::abs(r - PI / 2) > 1e-12 || M % 2 == 0) roots.push_back(r);
            }
            a = b;
            ha = hb;
        }
        if (int(roots.size()) >= M) break;
    }
    std::sort(roots.begin(), roots.end());
    if (int(roots.size()) != M)
        throw ValidationError("single_particle_momenta_trig: found " +
                              std::to_string(roots.size()) + " roots, expected " +
                              std::to_string(M) + " (M=" + std::to_string(M) +
                              ", g=" + std::to_string(g) + ")");
    return roots;
}

BetheSpectrum solve_roots(const ReducedPolynomial& poly, double residual_tol) {
    const int n = int(poly.F.size()) - 1;
    if (n < 1) throw ValidationError("solve_roots: empty reduced polynomial");
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    const double lead = poly.F[n];
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -poly.F[i] / lead;
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    std::vector<cxd> eps_list(es.eigenvalues().data(), es.eigenvalues().data() + n);
    if (poly.zero_mode_removed) eps_list.push_back(cxd(0.0, 0.0));

    BetheSpectrum sp;
    sp.M = poly.M;
    sp.g = poly.g;
    sp.theta = poly.theta;
    double worst = 0.0;
    for (cxd e : eps_list) {
        cxd s = std::sqrt(e * e - 4.0);
        cxd z1 = 0.5 * (e + s), z2 = 0.5 * (e - s);
        cxd z = (z1.imag() > z2.imag() + 1e-14)   ? z1
                : (z2.imag() > z1.imag() + 1e-14) ? z2
                : (std::abs(z1) >= std::abs(z2))  ? z1
                                                  : z2;
        // one Newton step on the palindromic polynomial
        cxd fz = horner(poly.f, z);
        cxd dfz = horner_deriv(poly.f, z);
        if (std::abs(dfz) > 1e-14) z -= fz / dfz;
        if (z.imag() < -1e-12 || (std::abs(z.imag()) <= 1e-12 && z.real() > 0 && std::abs(z) < 1.0))
            z = 1.0 / z;  // keep the k in (0, pi] / |z| >= 1 representative
        sp.z.push_back(z);
        double k = std::arg(z);  // in [0, pi] after the representative choice
        if (k < 0) k += 2 * PI;
        sp.k.push_back(k);
        sp.eps.push_back(z + 1.0 / z);
        const double res = std::abs(horner(poly.f, z));
        sp.residual.push_back(res);
        worst = std::max(worst, res);
        if (std::abs(std::abs(z) - 1.0) > 1e-8) sp.on_circle = false;
    }
    if (worst > residual_tol)
        throw ValidationError("solve_roots: worst residual " + std::to_string(worst) +
                              " exceeds tolerance");
    // cross-validation against the transcendental form inside the
    // quasi-Hermitian window
    if (is_half_pi(poly.theta) && poly.g > 0 && poly.g < 1) {
        auto zeta = single_particle_momenta_trig(poly.M, poly.g);
        std::vector<double> ks = sp.k;
        std::sort(ks.begin(), ks.end());
        for (int j = 0; j < poly.M; ++j)
            if (std::abs(ks[j] - zeta[j]) > 1e-8)
                throw ValidationError("solve_roots: trig cross-validation mismatch at mode " +
                                      std::to_string(j));
    }
    return sp;
}

std::vector<cxd> many_body_spectrum(const HamiltonianSpec& spec, const BetheSpectrum& sp) {
    if (spec.M != sp.M) throw ValidationError("many_body_spectrum: M mismatch");
    check_dense_dim(std::size_t(1) << sp.M, "many_body_spectrum");
    std::vector<cxd> energies{-(spec.alpha + spec.beta) / 2.0};
    energies.reserve(std::size_t(1) << sp.M);
    for (cxd e : sp.eps) {
        const std::size_t cur = energies.size();
        for (std::size_t i = 0; i < cur; ++i) energies.push_back(energies[i] - e);
    }
    std::sort(energies.begin(), energies.end(), [](cxd a, cxd b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return energies;
}

ScanResult groundstate_scan(double g, const std::vector<int>& M_range) {
    if (M_range.size() < 4) throw ValidationError("groundstate_scan: need at least 4 sizes for the fit");
    ScanResult res;
    for (int M : M_range) {
        std::vector<double> zeta;
        if (g == 0.0) {
            for (int k = 1; k <= M; ++k) zeta.push_back(PI * k / (M + 1));
        } else if (g == 1.0) {
            for (int k = 1; k < M; ++k) zeta.push_back(PI * k / M);
            if (M % 2 == 1) zeta.push_back(PI / 2);
        } else {
            zeta = single_particle_momenta_trig(M, g);
        }
        double E0 = 0.0;
        for (double z : zeta) {
            const double eps = 2.0 * std::cos(z);
            if (eps > 0) E0 -= eps;
        }
        res.M.push_back(M);
        res.E0.push_back(E0);
    }
    // weighted least squares on basis {2M, 1, 1/M, 1/M^2}
    const int n = int(res.M.size());
    Eigen::MatrixXd A(n, 4);
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) {
        const double M = res.M[i], w = M * M;
        A(i, 0) = w * 2 * M;
        A(i, 1) = w;
        A(i, 2) = w / M;
        A(i, 3) = w / (M * M);
        b(i) = w * res.E0[i];
    }
    Eigen::VectorXd x = A.colPivHouseholderQr().solve(b);
    res.fit.f_inf = x(0);
    res.fit.f_s = x(1);
    res.fit.c_eff = -x(2) * 12.0 / PI;
    double rms = 0.0;
    for (int i = 0; i < n; ++i) {
        const double M = res.M[i];
        const double pred = 2 * M * x(0) + x(1) + x(2) / M + x(3) / (M * M);
        rms += (pred - res.E0[i]) * (pred - res.E0[i]);
    }
    res.fit.rms = std::sqrt(rms / n);
    return res;
}

ApproxEnergies approx_energies(int M, double g, ApproxRegime regime) {
    ApproxEnergies out;
    if (regime == ApproxRegime::NearZero) {
        out.regime_warning = g > 0.5;
        for (int k = 1; k <= M; ++k) {
            const double t = PI * k / (M + 1);
            out.eps.push_back(2 * std::cos(t) - 2 * g * g * std::sin(t) * std::sin(2 * t) / (M + 1));
        }
    } else {
        out.regime_warning = g < 0.5;
        const double d = 1.0 - g * g;
        for (int k = 1; k < M; ++k) {
            if (M % 2 == 0 && k == M / 2) continue;
            const double t = PI * k / M;
            out.eps.push_back(2 * std::cos(t) + d * std::sin(t) * std::tan(t) / M);
        }
        if (M % 2 == 0) {
            const double v = 2 * std::sqrt(2 * d / (M * (M + 2 - g * g * (M - 2))));
            out.eps.push_back(v);
            out.eps.push_back(-v);
        }
    }
    std::sort(out.eps.rbegin(), out.eps.rend());
    return out;
}

}  // namespace xxchain
