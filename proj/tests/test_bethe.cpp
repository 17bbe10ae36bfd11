#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "xxchain/bethe.hpp"

using namespace xxchain;

TEST_CASE("palindromic coefficients") {
    auto p = build_palindromic(HamiltonianSpec::polar(2, 1.0, PI / 2));
    REQUIRE(p.f.size() == 5);
    CHECK(p.f == std::vector<double>{1, 0, 2, 0, 1});

    auto p0 = build_palindromic(HamiltonianSpec::polar(4, 0.0, 0.7));
    for (int m = 0; m <= 4; ++m) CHECK(p0.f[2 * m] == 1.0);
    for (int m = 0; m < 4; ++m) CHECK(p0.f[2 * m + 1] == 0.0);

    auto p3 = build_palindromic(HamiltonianSpec::polar(3, 1.0, 0.0));
    CHECK(p3.f == std::vector<double>{1, 2, 2, 2, 2, 2, 1});

    // palindromicity at a generic point
    auto pg = build_palindromic(HamiltonianSpec::polar(5, 0.63, 1.1));
    std::vector<double> rev(pg.f.rbegin(), pg.f.rend());
    CHECK(pg.f == rev);
}

TEST_CASE("reduced F: zero of F(0) at the odd-M threshold") {
    // M=3: threshold g^2 = (M+1)/(M-1) = 2
    auto p = build_reduced_F(3, std::sqrt(2.0));
    CHECK(std::abs(p.F[0]) < 1e-12);
    auto pb = build_reduced_F(3, 1.0);
    CHECK(std::abs(pb.F[0]) > 0.5);
    CHECK(p.zero_mode_removed);
    CHECK(p.F.size() == 3);  // degree M-1 = 2
}

TEST_CASE("M=8 reduced polynomial: coefficient of eps^6 is -(8 - sigma)") {
    // sigma = 1 + alpha beta = 1 + g^2 at theta = pi/2
    const double g = 0.37;
    auto p = build_reduced_F(8, g);
    REQUIRE(p.F.size() == 9);
    CHECK(p.F[8] == 1.0);
    CHECK(p.F[6] == doctest::Approx(-(8.0 - (1.0 + g * g))).epsilon(1e-12));
}

TEST_CASE("reduced F agrees with Dickson reduction at generic theta") {
    // at theta=pi/2 the factorial formulas (zero mode removed for odd M)
    // must divide the generic-theta reduction: P(eps) = eps * F(eps)
    auto spec = HamiltonianSpec::polar(5, 0.8, PI / 2);
    auto p = build_palindromic(spec);
    REQUIRE(p.zero_mode_removed);
    // evaluate both ways at sample points via the palindromic f
    for (double e : {0.3, -1.1, 1.9}) {
        double Fv = 0.0, pw = 1.0;
        for (double c : p.F) {
            Fv += c * pw;
            pw *= e;
        }
        cxd z = 0.5 * (e + std::sqrt(cxd(e * e - 4.0)));
        cxd fz = 0.0, zp = 1.0;
        for (double c : p.f) {
            fz += c * zp;
            zp *= z;
        }
        CHECK(std::abs(fz / std::pow(z, 5) - e * Fv) < 1e-9);
    }
}

TEST_CASE("solve_roots basics") {
    // M=3, g=0: eps = {sqrt2, 0, -sqrt2}
    auto sp = solve_roots(build_reduced_F(3, 0.0));
    std::vector<double> eps;
    for (auto e : sp.eps) eps.push_back(e.real());
    std::sort(eps.begin(), eps.end());
    CHECK(eps[0] == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-12));
    CHECK(std::abs(eps[1]) < 1e-12);
    CHECK(eps[2] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(sp.on_circle);

    // M=5: zero mode present at any g
    auto sp5 = solve_roots(build_reduced_F(5, 1.0));
    double best = 1e9;
    std::size_t bj = 0;
    for (std::size_t j = 0; j < sp5.eps.size(); ++j)
        if (std::abs(sp5.eps[j]) < best) {
            best = std::abs(sp5.eps[j]);
            bj = j;
        }
    CHECK(best < 1e-12);
    CHECK(std::abs(sp5.z[bj] - cxd(0, 1)) < 1e-12);

    // M=4, g=1.2: complex energies beyond the threshold
    auto spc = solve_roots(build_reduced_F(4, 1.2));
    double worst_im = 0.0;
    for (auto e : spc.eps) worst_im = std::max(worst_im, std::abs(e.imag()));
    CHECK(worst_im > 1e-6);
    CHECK(!spc.on_circle);
}

TEST_CASE("Proposition 1: roots on the unit circle for |alpha| < 1") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> ug(0.0, 0.999), ut(0.0, 2 * PI);
    for (int trial = 0; trial < 25; ++trial) {
        const int M = 2 + int(rng() % 7);
        auto spec = HamiltonianSpec::polar(M, ug(rng), ut(rng));
        auto sp = solve_roots(build_palindromic(spec));
        REQUIRE(int(sp.z.size()) == M);
        for (auto z : sp.z) CHECK(std::abs(std::abs(z) - 1.0) < 1e-10);
        for (double k : sp.k) {
            CHECK(k > 0.0);
            CHECK(k <= PI + 1e-12);
        }
    }
}

TEST_CASE("many-body spectrum matches dense diagonalization") {
    std::mt19937 rng(999);
    std::uniform_real_distribution<double> ug(0.0, 0.99), ut(0.0, 2 * PI);
    for (int trial = 0; trial < 8; ++trial) {
        const int M = 2 + int(rng() % 5);
        auto spec = HamiltonianSpec::polar(M, ug(rng), ut(rng));
        auto sp = solve_roots(build_palindromic(spec));
        auto energies = many_body_spectrum(spec, sp);
        auto H = build_hamiltonian(spec);
        Eigen::ComplexEigenSolver<Mat> es(H.mat, false);
        std::vector<cxd> direct(es.eigenvalues().data(),
                                es.eigenvalues().data() + H.dim);
        std::sort(direct.begin(), direct.end(), [](cxd a, cxd b) {
            return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
        });
        REQUIRE(direct.size() == energies.size());
        for (std::size_t i = 0; i < direct.size(); ++i)
            CHECK(std::abs(direct[i] - energies[i]) < 1e-8);
    }
}

TEST_CASE("M=2 g=0 many-body energies") {
    auto spec = HamiltonianSpec::polar(2, 0.0, PI / 2);
    auto sp = solve_roots(build_palindromic(spec));
    auto e = many_body_spectrum(spec, sp);
    REQUIRE(e.size() == 4);
    CHECK(e[0].real() == doctest::Approx(-1.0));
    CHECK(std::abs(e[1]) < 1e-12);
    CHECK(std::abs(e[2]) < 1e-12);
    CHECK(e[3].real() == doctest::Approx(1.0));
}

TEST_CASE("trig momenta agree with polynomial roots") {
    for (double g : {0.3, 0.7, 0.95}) {
        for (int M : {4, 5, 8}) {
            auto sp = solve_roots(build_reduced_F(M, g));  // includes internal cross-check
            auto zeta = single_particle_momenta_trig(M, g);
            CHECK(int(zeta.size()) == M);
        }
    }
}

TEST_CASE("groundstate scan central charges") {
    std::vector<int> even, odd;
    for (int M = 64; M <= 1024; M *= 2) {
        even.push_back(M);
        odd.push_back(M + 1);
    }
    auto s1 = groundstate_scan(0.0, even);
    CHECK(s1.fit.c_eff == doctest::Approx(1.0).epsilon(0.01));
    auto s2 = groundstate_scan(0.0, odd);
    CHECK(s2.fit.c_eff == doctest::Approx(-2.0).epsilon(0.01));
    auto s3 = groundstate_scan(1.0, even);
    CHECK(s3.fit.c_eff == doctest::Approx(-2.0).epsilon(0.01));
    auto s4 = groundstate_scan(1.0, odd);
    CHECK(s4.fit.c_eff == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("groundstate at M=3, g=0 equals dense value") {
    auto sp = solve_roots(build_reduced_F(3, 0.0));
    double E0 = 0.0;
    for (auto e : sp.eps)
        if (e.real() > 0) E0 -= e.real();
    auto H = build_hamiltonian(HamiltonianSpec::polar(3, 0.0, PI / 2, Variant::Hg));
    Eigen::ComplexEigenSolver<Mat> es(H.mat, false);
    double lo = 1e9;
    for (int i = 0; i < 8; ++i) lo = std::min(lo, es.eigenvalues()(i).real());
    CHECK(E0 == doctest::Approx(lo).epsilon(1e-12));
    CHECK(E0 == doctest::Approx(-std::sqrt(2.0)));
}

TEST_CASE("approximate energies") {
    // near g=0, M=8, k=1
    auto a = approx_energies(8, 0.1, ApproxRegime::NearZero);
    const double expect = 2 * std::cos(PI / 9) -
                          2 * 0.01 * std::sin(PI / 9) * std::sin(2 * PI / 9) / 9.0;
    CHECK(a.eps.front() == doctest::Approx(expect).epsilon(1e-12));
    CHECK(!a.regime_warning);

    // accuracy O(g^4) vs exact roots
    auto sp = solve_roots(build_reduced_F(8, 0.1));
    std::vector<double> exact;
    for (auto e : sp.eps) exact.push_back(e.real());
    std::sort(exact.rbegin(), exact.rend());
    for (int j = 0; j < 8; ++j) CHECK(std::abs(exact[j] - a.eps[j]) < 10 * std::pow(0.1, 4));

    // near g=1, M=8: the +- pair vanishes at g=1
    auto b = approx_energies(8, 1.0, ApproxRegime::NearOne);
    int zeros = 0;
    for (double e : b.eps) zeros += std::abs(e) < 1e-13;
    CHECK(zeros == 2);
    auto warn = approx_energies(8, 0.1, ApproxRegime::NearOne);
    CHECK(warn.regime_warning);
}
