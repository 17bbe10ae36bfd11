#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "xxchain/bch.hpp"
#include "xxchain/metric.hpp"

using namespace xxchain;

namespace {
Rational Q(long long n, long long d) { return Rational(n) / Rational(d); }

const RatMat* find_term(const std::vector<int>& orders, const std::vector<RatMat>& terms, int o) {
    for (std::size_t i = 0; i < orders.size(); ++i)
        if (orders[i] == o) return &terms[i];
    return nullptr;
}
}  // namespace

TEST_CASE("lambda recursion values") {
    auto lam = lambda_sequence(7).values;
    CHECK(lam[0] == Q(1, 6));
    CHECK(lam[1] == Q(-1, 360));
    CHECK(lam[2] == Q(1, 15120));
    CHECK(lam[3] == Q(-1, 604800));
    CHECK(lam[4] == Q(1, 23950080));
    CHECK(lam[5] == Q(-691, 653837184000LL));
    CHECK(lam[6] == Q(1, 37362124800LL));
}

TEST_CASE("lambda-prime recursion values") {
    auto lp = lambda_prime_sequence(6).values;
    CHECK(lp[0] == Q(1, 4));
    CHECK(lp[1] == Q(-1, 192));
    CHECK(lp[2] == Q(1, 7680));
    CHECK(lp[3] == Q(-17, 5160960));
    CHECK(lp[4] == Q(31, 371589120));
    // the recursion gives a negative sixth coefficient
    CHECK(lp[5] == Q(-691, 326998425600LL));
}

TEST_CASE("exact A-series coefficient tables, M=12") {
    auto se = solve_A_series(12, 9, PI / 2);
    REQUIRE(se.exact);
    const RatMat* A1 = find_term(se.A_orders, se.A_exact, 1);
    const RatMat* A3 = find_term(se.A_orders, se.A_exact, 3);
    const RatMat* A5 = find_term(se.A_orders, se.A_exact, 5);
    const RatMat* A7 = find_term(se.A_orders, se.A_exact, 7);
    const RatMat* A9 = find_term(se.A_orders, se.A_exact, 9);
    REQUIRE(A1);
    REQUIRE(A3);
    REQUIRE(A5);
    REQUIRE(A7);
    REQUIRE(A9);
    CHECK((*A1)(0, 1) == 1);
    CHECK((*A1)(4, 5) == 1);
    CHECK((*A1)(0, 2) == 0);

    CHECK((*A3)(2, 5) == Q(-1, 3));   // bulk range-3 hop
    CHECK((*A3)(0, 1) == Q(1, 6));    // boundary corrections
    CHECK((*A3)(10, 11) == Q(1, 6));

    CHECK((*A5)(2, 7) == Q(1, 5));
    CHECK((*A5)(0, 1) == Q(1, 24));
    CHECK((*A5)(1, 2) == Q(1, 120));
    CHECK((*A5)(0, 3) == Q(-11, 120));

    CHECK((*A7)(2, 9) == Q(-1, 7));
    CHECK((*A7)(0, 1) == Q(7, 240));
    CHECK((*A7)(1, 2) == Q(1, 48));
    CHECK((*A7)(2, 3) == Q(13, 840));
    CHECK((*A7)(0, 3) == Q(-1, 60));
    CHECK((*A7)(1, 4) == Q(3, 560));
    CHECK((*A7)(0, 5) == Q(103, 1680));

    CHECK((*A9)(1, 10) == Q(1, 9));
    CHECK((*A9)(0, 1) == Q(1, 64));
    CHECK((*A9)(1, 2) == Q(23, 2240));
    CHECK((*A9)(2, 3) == Q(17, 1920));
    CHECK((*A9)(3, 4) == Q(25, 8064));
    CHECK((*A9)(0, 3) == Q(-11, 560));
    CHECK((*A9)(1, 4) == Q(-29, 1920));
    CHECK((*A9)(2, 5) == Q(-587, 40320));
    CHECK((*A9)(0, 5) == Q(113, 13440));
    CHECK((*A9)(1, 6) == Q(-59, 8064));
    CHECK((*A9)(0, 7) == Q(-1823, 40320));

    // antisymmetry and odd parity under site reversal
    const int M = 12;
    for (const RatMat* A : {A1, A3, A5, A7, A9})
        for (int i = 0; i < M; ++i)
            for (int j = 0; j < M; ++j) {
                CHECK((*A)(i, j) == -(*A)(j, i));
                CHECK((*A)(M - 1 - i, M - 1 - j) == -(*A)(i, j));
            }
}

TEST_CASE("exact h-series tables and p-table, M=12") {
    auto se = solve_h_series(12, 6, PI / 2);
    const RatMat* h2 = find_term(se.h_orders, se.h_exact, 2);
    const RatMat* h4 = find_term(se.h_orders, se.h_exact, 4);
    const RatMat* h6 = find_term(se.h_orders, se.h_exact, 6);
    REQUIRE(h2);
    REQUIRE(h4);
    REQUIRE(h6);
    CHECK((*h2)(0, 1) == Q(1, 4));
    CHECK((*h4)(0, 1) == Q(1, 64));
    CHECK((*h4)(1, 2) == Q(1, 64));
    CHECK((*h4)(0, 3) == Q(-5, 64));
    CHECK((*h6)(0, 1) == Q(1, 512));
    CHECK((*h6)(1, 2) == Q(3, 512));
    CHECK((*h6)(2, 3) == Q(-1, 256));
    CHECK((*h6)(0, 3) == Q(-3, 256));
    CHECK((*h6)(1, 4) == Q(-5, 512));
    CHECK((*h6)(0, 5) == Q(23, 512));

    // symmetry and even parity under site reversal
    const int M = 12;
    for (const RatMat* h : {h2, h4, h6})
        for (int i = 0; i < M; ++i)
            for (int j = 0; j < M; ++j) {
                CHECK((*h)(i, j) == (*h)(j, i));
                CHECK((*h)(M - 1 - i, M - 1 - j) == (*h)(i, j));
            }

    auto find_p = [&](int x, int n) -> const PTableEntry* {
        for (auto& e : se.p_table)
            if (e.x == x && e.n == n) return &e;
        return nullptr;
    };
    // p_1^(1) = 1 - (128 g^2 + 8 g^4 + g^6)/512
    const PTableEntry* p11 = find_p(1, 1);
    REQUIRE(p11);
    CHECK(p11->c == std::vector<Rational>{1, Q(-1, 4), Q(-1, 64), Q(-1, 512)});
    // p_2^(1) = 1 - (8 g^4 + 3 g^6)/512
    const PTableEntry* p21 = find_p(2, 1);
    REQUIRE(p21);
    CHECK(p21->c == std::vector<Rational>{1, 0, Q(-1, 64), Q(-3, 512)});
    // p_3^(1) = 1 + g^6/256
    const PTableEntry* p31 = find_p(3, 1);
    REQUIRE(p31);
    CHECK(p31->c == std::vector<Rational>{1, 0, 0, Q(1, 256)});
    // p_1^(3) = (20 g^4 + 3 g^6)/256
    const PTableEntry* p13 = find_p(1, 3);
    REQUIRE(p13);
    CHECK(p13->c == std::vector<Rational>{0, 0, Q(5, 64), Q(3, 256)});
    // p_2^(3) = 5 g^6/512
    const PTableEntry* p23 = find_p(2, 3);
    REQUIRE(p23);
    CHECK(p23->c == std::vector<Rational>{0, 0, 0, Q(5, 512)});
    // p_1^(5) = -23 g^6/512
    const PTableEntry* p15 = find_p(1, 5);
    REQUIRE(p15);
    CHECK(p15->c == std::vector<Rational>{0, 0, 0, Q(-23, 512)});
}

TEST_CASE("one-particle reduction fidelity in the full Fock space") {
    const int M = 5;
    auto se = solve_h_series(M, 4, PI / 2);
    const RatMat* R1 = find_term(se.A_orders, se.A_exact, 1);
    const RatMat* R3 = find_term(se.A_orders, se.A_exact, 3);
    const RatMat* K2 = find_term(se.h_orders, se.h_exact, 2);
    REQUIRE(R1);
    REQUIRE(R3);
    REQUIRE(K2);
    Mat A1 = one_particle_to_full(rat_to_complex(*R1, cxd(0, 1)));
    Mat A3 = one_particle_to_full(rat_to_complex(*R3, cxd(0, 1)));
    Mat h2 = one_particle_to_full(rat_to_complex(*K2, 1.0));
    Mat K0 = Mat::Zero(M, M), K1 = Mat::Zero(M, M);
    for (int x = 0; x + 1 < M; ++x) K0(x, x + 1) = K0(x + 1, x) = -1.0;
    K1(0, 0) = 1.0;
    K1(M - 1, M - 1) = -1.0;
    Mat H0 = one_particle_to_full(K0), H1 = one_particle_to_full(K1);
    const cxd I2(0, 2), I6 = cxd(0, 1) / 6.0, I4 = cxd(0, 1) / 4.0;
    auto comm = [](const Mat& a, const Mat& b) { return Mat(a * b - b * a); };
    CHECK(maxabs(comm(H0, A1) - I2 * H1) < 1e-11);
    CHECK(maxabs(comm(H0, A3) - I6 * comm(A1, comm(A1, H1))) < 1e-11);
    CHECK(maxabs(h2 - I4 * comm(A1, H1)) < 1e-11);
}

TEST_CASE("general-theta first orders") {
    const int M = 6;
    const double theta = 1.1;
    auto se = solve_h_series(M, 3, theta);
    REQUIRE(!se.exact);
    REQUIRE(se.A_float.size() == 3);
    const double st = std::sin(theta), ct = std::cos(theta);
    // In the gauge where A has no component commuting with H_0 the first two
    // orders have closed forms: a_1 = i sin(t) (S+ - S-) on nearest-neighbour
    // bonds, a_2 = -i sin(t) cos(t) (T+ - T-) on next-nearest bonds.
    Mat a1 = Mat::Zero(M, M), a2 = Mat::Zero(M, M);
    for (int x = 0; x + 1 < M; ++x) {
        a1(x, x + 1) = cxd(0, st);
        a1(x + 1, x) = cxd(0, -st);
    }
    for (int x = 0; x + 2 < M; ++x) {
        a2(x, x + 2) = cxd(0, -st * ct);
        a2(x + 2, x) = cxd(0, st * ct);
    }
    CHECK(maxabs(se.A_float[0].K - a1) < 1e-12);
    CHECK(maxabs(se.A_float[1].K - a2) < 1e-12);
    for (auto& op : se.A_float) {
        CHECK(op.herm_residual < 1e-12);
        CHECK(op.kernel_residual < 1e-12);
    }
    // The familiar form e^{it} c*_x c_{x+1} - e^{-it} c_x c*_{x+1} differs from
    // a_1 by -cos(t) K0, which commutes with H_0; the gauge here removes it.
    Mat K0 = Mat::Zero(M, M);
    for (int x = 0; x + 1 < M; ++x) K0(x, x + 1) = K0(x + 1, x) = -1.0;
    Mat a1_alt = Mat::Zero(M, M);
    const cxd eip = std::exp(cxd(0, theta)), eim = std::exp(cxd(0, -theta));
    for (int x = 0; x + 1 < M; ++x) {
        a1_alt(x, x + 1) = eip;
        a1_alt(x + 1, x) = eim;
    }
    CHECK(maxabs(Mat(a1_alt - se.A_float[0].K + ct * K0)) < 1e-12);

    // h_1 = cos(theta) (n_1 + n_M) - cos(theta)
    Mat k1 = Mat::Zero(M, M);
    k1(0, 0) = k1(M - 1, M - 1) = ct;
    CHECK(maxabs(se.h_float[0].K - k1) < 1e-12);
    CHECK(std::abs(se.h_float[0].scalar - cxd(-ct)) < 1e-14);
    // h_2: real boundary hopping sin^2(t)/4 on the first and last bond
    Mat k2 = Mat::Zero(M, M);
    k2(0, 1) = k2(1, 0) = st * st / 4.0;
    k2(M - 2, M - 1) = k2(M - 1, M - 2) = st * st / 4.0;
    CHECK(maxabs(se.h_float[1].K - k2) < 1e-12);
    // h_3: range-2 boundary hopping -sin^2(t) cos(t)/4
    Mat k3 = Mat::Zero(M, M);
    k3(0, 2) = k3(2, 0) = -st * st * ct / 4.0;
    k3(M - 3, M - 1) = k3(M - 1, M - 3) = -st * st * ct / 4.0;
    CHECK(maxabs(se.h_float[2].K - k3) < 1e-12);
    for (auto& op : se.h_float) CHECK(op.herm_residual < 1e-12);
    // at theta = pi/2 the even-order A terms and odd-order h terms vanish,
    // matching the exact pipeline
    auto sp = solve_h_series(M, 3, PI / 2);
    REQUIRE(sp.exact);
}

TEST_CASE("cross validation against the exact metric") {
    auto cv = cross_validate_with_exact(4, 0.2, PI / 2, 3);
    CHECK(cv.eta_slope > 4.0 - 0.3);
    CHECK(cv.h_slope > 4.0 - 0.3);
    for (double r : cv.eta_residual) CHECK(r < 1e-2);

    auto cv2 = cross_validate_with_exact(3, 0.2, 1.0, 2);
    CHECK(cv2.eta_slope > 3.0 - 0.3);
    CHECK(cv2.h_slope > 3.0 - 0.3);
}

TEST_CASE("validation errors") {
    CHECK_THROWS_AS(solve_A_series(4, 13, PI / 2), ValidationError);
    CHECK_THROWS_AS(solve_A_series(1, 3, PI / 2), ValidationError);
    CHECK_THROWS_AS(solve_A_series(4, 0, PI / 2), ValidationError);
}
