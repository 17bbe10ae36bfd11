#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "xxchain/chain.hpp"

using namespace xxchain;

TEST_CASE("hamiltonian is traceless and complex-symmetric at theta=pi/2") {
    auto spec = HamiltonianSpec::polar(3, 1.0, PI / 2, Variant::Hg);
    auto H = build_hamiltonian(spec);
    CHECK(std::abs(H.mat.trace()) < 1e-13);
    CHECK(maxabs(H.mat - H.mat.transpose()) < 1e-13);
    // H != H* for g > 0
    CHECK(maxabs(H.mat - H.mat.conjugate()) > 0.1);
}

TEST_CASE("H variant transpose symmetry at arbitrary complex boundary") {
    HamiltonianSpec spec;
    spec.M = 4;
    spec.alpha = cxd(0.3, 0.8);
    spec.beta = cxd(-0.2, 0.15);
    spec.variant = Variant::H;
    auto H = build_hamiltonian(spec);
    CHECK(maxabs(H.mat - H.mat.transpose()) < 1e-13);
    spec.variant = Variant::Hprime;
    auto Hp = build_hamiltonian(spec);
    CHECK(maxabs(Hp.mat - Hp.mat.transpose()) < 1e-13);
}

TEST_CASE("alpha=beta=0 gives the Hermitian free chain") {
    HamiltonianSpec spec;
    spec.M = 4;
    spec.variant = Variant::H;
    auto H = build_hamiltonian(spec);
    CHECK(maxabs(H.mat - H.mat.adjoint()) < 1e-14);
    auto Hg0 = build_hamiltonian(HamiltonianSpec::polar(4, 0.0, PI / 2, Variant::Hg));
    CHECK(maxabs(H.mat - Hg0.mat) < 1e-14);
}

TEST_CASE("CAR relations") {
    auto jw = jordan_wigner_ops(3);
    const std::size_t dim = 8;
    Mat I = Mat::Identity(dim, dim);
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) {
            Mat anti = jw.cdag[x] * jw.c[y] + jw.c[y] * jw.cdag[x];
            CHECK(maxabs(anti - (x == y ? I : Mat(Mat::Zero(dim, dim)))) < 1e-13);
            Mat cc = jw.c[x] * jw.c[y] + jw.c[y] * jw.c[x];
            CHECK(maxabs(cc) < 1e-13);
        }
}

TEST_CASE("fermionic form reproduces the spin hamiltonian") {
    // -sum(c*_x c_{x+1} - c_x c*_{x+1}) + alpha n_1 + beta n_M - (alpha+beta)/2
    const int M = 3;
    auto jw = jordan_wigner_ops(M);
    const cxd alpha(0.1, 0.9), beta(0.4, -0.3);
    const std::size_t dim = 8;
    Mat Hf = Mat::Zero(dim, dim);
    for (int x = 0; x + 1 < M; ++x)
        Hf -= jw.cdag[x] * jw.c[x + 1] - jw.c[x] * jw.cdag[x + 1];
    Hf += alpha * jw.n(1) + beta * jw.n(M) - 0.5 * (alpha + beta) * Mat::Identity(dim, dim);
    HamiltonianSpec spec;
    spec.M = M;
    spec.alpha = alpha;
    spec.beta = beta;
    auto H = build_hamiltonian(spec);
    CHECK(maxabs(Hf - H.mat) < 1e-12);
}

TEST_CASE("spin matrix elements built from explicit Pauli products") {
    // pin the hopping sign: (sigma^x sigma^x + sigma^y sigma^y)/2 flips a
    // neighbouring up-down pair with amplitude +1
    const cxd alpha(0.2, 0.6), beta(-0.1, 0.5);
    HamiltonianSpec spec;
    spec.M = 2;
    spec.alpha = alpha;
    spec.beta = beta;
    auto H = build_hamiltonian(spec);
    // basis: 0=|uu>, 1=|ud>, 2=|du>, 3=|dd>; sigma^z_1 = diag(+,+,-,-)
    Mat ref = Mat::Zero(4, 4);
    ref(1, 2) = ref(2, 1) = 1.0;
    ref(0, 0) = 0.5 * (alpha + beta);
    ref(1, 1) = 0.5 * (alpha - beta);
    ref(2, 2) = 0.5 * (beta - alpha);
    ref(3, 3) = -0.5 * (alpha + beta);
    CHECK(maxabs(H.mat - ref) < 1e-14);
}

TEST_CASE("n_x = (1 + sigma^z_x)/2") {
    auto jw = jordan_wigner_ops(2);
    // site 1 up states are indices 0,1
    Mat n1 = jw.n(1);
    CHECK(n1(0, 0) == cxd(1.0));
    CHECK(n1(1, 1) == cxd(1.0));
    CHECK(n1(2, 2) == cxd(0.0));
    CHECK(n1(3, 3) == cxd(0.0));
}

TEST_CASE("symmetry operators") {
    const int M = 3;
    auto sym = symmetry_ops(M);
    const std::size_t dim = 8;
    Mat I = Mat::Identity(dim, dim);
    CHECK(maxabs(sym.P * sym.P - I) == 0.0);
    CHECK(maxabs(sym.R * sym.R - I) == 0.0);

    HamiltonianSpec spec;
    spec.M = M;
    spec.alpha = cxd(0.2, 0.5);
    spec.beta = cxd(-0.1, 0.3);
    auto H = build_hamiltonian(spec);

    HamiltonianSpec swapped = spec;
    std::swap(swapped.alpha, swapped.beta);
    auto Hs = build_hamiltonian(swapped);
    CHECK(maxabs(sym.P * H.mat * sym.P - Hs.mat) < 1e-13);  // PHP = H(beta, alpha)

    HamiltonianSpec negated = spec;
    negated.alpha = -spec.alpha;
    negated.beta = -spec.beta;
    auto Hn = build_hamiltonian(negated);
    CHECK(maxabs(sym.R * H.mat * sym.R - Hn.mat) < 1e-13);  // RHR = H(-alpha,-beta)
}

TEST_CASE("PT: PHP = conj(H) when alpha = conj(beta)") {
    for (double theta : {PI / 2, 1.1}) {
        auto spec = HamiltonianSpec::polar(4, 0.7, theta);
        auto H = build_hamiltonian(spec);
        auto sym = symmetry_ops(4);
        CHECK(maxabs(sym.P * H.mat * sym.P - H.mat.conjugate()) < 1e-13);
    }
}

TEST_CASE("conj(Hg) = H_{-g}") {
    auto Hp = build_hamiltonian(HamiltonianSpec::polar(3, 0.6, PI / 2, Variant::Hg));
    HamiltonianSpec neg;
    neg.M = 3;
    neg.alpha = cxd(0.0, -0.6);
    neg.beta = cxd(0.0, 0.6);
    neg.variant = Variant::Hg;
    auto Hm = build_hamiltonian(neg);
    CHECK(maxabs(time_reverse_conj(Hp.mat) - Hm.mat) < 1e-13);
}

TEST_CASE("Hg equals sum of TL generators and the boundary-field H") {
    const int M = 4;
    const double g = 0.8;
    auto Hg = build_hamiltonian(HamiltonianSpec::polar(M, g, PI / 2, Variant::Hg));
    auto jw = jordan_wigner_ops(M);
    Mat sum = Mat::Zero(16, 16);
    for (int x = 1; x < M; ++x) sum += tl_generator(jw, x, g);
    CHECK(maxabs(Hg.mat - sum) < 1e-13);

    auto H = build_hamiltonian(HamiltonianSpec::polar(M, g, PI / 2, Variant::H));
    CHECK(maxabs(Hg.mat - H.mat) < 1e-13);
}

TEST_CASE("periodic variant is g-independent") {
    auto Ha = build_hamiltonian(HamiltonianSpec::polar(4, 0.3, PI / 2, Variant::Periodic));
    auto Hb = build_hamiltonian(HamiltonianSpec::polar(4, 0.9, PI / 2, Variant::Periodic));
    CHECK(maxabs(Ha.mat - Hb.mat) < 1e-13);
}

TEST_CASE("sector decomposition") {
    auto H = build_hamiltonian(HamiltonianSpec::polar(4, 1.0, PI / 2, Variant::Hg));
    auto blocks = sector_decompose(H, 4);
    REQUIRE(blocks.size() == 5);
    CHECK(blocks[2].dim == 6);  // S^z = 0
    std::size_t total = 0;
    for (auto& b : blocks) total += b.dim;
    CHECK(total == 16);
    CHECK(maxabs(sector_assemble(blocks, 4) - H.mat) < 1e-14);

    auto H5 = build_hamiltonian(HamiltonianSpec::polar(5, 1.0, PI / 2, Variant::Hg));
    auto blocks5 = sector_decompose(H5, 5);
    std::vector<std::size_t> dims;
    for (auto& b : blocks5) dims.push_back(b.dim);
    CHECK(dims == std::vector<std::size_t>{1, 5, 10, 10, 5, 1});
}

TEST_CASE("non-commuting input rejected by sector_decompose") {
    auto sym = symmetry_ops(3);
    auto bad = DenseOperator::full(Mat(sym.R));  // R flips all spins
    CHECK_THROWS_AS(sector_decompose(bad, 3), ValidationError);
}

TEST_CASE("validation and resource errors") {
    HamiltonianSpec spec;
    spec.M = 1;
    CHECK_THROWS_AS(build_hamiltonian(spec), ValidationError);
    CHECK_THROWS_AS(HamiltonianSpec::polar(5, 1.0, PI / 2, Variant::Periodic), ValidationError);
    CHECK_THROWS_AS(HamiltonianSpec::polar(4, 1.0, 0.3, Variant::Hg), ValidationError);
}
