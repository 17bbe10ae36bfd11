#pragma once

// Perturbation series for A = log eta and for h = eta^{1/2} H eta^{-1/2}.
// At theta = pi/2 the series contains odd powers of g only and is computed
// exactly over rationals in a one-particle (M x M) picture; bilinears
// sum K_xy c*_x c_y close under commutation, so the operator equations
// reduce to Sylvester problems [K0, a] = r.  For general theta all powers
// occur and the solve is done in floating point in the K0 eigenbasis.

#include <vector>

#include "chain.hpp"
#include "types.hpp"

namespace xxchain {

enum class CoeffKind { Lambda, LambdaPrime };

struct RationalSequence {
    CoeffKind kind;
    std::vector<Rational> values;  // values[k-1] = lambda_k (or lambda'_k)
};

// lambda_k = (2k-1)/(2k+1)! - sum_{j=1}^{k-1} lambda_{k-j}/(2j+1)!
RationalSequence lambda_sequence(int n);
// lambda'_k = (2k-1)/(2^{2k-1}(2k)!) - sum_{j=1}^{k-1} lambda_{k-j}/(2^{2j}(2j)!)
RationalSequence lambda_prime_sequence(int n);

// Dense rational matrix, row-major.
struct RatMat {
    int n = 0;
    std::vector<Rational> a;
    RatMat() = default;
    explicit RatMat(int n_) : n(n_), a(std::size_t(n_) * n_) {}
    Rational& operator()(int i, int j) { return a[std::size_t(i) * n + j]; }
    const Rational& operator()(int i, int j) const { return a[std::size_t(i) * n + j]; }
};
RatMat rat_mul(const RatMat& A, const RatMat& B);
RatMat rat_comm(const RatMat& A, const RatMat& B);
Mat rat_to_complex(const RatMat& A, cxd scale);

// One bilinear term sum_{x,y} K_{xy} c*_x c_y (+ scalar).
struct OneParticleOp {
    int order = 0;
    Mat K;
    cxd scalar = 0.0;
    double herm_residual = 0.0;    // || K - K^dagger ||_max
    double kernel_residual = 0.0;  // Sylvester solvability defect
};

struct PTableEntry {
    int x = 0;  // 1-based site
    int n = 0;  // hopping range
    std::vector<Rational> c;  // p_x^{(n)} = c[0] + c[1] g^2 + c[2] g^4 + ...
};

struct SeriesExpansion {
    int M = 0;
    int order = 0;
    double theta = 0.0;
    bool exact = false;               // rational theta = pi/2 pipeline
    std::vector<RatMat> A_exact;      // A_{2n+1} = i * bilinear(R), R real antisymmetric
    std::vector<int> A_orders;        // orders matching A_exact / A_float
    std::vector<RatMat> h_exact;      // h_{2n} = bilinear(K), K real symmetric
    std::vector<int> h_orders;
    std::vector<OneParticleOp> A_float;  // general theta (all orders >= 1)
    std::vector<OneParticleOp> h_float;
    std::vector<PTableEntry> p_table;    // filled by solve_h_series at theta = pi/2
};

SeriesExpansion solve_A_series(int M, int order, double theta);
SeriesExpansion solve_h_series(int M, int order, double theta);

struct CrossValidation {
    int M = 0;
    int order = 0;
    double theta = 0.0;
    std::vector<double> g;             // sample couplings (halved successively)
    std::vector<double> eta_residual;  // || exp(A-series) - eta_exact ||_max
    std::vector<double> h_residual;    // || h-series - h_exact ||_max
    double eta_slope = 0.0;            // fitted log-log exponents
    double h_slope = 0.0;
};
CrossValidation cross_validate_with_exact(int M, double g, double theta, int order);

// Promote an M x M one-particle matrix to the 2^M-dimensional Fock space.
Mat one_particle_to_full(const Mat& K, cxd scalar = 0.0);

}  // namespace xxchain
