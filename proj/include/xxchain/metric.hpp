#pragma once

// Discrete Bethe wave functions, quasi-fermion operators, the metric eta and
// its relatives, the C-operator and the Hermitian h = eta^{1/2} H eta^{-1/2}.

#include <vector>

#include "bethe.hpp"
#include "chain.hpp"
#include "types.hpp"

namespace xxchain {

struct WaveFunctionSet {
    int M = 0;
    cxd alpha;
    BetheSpectrum spectrum;       // modes sorted by quasi-momentum k ascending
    std::vector<Vec> psi;         // normalized, sum_x psi^2 = 1 (bilinear)
    std::vector<cxd> raw_norm2;   // pre-normalization sum psi~^2
    std::vector<bool> zero_norm;  // |raw_norm2| < 1e-12
    bool any_zero_norm() const;
};

struct QuasiFermionBasis {
    int M = 0;
    WaveFunctionSet wfs;
    std::vector<Mat> chat_dag;  // chat*_j = sum_x psi_j(x) c*_x
    std::vector<Mat> dhat;      // dhat_j  = sum_x psi_j(x) c_x
    double car_residual = 0.0;
};

struct MetricBundle {
    DenseOperator eta, eta_inv, eta_sqrt, eta_inv_sqrt, C, h;
    double positivity_margin = 0.0;  // smallest eigenvalue of eta
    double eta_inv_residual = 0.0;   // ||eta eta_inv - 1||_max
};

WaveFunctionSet build_wavefunctions(const HamiltonianSpec& spec, const BetheSpectrum& sp,
                                    bool force_off_circle = false);
// convenience: palindromic -> roots -> wavefunctions
WaveFunctionSet build_wavefunctions(const HamiltonianSpec& spec);

QuasiFermionBasis build_quasifermions(const WaveFunctionSet& wfs);

MetricBundle build_metric(const HamiltonianSpec& spec, const QuasiFermionBasis& basis);

// Closed-form reconstruction of C = P eta from quasi-particle dyads
//   C = sum_S w(S) chat*_{j1}...chat*_{jn}|0><0| dhat_{jn}...dhat_{j1}.
// The working weight is w(S) = (-1)^{n(n+1)/2} (-1)^{Mn} prod_{j in S} W_j
// with the parity sign W_j = psi_j(M+1-x)/conj(psi_j(x)) = +-1 of each mode
// (the naive weight (-1)^n e^{i(M+1) sum k}, which ignores normalization
// gauge and Jordan-Wigner string signs, is reported alongside for
// comparison; it is not +-1 for generic couplings and cannot square to 1).
struct COperatorCheck {
    double residual = 0.0;         // ||C - closed form||_max, working weights
    double residual_naive = 0.0;   // same with the naive momentum-phase weights
    std::vector<double> parity_sign;  // W_j per mode
    double parity_residual = 0.0;  // worst deviation of psi_j(M+1-x)/conj(psi_j(x)) from W_j
};
COperatorCheck c_operator_closed_form_check(const QuasiFermionBasis& basis,
                                            const MetricBundle& bundle,
                                            double tol = 1e-9);

// || H - (-(alpha+beta)/2 - sum_j eps_j chat*_j dhat_j) ||_max
double diagonal_form_check(const HamiltonianSpec& spec, const QuasiFermionBasis& basis);

}  // namespace xxchain
