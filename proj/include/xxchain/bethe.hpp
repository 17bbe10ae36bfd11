#pragma once

// Bethe-ansatz polynomials and spectra.  The boundary-matching condition is
// encoded in the palindromic polynomial
//   f(z) = z^{2M} + 1 + (1+g^2) sum_{m=1}^{M-1} z^{2m}
//        + 2 g cos(theta) sum_{m=0}^{M-1} z^{2m+1},
// whose non-reciprocal-pair root set {z_j} gives single-particle energies
// eps_j = z_j + 1/z_j.  Root finding goes through the reduced polynomial
// F(eps) = f(z)/z^M (degree M), computed by the Dickson recurrence for
// general theta and by the explicit factorial formulas (exact rationals in
// g^2, zero mode divided out for M odd) at theta = pi/2.

#include <vector>

#include "chain.hpp"
#include "types.hpp"

namespace xxchain {

struct ReducedPolynomial {
    int M = 0;
    double g = 0.0;
    double theta = 0.0;
    std::vector<double> f;        // palindromic coefficients, ascending, degree 2M
    std::vector<double> F;        // reduced polynomial in eps, ascending
    bool zero_mode_removed = false;  // true for M odd at theta = pi/2 (z = +-i divided out)
    bool exact = false;
    std::vector<Rational> F_exact;   // theta = pi/2 only; same coefficients as F
};

struct BetheSpectrum {
    int M = 0;
    double g = 0.0;
    double theta = 0.0;
    std::vector<cxd> z;           // representative per reciprocal pair, k in (0, pi]
    std::vector<double> k;        // Re(-i log z); exact quasi-momentum on the circle
    std::vector<cxd> eps;         // z + 1/z
    std::vector<double> residual; // |f(z_j)| after polish
    bool on_circle = true;
};

ReducedPolynomial build_palindromic(const HamiltonianSpec& spec);
ReducedPolynomial build_reduced_F(int M, double g);  // theta = pi/2 path

BetheSpectrum solve_roots(const ReducedPolynomial& poly, double residual_tol = 1e-10);

// transcendental form at theta=pi/2: zeros of sin[(M+1)z] + g^2 sin[(M-1)z]
// on (0, pi); returns quasi-momenta ascending.  Scales to M ~ 10^3 (used by
// the groundstate scan; solve_roots cross-validates against it for 0<g<1).
std::vector<double> single_particle_momenta_trig(int M, double g);

// all 2^M quasi-particle fillings E(S) = -(alpha+beta)/2 - sum_{j in S} eps_j,
// sorted by (Re, Im)
std::vector<cxd> many_body_spectrum(const HamiltonianSpec& spec, const BetheSpectrum& sp);

struct ScanFit {
    double f_inf = 0.0, f_s = 0.0, c_eff = 0.0, rms = 0.0;
};
struct ScanResult {
    std::vector<int> M;
    std::vector<double> E0;
    ScanFit fit;
};
// E0(M) = -sum_{eps_j > 0} eps_j for theta = pi/2 over the given sizes
// (fixed parity recommended); fit E0 = 2M f_inf + f_s - pi c_eff/(12 M)
// + d/M^2 weighted by M^2.
ScanResult groundstate_scan(double g, const std::vector<int>& M_range);

enum class ApproxRegime { NearZero, NearOne };
struct ApproxEnergies {
    std::vector<double> eps;
    bool regime_warning = false;  // parameter far from the expansion point
};
ApproxEnergies approx_energies(int M, double g, ApproxRegime regime);

}  // namespace xxchain
