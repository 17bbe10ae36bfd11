#pragma once

// State space, Pauli/fermion operators, Hamiltonian variants and the discrete
// symmetries P, R, S^z (T is an antilinear action, not a matrix).
//
// Basis convention (fixed, do not change): site m = 1..M contributes bit
// (s >> (M-m)) & 1 of the basis index s; bit 0 = spin up = occupied fermion.
// Indices run lexicographically with up before down at each site, so s = 0 is
// all-up and the fermionic vacuum (all spins down) is s = 2^M - 1.

#include <functional>
#include <vector>

#include "types.hpp"

namespace xxchain {

enum class Variant { H, Hprime, Hg, HgTruncated, Periodic };

struct HamiltonianSpec {
    int M = 0;
    cxd alpha{0.0, 0.0};
    cxd beta{0.0, 0.0};
    Variant variant = Variant::H;

    // polar convention alpha = conj(beta) = g e^{i theta}
    static HamiltonianSpec polar(int M, double g, double theta, Variant v = Variant::H);
    bool pt_symmetric(double tol = 1e-12) const;  // alpha == conj(beta)
    void require_pt(const std::string& who) const;
    void validate() const;
};

enum class BasisKind { FullSpin, Sector, Custom };

struct BasisTag {
    BasisKind kind = BasisKind::FullSpin;
    double sz = 0.0;          // only meaningful for Sector
    std::string label;        // only for Custom
    bool operator==(const BasisTag&) const = default;
};

struct DenseOperator {
    std::size_t dim = 0;
    Mat mat;
    BasisTag basis;

    static DenseOperator full(Mat m);
    static DenseOperator sector(Mat m, double sz);
};

struct StateVector {
    Vec amp;
    BasisTag basis;
};

// --- state space bookkeeping ---
inline int spin_bit(std::size_t s, int M, int site) { return int((s >> (M - site)) & 1u); }  // site 1..M
int ndown(std::size_t s, int M);
// ascending full-space indices of the S^z sector with the given number of
// down spins
std::vector<std::size_t> sector_states(int M, int ndown);

// --- operators ---
DenseOperator build_hamiltonian(const HamiltonianSpec& spec);

struct JordanWignerOps {
    int M;
    std::vector<Mat> c;       // annihilation c_x, x = 1..M at index x-1
    std::vector<Mat> cdag;    // creation
    Mat n(int x) const { return cdag[x - 1] * c[x - 1]; }
};
JordanWignerOps jordan_wigner_ops(int M);

struct SymmetryOps {
    Mat P;    // site reversal
    Mat R;    // spin reversal, prod sigma^x
    Mat Sz;   // total spin, diag
};
SymmetryOps symmetry_ops(int M);

// T is antilinear: acts on amplitudes / operator entries by conjugation.
StateVector time_reverse(const StateVector& v);
Mat time_reverse_conj(const Mat& op);   // T op T = entrywise conjugate

// Temperley-Lieb style generator e_x (Eq. (TLg) family), x = 1..M-1:
// e_x = c_x c*_{x+1} - c*_x c_{x+1} + i g (n_x - n_{x+1})
Mat tl_generator(const JordanWignerOps& jw, int x, double g);

// Blocks of op in each S^z sector, sz descending (ndown = 0..M).
// Precondition: [op, S^z] = 0 within 1e-10 * ||op||.
std::vector<DenseOperator> sector_decompose(const DenseOperator& op, int M);
// round-trip: scatter sector blocks back into a full-space matrix
Mat sector_assemble(const std::vector<DenseOperator>& blocks, int M);

}  // namespace xxchain
