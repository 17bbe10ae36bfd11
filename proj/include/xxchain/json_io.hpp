#pragma once

// Byte-stable serialization: JSON with sorted keys and 17-significant-digit
// floats, and the fixed CSV layouts used by the CLI.

#include <string>

#include "algebra.hpp"
#include "bch.hpp"
#include "bethe.hpp"
#include "chain.hpp"
#include "metric.hpp"
#include "tl.hpp"

namespace xxchain {

// {dim, basis, re[][], im[][]}
std::string json_operator(const DenseOperator& op);
DenseOperator parse_operator(const std::string& text);

// columns: M,g,theta,j,Re_eps,Im_eps,residual
std::string csv_spectrum(const HamiltonianSpec& spec, const BetheSpectrum& sp);

// {f_inf, f_s, c_eff, rms} plus the scanned sizes/energies
std::string json_fit(const ScanResult& scan, double g);

// metric bundle residual summary + matrices
std::string json_metric_report(const HamiltonianSpec& spec, const MetricBundle& bundle);

// {order, terms: [{x, y, re, im, basis: "a+"|"a-"}]} per series term
std::string json_series(const SeriesExpansion& se);
// columns: x,n,c0,c1,...  (p_x^{(n)} coefficients in g^2, exact rationals)
std::string csv_ptable(const SeriesExpansion& se);
std::string json_lambda(const RationalSequence& seq);

// {algebra, params, relations: [{name, residual}], symmetry: [...]}
std::string json_algebra_report(const AlgebraRep& rep,
                                const std::vector<RelationResidual>& symmetry);

std::string json_gram(const GramMatrix& gm);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace xxchain
