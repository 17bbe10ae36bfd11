#pragma once

// Symmetry-algebra representations on the chain: the gl(1|1) fermion pair
// built from the U, V operators, U_q(sl2) at q = +-i, the extended
// Temperley-Lieb generators with their modified relations, the Hecke algebra
// of the boundary chain and its U_q(gl(1|1)) commutant, plus Jordan-block
// detection at the exceptional couplings.

#include <map>
#include <string>
#include <vector>

#include "chain.hpp"
#include "metric.hpp"
#include "types.hpp"

namespace xxchain {

enum class AlgebraTag { UqSl2, Gl11, UqGl11, TemperleyLieb, Hecke };

std::string algebra_name(AlgebraTag tag);

struct RelationResidual {
    std::string name;
    double residual = 0.0;
};

struct AlgebraRep {
    AlgebraTag tag = AlgebraTag::Gl11;
    int M = 0;
    double g = 0.0;
    double theta = 0.0;
    cxd q{0.0, 0.0};
    bool even_sites = false;  // even-M variants differ (truncated symmetry)
    bool pt_variant = false;  // q = -i partner rep, even M only
    std::vector<std::pair<std::string, Mat>> generators;
    std::vector<RelationResidual> relations;
    cxd z_scalar{0.0, 0.0};   // central element where scalar (Gl11, UqGl11)
    Vec phi;                  // zero-mode wave function (UqGl11)

    const Mat& gen(const std::string& name) const;
    double worst_relation() const;
};

// Construct the tagged representation and audit its defining relations.
//   Gl11           U, V combination; X+- with {X+,X-} = Z
//   UqSl2          E, F, K at q = i (pt_variant: q = -i, even M)
//   TemperleyLieb  e_1..e_{M-1} from the extended generators
//   Hecke          b_1..b_{M-1}, q = -1/alpha, alpha = -e^{-i theta}
//   UqGl11         X+-, Y at q = e^{-i theta} (g = 1); for g < 1 the
//                  deformed generators come from the Bethe mode closest to
//                  energy -2 cos(theta)
AlgebraRep build_rep(AlgebraTag tag, int M, double g, double theta = PI / 2,
                     bool pt_variant = false);

AlgebraRep hecke_rep(int M, double theta);
AlgebraRep uqgl11_rep(int M, double theta, double g = 1.0);

// Commutator norms of every generator against an arbitrary operator
// (typically H, H_g^trunc or H', or a TL pair e_x + e_{x+1}).
std::vector<RelationResidual> check_symmetry(const AlgebraRep& rep, const Mat& op);

// Modified Temperley-Lieb relations of the extended generators:
//   e_x^2 = (1-g^2) [(1-n_x) n_{x+1} + n_x (1-n_{x+1})]
//   e_x e_{x+1} e_x = g^2 e_x + i g (1-g^2)(n_x - n_{x+1})
//                       [1 + (n_{x+1} - n_{x+2})(n_x - n_{x+1})]
// and the mirrored identity; at g=1 the plain TL relations with
// -(q + q^{-1}) = 0 are recovered.
struct TLAudit {
    int M = 0;
    double g = 0.0;
    std::vector<RelationResidual> relations;
    double worst = 0.0;
};
TLAudit tl_relation_audit(int M, double g);

struct JordanCluster {
    cxd eigenvalue;                 // cluster representative (mean)
    int algebraic = 0;
    int geometric = 0;
    std::map<int, int> blocks;      // block size -> count
    int largest_block() const;
};

struct JordanReport {
    std::size_t dim = 0;
    std::vector<JordanCluster> clusters;
    bool diagonalizable = true;
    bool ill_conditioned = false;   // two clusters closer than 10x cluster tol
};

// Jordan structure from rank sequences of (A - lambda)^k with singular-value
// thresholding; never from a numerical Jordan decomposition.
JordanReport jordan_analyze(const DenseOperator& op, double cluster_tol = 1e-7,
                            double rank_tol = 1e-9);

// eta X+ = (X-)^dag eta residuals for the fermionic generator pairs.
std::vector<RelationResidual> metric_star_structure_check(const AlgebraRep& rep,
                                                          const MetricBundle& bundle);

}  // namespace xxchain
