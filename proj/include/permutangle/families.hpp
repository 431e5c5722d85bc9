#pragma once

// Named state families, their closed-form measure values, and the analytic
// boundary curves of the R-C and R-N planes.
//
// Family tags and parameter names (also the CLI vocabulary):
//   bell_diagonal       p1 p2 p3 p4       weights of phi+, psi+, psi-, phi-
//   werner              p [fiducial]      fiducial 0 = phi+, 1 = psi-
//   mems1               c                 c in [0, 1]
//   mems2               c                 c in [0, 2/3]
//   x_state             a b c d [w_re w_im z_re z_im]
//   w_class             l0 l1 l2 l3 [theta]
//   canonical3          l0 l1 l2 l3 l4 [theta]
//   m3ts                c12
//   m3ts_general        c12 c13
//   ansatz1             p
//   ansatz2             alpha [beta]      without beta: the optimised branch
//   mems1_purification  c
//   cq_state            p x0 y0 z0 x1 y1 z1

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "permutangle/rng.hpp"
#include "permutangle/state.hpp"

namespace permutangle {

struct FamilySpec {
  std::string family;
  std::map<std::string, double> params;
};

using State = std::variant<DensityMatrix, PureState>;

/// Measure name -> value. Names: c12 n12 r12 tau c13 c23 r13 r23 s_lin.
using MeasureMap = std::map<std::string, double>;

const std::vector<std::string>& family_tags();

/// Throws DomainError naming the violated constraint.
State make_state(const FamilySpec& spec);

/// Every closed form the family has.
MeasureMap closed_form_measures(const FamilySpec& spec);

/// Two-qubit states: c12 n12 r12 s_lin. Three-qubit pure states add tau and
/// the 13 / 23 pairs; two-qubit pure states are treated as their projector.
MeasureMap numeric_measures(const State& state);

/// In-domain parameters drawn uniformly over the family's domain.
FamilySpec random_spec(const std::string& family, Rng& rng);

struct CanonicalParams {
  double lambda[5] = {1.0, 0.0, 0.0, 0.0, 0.0};
  double theta = 0.0;
};

/// l0|000> + l1 e^{i theta}|100> + l2|101> + l3|110> + l4|111>.
PureState canonical_state(const CanonicalParams& p);

struct CurvePoint {
  double x = 0.0;
  double y = 0.0;
};

struct CurveInfo {
  std::string tag;
  std::string x_name;  // column headers
  std::string y_name;
  std::string parameter;  // what the grid values mean
  double domain_lo = 0.0;
  double domain_hi = 1.0;
  double default_lo = 0.0;  // range of the default grid
  double default_hi = 1.0;
};

/// cr_rank2_upper cr_rank2_lower cr_rank3 cr_rank3_segment cr_rank4
/// nr_rank2_upper nr_rank2_lower nr_rank3 nr_rank3_segment nr_rank4 m3ts_tau
const std::vector<CurveInfo>& curve_catalog();
const CurveInfo& curve_info(const std::string& tag);

/// Evenly spaced grid over the curve's default range.
std::vector<double> default_grid(const std::string& tag, std::size_t points);

/// Evaluates the curve at each grid value; DomainError outside its domain.
std::vector<CurvePoint> boundary_curve(const std::string& tag, const std::vector<double>& grid);

}  // namespace permutangle
