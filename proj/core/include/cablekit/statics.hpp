#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cablekit/kinematics.hpp"

namespace cablekit {

/// Generalized gravity + mechanism-spring load at q, expressed on the
/// configuration tangent: the wrench the cables must balance in static
/// equilibrium J^T t = w. Gravity enters through the virtual work of each
/// body's weight at its center of mass (the body origin); each installed
/// spring pushes its translational coordinate back toward extension.
/// Throws CoilBind if a spring is past solid length.
Vec8 generalized_load(const RobotGeometry& geom, const DesignSpec& spec,
                      const Configuration& q, bool check_stroke = true);

enum class SolveMethod {
  PartialPivLu,  // default
  ColPivQr,      // independent factorization, for cross-checking uniqueness
};

/// Unique static tension solution of the square system J^T t = w, plus a
/// per-cable bound report.
struct TensionVerdict {
  Vec8 tensions{Vec8::Zero()};
  bool feasible = false;
  std::vector<int> below_min;  // cable indices with t < t_min
  std::vector<int> above_max;  // cable indices with t > t_max
  double residual = 0.0;       // |J^T t - w|_inf
};

/// Solves J^T t = w. Throws Singular when J is rank-deficient (the residual
/// cannot be driven below tolerance). Feasibility is reported, not thrown:
/// workspace sampling needs reasons, not control flow.
TensionVerdict solve_tensions(const Mat8& J, const Vec8& w, double t_min,
                              double t_max,
                              SolveMethod method = SolveMethod::PartialPivLu);

/// Per-cable snapshot of the static solution at q.
struct CableState {
  double length = 0.0;
  Vec3 direction{Vec3::Zero()};  // unit vector from attachment toward anchor
  double tension = 0.0;
};

/// Lengths, pulling directions, and static tensions under gravity + spring
/// load at q, with the same bound report as solve_tensions.
struct StaticsSolution {
  std::array<CableState, kNumCables> cables{};
  TensionVerdict verdict;
  Vec8 load{Vec8::Zero()};
};

StaticsSolution solve_statics(const RobotGeometry& geom, const DesignSpec& spec,
                              const Configuration& q);

/// Minimum-norm tension distribution for a redundant system: minimizes
/// sum t_i^2 subject to A t = w and t_min <= t <= t_max. Infeasibility is a
/// distinct outcome, not an error.
struct DistributionResult {
  enum class Status { Optimal, Infeasible };
  Status status = Status::Infeasible;
  Eigen::VectorXd tensions;
  double kkt_residual = 0.0;     // when Optimal: max KKT violation
  double best_violation = 0.0;   // when Infeasible: smallest |A t - w|_inf found
  int iterations = 0;
};

DistributionResult distribute_tensions(const Eigen::MatrixXd& A,
                                       const Eigen::VectorXd& w, double t_min,
                                       double t_max);

/// Numerical stiffness about a static equilibrium: minus the symmetrized
/// central-difference Jacobian (step 1e-6) of the total generalized force.
/// Cables are modeled as unilateral linear springs pinned at commanded
/// lengths chosen so the cable forces at q equal the static solution; the
/// mechanism spring and gravity complete the force model. Positive definite
/// at a stable equilibrium.
Mat8 stiffness_matrix(const RobotGeometry& geom, const DesignSpec& spec,
                      const Configuration& q, double cable_stiffness);

}  // namespace cablekit
