#pragma once

#include <array>
#include <vector>

#include "cablekit/scenario.hpp"

namespace cablekit {

/// Per-cable straight-line geometry at one configuration.
struct CableVectors {
  Vec8 lengths{Vec8::Zero()};
  // Unit vector at each attachment pointing toward its anchor (the direction
  // a taut cable pulls).
  std::array<Vec3, kNumCables> unit_to_anchor{};
};

/// Lengths and pulling directions of all cables. With check_stroke false the
/// internal coordinates may sit slightly outside the stroke box (derivative
/// probes, integrator trials). Throws Singular if a cable has zero length.
CableVectors cable_vectors(const RobotGeometry& geom, const DesignSpec& spec,
                           const Configuration& q, bool check_stroke = true);

/// Cable lengths l(q): the Euclidean distance from each anchor to its
/// attachment point. Throws OutOfStroke outside the stroke box.
Vec8 inverse_kinematics(const RobotGeometry& geom, const DesignSpec& spec,
                        const Configuration& q);

/// Exact 8x8 Jacobian d(length)/d(configuration tangent); row i is the
/// attachment-to-anchor direction of cable i dotted with that attachment
/// point's velocity Jacobian. Column order matches the configuration
/// tangent [dp_world, dtheta_body, dinternal].
Mat8 jacobian(const RobotGeometry& geom, const DesignSpec& spec,
              const Configuration& q, bool check_stroke = true);

/// 2-norm condition number after dividing the angular columns by the
/// characteristic length: always base-rotation columns 3..5, plus any
/// internal column the layout marks non-translational. Returns +infinity
/// when the scaled matrix is singular to working precision.
double condition_number(const Mat8& J, double characteristic_length,
                        const InternalLayout& layout = InternalLayout{{true, true}});

struct FkOptions {
  int max_iterations = 100;
  double tolerance = 1e-10;          // infinity norm of the length residual
  double initial_damping = 1e-3;
  double singularity_threshold = 1e6;
  double reversal_margin = 1e-6;     // m, winder: solutions this close to a
                                     // reversal are reported singular
};

struct FkResult {
  Configuration q;
  int iterations = 0;
  double residual = 0.0;  // infinity norm at the returned configuration
};

/// Damped least-squares Newton iteration on the length residual
/// l(q) - lengths. Internal coordinates are clamped to the stroke box at
/// every step. Throws Singular when the Jacobian is ill-conditioned at an
/// iterate or the converged winder configuration sits at a transmission
/// reversal; throws NoConvergence (message carries the final residual) when
/// the iteration stalls.
FkResult forward_kinematics(const RobotGeometry& geom, const DesignSpec& spec,
                            const Vec8& lengths, const Configuration& q0,
                            const FkOptions& opts = {});

/// Indices of path entries that are singular: condition number above the
/// threshold, or (winder variant) the transmission slope is exactly zero,
/// which happens within the reversal tolerance of winder_slope.
std::vector<int> detect_singularities(const RobotGeometry& geom,
                                      const DesignSpec& spec,
                                      const std::vector<Configuration>& path,
                                      double cond_threshold = 1e6);

/// Number of maximal runs of consecutive indices (e.g. {3,4,9} -> 2).
int count_index_regions(const std::vector<int>& indices);

}  // namespace cablekit
