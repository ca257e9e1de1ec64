#include "cablekit/kinematics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "cablekit/chain.hpp"

namespace cablekit {

CableVectors cable_vectors(const RobotGeometry& geom, const DesignSpec& spec,
                           const Configuration& q, bool check_stroke) {
  const std::array<Vec3, kNumCables> points =
      check_stroke ? attachment_points(geom, spec, q)
                   : attachment_points_raw(geom, spec, q);
  CableVectors cv;
  for (int i = 0; i < kNumCables; ++i) {
    const Vec3 d = geom.anchors[static_cast<std::size_t>(i)] - points[static_cast<std::size_t>(i)];
    const double len = d.norm();
    if (!(len > 1e-12))
      throw Error(ErrorCode::Singular,
                  "cable " + std::to_string(i) + " has zero length");
    cv.lengths[i] = len;
    cv.unit_to_anchor[static_cast<std::size_t>(i)] = d / len;
  }
  return cv;
}

Vec8 inverse_kinematics(const RobotGeometry& geom, const DesignSpec& spec,
                        const Configuration& q) {
  return cable_vectors(geom, spec, q, true).lengths;
}

Mat8 jacobian(const RobotGeometry& geom, const DesignSpec& spec,
              const Configuration& q, bool check_stroke) {
  if (check_stroke) require_within_stroke(spec, q.internal);
  const CableVectors cv = cable_vectors(geom, spec, q, false);
  Mat8 J;
  for (int i = 0; i < kNumCables; ++i) {
    const Attachment& att = geom.attachments[static_cast<std::size_t>(i)];
    const Mat38 P = point_jacobian(geom, spec, q, att.body, att.point);
    // d|x - a|/dq = ((x - a)/l)^T dx/dq = -u^T dx/dq with u pointing at the
    // anchor.
    J.row(i) = -cv.unit_to_anchor[static_cast<std::size_t>(i)].transpose() * P;
  }
  return J;
}

double condition_number(const Mat8& J, double characteristic_length,
                        const InternalLayout& layout) {
  if (!(characteristic_length > 0.0))
    throw Error(ErrorCode::InvalidArgument,
                "characteristic length must be positive");
  Mat8 S = J;
  for (int c = 3; c < 6; ++c) S.col(c) /= characteristic_length;
  for (int j = 0; j < 2; ++j)
    if (!layout.translational[static_cast<std::size_t>(j)])
      S.col(6 + j) /= characteristic_length;
  if (!S.allFinite()) return std::numeric_limits<double>::infinity();
  Eigen::JacobiSVD<Mat8> svd(S);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  if (!(smin > smax * 1e-15) || !(smax > 0.0))
    return std::numeric_limits<double>::infinity();
  return smax / smin;
}

namespace {

void clamp_internal(const DesignSpec& spec, Configuration& q) {
  for (int i = 0; i < 2; ++i)
    q.internal[i] = std::clamp(q.internal[i], spec.stroke[static_cast<std::size_t>(i)][0],
                               spec.stroke[static_cast<std::size_t>(i)][1]);
}

}  // namespace

namespace {

struct NewtonOutcome {
  bool converged = false;
  FkResult result;
  double residual = std::numeric_limits<double>::infinity();
};

// Damped Gauss-Newton from one starting configuration. Steps are accepted on
// the least-squares (2-norm) residual the step model actually minimizes;
// convergence is declared on the componentwise (max-norm) residual.
NewtonOutcome newton_solve(const RobotGeometry& geom, const DesignSpec& spec,
                           const Vec8& lengths, Configuration q,
                           const InternalLayout& layout, const FkOptions& opts) {
  q.base.orientation.normalize();
  clamp_internal(spec, q);

  double lambda = opts.initial_damping;
  NewtonOutcome out;

  for (int iter = 0; iter <= opts.max_iterations; ++iter) {
    const Vec8 r = cable_vectors(geom, spec, q, false).lengths - lengths;
    const double rn_inf = r.template lpNorm<Eigen::Infinity>();
    const double rn2 = r.norm();
    out.residual = rn_inf;

    const Mat8 J = jacobian(geom, spec, q, false);
    const double cond = condition_number(J, geom.rod_radius, layout);
    if (cond > opts.singularity_threshold)
      throw Error(ErrorCode::Singular,
                  "Jacobian ill-conditioned at iterate (condition " +
                      std::to_string(cond) + ")");

    if (rn_inf <= opts.tolerance) {
      // One undamped polish step: the stop test can trigger with the residual
      // just under tolerance, where a weakly observable mode (the yaw of a
      // nearly aligned ring) still holds a configuration error far above the
      // residual. The extra step drives the residual to rounding level.
      const Vec8 delta = (J.transpose() * J).ldlt().solve(-J.transpose() * r);
      Configuration polished = retract(q, delta);
      clamp_internal(spec, polished);
      const Vec8 rp =
          cable_vectors(geom, spec, polished, false).lengths - lengths;
      const double rp_inf = rp.template lpNorm<Eigen::Infinity>();
      out.converged = true;
      out.result = rp_inf < rn_inf ? FkResult{polished, iter + 1, rp_inf}
                                   : FkResult{q, iter, rn_inf};
      return out;
    }
    if (iter == opts.max_iterations) break;

    // Grow the damping until a step drops the least-squares residual.
    bool stepped = false;
    for (int attempt = 0; attempt < 16 && !stepped; ++attempt) {
      Mat8 H = J.transpose() * J;
      H.diagonal().array() += lambda;
      const Vec8 delta = H.ldlt().solve(-J.transpose() * r);
      Configuration trial = retract(q, delta);
      clamp_internal(spec, trial);
      const double trial_rn2 =
          (cable_vectors(geom, spec, trial, false).lengths - lengths).norm();
      if (trial_rn2 < rn2) {
        q = trial;
        lambda = std::max(lambda * 0.5, 1e-12);
        stepped = true;
      } else {
        lambda = std::min(lambda * 4.0, 1e8);
      }
    }
    if (!stepped) break;  // stalled: no damping level improves the residual
  }
  return out;
}

}  // namespace

FkResult forward_kinematics(const RobotGeometry& geom, const DesignSpec& spec,
                            const Vec8& lengths, const Configuration& q0,
                            const FkOptions& opts) {
  if (!(lengths.array() > 0.0).all())
    throw Error(ErrorCode::InvalidArgument, "target lengths must be positive");

  const InternalLayout layout = internal_layout(spec.variant);

  // The caller's guess first; on a stall, restart from a deterministic set of
  // internal seeds. The length map is multimodal in the coupled travel/yaw
  // coordinates (one lead of screw travel and a full bearing turn reach the
  // same payload angle), so basins from a cold guess can miss the solution.
  std::vector<Configuration> starts;
  starts.push_back(q0);
  for (int i : {0, 1, 2}) {
    for (int j : {0, 1, 2}) {
      Configuration s = q0;
      s.internal[0] = spec.stroke[0][0] +
                      0.5 * i * (spec.stroke[0][1] - spec.stroke[0][0]);
      s.internal[1] = spec.stroke[1][0] +
                      0.5 * j * (spec.stroke[1][1] - spec.stroke[1][0]);
      starts.push_back(s);
    }
  }

  double best_residual = std::numeric_limits<double>::infinity();
  for (const Configuration& start : starts) {
    const NewtonOutcome out =
        newton_solve(geom, spec, lengths, start, layout, opts);
    if (out.converged) {
      if (spec.variant == Variant::Winder &&
          winder_reversal_distance(spec.winder, out.result.q.internal[0]) <=
              opts.reversal_margin)
        throw Error(ErrorCode::Singular,
                    "solution sits at a winder reversal (s = " +
                        std::to_string(out.result.q.internal[0]) + ")");
      return out.result;
    }
    best_residual = std::min(best_residual, out.residual);
  }
  throw Error(ErrorCode::NoConvergence,
              "forward kinematics stalled with residual " +
                  std::to_string(best_residual));
}

std::vector<int> detect_singularities(const RobotGeometry& geom,
                                      const DesignSpec& spec,
                                      const std::vector<Configuration>& path,
                                      double cond_threshold) {
  const InternalLayout layout = internal_layout(spec.variant);
  std::vector<int> flagged;
  for (std::size_t k = 0; k < path.size(); ++k) {
    bool bad = false;
    if (spec.variant == Variant::Winder &&
        winder_slope(spec.winder, path[k].internal[0]) == 0.0)
      bad = true;
    if (!bad) {
      const Mat8 J = jacobian(geom, spec, path[k], false);
      bad = condition_number(J, geom.rod_radius, layout) > cond_threshold;
    }
    if (bad) flagged.push_back(static_cast<int>(k));
  }
  return flagged;
}

int count_index_regions(const std::vector<int>& indices) {
  int regions = 0;
  for (std::size_t i = 0; i < indices.size(); ++i)
    if (i == 0 || indices[i] != indices[i - 1] + 1) ++regions;
  return regions;
}

}  // namespace cablekit
