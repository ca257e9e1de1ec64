#include "cablekit/statics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cablekit/chain.hpp"

namespace cablekit {

Vec8 generalized_load(const RobotGeometry& geom, const DesignSpec& spec,
                      const Configuration& q, bool check_stroke) {
  if (check_stroke) require_within_stroke(spec, q.internal);
  Vec8 w = Vec8::Zero();
  for (BodyId b : bodies_of(spec.variant)) {
    const auto it = spec.bodies.find(b);
    if (it == spec.bodies.end())
      throw Error(ErrorCode::InvalidArgument,
                  std::string("no mass properties for body '") + body_name(b) + "'");
    const Mat38 Jv = origin_jacobian(geom, spec, q, b);
    w += Jv.transpose() * (it->second.mass * spec.gravity);
  }
  for (const auto& [coord, sp] : spec.springs)
    w[6 + coord] += spring_generalized_load(sp, q.internal[coord]);
  return w;
}

TensionVerdict solve_tensions(const Mat8& J, const Vec8& w, double t_min,
                              double t_max, SolveMethod method) {
  if (!J.allFinite() || !w.allFinite())
    throw Error(ErrorCode::InvalidArgument, "non-finite tension system");

  const Mat8 A = J.transpose();  // structure matrix: tensions -> wrench
  Vec8 t;
  if (method == SolveMethod::ColPivQr) {
    Eigen::ColPivHouseholderQR<Mat8> qr(A);
    if (qr.rank() < kNumCables)
      throw Error(ErrorCode::Singular, "structure matrix is rank-deficient");
    t = qr.solve(w);
  } else {
    t = A.partialPivLu().solve(w);
  }

  TensionVerdict out;
  out.tensions = t;
  out.residual = (A * t - w).lpNorm<Eigen::Infinity>();
  const double scale = std::max(1.0, w.lpNorm<Eigen::Infinity>());
  if (!t.allFinite() || out.residual > 1e-8 * scale)
    throw Error(ErrorCode::Singular,
                "tension solve residual " + std::to_string(out.residual) +
                    " indicates a singular structure matrix");

  for (int i = 0; i < kNumCables; ++i) {
    if (t[i] < t_min) out.below_min.push_back(i);
    if (t[i] > t_max) out.above_max.push_back(i);
  }
  out.feasible = out.below_min.empty() && out.above_max.empty();
  return out;
}

StaticsSolution solve_statics(const RobotGeometry& geom, const DesignSpec& spec,
                              const Configuration& q) {
  const CableVectors cv = cable_vectors(geom, spec, q, true);
  const Mat8 J = jacobian(geom, spec, q, false);
  StaticsSolution sol;
  sol.load = generalized_load(geom, spec, q, false);
  sol.verdict = solve_tensions(J, sol.load, spec.tension_min, spec.tension_max);
  for (int i = 0; i < kNumCables; ++i) {
    sol.cables[static_cast<std::size_t>(i)] = CableState{
        cv.lengths[i], cv.unit_to_anchor[static_cast<std::size_t>(i)],
        sol.verdict.tensions[i]};
  }
  return sol;
}

DistributionResult distribute_tensions(const Eigen::MatrixXd& A,
                                       const Eigen::VectorXd& w, double t_min,
                                       double t_max) {
  const Eigen::Index m = A.rows(), n = A.cols();
  if (w.size() != m)
    throw Error(ErrorCode::InvalidArgument,
                "load dimension does not match structure matrix rows");
  if (n < 1 || m < 1)
    throw Error(ErrorCode::InvalidArgument, "empty tension system");
  if (!(t_max > t_min))
    throw Error(ErrorCode::InvalidArgument, "tension bounds must be ordered");

  // Dual method for the strictly convex QP
  //   min |t|^2  s.t.  A t = w,  t_min <= t <= t_max.
  // For a multiplier lam the inner minimization is separable with solution
  // t(lam) = clip(-A^T lam / 2); the dual gradient is F(lam) = A t(lam) - w.
  // Stationarity and complementarity hold exactly by construction, so the
  // only KKT residual left is |F|. Semismooth Newton on F with a gradient
  // fallback; an unbounded dual iterate certifies primal infeasibility.
  const auto t_of = [&](const Eigen::VectorXd& lam) {
    return (-0.5 * (A.transpose() * lam))
        .cwiseMax(t_min)
        .cwiseMin(t_max)
        .eval();
  };
  const auto f_of = [&](const Eigen::VectorXd& lam) {
    return (A * t_of(lam) - w).eval();
  };

  Eigen::VectorXd lam = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd F = f_of(lam);
  const double tol = 1e-9 * std::max(1.0, w.lpNorm<Eigen::Infinity>());
  const double grad_step = 1.0 / std::max(A.squaredNorm(), 1e-12);

  DistributionResult res;
  res.best_violation = F.lpNorm<Eigen::Infinity>();

  constexpr int kMaxIter = 500;
  int stalls = 0;
  int iter = 0;
  for (; iter < kMaxIter; ++iter) {
    const double fn = F.lpNorm<Eigen::Infinity>();
    res.best_violation = std::min(res.best_violation, fn);
    if (fn <= tol) break;
    if (lam.lpNorm<Eigen::Infinity>() > 1e12) break;  // dual runs away: infeasible

    // Newton direction from the active-set Jacobian A diag(free) A^T / 2.
    const Eigen::VectorXd tu = -0.5 * (A.transpose() * lam);
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index j = 0; j < n; ++j)
      if (tu[j] > t_min && tu[j] < t_max)
        M += 0.5 * A.col(j) * A.col(j).transpose();
    M.diagonal().array() += 1e-12 + 1e-12 * M.trace();

    bool moved = false;
    const Eigen::VectorXd newton = M.ldlt().solve(F);
    for (double a = 1.0; a > 1e-12 && !moved; a *= 0.5) {
      const Eigen::VectorXd cand = lam + a * newton;
      const Eigen::VectorXd Fc = f_of(cand);
      if (Fc.lpNorm<Eigen::Infinity>() < fn) {
        lam = cand;
        F = Fc;
        moved = true;
      }
    }
    if (!moved) {
      // Steepest-ascent fallback on the concave dual.
      for (double a = 4.0 * grad_step; a > 1e-15 && !moved; a *= 0.5) {
        const Eigen::VectorXd cand = lam + a * F;
        const Eigen::VectorXd Fc = f_of(cand);
        if (Fc.lpNorm<Eigen::Infinity>() < fn) {
          lam = cand;
          F = Fc;
          moved = true;
        }
      }
    }
    if (!moved) {
      if (++stalls >= 3) break;  // no direction reduces |F|: infeasible
    } else {
      stalls = 0;
    }
  }

  res.iterations = iter;
  const double fn = F.lpNorm<Eigen::Infinity>();
  if (fn <= tol) {
    res.status = DistributionResult::Status::Optimal;
    res.tensions = t_of(lam);
    res.kkt_residual = fn;
  } else {
    res.status = DistributionResult::Status::Infeasible;
    res.best_violation = std::min(res.best_violation, fn);
  }
  return res;
}

Mat8 stiffness_matrix(const RobotGeometry& geom, const DesignSpec& spec,
                      const Configuration& q, double cable_stiffness) {
  require_within_stroke(spec, q.internal);
  if (cable_stiffness < 0.0)
    throw Error(ErrorCode::InvalidArgument, "cable stiffness must be >= 0");

  // Pin the cables at commanded lengths that reproduce the static tensions
  // at q, so q is an equilibrium of the probed force field.
  Vec8 l_cmd = cable_vectors(geom, spec, q, false).lengths;
  if (cable_stiffness > 0.0) {
    const Mat8 J0 = jacobian(geom, spec, q, false);
    const Vec8 w0 = generalized_load(geom, spec, q, false);
    const TensionVerdict tv =
        solve_tensions(J0, w0, spec.tension_min, spec.tension_max);
    l_cmd -= tv.tensions / cable_stiffness;
  }

  const auto total_force = [&](const Configuration& qq) -> Vec8 {
    Vec8 f = generalized_load(geom, spec, qq, false);
    if (cable_stiffness > 0.0) {
      const CableVectors cv = cable_vectors(geom, spec, qq, false);
      const Vec8 t =
          (cable_stiffness * (cv.lengths - l_cmd)).cwiseMax(0.0);
      f -= jacobian(geom, spec, qq, false).transpose() * t;
    }
    return f;
  };

  const double h = 1e-6;
  Mat8 K;
  for (int k = 0; k < kNumCoords; ++k) {
    Vec8 step = Vec8::Zero();
    step[k] = h;
    const Configuration qp = retract(q, step);
    const Configuration qm = retract(q, -step);
    K.col(k) = -(total_force(qp) - total_force(qm)) / (2.0 * h);
  }
  return 0.5 * (K + K.transpose());
}

}  // namespace cablekit
