#include "confgate/attack/surfree.hpp"

#include <cmath>
#include <limits>

#include "confgate/attack/bisect.hpp"
#include "confgate/attack/init.hpp"

namespace confgate::attack {

using core::InputVector;
using core::Label;
using core::Oracle;
using core::QueryLedger;
using core::RngStream;

std::vector<double> orthogonal_unit(const std::vector<double>& axis_unit,
                                    RngStream& rng) {
  std::vector<double> u(axis_unit.size());
  while (true) {
    for (double& v : u) v = rng.normal();
    double dot = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) dot += u[i] * axis_unit[i];
    for (std::size_t i = 0; i < u.size(); ++i) u[i] -= dot * axis_unit[i];
    double n = core::norm(u);
    if (n > 1e-12) {
      for (double& v : u) v /= n;
      return u;
    }
  }
}

namespace {

constexpr int kFanSteps = 15;  // magnitudes per fan; each tried at both signs

// Point on the distortion-shrinking arc through the current boundary sample:
// theta = 0 reproduces x_t, larger |theta| rotates toward the orthogonal
// direction while pulling the radius in by cos(theta).
InputVector arc_point(const InputVector& x_0, double r,
                      const std::vector<double>& v_hat,
                      const std::vector<double>& u_hat, double theta) {
  InputVector z = x_0;
  double c = std::cos(theta);
  double s = std::sin(theta);
  for (std::size_t i = 0; i < z.size(); ++i)
    z.data[i] = x_0.data[i] + r * c * (c * v_hat[i] + s * u_hat[i]);
  core::clamp01_inplace(z);
  return z;
}

}  // namespace

AttackTrace attack_surfree_like(const Oracle& oracle, const InputVector& x_0,
                                const AttackConfig& cfg, QueryLedger& ledger,
                                RngStream& rng) {
  cfg.validate();
  if (cfg.mode == AttackMode::kTargeted)
    throw std::logic_error("targeted mode is not implemented");
  if (!oracle.deterministic())
    throw PreconditionViolated(
        "arc-search attack requires a deterministic oracle");

  AttackTrace trace;
  InputVector best;
  double best_dist = std::numeric_limits<double>::infinity();
  auto record = [&](const InputVector& x, double dist) {
    if (dist < best_dist) {
      best = x;
      best_dist = dist;
    }
  };
  auto push_milestone = [&] {
    std::size_t q = ledger.used();
    if (!trace.milestones.empty() && trace.milestones.back().queries == q)
      trace.milestones.back().distance = best_dist;
    else
      trace.milestones.push_back({q, best_dist});
  };

  Label y0;
  InputVector x_t;
  try {
    y0 = core::oracle_query(oracle, x_0, ledger, rng).label();
    x_t = init_adversarial(oracle, x_0, y0, cfg.init_cap, ledger, rng);
  } catch (const core::BudgetExhausted&) {
    throw InitFailure("query budget exhausted before initialization completed");
  }
  record(x_t, core::distance(x_t, x_0, cfg.norm));
  push_milestone();

  auto adv = [&](const InputVector& x) {
    return !(core::oracle_query(oracle, x, ledger, rng).label() == y0);
  };

  try {
    BisectResult b =
        bisect_deterministic(oracle, x_t, x_0, y0, cfg.bisect, ledger, rng);
    x_t = b.sample;
    record(x_t, core::distance(x_t, x_0, cfg.norm));
    push_milestone();

    for (std::size_t round = 0; round < cfg.max_rounds; ++round) {
      double r = core::distance(x_t, x_0, cfg.norm);
      if (!(r > 0.0)) break;
      std::vector<double> v_hat(x_t.size());
      for (std::size_t i = 0; i < v_hat.size(); ++i)
        v_hat[i] = (x_t.data[i] - x_0.data[i]) / r;
      std::vector<double> u_hat = orthogonal_unit(v_hat, rng);

      // Fan of candidate angles, largest magnitude first, alternating sign.
      // The first candidate that stays misclassified while shrinking the
      // distortion wins.
      double accepted = 0.0;
      bool have_accept = false;
      for (int j = 0; j < kFanSteps && !have_accept; ++j) {
        double mag = cfg.theta_max * static_cast<double>(kFanSteps - j) /
                     static_cast<double>(kFanSteps);
        for (double sign : {1.0, -1.0}) {
          double theta = sign * mag;
          InputVector z = arc_point(x_0, r, v_hat, u_hat, theta);
          if (adv(z) && core::distance(z, x_0, cfg.norm) < r) {
            accepted = theta;
            have_accept = true;
            break;
          }
        }
      }
      if (!have_accept) {
        push_milestone();
        continue;
      }

      // Refine between the accepted angle and the next larger magnitude of
      // the same sign, which the fan already rejected. The largest magnitude
      // has nothing above it and is kept as is.
      double theta_lo = accepted;
      double sign = accepted < 0.0 ? -1.0 : 1.0;
      double mag_acc = std::abs(accepted);
      double notch = cfg.theta_max / static_cast<double>(kFanSteps);
      double theta_hi = sign * std::min(cfg.theta_max, mag_acc + notch);
      if (std::abs(theta_hi) > mag_acc + 1e-15) {
        double arc_tol = cfg.bisect.tolerance * cfg.theta_max;
        std::size_t steps = 0;
        while (std::abs(theta_hi - theta_lo) > arc_tol &&
               steps < cfg.bisect.max_steps) {
          double mid = 0.5 * (theta_lo + theta_hi);
          InputVector z = arc_point(x_0, r, v_hat, u_hat, mid);
          if (adv(z) && core::distance(z, x_0, cfg.norm) < r)
            theta_lo = mid;
          else
            theta_hi = mid;
          ++steps;
        }
      }

      x_t = arc_point(x_0, r, v_hat, u_hat, theta_lo);
      record(x_t, core::distance(x_t, x_0, cfg.norm));
      push_milestone();
    }
  } catch (const core::BudgetExhausted&) {
    // Normal termination: the budget ran out mid-round.
  }
  push_milestone();

  trace.final_candidate = best;
  trace.final_distance = best_dist;
  trace.queries_used = ledger.used();
  return trace;
}

}  // namespace confgate::attack
