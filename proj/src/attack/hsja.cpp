#include "confgate/attack/hsja.hpp"

#include <cmath>
#include <limits>

#include "confgate/attack/bisect.hpp"
#include "confgate/attack/gradient.hpp"
#include "confgate/attack/init.hpp"

namespace confgate::attack {

using core::InputVector;
using core::Label;
using core::Oracle;
using core::QueryLedger;
using core::RngStream;

AttackTrace attack_hsja_like(const Oracle& oracle, const InputVector& x_0,
                             const AttackConfig& cfg, QueryLedger& ledger,
                             RngStream& rng) {
  cfg.validate();
  if (cfg.mode == AttackMode::kTargeted)
    throw std::logic_error("targeted mode is not implemented");

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
  InputVector x_adv;
  try {
    y0 = core::oracle_query(oracle, x_0, ledger, rng).label();
    x_adv = init_adversarial(oracle, x_0, y0, cfg.init_cap, ledger, rng);
  } catch (const core::BudgetExhausted&) {
    throw InitFailure("query budget exhausted before initialization completed");
  }
  record(x_adv, core::distance(x_adv, x_0, cfg.norm));
  push_milestone();

  bool noisy = !oracle.deterministic();
  double sqrt_d = std::sqrt(static_cast<double>(x_0.size()));
  try {
    for (std::size_t t = 1; t <= cfg.max_rounds; ++t) {
      BisectResult boundary;
      try {
        boundary = noisy ? bisect_noisy(oracle, x_adv, x_0, y0, cfg.bisect,
                                        ledger, rng)
                         : bisect_deterministic(oracle, x_adv, x_0, y0,
                                                cfg.bisect, ledger, rng);
      } catch (const NoBracket&) {
        // A randomized oracle flipped on an endpoint; restart from the best
        // confirmed candidate.
        x_adv = best;
        continue;
      } catch (const PreconditionViolated&) {
        x_adv = best;
        continue;
      }
      double bdist = core::distance(boundary.sample, x_0, cfg.norm);
      if (!noisy || boundary.p_hat >= 0.5) record(boundary.sample, bdist);

      std::size_t batch = static_cast<std::size_t>(
          std::ceil(static_cast<double>(cfg.b0) *
                    std::sqrt(static_cast<double>(t))));
      double delta = std::max(1e-9, bdist / sqrt_d);
      std::vector<double> grad;
      bool have_grad = false;
      for (int attempt = 0; attempt < 3 && !have_grad; ++attempt) {
        try {
          grad = estimate_gradient(oracle, boundary.sample, y0, batch, delta,
                                   ledger, rng);
          have_grad = true;
        } catch (const ZeroEstimate&) {
          delta *= 3.0;  // enlarge the probe radius and try again
        }
      }
      if (!have_grad) {
        x_adv = boundary.sample;
        push_milestone();
        continue;
      }

      // Geometric step search: xi_t = ||x_t - x_0|| / sqrt(t), halved until
      // the candidate is misclassified again.
      double xi = bdist / std::sqrt(static_cast<double>(t));
      InputVector candidate = boundary.sample;
      bool stepped = false;
      for (int halving = 0; halving < 12 && !stepped; ++halving) {
        for (std::size_t i = 0; i < candidate.size(); ++i)
          candidate.data[i] = boundary.sample.data[i] + xi * grad[i];
        core::clamp01_inplace(candidate);
        if (!(core::oracle_query(oracle, candidate, ledger, rng).label() ==
              y0))
          stepped = true;
        else
          xi *= 0.5;
      }
      if (stepped) {
        record(candidate, core::distance(candidate, x_0, cfg.norm));
        x_adv = candidate;
      } else {
        x_adv = boundary.sample;
      }
      push_milestone();
    }
  } catch (const core::BudgetExhausted&) {
    // Budget spent mid-round: keep whatever was confirmed so far.
  }
  push_milestone();

  trace.final_candidate = best;
  trace.final_distance = best_dist;
  trace.queries_used = ledger.used();
  return trace;
}

}  // namespace confgate::attack
