#include "confgate/attack/bisect.hpp"

#include <cmath>

namespace confgate::attack {

using core::InputVector;
using core::Label;
using core::Oracle;
using core::QueryLedger;
using core::RngStream;

InputVector interpolate(const InputVector& x_t, const InputVector& x_0,
                        double k) {
  if (!(k >= 0.0 && k <= 1.0))
    throw std::invalid_argument("interpolation parameter must lie in [0, 1]");
  if (!(x_t.shape == x_0.shape) || x_t.size() != x_0.size())
    throw std::invalid_argument("interpolate: shape mismatch");
  InputVector out = x_t;
  for (std::size_t i = 0; i < out.size(); ++i)
    out.data[i] = (1.0 - k) * x_t.data[i] + k * x_0.data[i];
  return out;
}

namespace {

bool misclassified(const Oracle& oracle, const InputVector& x, Label source,
                   QueryLedger& ledger, RngStream& rng) {
  return !(core::oracle_query(oracle, x, ledger, rng).label() == source);
}

// Fraction of m queries at x whose label differs from source.
double adversarial_rate(const Oracle& oracle, const InputVector& x,
                        Label source, std::size_t m, QueryLedger& ledger,
                        RngStream& rng) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (misclassified(oracle, x, source, ledger, rng)) ++hits;
  return static_cast<double>(hits) / static_cast<double>(m);
}

struct WilsonInterval {
  double lower;
  double upper;
};

WilsonInterval wilson(double p_hat, std::size_t m, double z) {
  double n = static_cast<double>(m);
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double center = (p_hat + z2 / (2.0 * n)) / denom;
  double half =
      z * std::sqrt(p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n)) / denom;
  return {center - half, center + half};
}

}  // namespace

BisectResult bisect_deterministic(const Oracle& oracle, const InputVector& x_t,
                                  const InputVector& x_0, Label source_label,
                                  const BisectionParams& params,
                                  QueryLedger& ledger, RngStream& rng) {
  params.validate();
  if (!misclassified(oracle, x_t, source_label, ledger, rng))
    throw PreconditionViolated("bisect: adversarial endpoint is not misclassified");
  if (misclassified(oracle, x_0, source_label, ledger, rng))
    throw PreconditionViolated("bisect: genuine endpoint is misclassified");

  double lo = 0.0;  // misclassified side
  double hi = 1.0;  // genuine side
  std::size_t steps = 0;
  while (hi - lo > params.tolerance && steps < params.max_steps) {
    double mid = 0.5 * (lo + hi);
    if (misclassified(oracle, interpolate(x_t, x_0, mid), source_label, ledger,
                      rng))
      lo = mid;
    else
      hi = mid;
    ++steps;
  }
  return {interpolate(x_t, x_0, lo), lo, 1.0};
}

BisectResult bisect_noisy(const Oracle& oracle, const InputVector& x_t,
                          const InputVector& x_0, Label source_label,
                          const BisectionParams& params, QueryLedger& ledger,
                          RngStream& rng) {
  params.validate();
  std::size_t m = params.m_repeats;
  double p_adv =
      adversarial_rate(oracle, x_t, source_label, m, ledger, rng);
  if (!(p_adv > 0.5))
    throw NoBracket("bisect: adversarial endpoint mostly classified as source");
  double p_gen = adversarial_rate(oracle, x_0, source_label, m, ledger, rng);
  if (!(p_gen < 0.5))
    throw NoBracket("bisect: genuine endpoint mostly misclassified");

  double lo = 0.0;
  double hi = 1.0;
  double lo_rate = p_adv;  // rate measured at the current lo end
  std::size_t steps = 0;
  while (hi - lo > params.tolerance && steps < params.max_steps) {
    double mid = 0.5 * (lo + hi);
    double rate =
        adversarial_rate(oracle, interpolate(x_t, x_0, mid), source_label, m,
                         ledger, rng);
    ++steps;
    if (rate == 1.0) {
      lo = mid;
      lo_rate = rate;
      continue;
    }
    if (rate == 0.0) {
      hi = mid;
      continue;
    }
    WilsonInterval ci = wilson(rate, m, params.confidence_z);
    if (ci.lower > 0.5) {
      lo = mid;
      lo_rate = rate;
    } else if (ci.upper < 0.5) {
      hi = mid;
    } else {
      // Statistically indistinguishable from the crossing: stop here.
      return {interpolate(x_t, x_0, mid), mid, rate};
    }
  }
  return {interpolate(x_t, x_0, lo), lo, lo_rate};
}

}  // namespace confgate::attack
