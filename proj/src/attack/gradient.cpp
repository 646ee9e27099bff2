#include "confgate/attack/gradient.hpp"

#include <cmath>

namespace confgate::attack {

using core::InputVector;
using core::Label;
using core::Oracle;
using core::QueryLedger;
using core::RngStream;

namespace {

std::vector<double> unit_direction(std::size_t d, RngStream& rng) {
  std::vector<double> u(d);
  while (true) {
    double sq = 0.0;
    for (double& v : u) {
      v = rng.normal();
      sq += v * v;
    }
    if (sq > 1e-24) {
      double inv = 1.0 / std::sqrt(sq);
      for (double& v : u) v *= inv;
      return u;
    }
  }
}

}  // namespace

std::vector<double> combine_indicators(
    const std::vector<double>& phis, const std::vector<std::vector<double>>& us) {
  if (phis.empty() || phis.size() != us.size())
    throw std::invalid_argument("combine_indicators: mismatched inputs");
  double mean = 0.0;
  for (double phi : phis) mean += phi;
  mean /= static_cast<double>(phis.size());

  bool all_equal = true;
  for (double phi : phis)
    if (phi != phis.front()) all_equal = false;
  if (all_equal)
    throw ZeroEstimate("gradient estimate vanished: all probes agreed");

  std::vector<double> g(us.front().size(), 0.0);
  for (std::size_t b = 0; b < phis.size(); ++b) {
    if (us[b].size() != g.size())
      throw std::invalid_argument("combine_indicators: ragged directions");
    double w = (phis[b] - mean) / static_cast<double>(phis.size());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += w * us[b][i];
  }
  return g;
}

std::vector<double> estimate_gradient(const Oracle& oracle,
                                      const InputVector& x_hat,
                                      Label source_label, std::size_t B,
                                      double delta, QueryLedger& ledger,
                                      RngStream& rng) {
  if (B < 2) throw std::invalid_argument("gradient batch size must be >= 2");
  if (!(delta > 0.0)) throw std::invalid_argument("probe radius must be > 0");

  std::size_t d = x_hat.size();
  std::vector<std::vector<double>> us;
  std::vector<double> phis;
  us.reserve(B);
  phis.reserve(B);
  InputVector probe = x_hat;
  for (std::size_t b = 0; b < B; ++b) {
    std::vector<double> u = unit_direction(d, rng);
    for (std::size_t i = 0; i < d; ++i)
      probe.data[i] = x_hat.data[i] + delta * u[i];
    bool adv =
        !(core::oracle_query(oracle, probe, ledger, rng).label() == source_label);
    phis.push_back(adv ? 1.0 : -1.0);
    us.push_back(std::move(u));
  }

  std::vector<double> g = combine_indicators(phis, us);
  double n = core::norm(g);
  if (n <= 0.0)
    throw ZeroEstimate("gradient estimate vanished: directions cancelled");
  for (double& v : g) v /= n;
  return g;
}

}  // namespace confgate::attack
