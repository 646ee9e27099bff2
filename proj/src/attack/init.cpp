#include "confgate/attack/init.hpp"

namespace confgate::attack {

core::InputVector init_adversarial(const core::Oracle& oracle,
                                   const core::InputVector& x_0,
                                   core::Label source_label,
                                   std::size_t init_cap,
                                   core::QueryLedger& ledger,
                                   core::RngStream& rng) {
  if (init_cap < 1) throw std::invalid_argument("init cap must be >= 1");
  core::InputVector draw = x_0;
  for (std::size_t attempt = 0; attempt < init_cap; ++attempt) {
    for (double& v : draw.data) v = rng.uniform01();
    core::Label got = core::oracle_query(oracle, draw, ledger, rng).label();
    if (!(got == source_label)) return draw;
  }
  throw InitFailure("no misclassified start found in " +
                    std::to_string(init_cap) + " uniform draws");
}

}  // namespace confgate::attack
