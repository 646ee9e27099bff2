#include "confgate/core/oracle.hpp"

namespace confgate::core {

OracleResponse oracle_query(const Oracle& oracle, const InputVector& x,
                            QueryLedger& ledger, RngStream& rng) {
  ledger.charge();
  return oracle.query(x, rng);
}

}  // namespace confgate::core
