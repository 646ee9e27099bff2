#pragma once

#include "confgate/core/rng.hpp"
#include "confgate/core/types.hpp"

namespace confgate::core {

enum class ResponseMode { kDecision, kScore };

/// Attacker-facing classifier interface. Implementations must be safe for
/// concurrent read-only use; all randomness flows through the caller's
/// stream so that repeated runs with the same stream replay exactly.
class Oracle {
 public:
  virtual ~Oracle() = default;

  virtual ResponseMode mode() const = 0;

  /// True when the response is a pure function of the input (no internal
  /// randomness consumed). Attackers use this to pick probe strategies.
  virtual bool deterministic() const = 0;

  virtual OracleResponse query(const InputVector& x, RngStream& rng) const = 0;
};

/// The one place attacker queries get billed: charges exactly one unit,
/// then forwards to the oracle. Throws BudgetExhausted before querying
/// when the ledger is spent.
OracleResponse oracle_query(const Oracle& oracle, const InputVector& x,
                            QueryLedger& ledger, RngStream& rng);

}  // namespace confgate::core
