#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "confgate/core/types.hpp"

namespace confgate::attack {

// Endpoints handed to a bisection do not actually bracket the boundary.
struct PreconditionViolated : std::runtime_error {
  explicit PreconditionViolated(const std::string& what)
      : std::runtime_error(what) {}
};

// Noisy bisection could not establish a bracket from the endpoint samples.
struct NoBracket : std::runtime_error {
  explicit NoBracket(const std::string& what) : std::runtime_error(what) {}
};

// No misclassified starting point was found within the init cap.
struct InitFailure : std::runtime_error {
  explicit InitFailure(const std::string& what) : std::runtime_error(what) {}
};

// Every probe of a gradient-estimation batch returned the same indicator,
// so the baseline subtraction annihilates the estimate. Callers typically
// enlarge the probe radius and retry.
struct ZeroEstimate : std::runtime_error {
  explicit ZeroEstimate(const std::string& what) : std::runtime_error(what) {}
};

struct BisectionParams {
  double tolerance = 1e-3;     // stop when the bracket on k is this narrow
  std::size_t max_steps = 64;  // probe cap, noisy mode
  std::size_t m_repeats = 30;  // queries per probe, noisy mode
  double confidence_z = 1.6449;  // Wilson half-width multiplier for stopping

  void validate() const;
};

enum class AttackKind { kHsjaLike, kSurfreeLike };
enum class AttackMode { kUntargeted, kTargeted };

std::string to_string(AttackKind kind);
AttackKind attack_from_string(const std::string& name);

struct AttackConfig {
  AttackKind kind = AttackKind::kHsjaLike;
  std::size_t budget = 2000;  // query budget Q
  double epsilon = 1.0;       // distortion bound, used by the evaluator
  core::NormKind norm = core::NormKind::kL2;
  AttackMode mode = AttackMode::kUntargeted;

  std::size_t init_cap = 100;   // uniform draws allowed to find a start
  std::size_t b0 = 24;          // gradient batch size at round 1
  std::size_t max_rounds = 512;
  double theta_max = 1.0;       // arc search half-range, radians
  BisectionParams bisect;

  void validate() const;
};

struct Milestone {
  std::size_t queries = 0;  // ledger total when the milestone was recorded
  double distance = 0.0;    // best confirmed adversarial distortion so far
};

// Progress record of one attack run. `success` stays unset until the
// evaluator re-checks the final candidate against its own distortion bound.
struct AttackTrace {
  std::vector<Milestone> milestones;
  core::InputVector final_candidate;
  double final_distance = 0.0;
  std::size_t queries_used = 0;
  std::optional<bool> success;
};

}  // namespace confgate::attack
