#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "confgate/attack/types.hpp"

namespace confgate::attack {

// JSON-lines rendering of one attack run: a "milestone" line per progress
// record, then one "final" line carrying the evaluator's success verdict
// when it has been filled in. Keys are emitted in sorted order so output
// bytes are reproducible.
std::string trace_jsonl(const AttackTrace& trace, std::size_t sample_index);

// The final line of one sample's trace, as read back from a JSONL stream.
struct TraceFinal {
  std::size_t sample = 0;
  std::size_t queries = 0;
  double distance = 0.0;
  bool has_success = false;
  bool success = false;
};

// Extracts every "final" record from a JSONL stream, in file order.
std::vector<TraceFinal> read_trace_finals(std::istream& in);

}  // namespace confgate::attack
