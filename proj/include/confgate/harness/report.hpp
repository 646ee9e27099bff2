#pragma once

#include <string>
#include <vector>

#include "confgate/eval/metrics.hpp"

namespace confgate::harness {

// One line of the operating-point summary, e.g. "CA 0.82 / RA 0.71".
std::string format_ca_ra(double ca, double ra);

// True when no point in `baseline` weakly dominates `p` on (CA, RA). Cells
// that escape every baseline point are the ones worth highlighting.
bool escapes_baseline(const eval::ExperimentPoint& p,
                      const std::vector<eval::ExperimentPoint>& baseline);

struct RenderedTable {
  std::string text;
  std::vector<std::string> warnings;
};

// Renders one text table per (attack, defense) block: rows are nu values,
// columns are tau values, each cell "CA/RA" to two decimals. A cell is
// wrapped in asterisks when it escapes every vanilla cell of its block,
// where vanilla means tau = 0 (defense off) or tau = 1 (defense always on).
// Blocks with no tau = 1 column get no markings and a warning instead.
RenderedTable render_table(const std::vector<eval::ExperimentPoint>& points);

}  // namespace confgate::harness
