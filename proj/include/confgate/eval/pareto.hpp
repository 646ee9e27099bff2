#pragma once

#include <cstddef>
#include <vector>

#include "confgate/eval/metrics.hpp"

namespace confgate::eval {

// Weak domination in the (CA, RA) plane: a is at least as good as b in both
// coordinates. Reflexive; ties dominate both ways.
bool dominates(const ExperimentPoint& a, const ExperimentPoint& b);

// Domination plus a strict improvement in at least one coordinate. This is
// the filtering relation for the frontier: under weak domination alone,
// duplicate points would knock each other out.
bool strictly_improves(const ExperimentPoint& a, const ExperimentPoint& b);

// Indices of the points no other point strictly improves on, sorted by CA
// descending (RA descending, then input order, for ties). Duplicates of a
// frontier point are all retained.
std::vector<std::size_t> pareto_frontier(const std::vector<ExperimentPoint>& points);

}  // namespace confgate::eval
