#include "confgate/eval/pareto.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace confgate::eval {

bool dominates(const ExperimentPoint& a, const ExperimentPoint& b) {
  return a.ca >= b.ca && a.ra >= b.ra;
}

bool strictly_improves(const ExperimentPoint& a, const ExperimentPoint& b) {
  return dominates(a, b) && (a.ca > b.ca || a.ra > b.ra);
}

std::vector<std::size_t> pareto_frontier(
    const std::vector<ExperimentPoint>& points) {
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (points[a].ca != points[b].ca) return points[a].ca > points[b].ca;
    if (points[a].ra != points[b].ra) return points[a].ra > points[b].ra;
    return a < b;
  });

  // Sweep in CA-descending order: a point survives iff its RA strictly
  // exceeds everything at higher CA and nothing at equal CA beats it.
  std::vector<std::size_t> frontier;
  double best_ra = -std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && points[order[j]].ca == points[order[i]].ca) ++j;
    double group_max_ra = points[order[i]].ra;
    if (group_max_ra > best_ra)
      for (std::size_t k = i; k < j; ++k)
        if (points[order[k]].ra == group_max_ra) frontier.push_back(order[k]);
    best_ra = std::max(best_ra, group_max_ra);
    i = j;
  }
  return frontier;
}

}  // namespace confgate::eval
