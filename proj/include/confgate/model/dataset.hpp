#pragma once

#include <vector>

#include "confgate/core/types.hpp"

namespace confgate::model {

/// Labeled samples with a fixed class count. Storage order is whatever the
/// producer emitted; the harness shuffles before splitting.
struct LabeledDataset {
  int n_classes = 0;
  std::vector<core::InputVector> xs;
  std::vector<core::Label> ys;

  std::size_t size() const { return xs.size(); }

  void push_back(core::InputVector x, core::Label y) {
    xs.push_back(std::move(x));
    ys.push_back(y);
  }

  /// Half-open index range [first, last) as a copy.
  LabeledDataset slice(std::size_t first, std::size_t last) const;
};

}  // namespace confgate::model
