#include "confgate/core/types.hpp"

#include <algorithm>
#include <cmath>

namespace confgate::core {

std::size_t Shape::count() const {
  std::size_t n = 1;
  for (std::size_t d : dims) n *= d;
  return dims.empty() ? 0 : n;
}

InputVector::InputVector(Shape s, std::vector<double> d)
    : shape(std::move(s)), data(std::move(d)) {
  if (shape.count() != data.size())
    throw std::invalid_argument("InputVector: shape count " +
                                std::to_string(shape.count()) +
                                " != data size " + std::to_string(data.size()));
}

Label::Label(int v, int n_classes) : value(v) {
  if (v < 0 || v >= n_classes)
    throw std::out_of_range("Label " + std::to_string(v) +
                            " outside [0, " + std::to_string(n_classes) + ")");
}

ProbVector::ProbVector(std::vector<double> p) : p_(std::move(p)) {
  if (p_.empty()) throw std::invalid_argument("ProbVector: empty");
  double sum = 0.0;
  for (double v : p_) {
    if (!(v >= 0.0)) throw std::invalid_argument("ProbVector: negative entry");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-6)
    throw std::invalid_argument("ProbVector: sum " + std::to_string(sum) +
                                " not within 1e-6 of 1");
}

Label ProbVector::argmax() const {
  auto it = std::max_element(p_.begin(), p_.end());
  return Label(static_cast<int>(it - p_.begin()));
}

double ProbVector::max() const {
  return *std::max_element(p_.begin(), p_.end());
}

double norm(const std::vector<double>& v, NormKind kind) {
  (void)kind;  // only l2 for now
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double distance(const InputVector& a, const InputVector& b, NormKind kind) {
  (void)kind;
  if (a.size() != b.size())
    throw std::invalid_argument("distance: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a.data[i] - b.data[i];
    s += d * d;
  }
  return std::sqrt(s);
}

void clamp01_inplace(InputVector& x) {
  for (double& v : x.data) v = std::clamp(v, 0.0, 1.0);
}

InputVector clamp01(InputVector x) {
  clamp01_inplace(x);
  return x;
}

void QueryLedger::charge() {
  if (used_ >= budget_)
    throw BudgetExhausted("query budget " + std::to_string(budget_) +
                          " exhausted");
  ++used_;
}

Label OracleResponse::label() const {
  if (is_decision()) return std::get<Label>(v_);
  return std::get<ProbVector>(v_).argmax();
}

const ProbVector& OracleResponse::probs() const {
  if (is_decision())
    throw std::logic_error("OracleResponse: scores requested from a decision");
  return std::get<ProbVector>(v_);
}

}  // namespace confgate::core
