#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace confgate::core {

/// Tensor extents. Rank 1 for flat feature vectors, rank 3 for
/// channel-major (c, h, w) images.
struct Shape {
  std::vector<std::size_t> dims;

  Shape() = default;
  explicit Shape(std::size_t features) : dims{features} {}
  Shape(std::size_t c, std::size_t h, std::size_t w) : dims{c, h, w} {}

  std::size_t rank() const { return dims.size(); }
  std::size_t count() const;
  bool is_image() const { return dims.size() == 3; }
  std::size_t channels() const { return dims.at(0); }
  std::size_t height() const { return dims.at(1); }
  std::size_t width() const { return dims.at(2); }

  friend bool operator==(const Shape&, const Shape&) = default;
};

/// A point in [0,1]^d with an attached shape. Values are stored as
/// doubles internally; the on-disk format is f32 (see io.hpp).
struct InputVector {
  Shape shape;
  std::vector<double> data;

  InputVector() = default;
  InputVector(Shape s, std::vector<double> d);

  std::size_t size() const { return data.size(); }
  double& operator[](std::size_t i) { return data[i]; }
  double operator[](std::size_t i) const { return data[i]; }
};

/// Class index. The two-argument form validates against the class count.
struct Label {
  int value = 0;

  Label() = default;
  explicit Label(int v) : value(v) {}
  Label(int v, int n_classes);

  friend bool operator==(Label, Label) = default;
};

/// Discrete distribution over classes: entries nonnegative, summing to 1
/// within 1e-6. Validated on construction.
class ProbVector {
 public:
  ProbVector() = default;
  explicit ProbVector(std::vector<double> p);

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  const std::vector<double>& values() const { return p_; }

  /// Index of the largest entry; ties resolve to the lowest index.
  Label argmax() const;
  double max() const;

 private:
  std::vector<double> p_;
};

enum class NormKind { kL2 };

double norm(const std::vector<double>& v, NormKind kind = NormKind::kL2);
double distance(const InputVector& a, const InputVector& b,
                NormKind kind = NormKind::kL2);

/// Elementwise clamp to [0,1]. Idempotent.
InputVector clamp01(InputVector x);
void clamp01_inplace(InputVector& x);

struct BudgetExhausted : std::runtime_error {
  explicit BudgetExhausted(const std::string& what) : std::runtime_error(what) {}
};

/// Counts attacker-visible queries against a fixed budget. Charging past
/// the budget throws; the counter never moves backwards.
class QueryLedger {
 public:
  explicit QueryLedger(std::size_t budget) : budget_(budget) {}

  void charge();
  std::size_t used() const { return used_; }
  std::size_t budget() const { return budget_; }
  std::size_t remaining() const { return budget_ - used_; }

 private:
  std::size_t budget_;
  std::size_t used_ = 0;
};

/// What the attacker sees: either a bare decision or the full score
/// vector, depending on the oracle's configured mode.
class OracleResponse {
 public:
  static OracleResponse decision(Label l) { return OracleResponse(l); }
  static OracleResponse scores(ProbVector p) { return OracleResponse(std::move(p)); }

  bool is_decision() const { return std::holds_alternative<Label>(v_); }

  /// Decision label, or the argmax for score responses.
  Label label() const;

  /// Full scores; throws if this is a decision-only response.
  const ProbVector& probs() const;

 private:
  explicit OracleResponse(Label l) : v_(l) {}
  explicit OracleResponse(ProbVector p) : v_(std::move(p)) {}
  std::variant<Label, ProbVector> v_;
};

}  // namespace confgate::core
