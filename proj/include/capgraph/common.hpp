// Shared error types, numeric constants and the verification report record.
#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace capgraph {

// Violated operation precondition (caller contract).
class precondition_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data (samples, configs feeding bad values).
class data_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Iteration failed to converge within its budget.
class convergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Symmetric tolerance for closed inequalities decided in floating point.
inline constexpr double kTieTol = 1e-12;
// Strict inequalities must clear zero by more than this.
inline constexpr double kStrictTol = 1e-12;

// Outcome of one numerical check: a primary scalar measured against a
// threshold, plus named diagnostic values in a fixed order.
struct VerificationReport {
  std::string name;
  double value = 0.0;      // max residual, or min slack, depending on check
  double tolerance = 0.0;  // pass threshold the value was compared against
  bool pass = false;
  long nodes_evaluated = 0;
  std::vector<std::pair<std::string, double>> details;

  void detail(const std::string& key, double v) { details.emplace_back(key, v); }
  double detail_value(const std::string& key) const {
    for (const auto& [k, v] : details)
      if (k == key) return v;
    throw data_error("no detail named " + key);
  }
};

}  // namespace capgraph
