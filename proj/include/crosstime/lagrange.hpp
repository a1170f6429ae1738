#pragma once

#include <vector>

namespace crosstime {

/// Lagrange basis over a fixed set of interpolation nodes on [0,1].
class LagrangeBasis {
 public:
  explicit LagrangeBasis(std::vector<double> nodes) : nodes_(std::move(nodes)) {}

  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const { return nodes_; }

  double value(int j, double s) const {
    double v = 1.0;
    for (int k = 0; k < size(); ++k) {
      if (k == j) continue;
      v *= (s - nodes_[k]) / (nodes_[j] - nodes_[k]);
    }
    return v;
  }

  double deriv(int j, double s) const {
    double sum = 0.0;
    for (int i = 0; i < size(); ++i) {
      if (i == j) continue;
      double term = 1.0 / (nodes_[j] - nodes_[i]);
      for (int k = 0; k < size(); ++k) {
        if (k == j || k == i) continue;
        term *= (s - nodes_[k]) / (nodes_[j] - nodes_[k]);
      }
      sum += term;
    }
    return sum;
  }

 private:
  std::vector<double> nodes_;
};

}  // namespace crosstime
