#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace crosstime {

/// Strictly increasing partition t0 = tau_0 < tau_1 < ... < tau_N = T.
class TimeMesh {
 public:
  explicit TimeMesh(std::vector<double> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.size() < 2) throw std::invalid_argument("TimeMesh: need at least one element");
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
      if (!(nodes_[i] > nodes_[i - 1]))
        throw std::invalid_argument("TimeMesh: nodes must be strictly increasing");
    }
  }

  static TimeMesh uniform(double t0, double t1, int n_elements) {
    if (n_elements < 1) throw std::invalid_argument("TimeMesh::uniform: need n_elements >= 1");
    std::vector<double> nodes(n_elements + 1);
    for (int i = 0; i <= n_elements; ++i)
      nodes[i] = t0 + (t1 - t0) * (static_cast<double>(i) / n_elements);
    nodes.front() = t0;
    nodes.back() = t1;
    return TimeMesh(std::move(nodes));
  }

  const std::vector<double>& nodes() const { return nodes_; }
  int n_elements() const { return static_cast<int>(nodes_.size()) - 1; }
  double t0() const { return nodes_.front(); }
  double t1() const { return nodes_.back(); }
  double node(int i) const { return nodes_[i]; }
  double element_width(int e) const { return nodes_[e + 1] - nodes_[e]; }
  double max_width() const {
    double h = 0.0;
    for (int e = 0; e < n_elements(); ++e) h = std::max(h, element_width(e));
    return h;
  }

  /// Element containing t, using the right-limit convention at interior nodes.
  int element_of(double t) const {
    if (t < t0() || t > t1()) throw std::out_of_range("TimeMesh::element_of: t outside mesh");
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t);
    int e = static_cast<int>(it - nodes_.begin()) - 1;
    return std::min(e, n_elements() - 1);
  }

 private:
  std::vector<double> nodes_;
};

}  // namespace crosstime
