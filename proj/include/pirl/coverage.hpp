#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "pirl/types.hpp"

namespace pirl {

// Per-ground-cell covered flags and visit counts. Covered flags are monotone
// within an episode; visit counts feed the curiosity bonus and the RVC metric.
class CoverageMap {
 public:
  CoverageMap() : CoverageMap(GridDims{}) {}
  explicit CoverageMap(const GridDims& dims)
      : x_size_(dims.x_size),
        y_size_(dims.y_size),
        covered_(static_cast<std::size_t>(x_size_) * y_size_, 0),
        visits_(static_cast<std::size_t>(x_size_) * y_size_, 0) {}

  void clear() {
    std::fill(covered_.begin(), covered_.end(), 0);
    std::fill(visits_.begin(), visits_.end(), 0);
    covered_count_ = 0;
    redundant_view_count_ = 0;
  }

  int x_size() const { return x_size_; }
  int y_size() const { return y_size_; }
  int total_ground_cells() const { return x_size_ * y_size_; }

  bool covered(int x, int y) const { return covered_[index(x, y)] != 0; }
  int visit_count(int x, int y) const { return visits_[index(x, y)]; }
  int covered_count() const { return covered_count_; }

  // Total observations that landed on an already-covered cell.
  long redundant_view_count() const { return redundant_view_count_; }

  // Ground cells observed more than once, the RVC numerator.
  int multi_visit_count() const {
    int n = 0;
    for (int v : visits_) n += v > 1;
    return n;
  }

  double covered_fraction() const {
    return static_cast<double>(covered_count_) / total_ground_cells();
  }

  // Records one observation of each cell; returns the number newly covered.
  // When prior_visits is non-null it receives the pre-observation visit count
  // of each cell, aligned with `cells`.
  int observe(std::span<const GroundCell> cells, std::vector<int>* prior_visits = nullptr) {
    int newly = 0;
    if (prior_visits) {
      prior_visits->clear();
      prior_visits->reserve(cells.size());
    }
    for (const auto& c : cells) {
      const std::size_t i = index(c.x, c.y);
      if (prior_visits) prior_visits->push_back(visits_[i]);
      if (!covered_[i]) {
        covered_[i] = 1;
        ++covered_count_;
        ++newly;
      } else {
        ++redundant_view_count_;
      }
      ++visits_[i];
    }
    return newly;
  }

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(x) * y_size_ + y;
  }

  int x_size_;
  int y_size_;
  std::vector<std::uint8_t> covered_;
  std::vector<int> visits_;
  int covered_count_ = 0;
  long redundant_view_count_ = 0;
};

}  // namespace pirl
