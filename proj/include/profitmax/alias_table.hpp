#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "profitmax/errors.hpp"
#include "profitmax/random.hpp"

namespace profitmax {

/// Walker/Vose alias table: O(n) build, O(1) draws proportional to weight.
/// Entries of weight zero are never returned.
class AliasTable {
 public:
  AliasTable() = default;

  explicit AliasTable(std::span<const double> weights) : threshold_(weights.size(), 0.0), alias_(weights.size(), 0) {
    const std::size_t n = weights.size();
    double total = 0.0;
    std::size_t some_positive = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(weights[i] >= 0.0)) throw DomainError("alias table weights must be >= 0");
      total += weights[i];
      if (weights[i] > 0.0) some_positive = i;
    }
    if (!(total > 0.0)) throw DomainError("alias table needs a positive total weight");

    std::vector<std::size_t> small, large;
    std::vector<double> scaled(n);
    for (std::size_t i = 0; i < n; ++i) {
      // Zero-weight slots always defer to a positive entry.
      if (weights[i] == 0.0) {
        threshold_[i] = 0.0;
        alias_[i] = static_cast<std::uint32_t>(some_positive);
        continue;
      }
      scaled[i] = weights[i] * static_cast<double>(n) / total;
      (scaled[i] < 1.0 ? small : large).push_back(i);
    }
    while (!small.empty() && !large.empty()) {
      const std::size_t s = small.back(), l = large.back();
      small.pop_back();
      threshold_[s] = scaled[s];
      alias_[s] = static_cast<std::uint32_t>(l);
      scaled[l] -= 1.0 - scaled[s];
      if (scaled[l] < 1.0) {
        large.pop_back();
        small.push_back(l);
      }
    }
    // Leftovers are 1 up to rounding.
    for (std::size_t i : large) threshold_[i] = 1.0;
    for (std::size_t i : small) threshold_[i] = 1.0;
  }

  std::size_t size() const noexcept { return threshold_.size(); }

  std::size_t sample(Rng& rng) const {
    const std::size_t slot = uniform_index(rng, threshold_.size());
    return uniform01(rng) < threshold_[slot] ? slot : alias_[slot];
  }

 private:
  std::vector<double> threshold_;
  std::vector<std::uint32_t> alias_;
};

}  // namespace profitmax
