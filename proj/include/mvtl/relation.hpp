#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace mvtl {

/// Binary relation over world indices 0..n-1, intended as a strict preference:
/// contains(i, j) reads "world i is preferred to world j".
class strict_order {
 public:
  strict_order() = default;
  explicit strict_order(std::size_t n) : n_(n), bits_(n * n, false) {}

  std::size_t size() const noexcept { return n_; }

  bool contains(std::size_t i, std::size_t j) const { return bits_[i * n_ + j]; }
  void insert(std::size_t i, std::size_t j) { bits_[i * n_ + j] = true; }
  void erase(std::size_t i, std::size_t j) { bits_[i * n_ + j] = false; }

  std::vector<std::pair<std::size_t, std::size_t>> pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (contains(i, j)) out.emplace_back(i, j);
    return out;
  }

  bool empty() const {
    for (bool b : bits_)
      if (b) return false;
    return true;
  }

  /// True when no world is strictly preferred to w.
  bool is_minimal(std::size_t w) const {
    for (std::size_t i = 0; i < n_; ++i)
      if (contains(i, w)) return false;
    return true;
  }

  strict_order transitive_closure() const {
    strict_order c = *this;
    for (std::size_t k = 0; k < n_; ++k)
      for (std::size_t i = 0; i < n_; ++i)
        if (c.contains(i, k))
          for (std::size_t j = 0; j < n_; ++j)
            if (c.contains(k, j)) c.insert(i, j);
    return c;
  }

  bool is_irreflexive() const {
    for (std::size_t i = 0; i < n_; ++i)
      if (contains(i, i)) return false;
    return true;
  }

  bool is_transitive() const { return transitive_closure() == *this; }

  bool is_strict_partial_order() const { return is_irreflexive() && is_transitive(); }

  /// x < y implies x < z or z < y, for all z.
  bool is_modular() const {
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t y = 0; y < n_; ++y)
        if (contains(x, y))
          for (std::size_t z = 0; z < n_; ++z)
            if (!contains(x, z) && !contains(z, y)) return false;
    return true;
  }

  /// x < y iff rank[x] > rank[y]: the order induced by a ranking where higher is better.
  template <typename T>
  static strict_order from_scores(const std::vector<T>& score) {
    strict_order r(score.size());
    for (std::size_t i = 0; i < score.size(); ++i)
      for (std::size_t j = 0; j < score.size(); ++j)
        if (score[j] < score[i]) r.insert(i, j);
    return r;
  }

  friend bool operator==(const strict_order&, const strict_order&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<bool> bits_;
};

/// Every strict partial order on n labelled elements, in a fixed order (n <= 4).
inline std::vector<strict_order> all_strict_partial_orders(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) slots.emplace_back(i, j);
  std::vector<strict_order> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << slots.size()); ++mask) {
    strict_order r(n);
    for (std::size_t b = 0; b < slots.size(); ++b)
      if (mask & (std::size_t{1} << b)) r.insert(slots[b].first, slots[b].second);
    if (r.is_strict_partial_order()) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace mvtl
