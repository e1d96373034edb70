#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "profitmax/errors.hpp"

namespace profitmax {

using NodeId = std::uint32_t;

/// Subset of a fixed universe {0, ..., n-1}, stored as a membership map.
/// Membership tests are O(1); iteration is O(n).
class NodeSet {
 public:
  NodeSet() = default;
  explicit NodeSet(std::size_t universe) : member_(universe, 0) {}

  NodeSet(std::size_t universe, std::span<const NodeId> nodes) : NodeSet(universe) {
    for (NodeId v : nodes) insert(v);
  }

  NodeSet(std::size_t universe, std::initializer_list<NodeId> nodes)
      : NodeSet(universe, std::span<const NodeId>(nodes.begin(), nodes.size())) {}

  static NodeSet full(std::size_t universe) {
    NodeSet s(universe);
    for (auto& m : s.member_) m = 1;
    s.size_ = universe;
    return s;
  }

  std::size_t universe() const noexcept { return member_.size(); }
  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  bool contains(NodeId v) const noexcept { return v < member_.size() && member_[v] != 0; }

  void insert(NodeId v) {
    check(v);
    if (!member_[v]) {
      member_[v] = 1;
      ++size_;
    }
  }

  void erase(NodeId v) {
    check(v);
    if (member_[v]) {
      member_[v] = 0;
      --size_;
    }
  }

  NodeSet with(NodeId v) const {
    NodeSet s = *this;
    s.insert(v);
    return s;
  }

  NodeSet without(NodeId v) const {
    NodeSet s = *this;
    s.erase(v);
    return s;
  }

  /// Members in increasing id order.
  std::vector<NodeId> members() const {
    std::vector<NodeId> out;
    out.reserve(size_);
    for (std::size_t v = 0; v < member_.size(); ++v)
      if (member_[v]) out.push_back(static_cast<NodeId>(v));
    return out;
  }

  bool is_subset_of(const NodeSet& other) const noexcept {
    if (size_ > other.size_) return false;
    for (std::size_t v = 0; v < member_.size(); ++v)
      if (member_[v] && !other.contains(static_cast<NodeId>(v))) return false;
    return true;
  }

  friend bool operator==(const NodeSet& a, const NodeSet& b) noexcept {
    return a.size_ == b.size_ && a.member_ == b.member_;
  }

  friend NodeSet set_union(const NodeSet& a, const NodeSet& b) {
    NodeSet out = a;
    for (std::size_t v = 0; v < b.member_.size(); ++v)
      if (b.member_[v]) out.insert(static_cast<NodeId>(v));
    return out;
  }

  friend NodeSet set_intersection(const NodeSet& a, const NodeSet& b) {
    NodeSet out(a.universe());
    for (std::size_t v = 0; v < a.member_.size(); ++v)
      if (a.member_[v] && b.contains(static_cast<NodeId>(v))) out.insert(static_cast<NodeId>(v));
    return out;
  }

  friend NodeSet set_difference(const NodeSet& a, const NodeSet& b) {
    NodeSet out(a.universe());
    for (std::size_t v = 0; v < a.member_.size(); ++v)
      if (a.member_[v] && !b.contains(static_cast<NodeId>(v))) out.insert(static_cast<NodeId>(v));
    return out;
  }

 private:
  void check(NodeId v) const {
    if (v >= member_.size()) throw DomainError("node id " + std::to_string(v) + " out of range");
  }

  std::vector<std::uint8_t> member_;
  std::size_t size_ = 0;
};

}  // namespace profitmax
