#pragma once

#include "childstat/poly.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace childstat {

/// Finite set S of allowed child counts. Always contains 0.
class ChildSet {
 public:
  /// {0}: only the single-vertex tree.
  ChildSet() : elements_{0} {}
  /// Sorts and validates; throws Error(InvalidChildSet) on duplicates,
  /// negative entries, an empty set or a set without 0.
  explicit ChildSet(std::vector<long> elements);
  ChildSet(std::initializer_list<long> elements)
      : ChildSet(std::vector<long>(elements)) {}

  /// Parses "0,1,2".
  static ChildSet parse(std::string_view text);

  std::span<const unsigned> elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  unsigned max() const { return elements_.back(); }
  bool contains(long s) const;
  /// Position of s in elements(); s must be a member.
  std::size_t index_of(unsigned s) const;

  /// phi(z) = sum_{s in S} z^s.
  DensePolynomial phi() const;

  std::string to_string() const;

  friend bool operator==(const ChildSet&, const ChildSet&) = default;

 private:
  std::vector<unsigned> elements_;
};

}  // namespace childstat
