#pragma once

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "egyfrac/rational.hpp"

namespace egyfrac {

/// Finite set of positive integers, stored sorted ascending and duplicate
/// free. Zero is rejected at construction.
class IntSet {
 public:
  using value_type = std::uint64_t;
  using const_iterator = std::vector<value_type>::const_iterator;

  IntSet() = default;
  IntSet(std::initializer_list<value_type> values);
  explicit IntSet(std::vector<value_type> values);

  /// Range [lo, hi], empty if lo > hi.
  static IntSet interval(value_type lo, value_type hi);

  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  const_iterator begin() const { return elems_.begin(); }
  const_iterator end() const { return elems_.end(); }
  value_type operator[](std::size_t i) const { return elems_[i]; }
  value_type front() const { return elems_.front(); }
  value_type back() const { return elems_.back(); }
  std::span<const value_type> values() const { return elems_; }

  bool contains(value_type n) const;

  IntSet with(value_type n) const;
  IntSet without(value_type n) const;
  IntSet set_union(const IntSet& other) const;
  IntSet set_difference(const IntSet& other) const;
  bool is_subset_of(const IntSet& other) const;
  bool disjoint_from(const IntSet& other) const;

  friend bool operator==(const IntSet&, const IntSet&) = default;
  /// Lexicographic on the ascending element sequence.
  friend auto operator<=>(const IntSet& a, const IntSet& b) {
    return a.elems_ <=> b.elems_;
  }

 private:
  struct Sorted {};
  IntSet(Sorted, std::vector<value_type> values) : elems_(std::move(values)) {}
  std::vector<value_type> elems_;
};

std::ostream& operator<<(std::ostream& os, const IntSet& s);

/// R(A): the exact sum of 1/n over A.
Rational recip_sum(const IntSet& a);
Rational recip_sum(std::span<const std::uint64_t> a);

/// Least common multiple of the elements; 1 for the empty set.
BigInt lcm_set(const IntSet& a);
BigInt lcm_set(std::span<const std::uint64_t> a);

// Serialization. Text form is one decimal per line; blank lines and lines
// starting with '#' are skipped. JSON form is a flat array of integers.
IntSet parse_int_set_lines(std::string_view text);
IntSet parse_int_set_json(std::string_view text);
/// Picks the JSON form when the first non-space character is '['.
IntSet parse_int_set(std::string_view text);
std::string format_int_set_lines(const IntSet& s);
std::string format_int_set_json(const IntSet& s);

}  // namespace egyfrac
