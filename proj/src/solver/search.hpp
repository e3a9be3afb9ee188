#pragma once

// Integer formulation shared by the search strategies: with L = lcm(A) the
// equation R(S) = target becomes a subset sum of weights L/n hitting
// target*L. Elements are ascending, so weights are descending.

#include <algorithm>
#include <iterator>
#include <atomic>
#include <bit>
#include <cstdint>
#include <mutex>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "egyfrac/rational.hpp"

namespace egyfrac::solver {

using u128 = unsigned __int128;

template <class W>
struct Instance {
  std::vector<std::uint64_t> elems;
  std::vector<W> weights;
  W target{};
};

template <class W>
W from_big(const BigInt& v);

template <>
inline u128 from_big<u128>(const BigInt& v) {
  u128 out = 0;
  std::size_t count = 0;
  std::uint64_t limbs[2] = {0, 0};
  mpz_export(limbs, &count, -1, sizeof(std::uint64_t), 0, 0, v.get_mpz_t());
  out = (static_cast<u128>(limbs[1]) << 64) | limbs[0];
  return out;
}

template <>
inline BigInt from_big<BigInt>(const BigInt& v) {
  return v;
}

template <>
inline std::uint64_t from_big<std::uint64_t>(const BigInt& v) {
  return v.get_ui();
}

inline bool is_zero(const u128& v) { return v == 0; }
inline bool is_zero(const std::uint64_t& v) { return v == 0; }
inline bool is_zero(const BigInt& v) { return sgn(v) == 0; }

template <class W>
Instance<W> make_instance(const std::vector<std::uint64_t>& elems,
                          const BigInt& l, const BigInt& target) {
  Instance<W> in;
  in.elems = elems;
  in.weights.reserve(elems.size());
  for (auto n : elems) {
    in.weights.push_back(from_big<W>(BigInt(l / BigInt(static_cast<unsigned long>(n)))));
  }
  in.target = from_big<W>(target);
  return in;
}

enum class Outcome { none, found, budget };

// Shared counters so that DFS workers respect one budget.
struct SearchControl {
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> stop{false};
  std::uint64_t budget = 0;

  bool charge() {
    return nodes.fetch_add(1, std::memory_order_relaxed) + 1 <= budget;
  }
};

/// Depth-first branch and bound. Children are tried in ascending element
/// order, so the first solution met is the lexicographically smallest.
template <class W>
class Dfs {
 public:
  Dfs(const Instance<W>& in, SearchControl& ctl) : in_(in), ctl_(ctl) {
    const std::size_t n = in.weights.size();
    suffix_.assign(n + 1, W{});
    for (std::size_t i = n; i-- > 0;) suffix_[i] = suffix_[i + 1] + in.weights[i];
  }

  Outcome find(std::vector<std::size_t>& chosen) {
    return find_from(0, in_.target, chosen);
  }

  /// First index j >= i whose weight fits into the deficit.
  std::size_t first_fit(std::size_t i, const W& deficit) const {
    const auto it = std::partition_point(in_.weights.begin() + i, in_.weights.end(),
                                         [&](const W& w) { return w > deficit; });
    return static_cast<std::size_t>(it - in_.weights.begin());
  }

  const W& suffix(std::size_t i) const { return suffix_[i]; }

  Outcome find_from(std::size_t i, const W& deficit, std::vector<std::size_t>& chosen) {
    if (is_zero(deficit)) return Outcome::found;
    if (ctl_.stop.load(std::memory_order_relaxed)) return Outcome::none;
    if (!ctl_.charge()) return Outcome::budget;
    const std::size_t n = in_.weights.size();
    if (i >= n || suffix_[i] < deficit) return Outcome::none;
    for (std::size_t j = first_fit(i, deficit); j < n; ++j) {
      // Remaining reciprocal mass below the deficit: no completion exists.
      if (suffix_[j] < deficit) break;
      chosen.push_back(j);
      const Outcome r = find_from(j + 1, W(deficit - in_.weights[j]), chosen);
      if (r != Outcome::none) return r;
      chosen.pop_back();
    }
    return Outcome::none;
  }

  /// Number of completions of the deficit using indices >= i.
  std::uint64_t count_from(std::size_t i, const W& deficit) {
    if (is_zero(deficit)) return 1;
    ctl_.charge();
    const std::size_t n = in_.weights.size();
    if (i >= n || suffix_[i] < deficit) return 0;
    std::uint64_t total = 0;
    for (std::size_t j = first_fit(i, deficit); j < n; ++j) {
      if (suffix_[j] < deficit) break;
      total += count_from(j + 1, W(deficit - in_.weights[j]));
    }
    return total;
  }

 private:
  const Instance<W>& in_;
  SearchControl& ctl_;
  std::vector<W> suffix_;
};

/// DFS with the top-level branches handed out to worker threads. The
/// witness found is some solution, not necessarily the smallest.
template <class W>
Outcome parallel_find(const Instance<W>& in, SearchControl& ctl, unsigned threads,
                      std::vector<std::size_t>& chosen) {
  if (is_zero(in.target)) return Outcome::found;
  Dfs<W> root(in, ctl);
  const std::size_t n = in.weights.size();
  if (n == 0 || root.suffix(0) < in.target) return Outcome::none;
  std::atomic<std::size_t> next{root.first_fit(0, in.target)};
  std::mutex mu;
  std::optional<std::vector<std::size_t>> result;
  std::atomic<bool> over_budget{false};
  auto worker = [&] {
    Dfs<W> dfs(in, ctl);
    while (!ctl.stop.load()) {
      const std::size_t j = next.fetch_add(1);
      if (j >= n || dfs.suffix(j) < in.target) return;
      std::vector<std::size_t> local{j};
      const Outcome r = dfs.find_from(j + 1, W(in.target - in.weights[j]), local);
      if (r == Outcome::found) {
        std::lock_guard lock(mu);
        if (!result) result = std::move(local);
        ctl.stop = true;
      } else if (r == Outcome::budget) {
        over_budget = true;
        ctl.stop = true;
      }
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  pool.clear();
  if (result) {
    chosen = std::move(*result);
    return Outcome::found;
  }
  return over_budget ? Outcome::budget : Outcome::none;
}

// Meet in the middle: elements split by alternating rank; all subset sums of
// each half are enumerated and matched. Masks are global (bit i = element i).

template <class W>
struct HalfSums {
  std::vector<std::pair<W, std::uint64_t>> entries;
};

template <class W>
HalfSums<W> enumerate_half(const Instance<W>& in, const std::vector<std::size_t>& idx) {
  HalfSums<W> h;
  const std::size_t count = std::size_t{1} << idx.size();
  h.entries.resize(count);
  h.entries[0] = {W{}, 0};
  for (std::size_t m = 1; m < count; ++m) {
    const unsigned low = static_cast<unsigned>(std::countr_zero(m));
    const auto& prev = h.entries[m & (m - 1)];
    h.entries[m] = {W(prev.first + in.weights[idx[low]]),
                    prev.second | (std::uint64_t{1} << idx[low])};
  }
  return h;
}

/// True when the set with global mask a precedes b lexicographically; valid
/// for distinct sets of equal weight (neither is a prefix of the other).
inline bool lex_less(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t diff = a ^ b;
  return diff != 0 && (a & (diff & (~diff + 1))) != 0;
}

template <class W>
struct MeetMiddle {
  HalfSums<W> left;
  HalfSums<W> right;  // sorted by sum

  explicit MeetMiddle(const Instance<W>& in) {
    std::vector<std::size_t> li, ri;
    for (std::size_t i = 0; i < in.weights.size(); ++i) {
      (i % 2 == 0 ? li : ri).push_back(i);
    }
    left = enumerate_half(in, li);
    right = enumerate_half(in, ri);
    std::sort(right.entries.begin(), right.entries.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
  }

  template <class F>
  void for_each_match(const W& target, F&& fn) const {
    for (const auto& [s, m] : left.entries) {
      if (s > target) continue;
      const W need = target - s;
      auto lo = std::partition_point(right.entries.begin(), right.entries.end(),
                                     [&](const auto& e) { return e.first < need; });
      for (; lo != right.entries.end() && lo->first == need; ++lo) {
        if (!fn(m | lo->second)) return;
      }
    }
  }
};

// Sparse exact-sum DP for weights too large for a dense table: sorted
// vectors of the sums reachable from each suffix, capped at the target.

/// reach[i] = sums <= target reachable with weights i..n-1. Empty result if
/// the total size would pass the control budget.
template <class W>
std::vector<std::vector<W>> suffix_reach(const Instance<W>& in, SearchControl& ctl) {
  const std::size_t n = in.weights.size();
  std::vector<std::vector<W>> reach(n + 1);
  reach[n] = {W{}};
  for (std::size_t i = n; i-- > 0;) {
    const auto& next = reach[i + 1];
    std::vector<W> shifted;
    for (const W& s : next) {
      W v = s + in.weights[i];
      if (v > in.target) break;
      shifted.push_back(std::move(v));
    }
    std::vector<W> merged;
    merged.reserve(next.size() + shifted.size());
    std::set_union(next.begin(), next.end(), shifted.begin(), shifted.end(),
                   std::back_inserter(merged));
    const std::uint64_t added = merged.size();
    if (ctl.nodes.fetch_add(added) + added > ctl.budget) return {};
    reach[i] = std::move(merged);
  }
  return reach;
}

/// Lexicographically smallest solution from the suffix reachability.
template <class W>
Outcome sparse_find(const Instance<W>& in, SearchControl& ctl, std::vector<std::size_t>& chosen) {
  const auto reach = suffix_reach(in, ctl);
  if (reach.empty()) return Outcome::budget;
  auto has = [&](std::size_t i, const W& v) {
    return std::binary_search(reach[i].begin(), reach[i].end(), v);
  };
  if (!has(0, in.target)) return Outcome::none;
  W deficit = in.target;
  for (std::size_t j = 0; !is_zero(deficit); ++j) {
    if (in.weights[j] <= deficit && has(j + 1, W(deficit - in.weights[j]))) {
      chosen.push_back(j);
      deficit = W(deficit - in.weights[j]);
    }
  }
  return Outcome::found;
}

/// Number of subsets hitting the target; partial sums that cannot reach it
/// with the remaining weights are dropped.
template <class W>
BigInt sparse_count(const Instance<W>& in) {
  const std::size_t n = in.weights.size();
  std::vector<W> tail(n + 1, W{});
  for (std::size_t i = n; i-- > 0;) tail[i] = tail[i + 1] + in.weights[i];
  std::vector<std::pair<W, BigInt>> cur{{W{}, BigInt(1)}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::pair<W, BigInt>> nxt;
    nxt.reserve(cur.size() * 2);
    auto a = cur.begin();
    std::vector<std::pair<W, BigInt>> shifted;
    for (const auto& [s, c] : cur) {
      W v = s + in.weights[i];
      if (v > in.target) break;
      shifted.emplace_back(std::move(v), c);
    }
    auto b = shifted.begin();
    auto keep = [&](const W& s) { return !(s + tail[i + 1] < in.target); };
    while (a != cur.end() || b != shifted.end()) {
      if (b == shifted.end() || (a != cur.end() && a->first < b->first)) {
        if (keep(a->first)) nxt.push_back(*a);
        ++a;
      } else if (a == cur.end() || b->first < a->first) {
        if (keep(b->first)) nxt.push_back(*b);
        ++b;
      } else {
        if (keep(a->first)) nxt.emplace_back(a->first, a->second + b->second);
        ++a;
        ++b;
      }
    }
    cur = std::move(nxt);
  }
  for (const auto& [s, c] : cur) {
    if (s == in.target) return c;
  }
  return 0;
}

inline std::uint64_t half_nodes(std::size_t n) {
  return (std::uint64_t{1} << ((n + 1) / 2)) + (std::uint64_t{1} << (n / 2));
}

}  // namespace egyfrac::solver
