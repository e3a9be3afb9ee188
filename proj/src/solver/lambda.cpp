#include <functional>
#include <string>
#include <vector>

#include "egyfrac/errors.hpp"
#include "egyfrac/subset_solver.hpp"

namespace egyfrac {

namespace {

bool has_solution(const IntSet& a, const Rational& target) {
  const SolverResult r = find_subset(a, target);
  if (r.status == SolveStatus::budget_exceeded) {
    throw InconclusiveError("lambda search: solver budget exhausted");
  }
  return r.status == SolveStatus::found;
}

}  // namespace

LambdaResult lambda_exact(std::uint64_t n, const LambdaConfig& cfg) {
  if (n > cfg.exhaustive_bound) {
    throw ResourceError("lambda_exact: N = " + std::to_string(n) +
                        " exceeds exhaustive bound " +
                        std::to_string(cfg.exhaustive_bound));
  }
  LambdaResult out;
  if (n < 2) return out;

  const IntSet universe = IntSet::interval(2, n);
  const Rational one(1);

  // Elements lying in no solution inside {2..N} belong to every maximiser.
  std::vector<std::uint64_t> branching;
  std::vector<std::uint64_t> free_elems;
  Rational free_sum;
  for (auto m : universe) {
    if (has_solution(universe.without(m), one - Rational::reciprocal_of(m))) {
      branching.push_back(m);
    } else {
      free_elems.push_back(m);
      free_sum += Rational::reciprocal_of(m);
    }
  }

  std::vector<Rational> tail(branching.size() + 1);
  for (std::size_t i = branching.size(); i-- > 0;) {
    tail[i] = tail[i + 1] + Rational::reciprocal_of(branching[i]);
  }

  std::optional<Rational> best;
  std::vector<std::uint64_t> best_set;
  std::vector<std::uint64_t> chosen;

  // Include-first over ascending elements: the first maximiser reached is
  // the lexicographically smallest, and ties never replace it.
  std::function<void(std::size_t, const Rational&)> search =
      [&](std::size_t i, const Rational& sum) {
        ++out.nodes;
        if (best && sum + tail[i] <= *best) return;
        if (i == branching.size()) {
          best = sum;
          best_set = chosen;
          return;
        }
        const std::uint64_t m = branching[i];
        const Rational inv = Rational::reciprocal_of(m);
        if (!has_solution(IntSet(chosen), one - inv)) {
          chosen.push_back(m);
          search(i + 1, sum + inv);
          chosen.pop_back();
        }
        search(i + 1, sum);
      };
  search(0, free_sum);

  out.value = *best;
  std::vector<std::uint64_t> all = best_set;
  all.insert(all.end(), free_elems.begin(), free_elems.end());
  out.witness = IntSet(std::move(all));
  return out;
}

}  // namespace egyfrac
