#include "egyfrac/pomerance.hpp"

#include <cmath>
#include <string>

#include "egyfrac/errors.hpp"
#include "egyfrac/subset_solver.hpp"

namespace egyfrac {

PomeranceReport pomerance_set(std::uint64_t n, double c, const FactorTable& t) {
  if (n < 2) throw DomainError("pomerance_set needs N >= 2");
  if (!(c > 0)) throw DomainError("pomerance_set needs C > 0");
  if (n > t.bound()) {
    throw RangeError("N = " + std::to_string(n) + " exceeds the factor table bound " +
                     std::to_string(t.bound()));
  }
  PomeranceReport r;
  r.n = n;
  r.c = c;
  std::vector<std::uint64_t> members;
  for (std::uint64_t m = 2; m <= n; ++m) {
    const auto p = static_cast<double>(t.largest_prime(m));
    if (p * std::log(p) > c * static_cast<double>(m)) members.push_back(m);
  }
  r.set = IntSet(std::move(members));
  r.recip = recip_sum(r.set);
  return r;
}

bool verify_solution_free(const IntSet& a, std::uint64_t budget) {
  if (budget == 0) throw DomainError("verification budget must be positive");
  SolverConfig cfg;
  cfg.node_budget = budget;
  const SolverResult r = find_subset(a, Rational(1), cfg);
  if (r.status == SolveStatus::budget_exceeded) {
    throw InconclusiveError("solution-freeness undecided after " +
                            std::to_string(r.nodes_explored) + " nodes");
  }
  return r.status == SolveStatus::exhausted_none;
}

std::vector<std::pair<std::uint64_t, Rational>> lambda_lower_curve(
    std::span<const std::uint64_t> ns, double c, const FactorTable& t) {
  std::vector<std::pair<std::uint64_t, Rational>> out;
  out.reserve(ns.size());
  for (auto n : ns) {
    // Below 2 the set is empty by definition.
    out.emplace_back(n, n < 2 ? Rational(0) : pomerance_set(n, c, t).recip);
  }
  return out;
}

}  // namespace egyfrac
