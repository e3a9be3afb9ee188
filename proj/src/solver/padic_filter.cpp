#include <algorithm>
#include <map>
#include <vector>

#include "egyfrac/errors.hpp"
#include "egyfrac/factor_sieve.hpp"
#include "egyfrac/subset_solver.hpp"

namespace egyfrac {

namespace {

// Work cap per prime for the residue reachability tables.
constexpr double kMaxGroupCells = 2e7;

unsigned valuation(const Factorization& f, std::uint64_t p) {
  for (const auto& pp : f) {
    if (pp.prime == p) return pp.exponent;
  }
  return 0;
}

// reach_out = reach_in + {0, w} over Z/p.
void extend(const std::vector<char>& in, std::vector<char>& out, std::uint64_t w) {
  const std::size_t p = in.size();
  for (std::size_t r = 0; r < p; ++r) {
    out[r] = static_cast<char>(in[r] | in[(r + p - w) % p]);
  }
}

// For each member x of the group, whether some sub-subset containing x has
// weight sum congruent to t mod p.
std::vector<char> usable_members(const std::vector<std::uint64_t>& w,
                                 std::uint64_t t, std::uint64_t p) {
  const std::size_t g = w.size();
  std::vector<std::vector<char>> prefix(g + 1, std::vector<char>(p, 0));
  std::vector<std::vector<char>> suffix(g + 1, std::vector<char>(p, 0));
  prefix[0][0] = 1;
  suffix[g][0] = 1;
  for (std::size_t i = 0; i < g; ++i) extend(prefix[i], prefix[i + 1], w[i]);
  for (std::size_t i = g; i-- > 0;) extend(suffix[i + 1], suffix[i], w[i]);
  std::vector<char> usable(g, 0);
  for (std::size_t i = 0; i < g; ++i) {
    const std::uint64_t need = (t + p - w[i]) % p;
    for (std::size_t r = 0; r < p && !usable[i]; ++r) {
      if (prefix[i][r] && suffix[i + 1][(need + p - r) % p]) usable[i] = 1;
    }
  }
  return usable;
}

}  // namespace

std::optional<IntSet> padic_reduce(const IntSet& a, const Rational& target) {
  if (target.sign() < 0) throw DomainError("negative target");
  if (target.is_zero()) return IntSet{};

  std::vector<std::uint64_t> cur(a.begin(), a.end());
  std::map<std::uint64_t, Factorization> fac;
  for (auto n : cur) fac[n] = n >= 2 ? factorize_trial(n) : Factorization{};

  while (true) {
    if (cur.empty()) return std::nullopt;
    const BigInt l = lcm_set(cur);
    const BigInt scaled = target.num() * l;
    if (!mpz_divisible_p(scaled.get_mpz_t(), target.den().get_mpz_t())) {
      return std::nullopt;
    }
    const BigInt t = scaled / target.den();

    std::map<std::uint64_t, unsigned> emax;
    for (auto n : cur) {
      for (const auto& pp : fac[n]) {
        auto& e = emax[pp.prime];
        e = std::max(e, pp.exponent);
      }
    }

    std::vector<char> keep(cur.size(), 1);
    bool changed = false;
    for (auto it = emax.rbegin(); it != emax.rend(); ++it) {
      const std::uint64_t p = it->first;
      std::vector<std::size_t> group;
      for (std::size_t i = 0; i < cur.size(); ++i) {
        if (keep[i] && valuation(fac[cur[i]], p) == it->second) group.push_back(i);
      }
      if (group.empty()) continue;
      if (static_cast<double>(group.size()) * static_cast<double>(p) > kMaxGroupCells) {
        continue;
      }
      std::vector<std::uint64_t> w;
      w.reserve(group.size());
      for (auto i : group) {
        const BigInt wi = l / BigInt(static_cast<unsigned long>(cur[i]));
        w.push_back(mpz_fdiv_ui(wi.get_mpz_t(), p));
      }
      const std::uint64_t tp = mpz_fdiv_ui(t.get_mpz_t(), p);
      const auto usable = usable_members(w, tp, p);
      const bool any = std::find(usable.begin(), usable.end(), 1) != usable.end();
      if (!any && tp != 0) return std::nullopt;
      for (std::size_t j = 0; j < group.size(); ++j) {
        if (!usable[j]) {
          keep[group[j]] = 0;
          changed = true;
        }
      }
    }
    if (!changed) return IntSet(std::move(cur));
    std::vector<std::uint64_t> next;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      if (keep[i]) next.push_back(cur[i]);
    }
    cur = std::move(next);
  }
}

}  // namespace egyfrac
