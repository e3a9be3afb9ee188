#include "egyfrac/filters.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <nlohmann/json.hpp>

#include "egyfrac/errors.hpp"

namespace egyfrac {

void FilterSpec::validate() const {
  if (!(1 <= y && y <= z)) throw DomainError("filter window needs 1 <= y <= z");
  if (!(omega_lo <= omega_hi)) throw DomainError("omega window needs lo <= hi");
  if (!(smooth_bound >= 2)) throw DomainError("smooth bound must be >= 2");
}

FilterSpec FilterSpec::asymptotic_preset(double n) {
  const double ln = std::log(n);
  const double lln = std::log(ln);
  FilterSpec s;
  s.smooth_bound = std::pow(n, 1.0 - 6.0 / lln);
  s.y = 1;
  s.z = std::pow(ln, 1.0 / 500.0);
  s.omega_lo = 0.99 * lln;
  s.omega_hi = 2.0 * lln;
  return s;
}

double asymptotic_window_start(double n) {
  return std::pow(n, 1.0 - 1.0 / std::log(std::log(n)));
}

bool passes_smoothness(std::uint64_t n, double bound, const FactorTable& t) {
  for (const auto& pp : t.factorize(n)) {
    if (static_cast<double>(pp.value()) > bound) return false;
  }
  return true;
}

bool has_divisor_pair(std::uint64_t n, double y, double z, const FactorTable& t) {
  if (n == 0) throw DomainError("has_divisor_pair needs n >= 1");
  if (z < 4 * std::max(y, 1.0)) return false;
  // Divisors <= z only: d2 <= z forces d1 <= z/4.
  std::vector<std::uint64_t> divs{1};
  if (n > 1) {
    for (const auto& pp : t.factorize(n)) {
      const std::size_t base = divs.size();
      std::uint64_t mult = 1;
      for (unsigned r = 1; r <= pp.exponent; ++r) {
        mult *= pp.prime;
        for (std::size_t i = 0; i < base; ++i) {
          const std::uint64_t d = divs[i] * mult;
          if (static_cast<double>(d) <= z) divs.push_back(d);
        }
      }
    }
  }
  std::sort(divs.begin(), divs.end());
  const auto d1 = std::find_if(divs.begin(), divs.end(), [&](std::uint64_t d) {
    return static_cast<double>(d) >= y;
  });
  if (d1 == divs.end()) return false;
  return divs.back() >= 4 * *d1;
}

bool omega_in_range(std::uint64_t n, double lo, double hi, const FactorTable& t) {
  const double w = t.omega(n);
  return lo <= w && w <= hi;
}

bool passes_filters(std::uint64_t n, const FilterSpec& spec, const FactorTable& t) {
  return passes_smoothness(n, spec.smooth_bound, t) &&
         has_divisor_pair(n, spec.y, spec.z, t) &&
         omega_in_range(n, spec.omega_lo, spec.omega_hi, t);
}

IntSet filter_set(const IntSet& a, const FilterSpec& spec, const FactorTable& t) {
  spec.validate();
  std::vector<std::uint64_t> out;
  for (auto n : a) {
    if (n >= 2 && passes_filters(n, spec, t)) out.push_back(n);
  }
  return IntSet(std::move(out));
}

IntSet sieve_survivors(std::uint64_t lo, std::uint64_t hi, double y, double z,
                       const FactorTable& t) {
  if (lo < 1 || lo > hi || hi > t.bound()) {
    throw RangeError("sieve range must satisfy 1 <= lo <= hi <= table bound");
  }
  std::vector<char> struck(hi - lo + 1, 0);
  for (std::uint32_t p : t.primes()) {
    if (p > hi || static_cast<double>(p) > z) break;
    if (static_cast<double>(p) < y) continue;
    for (std::uint64_t m = (lo + p - 1) / p * p; m <= hi; m += p) {
      struck[m - lo] = 1;
    }
  }
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = lo; n <= hi; ++n) {
    if (!struck[n - lo]) out.push_back(n);
  }
  return IntSet(std::move(out));
}

IntSet two_prime_pair_set(std::uint64_t hi, double y, double z,
                          const FactorTable& t) {
  if (hi > t.bound()) throw RangeError("two_prime_pair_set beyond table bound");
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 2; n <= hi; ++n) {
    std::uint64_t lo_p = 0;
    std::uint64_t hi_p = 0;
    for (const auto& pp : t.factorize(n)) {
      const double p = static_cast<double>(pp.prime);
      if (p < y || p > z) continue;
      if (lo_p == 0) lo_p = pp.prime;
      hi_p = pp.prime;
    }
    // The extreme pair is the best candidate for 4 p1 < p2.
    if (lo_p != 0 && 4 * lo_p < hi_p) out.push_back(n);
  }
  return IntSet(std::move(out));
}

Rational mertens_q_sum(std::uint64_t x, const FactorTable& t) {
  if (x > t.bound()) throw RangeError("mertens_q_sum beyond table bound");
  std::vector<std::uint64_t> qs;
  for (std::uint32_t p : t.primes()) {
    if (p > x) break;
    for (std::uint64_t q = p; q <= x; q *= p) {
      qs.push_back(q);
      if (q > x / p) break;
    }
  }
  return recip_sum(qs);
}

namespace {

BigInt product_tree(const std::vector<std::uint64_t>& v, std::size_t lo,
                    std::size_t hi) {
  if (hi - lo == 0) return 1;
  if (hi - lo == 1) return BigInt(static_cast<unsigned long>(v[lo]));
  const std::size_t mid = lo + (hi - lo) / 2;
  return product_tree(v, lo, mid) * product_tree(v, mid, hi);
}

}  // namespace

Rational mertens_product(std::uint64_t x, const FactorTable& t) {
  if (x > t.bound()) throw RangeError("mertens_product beyond table bound");
  std::vector<std::uint64_t> ps, pm1;
  for (std::uint32_t p : t.primes()) {
    if (p > x) break;
    ps.push_back(p);
    pm1.push_back(p - 1);
  }
  return Rational(product_tree(ps, 0, ps.size()), product_tree(pm1, 0, pm1.size()));
}

std::string SieveDensityReport::to_json() const {
  nlohmann::json j;
  j["N"] = n;
  j["y"] = y;
  j["z"] = z;
  j["X_count"] = count;
  j["ratio"] = ratio;
  j["bound"] = bound;
  j["K"] = constant;
  return j.dump();
}

SieveDensityReport sieve_density(std::uint64_t n, double y, double z,
                                 const FactorTable& t) {
  if (y < 2 || z <= y) throw DomainError("sieve density needs 2 <= y < z");
  SieveDensityReport r;
  r.n = n;
  r.y = y;
  r.z = z;
  r.count = sieve_survivors(n, 2 * n - 1, y, z, t).size();
  r.ratio = static_cast<double>(r.count) / static_cast<double>(n);
  r.bound = std::log(y) / std::log(z);
  r.constant = r.ratio / r.bound;
  return r;
}

}  // namespace egyfrac
