#include "egyfrac/decomposition.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include <nlohmann/json.hpp>

#include "egyfrac/errors.hpp"

namespace egyfrac {

namespace {

void require_prime_power(std::uint64_t q, const FactorTable& t) {
  if (q < 2 || q > t.bound() || !t.is_prime_power(q)) {
    throw DomainError(std::to_string(q) + " is not a prime power");
  }
}

bool exact_divides(std::uint64_t q, std::uint64_t n) {
  return n % q == 0 && std::gcd(q, n / q) == 1;
}

}  // namespace

Rational Decomposition::rec_sum_q(std::uint64_t q) const {
  const auto it = parts.find(q);
  if (it == parts.end()) return Rational{};
  return recip_sum(it->second) * Rational(static_cast<std::int64_t>(q));
}

std::string Decomposition::to_json() const {
  nlohmann::json parts_json = nlohmann::json::object();
  for (const auto& [q, members] : parts) {
    parts_json[std::to_string(q)] =
        std::vector<std::uint64_t>(members.begin(), members.end());
  }
  nlohmann::json j;
  j["base"] = std::vector<std::uint64_t>(base.begin(), base.end());
  j["parts"] = std::move(parts_json);
  j["qset"] = std::vector<std::uint64_t>(qset.begin(), qset.end());
  return j.dump();
}

Decomposition decompose(const IntSet& a, const FactorTable& t) {
  Decomposition d;
  d.base = a;
  std::map<std::uint64_t, std::vector<std::uint64_t>> parts;
  for (auto n : a) {
    if (n == 1) throw DomainError("decomposition of a set containing 1");
    for (const auto& pp : t.factorize(n)) parts[pp.value()].push_back(n);
  }
  std::vector<std::uint64_t> qs;
  for (auto& [q, members] : parts) {
    qs.push_back(q);
    d.parts.emplace(q, IntSet(std::move(members)));
  }
  d.qset = IntSet(std::move(qs));
  return d;
}

IntSet subset_Aq(const IntSet& a, std::uint64_t q, const FactorTable& t) {
  require_prime_power(q, t);
  std::vector<std::uint64_t> out;
  for (auto n : a) {
    if (exact_divides(q, n)) out.push_back(n);
  }
  return IntSet(std::move(out));
}

IntSet ppowers_in_set(const IntSet& a, const FactorTable& t) {
  std::vector<std::uint64_t> out;
  for (auto n : a) {
    if (n == 1) throw DomainError("Q_A undefined for a set containing 1");
    for (const auto& pp : t.factorize(n)) out.push_back(pp.value());
  }
  return IntSet(std::move(out));
}

Rational rec_sum_q(const IntSet& a, std::uint64_t q, const FactorTable& t) {
  return recip_sum(subset_Aq(a, q, t)) * Rational(static_cast<std::int64_t>(q));
}

std::uint64_t smooth_cofactor(std::uint64_t n, std::uint64_t q, double y,
                              const FactorTable& t) {
  require_prime_power(q, t);
  if (!exact_divides(q, n)) {
    throw DomainError(std::to_string(q) + " is not an exact divisor of " +
                      std::to_string(n));
  }
  const std::uint64_t m = n / q;
  if (m == 1) return 1;
  std::uint64_t d = 1;
  for (const auto& pp : t.factorize(m)) {
    const std::uint64_t v = pp.value();
    if (static_cast<double>(v) > y) d *= v;
  }
  return d;
}

Rational gcd_ppower_recip_sum(std::uint64_t n1, std::uint64_t n2,
                              const FactorTable& t) {
  if (n1 == 0 || n2 == 0) throw DomainError("gcd_ppower_recip_sum needs n >= 1");
  const std::uint64_t g = std::gcd(n1, n2);
  Rational acc;
  if (g == 1) return acc;
  for (const auto& pp : t.factorize(g)) {
    std::uint64_t q = 1;
    for (unsigned r = 1; r <= pp.exponent; ++r) {
      q *= pp.prime;
      acc += Rational::reciprocal_of(q);
    }
  }
  return acc;
}

Rational qsum_check(const IntSet& a, const FactorTable& t) {
  return recip_sum(ppowers_in_set(a, t));
}

double qsum_lower_bound(double eps, double n) {
  return (1.0 - 2.0 * eps) * std::exp(-1.0) * std::log(std::log(n));
}

}  // namespace egyfrac
