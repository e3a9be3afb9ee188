#include "egyfrac/int_set.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <ostream>

#include <nlohmann/json.hpp>

#include "egyfrac/errors.hpp"

namespace egyfrac {

IntSet::IntSet(std::initializer_list<value_type> values)
    : IntSet(std::vector<value_type>(values)) {}

IntSet::IntSet(std::vector<value_type> values) : elems_(std::move(values)) {
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
  if (!elems_.empty() && elems_.front() == 0) {
    throw DomainError("IntSet cannot contain 0");
  }
}

IntSet IntSet::interval(value_type lo, value_type hi) {
  if (lo == 0) throw DomainError("IntSet cannot contain 0");
  std::vector<value_type> v;
  if (lo <= hi) {
    v.reserve(hi - lo + 1);
    for (value_type n = lo; n <= hi; ++n) v.push_back(n);
  }
  return IntSet(Sorted{}, std::move(v));
}

bool IntSet::contains(value_type n) const {
  return std::binary_search(elems_.begin(), elems_.end(), n);
}

IntSet IntSet::with(value_type n) const {
  if (n == 0) throw DomainError("IntSet cannot contain 0");
  auto v = elems_;
  auto it = std::lower_bound(v.begin(), v.end(), n);
  if (it == v.end() || *it != n) v.insert(it, n);
  return IntSet(Sorted{}, std::move(v));
}

IntSet IntSet::without(value_type n) const {
  auto v = elems_;
  auto it = std::lower_bound(v.begin(), v.end(), n);
  if (it != v.end() && *it == n) v.erase(it);
  return IntSet(Sorted{}, std::move(v));
}

IntSet IntSet::set_union(const IntSet& other) const {
  std::vector<value_type> v;
  v.reserve(size() + other.size());
  std::set_union(begin(), end(), other.begin(), other.end(),
                 std::back_inserter(v));
  return IntSet(Sorted{}, std::move(v));
}

IntSet IntSet::set_difference(const IntSet& other) const {
  std::vector<value_type> v;
  std::set_difference(begin(), end(), other.begin(), other.end(),
                      std::back_inserter(v));
  return IntSet(Sorted{}, std::move(v));
}

bool IntSet::is_subset_of(const IntSet& other) const {
  return std::includes(other.begin(), other.end(), begin(), end());
}

bool IntSet::disjoint_from(const IntSet& other) const {
  auto a = begin();
  auto b = other.begin();
  while (a != end() && b != other.end()) {
    if (*a == *b) return false;
    if (*a < *b) {
      ++a;
    } else {
      ++b;
    }
  }
  return true;
}

std::ostream& operator<<(std::ostream& os, const IntSet& s) {
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) os << ',';
    os << s[i];
  }
  return os << '}';
}

namespace {

// Sum of 1/a[i] over [lo, hi) as an unreduced fraction num/den with
// den = product of the elements.
void split_sum(std::span<const std::uint64_t> a, BigInt& num, BigInt& den) {
  if (a.size() == 1) {
    num = 1;
    den = static_cast<unsigned long>(a[0]);
    return;
  }
  const std::size_t mid = a.size() / 2;
  BigInt n1, d1, n2, d2;
  split_sum(a.first(mid), n1, d1);
  split_sum(a.subspan(mid), n2, d2);
  num = n1 * d2 + n2 * d1;
  den = d1 * d2;
}

constexpr std::size_t kSplitThreshold = 32;

}  // namespace

Rational recip_sum(std::span<const std::uint64_t> a) {
  if (a.size() <= kSplitThreshold) {
    Rational acc;
    for (auto n : a) {
      if (n == 0) throw DomainError("reciprocal of zero");
      acc += Rational::reciprocal_of(n);
    }
    return acc;
  }
  if (std::find(a.begin(), a.end(), 0u) != a.end()) {
    throw DomainError("reciprocal of zero");
  }
  BigInt num, den;
  split_sum(a, num, den);
  return Rational(num, den);
}

Rational recip_sum(const IntSet& a) { return recip_sum(a.values()); }

BigInt lcm_set(std::span<const std::uint64_t> a) {
  BigInt acc = 1;
  for (auto n : a) {
    BigInt v = static_cast<unsigned long>(n);
    mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), v.get_mpz_t());
  }
  return acc;
}

BigInt lcm_set(const IntSet& a) { return lcm_set(a.values()); }

IntSet parse_int_set_lines(std::string_view text) {
  std::vector<std::uint64_t> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{}
                                        : text.substr(nl + 1);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) {
      line.remove_prefix(1);
    }
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) {
      line.remove_suffix(1);
    }
    if (line.empty() || line.front() == '#') continue;
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
    if (ec != std::errc{} || ptr != line.data() + line.size() || v == 0) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected a positive integer, got '" +
                       std::string(line) + "'");
    }
    out.push_back(v);
  }
  return IntSet(std::move(out));
}

IntSet parse_int_set_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_array()) throw ParseError("expected a JSON array of integers");
  std::vector<std::uint64_t> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0) {
      throw ParseError("JSON set entries must be positive integers");
    }
    out.push_back(v.get<std::uint64_t>());
  }
  return IntSet(std::move(out));
}

IntSet parse_int_set(std::string_view text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '[' ? parse_int_set_json(text) : parse_int_set_lines(text);
  }
  return IntSet{};
}

std::string format_int_set_lines(const IntSet& s) {
  std::string out;
  for (auto n : s) {
    out += std::to_string(n);
    out += '\n';
  }
  return out;
}

std::string format_int_set_json(const IntSet& s) {
  return nlohmann::json(std::vector<std::uint64_t>(s.begin(), s.end())).dump();
}

}  // namespace egyfrac
