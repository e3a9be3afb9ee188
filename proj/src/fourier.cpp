#include "egyfrac/fourier.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include <nlohmann/json.hpp>

#include "egyfrac/decomposition.hpp"
#include "egyfrac/errors.hpp"
#include "egyfrac/simd/kernels.hpp"

namespace egyfrac {

namespace {

constexpr std::size_t kChunk = 4096;
constexpr std::size_t kMaxSetSize = 52;

// Neumaier-compensated running sum.
struct Compensated {
  double sum = 0;
  double carry = 0;
  void add(double x) {
    const double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

std::uint64_t checked_lcm(const IntSet& a, const FourierOptions& opts) {
  const BigInt l = lcm_set(a);
  if (l > BigInt(static_cast<unsigned long>(opts.lcm_bound))) {
    throw ResourceError("lcm(A) = " + l.get_str() + " exceeds the bound " +
                        std::to_string(opts.lcm_bound));
  }
  return l.get_ui();
}

// Lookup tables of 1 + e(j/n) (complex) and |cos(pi j/n)| (real) per element.
struct Tables {
  std::vector<std::vector<double>> re, im, abs_cos;
  std::vector<simd::GatherFactor> complex_factors, real_factors;
};

// |cos(pi r/n)| via the least absolute residue, so that r and n - r give
// identical values and 2r = n gives exactly 0.
double abs_cos(std::uint64_t r, std::uint64_t n) {
  if (2 * r == n) return 0.0;
  const std::uint64_t m = std::min(r, n - r);
  return std::cos(std::numbers::pi * static_cast<double>(m) / static_cast<double>(n));
}

std::uint32_t residue(std::int64_t h, std::uint64_t k, std::uint64_t n) {
  const __int128 v = static_cast<__int128>(h) * static_cast<__int128>(k);
  __int128 r = v % static_cast<__int128>(n);
  if (r < 0) r += n;
  return static_cast<std::uint32_t>(r);
}

Tables build_tables(const IntSet& a, std::uint64_t k, std::int64_t h_first,
                    bool want_real) {
  Tables t;
  for (auto n : a) {
    std::vector<double> re(n), im(n), ac;
    if (want_real) ac.resize(n);
    for (std::uint64_t j = 0; j < n; ++j) {
      const double angle = std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
      const double c = 2 * j == n ? 0.0 : std::cos(angle);
      const double s = std::sin(angle);
      // 1 + e(2x) = 2 cos(pi x)^2 + 2i cos(pi x) sin(pi x); no cancellation near x = 1/2.
      re[j] = 2.0 * c * c;
      im[j] = 2.0 * c * s;
      if (want_real) ac[j] = abs_cos(j, n);
    }
    t.re.push_back(std::move(re));
    t.im.push_back(std::move(im));
    t.abs_cos.push_back(std::move(ac));
  }
  std::size_t i = 0;
  for (auto n : a) {
    simd::GatherFactor f;
    f.modulus = static_cast<std::uint32_t>(n);
    f.start = residue(h_first, k, n);
    f.step = static_cast<std::uint32_t>(k % n);
    f.re = t.re[i].data();
    f.im = t.im[i].data();
    t.complex_factors.push_back(f);
    if (want_real) {
      f.re = t.abs_cos[i].data();
      f.im = nullptr;
      t.real_factors.push_back(f);
    }
    ++i;
  }
  return t;
}

template <class Body>
void for_each_chunk(std::size_t chunks, unsigned threads, Body&& body) {
  if (threads <= 1 || chunks <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) body(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < std::min<std::size_t>(threads, chunks); ++w) {
    pool.emplace_back([&] {
      for (std::size_t c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) body(c);
    });
  }
}

std::int64_t first_frequency(std::uint64_t l) {
  return -static_cast<std::int64_t>((l - 1) / 2);
}

bool is_major(std::int64_t h, std::uint64_t k, std::uint64_t l, double radius) {
  const __int128 hk = static_cast<__int128>(h) * static_cast<__int128>(k);
  const __int128 ll = l;
  __int128 t0 = hk / ll;
  if (hk % ll != 0 && hk < 0) --t0;
  const __int128 d0 = hk - t0 * ll;       // in [0, l)
  const __int128 dist = std::min(d0, ll - d0);
  return 2.0L * static_cast<long double>(dist) <= static_cast<long double>(radius);
}

}  // namespace

FourierCount fourier_count(const IntSet& a, std::uint64_t k, const FourierOptions& opts) {
  if (k == 0) throw DomainError("k must be a positive integer");
  if (a.size() > kMaxSetSize) {
    throw ResourceError("fourier_count: |A| > 52 cannot be rounded exactly in double");
  }
  const std::uint64_t l = checked_lcm(a, opts);
  const std::int64_t h_first = first_frequency(l);
  const Tables tables = build_tables(a, k, h_first, false);
  const auto& kern = simd::active_kernels();

  const std::size_t chunks = (l + kChunk - 1) / kChunk;
  std::vector<Compensated> part_re(chunks), part_im(chunks);
  for_each_chunk(chunks, opts.threads, [&](std::size_t c) {
    const std::uint64_t off = c * kChunk;
    const std::size_t count = std::min<std::uint64_t>(kChunk, l - off);
    std::vector<double> re(count), im(count);
    kern.complex_products(tables.complex_factors, off, count, re.data(), im.data());
    for (std::size_t j = 0; j < count; ++j) {
      part_re[c].add(re[j]);
      part_im[c].add(im[j]);
    }
  });
  Compensated total_re, total_im;
  for (std::size_t c = 0; c < chunks; ++c) {
    total_re.add(part_re[c].value());
    total_im.add(part_im[c].value());
  }

  FourierCount out;
  out.value = total_re.value() / static_cast<double>(l);
  out.imag = total_im.value() / static_cast<double>(l);
  out.rounded = std::llround(out.value);
  if (std::fabs(out.value - static_cast<double>(out.rounded)) > 0.25 ||
      std::fabs(out.imag) > 0.25) {
    throw NumericalError("fourier_count drifted: value " + std::to_string(out.value) +
                         ", imaginary part " + std::to_string(out.imag));
  }
  return out;
}

double cosine_weight(const IntSet& b, std::uint64_t k, std::int64_t h) {
  double w = 1.0;
  for (auto n : b) {
    w *= abs_cos(residue(h, k, n), n);
  }
  return w;
}

double cosine_weight_bound(const IntSet& b, std::uint64_t k, std::int64_t h) {
  double expo = 0;
  for (auto n : b) {
    const std::uint32_t r = residue(h, k, n);
    // Least absolute residue.
    const double centred = 2 * static_cast<std::uint64_t>(r) > n
                               ? static_cast<double>(r) - static_cast<double>(n)
                               : static_cast<double>(r);
    const double x = centred / static_cast<double>(n);
    expo += x * x;
  }
  return std::exp(-expo);
}

double ArcDiagnostics::weight(std::int64_t h) const {
  const std::int64_t i = h - h_first;
  if (i < 0 || i >= static_cast<std::int64_t>(weights.size())) {
    throw RangeError("frequency " + std::to_string(h) + " outside (-L/2, L/2]");
  }
  return weights[static_cast<std::size_t>(i)];
}

std::string ArcDiagnostics::to_json(std::size_t cap) const {
  nlohmann::json j;
  j["L"] = l;
  j["k"] = k;
  j["K"] = radius;
  j["set_size"] = set_size;
  j["fourier_value"] = fourier_value;
  j["fourier_imag"] = fourier_imag;
  j["rounded"] = rounded;
  j["zero_contribution"] = zero_contribution;
  j["major_contribution"] = major_contribution;
  j["minor_contribution"] = minor_contribution;
  j["minor_weight_sum"] = minor_weight_sum;
  j["major_count"] = major_hs.size();
  j["minor_count"] = minor_hs.size();
  j["major_hs"] = std::vector<std::int64_t>(
      major_hs.begin(), major_hs.begin() + static_cast<std::ptrdiff_t>(std::min(cap, major_hs.size())));
  j["minor_hs"] = std::vector<std::int64_t>(
      minor_hs.begin(), minor_hs.begin() + static_cast<std::ptrdiff_t>(std::min(cap, minor_hs.size())));
  nlohmann::json w = nlohmann::json::array();
  const std::size_t shown = std::min(cap, weights.size());
  for (std::size_t i = 0; i < shown; ++i) {
    w.push_back({h_first + static_cast<std::int64_t>(i), weights[i]});
  }
  j["weights"] = std::move(w);
  j["weights_truncated"] = shown < weights.size();
  if (shown < weights.size()) {
    double mx = 0;
    Compensated s;
    for (std::size_t i = shown; i < weights.size(); ++i) {
      mx = std::max(mx, weights[i]);
      s.add(weights[i]);
    }
    j["weights_rest"] = {{"count", weights.size() - shown}, {"max", mx}, {"sum", s.value()}};
  }
  return j.dump();
}

ArcDiagnostics arc_classify(const IntSet& a, std::uint64_t k, double radius,
                            const FourierOptions& opts) {
  if (k == 0) throw DomainError("k must be a positive integer");
  if (a.size() > kMaxSetSize) throw ResourceError("arc_classify: |A| > 52");
  if (radius < 0) throw DomainError("arc radius K must be >= 0");
  ArcDiagnostics d;
  d.l = checked_lcm(a, opts);
  d.k = k;
  d.radius = radius;
  d.set_size = a.size();
  d.h_first = first_frequency(d.l);
  d.weights.assign(d.l, 0.0);
  const Tables tables = build_tables(a, k, d.h_first, true);
  const auto& kern = simd::active_kernels();

  const std::size_t chunks = (d.l + kChunk - 1) / kChunk;
  struct Part {
    Compensated zero, major, minor, imag, minor_w;
  };
  std::vector<Part> parts(chunks);
  std::vector<char> major_flag(d.l, 0);
  for_each_chunk(chunks, opts.threads, [&](std::size_t c) {
    const std::uint64_t off = c * kChunk;
    const std::size_t count = std::min<std::uint64_t>(kChunk, d.l - off);
    std::vector<double> re(count), im(count);
    kern.complex_products(tables.complex_factors, off, count, re.data(), im.data());
    kern.real_products(tables.real_factors, off, count, d.weights.data() + off);
    Part& p = parts[c];
    for (std::size_t j = 0; j < count; ++j) {
      const std::int64_t h = d.h_first + static_cast<std::int64_t>(off + j);
      p.imag.add(im[j]);
      if (h == 0) {
        p.zero.add(re[j]);
      } else if (is_major(h, k, d.l, radius)) {
        major_flag[off + j] = 1;
        p.major.add(re[j]);
      } else {
        p.minor.add(re[j]);
        p.minor_w.add(d.weights[off + j]);
      }
    }
  });

  Compensated zero, major, minor, imag, minor_w;
  for (const auto& p : parts) {
    zero.add(p.zero.value());
    major.add(p.major.value());
    minor.add(p.minor.value());
    imag.add(p.imag.value());
    minor_w.add(p.minor_w.value());
  }
  for (std::uint64_t i = 0; i < d.l; ++i) {
    const std::int64_t h = d.h_first + static_cast<std::int64_t>(i);
    if (h == 0) continue;
    (major_flag[i] ? d.major_hs : d.minor_hs).push_back(h);
  }
  const double lf = static_cast<double>(d.l);
  d.zero_contribution = zero.value() / lf;
  d.major_contribution = major.value() / lf;
  d.minor_contribution = minor.value() / lf;
  d.minor_weight_sum = minor_w.value();
  Compensated total;
  total.add(zero.value());
  total.add(major.value());
  total.add(minor.value());
  d.fourier_value = total.value() / lf;
  d.fourier_imag = imag.value() / lf;
  d.rounded = std::llround(d.fourier_value);
  return d;
}

Interval centred_interval(std::int64_t centre, std::uint64_t length) {
  if (length == 0) throw DomainError("interval length must be positive");
  return Interval{centre - static_cast<std::int64_t>(length / 2), length};
}

namespace {

// Whether some element of I is a multiple of n.
bool hits(std::uint64_t n, const Interval& in) {
  const auto nn = static_cast<std::int64_t>(n);
  std::int64_t q = in.start / nn;
  if (q * nn < in.start) ++q;  // ceiling for either sign
  return q * nn <= in.last();
}

}  // namespace

bool IntervalReport::alternative_a(double m, double log_n) const {
  return static_cast<double>(nondividing_count) >= m / log_n;
}

std::string IntervalReport::to_json() const {
  nlohmann::json j;
  j["start"] = interval.start;
  j["length"] = interval.length;
  j["nondividing_count"] = nondividing_count;
  j["D_I"] = std::vector<std::uint64_t>(d_set.begin(), d_set.end());
  if (common_x) {
    j["common_x"] = *common_x;
  } else {
    j["common_x"] = nullptr;
  }
  return j.dump();
}

IntervalReport interval_coverage(const IntSet& a, Interval interval, double eta,
                                 double m, const FactorTable& t) {
  if (interval.length == 0) throw DomainError("interval must be nonempty");
  IntervalReport r;
  r.interval = interval;
  std::vector<char> misses(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!hits(a[i], interval)) {
      misses[i] = 1;
      ++r.nondividing_count;
    }
  }
  const Decomposition dec = decompose(a, t);
  std::vector<std::uint64_t> d;
  for (const auto& [q, members] : dec.parts) {
    std::uint64_t cnt = 0;
    for (auto n : members) {
      if (!hits(n, interval)) ++cnt;
    }
    if (static_cast<double>(cnt) < eta * m / static_cast<double>(q)) d.push_back(q);
  }
  r.d_set = IntSet(std::move(d));

  const BigInt l = lcm_set(r.d_set);
  BigInt first;
  const BigInt start(static_cast<long>(interval.start));
  mpz_cdiv_q(first.get_mpz_t(), start.get_mpz_t(), l.get_mpz_t());
  first *= l;
  if (first <= BigInt(static_cast<long>(interval.last()))) {
    r.common_x = first.get_si();
  }
  return r;
}

}  // namespace egyfrac
