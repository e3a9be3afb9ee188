#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "egyfrac/factor_sieve.hpp"
#include "egyfrac/int_set.hpp"

namespace egyfrac {

struct FourierOptions {
  /// Largest lcm(A) the frequency sum may range over.
  std::uint64_t lcm_bound = 1'000'000;
  /// Workers for the frequency sum. The result does not depend on it: the
  /// sum is split into fixed chunks that are combined in order.
  unsigned threads = 1;
};

struct FourierCount {
  double value = 0;  // real part of the normalised orthogonality sum
  double imag = 0;   // its imaginary part; zero up to rounding
  std::int64_t rounded = 0;
};

/// F(A) = (1/L) sum over -L/2 < h <= L/2 of prod_{n in A} (1 + e(kh/n)),
/// L = lcm(A), evaluated in double precision with compensated summation.
/// Throws NumericalError if value or imag is more than 0.25 from the
/// rounded integer, ResourceError if L exceeds the bound or |A| > 52.
FourierCount fourier_count(const IntSet& a, std::uint64_t k,
                           const FourierOptions& opts = {});

/// C(B;h) = prod_{n in B} |cos(pi k h / n)|; the angle is reduced modulo n
/// in integers first.
double cosine_weight(const IntSet& b, std::uint64_t k, std::int64_t h);

/// exp(-sum (h_n / n)^2) with h_n the residue of kh modulo n of least
/// absolute value; an upper bound for cosine_weight.
double cosine_weight_bound(const IntSet& b, std::uint64_t k, std::int64_t h);

struct ArcDiagnostics {
  std::uint64_t l = 1;  // lcm(A)
  std::uint64_t k = 1;
  double radius = 0;    // K
  std::size_t set_size = 0;
  /// First frequency of the range (-L/2, L/2]; weights[i] is C(A; h_first + i).
  std::int64_t h_first = 0;
  std::vector<double> weights;
  std::vector<std::int64_t> major_hs;
  std::vector<std::int64_t> minor_hs;
  double fourier_value = 0;
  double fourier_imag = 0;
  std::int64_t rounded = 0;
  double zero_contribution = 0;   // 2^|A| / L
  double major_contribution = 0;  // real part, major arcs
  double minor_contribution = 0;  // real part, minor arcs
  double minor_weight_sum = 0;    // sum of C(A;h) over minor arcs

  double weight(std::int64_t h) const;
  /// JSON with keys sorted; weights and arc lists truncated to `cap`
  /// entries each, with counts and a summary for the rest.
  std::string to_json(std::size_t cap = 10'000) const;
};

/// Classifies every h in J = (-L/2, L/2] \ {0} as major when
/// |h - tL/k| <= K/(2k) for some integer t, minor otherwise, and splits the
/// orthogonality sum accordingly.
ArcDiagnostics arc_classify(const IntSet& a, std::uint64_t k, double radius,
                            const FourierOptions& opts = {});

/// Integers {start, ..., start + length - 1}.
struct Interval {
  std::int64_t start = 0;
  std::uint64_t length = 1;
  std::int64_t last() const { return start + static_cast<std::int64_t>(length) - 1; }
};

/// {c - floor(K/2), ..., c + ceil(K/2) - 1}.
Interval centred_interval(std::int64_t centre, std::uint64_t length);

struct IntervalReport {
  Interval interval;
  std::uint64_t nondividing_count = 0;  // n in A dividing no element of I
  IntSet d_set;                         // D_I
  std::optional<std::int64_t> common_x; // x in I divisible by all of D_I

  /// #nondividing >= M / log N.
  bool alternative_a(double m, double log_n) const;
  bool alternative_b() const { return common_x.has_value(); }
  std::string to_json() const;
};

/// D_I collects q in Q_A with #{n in A_q dividing no element of I} < eta M/q.
IntervalReport interval_coverage(const IntSet& a, Interval interval, double eta,
                                 double m, const FactorTable& t);

}  // namespace egyfrac
