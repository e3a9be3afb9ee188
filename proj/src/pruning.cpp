#include "egyfrac/pruning.hpp"

#include <map>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "egyfrac/decomposition.hpp"
#include "egyfrac/errors.hpp"

namespace egyfrac {

namespace {

// Q_A with the masses R(A;q), updated as elements leave.
class MassTable {
 public:
  MassTable(const IntSet& a, const FactorTable& t) : t_(t) {
    for (auto n : a) {
      for (auto q : t.exact_prime_powers(n)) {
        auto& e = entries_[q];
        e.mass += Rational(static_cast<std::int64_t>(q), static_cast<std::int64_t>(n));
        e.members.push_back(n);
      }
    }
  }

  /// Smallest q with R(A;q) < theta, or 0.
  std::uint64_t first_failing(const Rational& theta) const {
    for (const auto& [q, e] : entries_) {
      if (e.mass < theta) return q;
    }
    return 0;
  }

  /// Current members of A_q.
  std::vector<std::uint64_t> members(std::uint64_t q) const {
    std::vector<std::uint64_t> out;
    for (auto n : entries_.at(q).members) {
      if (!gone_.contains(n)) out.push_back(n);
    }
    return out;
  }

  /// R(A;q), or nothing once q has left Q_A.
  const Rational* mass(std::uint64_t q) const {
    auto it = entries_.find(q);
    return it == entries_.end() ? nullptr : &it->second.mass;
  }

  /// Drops classes below theta until none remain, smallest q first; calls
  /// on_drop(q, n) for each removed element.
  template <class F>
  void cascade(const Rational& theta, F&& on_drop) {
    for (std::uint64_t q = first_failing(theta); q != 0; q = first_failing(theta)) {
      for (auto n : members(q)) {
        remove(n);
        on_drop(q, n);
      }
    }
  }

  void remove(std::uint64_t n) {
    gone_.insert(n);
    for (auto q : t_.exact_prime_powers(n)) {
      auto it = entries_.find(q);
      it->second.mass -= Rational(static_cast<std::int64_t>(q), static_cast<std::int64_t>(n));
      if (it->second.mass.is_zero()) entries_.erase(it);
    }
  }

 private:
  struct Entry {
    Rational mass;
    std::vector<std::uint64_t> members;
  };
  const FactorTable& t_;
  std::map<std::uint64_t, Entry> entries_;
  std::set<std::uint64_t> gone_;
};

void ppower_loop(IntSet& cur, const Rational& theta, const FactorTable& t, PruneTrace& tr) {
  MassTable table(cur, t);
  std::vector<std::uint64_t> dropped;
  table.cascade(theta, [&](std::uint64_t q, std::uint64_t n) {
    if (tr.removed_qs.empty() || tr.removed_qs.back() != q) tr.removed_qs.push_back(q);
    tr.removed_elements.push_back(n);
    dropped.push_back(n);
  });
  cur = cur.set_difference(IntSet(std::move(dropped)));
}

}  // namespace

std::string PruneTrace::to_json() const {
  nlohmann::json j;
  j["final"] = std::vector<std::uint64_t>(final.begin(), final.end());
  j["r_final"] = r_final.to_string();
  j["r_initial"] = r_initial.to_string();
  j["removed_elements"] = removed_elements;
  j["removed_qs"] = removed_qs;
  return j.dump();
}

PruneTrace prune_ppower(const IntSet& a, const Rational& theta, const FactorTable& t) {
  if (theta.sign() < 0) throw DomainError("theta must be >= 0");
  if (!a.empty() && a.front() < 2) throw DomainError("pruning needs elements >= 2");
  PruneTrace tr;
  tr.r_initial = recip_sum(a);
  tr.final = a;
  ppower_loop(tr.final, theta, t, tr);
  tr.r_final = recip_sum(tr.final);
  return tr;
}

PruneTrace prune_to_window(const IntSet& a, const Rational& alpha, const Rational& theta,
                           std::uint64_t m, const FactorTable& t) {
  if (theta.sign() < 0) throw DomainError("theta must be >= 0");
  if (m == 0) throw DomainError("M must be positive");
  const Rational r = recip_sum(a);
  if (r < alpha) {
    throw DomainError("R(A) = " + r.to_string() + " is below alpha = " + alpha.to_string());
  }
  if (!a.empty() && (a.front() < m || a.front() < 2)) {
    throw DomainError("element " + std::to_string(a.front()) + " lies below M = " +
                      std::to_string(m));
  }
  if (!a.empty() && a.back() > t.bound()) {
    throw DomainError("element " + std::to_string(a.back()) + " exceeds the factor table");
  }
  const Rational mtheta = Rational(static_cast<std::int64_t>(m)) * theta;
  if (theta.sign() > 0) {
    for (auto q : ppowers_in_set(a, t)) {
      if (Rational(static_cast<std::int64_t>(q)) > mtheta) {
        throw DomainError("prime power " + std::to_string(q) + " exceeds M*theta = " +
                          mtheta.to_string());
      }
    }
  }

  const Rational two_theta = theta + theta;
  PruneTrace tr;
  tr.r_initial = r;
  IntSet d = a;
  ppower_loop(d, two_theta, t, tr);
  Rational rd = recip_sum(d);
  if (rd < alpha) {
    throw InfeasibleError("pruning with 2*theta already drops R below alpha (R = " +
                          rd.to_string() + "); the mass-loss precondition fails here");
  }

  // The 2θ pruning returns the largest subset whose classes all carry mass
  // >= 2θ, and that subset is unique. Hence prune(D \ {x}) equals
  // prune(B' \ {x}), and B' can be maintained incrementally.
  std::set<std::uint64_t> live(d.begin(), d.end());
  std::set<std::uint64_t> b = live;
  MassTable d_mass(d, t);
  MassTable b_mass(d, t);
  while (rd >= alpha) {
    if (b.empty()) {
      throw InfeasibleError("prune_ppower(D, 2*theta) is empty while R(D) = " + rd.to_string() +
                            " >= alpha; the nonemptiness precondition fails at this scale");
    }
    const std::uint64_t x = *b.begin();
    live.erase(x);
    rd -= Rational::reciprocal_of(x);
    tr.removed_elements.push_back(x);

    // Only the classes of x lose mass.
    d_mass.remove(x);
    for (auto q : t.exact_prime_powers(x)) {
      const Rational* mq = d_mass.mass(q);
      if (mq && *mq < theta) {
        throw std::logic_error("single-removal safety violated at q = " + std::to_string(q) +
                               " after removing " + std::to_string(x));
      }
    }
    b.erase(x);
    b_mass.remove(x);
    b_mass.cascade(two_theta, [&](std::uint64_t, std::uint64_t n) { b.erase(n); });
  }
  d = IntSet(std::vector<std::uint64_t>(live.begin(), live.end()));
  tr.final = std::move(d);
  tr.r_final = rd;
  return tr;
}

}  // namespace egyfrac
