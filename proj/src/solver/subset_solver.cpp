#include "egyfrac/subset_solver.hpp"

#include <algorithm>
#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "egyfrac/errors.hpp"
#include "egyfrac/simd/kernels.hpp"
#include "search.hpp"

namespace egyfrac {

using solver::Instance;
using solver::Outcome;
using solver::u128;

std::string_view strategy_name(Strategy s) {
  switch (s) {
    case Strategy::dfs_bnb:
      return "dfs_bnb";
    case Strategy::meet_middle:
      return "meet_middle";
    case Strategy::residue_dp:
      return "residue_dp";
    case Strategy::auto_select:
      return "auto";
  }
  return "unknown";
}

Strategy parse_strategy(std::string_view name) {
  if (name == "dfs_bnb" || name == "dfs") return Strategy::dfs_bnb;
  if (name == "meet_middle" || name == "mm") return Strategy::meet_middle;
  if (name == "residue_dp" || name == "dp") return Strategy::residue_dp;
  if (name == "auto") return Strategy::auto_select;
  throw ParseError("unknown strategy '" + std::string(name) + "'");
}

std::string_view status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::found:
      return "found";
    case SolveStatus::exhausted_none:
      return "exhausted_none";
    case SolveStatus::budget_exceeded:
      return "budget_exceeded";
  }
  return "unknown";
}

void SolverConfig::validate() const {
  if (node_budget == 0) throw DomainError("node_budget must be positive");
  if (threads == 0) throw DomainError("threads must be positive");
}

std::string SolverResult::to_json() const {
  nlohmann::json j;
  j["status"] = status_name(status);
  j["nodes"] = nodes_explored;
  j["strategy"] = strategy_name(strategy_used);
  if (witness) {
    j["witness"] = std::vector<std::uint64_t>(witness->begin(), witness->end());
  } else {
    j["witness"] = nullptr;
  }
  return j.dump();
}

namespace {

constexpr std::size_t kMaxMeetMiddle = 48;
constexpr std::size_t kMeetMiddleAuto = 40;

struct Prepared {
  bool infeasible = false;
  std::vector<std::uint64_t> elems;
  BigInt l = 1;
  BigInt t = 0;
};

Prepared prepare(const IntSet& a, const Rational& target, bool prefilter) {
  Prepared p;
  if (prefilter) {
    auto reduced = padic_reduce(a, target);
    if (!reduced) {
      p.infeasible = true;
      return p;
    }
    p.elems.assign(reduced->begin(), reduced->end());
  } else {
    p.elems.assign(a.begin(), a.end());
  }
  p.l = lcm_set(p.elems);
  const BigInt scaled = target.num() * p.l;
  if (!mpz_divisible_p(scaled.get_mpz_t(), target.den().get_mpz_t())) {
    p.infeasible = true;
    return p;
  }
  p.t = scaled / target.den();
  // R(A) < target.
  if (recip_sum(p.elems) < target) p.infeasible = true;
  return p;
}

enum class Repr { u64, u128, big };

Repr pick_repr(const Prepared& p) {
  const BigInt span = p.l * BigInt(static_cast<unsigned long>(p.elems.size() + 1));
  const std::size_t bits = std::max(mpz_sizeinbase(span.get_mpz_t(), 2),
                                    mpz_sizeinbase(p.t.get_mpz_t(), 2));
  if (bits <= 62) return Repr::u64;
  if (bits <= 126) return Repr::u128;
  return Repr::big;
}

template <class F>
decltype(auto) with_repr(const Prepared& p, F&& fn) {
  switch (pick_repr(p)) {
    case Repr::u64:
      return fn(solver::make_instance<std::uint64_t>(p.elems, p.l, p.t));
    case Repr::u128:
      return fn(solver::make_instance<u128>(p.elems, p.l, p.t));
    case Repr::big:
      break;
  }
  return fn(solver::make_instance<BigInt>(p.elems, p.l, p.t));
}

// Bitset of reachable sums 0..t, one row per suffix of the weights.
class ReachTable {
 public:
  ReachTable(const std::vector<std::uint64_t>& w, std::uint64_t t)
      : t_(t), words_((t + 64) / 64), rows_(w.size() + 1) {
    const std::size_t n = w.size();
    bits_.assign(rows_ * words_, 0);
    row(n)[0] = 1;
    for (std::size_t i = n; i-- > 0;) {
      const std::uint64_t* src = row(i + 1);
      std::uint64_t* dst = row(i);
      std::copy(src, src + words_, dst);
      if (w[i] > t) continue;
      const std::size_t ws = w[i] / 64;
      const unsigned bs = w[i] % 64;
      for (std::size_t k = words_; k-- > ws;) {
        std::uint64_t v = src[k - ws] << bs;
        if (bs && k - ws >= 1) v |= src[k - ws - 1] >> (64 - bs);
        dst[k] |= v;
      }
      // Bits above t in the last word are never read.
    }
  }

  bool test(std::size_t i, std::uint64_t s) const {
    return s <= t_ && ((row(i)[s / 64] >> (s % 64)) & 1u);
  }

 private:
  std::uint64_t* row(std::size_t i) { return bits_.data() + i * words_; }
  const std::uint64_t* row(std::size_t i) const { return bits_.data() + i * words_; }

  std::uint64_t t_;
  std::size_t words_;
  std::size_t rows_;
  std::vector<std::uint64_t> bits_;
};

// Lexicographically smallest solution read off the suffix reachability.
bool dp_find(const std::vector<std::uint64_t>& w, std::uint64_t t,
             std::vector<std::size_t>& chosen) {
  const ReachTable reach(w, t);
  if (!reach.test(0, t)) return false;
  std::uint64_t deficit = t;
  std::size_t i = 0;
  while (deficit != 0) {
    for (std::size_t j = i;; ++j) {
      if (w[j] <= deficit && reach.test(j + 1, deficit - w[j])) {
        chosen.push_back(j);
        deficit -= w[j];
        i = j + 1;
        break;
      }
    }
  }
  return true;
}

bool dp_applicable(const Prepared& p, std::uint64_t dp_bound) {
  return p.l <= BigInt(static_cast<unsigned long>(dp_bound)) &&
         p.t <= BigInt(static_cast<unsigned long>(dp_bound));
}

std::vector<std::uint64_t> small_weights(const Prepared& p) {
  std::vector<std::uint64_t> w;
  w.reserve(p.elems.size());
  for (auto n : p.elems) w.push_back(p.l.get_ui() / n);
  return w;
}

SolverResult finish(const Prepared& p, Outcome outcome,
                    const std::vector<std::size_t>& chosen, std::uint64_t nodes,
                    Strategy used) {
  SolverResult r;
  r.nodes_explored = nodes;
  r.strategy_used = used;
  switch (outcome) {
    case Outcome::found: {
      std::vector<std::uint64_t> s;
      for (auto i : chosen) s.push_back(p.elems[i]);
      r.status = SolveStatus::found;
      r.witness = IntSet(std::move(s));
      break;
    }
    case Outcome::none:
      r.status = SolveStatus::exhausted_none;
      break;
    case Outcome::budget:
      r.status = SolveStatus::budget_exceeded;
      break;
  }
  return r;
}

Strategy resolve_find_strategy(const Prepared& p, const SolverConfig& cfg) {
  if (cfg.strategy != Strategy::auto_select) return cfg.strategy;
  const std::size_t n = p.elems.size();
  if (dp_applicable(p, cfg.dp_bound) &&
      static_cast<double>(n) * (p.t.get_d() + 1) <= static_cast<double>(cfg.node_budget)) {
    return Strategy::residue_dp;
  }
  if (n <= kMeetMiddleAuto) return Strategy::meet_middle;
  return Strategy::dfs_bnb;
}

}  // namespace

SolverResult find_subset(const IntSet& a, const Rational& target,
                         const SolverConfig& cfg) {
  cfg.validate();
  if (target.sign() < 0) throw DomainError("target must be >= 0");
  if (target.is_zero()) {
    SolverResult r;
    r.status = SolveStatus::found;
    r.witness = IntSet{};
    r.strategy_used = cfg.strategy;
    return r;
  }
  const Prepared p = prepare(a, target, cfg.padic_prefilter);
  if (p.infeasible) {
    SolverResult r;
    r.status = SolveStatus::exhausted_none;
    r.strategy_used = cfg.strategy;
    return r;
  }
  const Strategy used = resolve_find_strategy(p, cfg);
  const std::size_t n = p.elems.size();
  std::vector<std::size_t> chosen;

  switch (used) {
    case Strategy::residue_dp: {
      if (!dp_applicable(p, cfg.dp_bound)) {
        return with_repr(p, [&](const auto& in) {
          solver::SearchControl ctl;
          ctl.budget = cfg.node_budget;
          const Outcome o = solver::sparse_find(in, ctl, chosen);
          return finish(p, o, chosen, std::min(ctl.nodes.load(), cfg.node_budget), used);
        });
      }
      const std::uint64_t cells = n * (p.t.get_ui() + 1);
      if (cells > cfg.node_budget) return finish(p, Outcome::budget, chosen, 0, used);
      const bool ok = dp_find(small_weights(p), p.t.get_ui(), chosen);
      return finish(p, ok ? Outcome::found : Outcome::none, chosen, cells, used);
    }
    case Strategy::meet_middle: {
      if (n > kMaxMeetMiddle) {
        return finish(p, Outcome::budget, chosen, 0, used);
      }
      const std::uint64_t nodes = solver::half_nodes(n);
      if (nodes > cfg.node_budget) return finish(p, Outcome::budget, chosen, 0, used);
      return with_repr(p, [&](const auto& in) {
        const solver::MeetMiddle mm(in);
        std::optional<std::uint64_t> best;
        mm.for_each_match(in.target, [&](std::uint64_t mask) {
          if (!best || solver::lex_less(mask, *best)) best = mask;
          return cfg.deterministic;  // keep scanning only for the smallest
        });
        if (!best) return finish(p, Outcome::none, chosen, nodes, used);
        for (std::size_t i = 0; i < n; ++i) {
          if ((*best >> i) & 1u) chosen.push_back(i);
        }
        return finish(p, Outcome::found, chosen, nodes, used);
      });
    }
    case Strategy::dfs_bnb:
    case Strategy::auto_select:
      break;
  }

  return with_repr(p, [&](const auto& in) {
    solver::SearchControl ctl;
    ctl.budget = cfg.node_budget;
    Outcome outcome;
    if (!cfg.deterministic && cfg.threads > 1) {
      outcome = solver::parallel_find(in, ctl, cfg.threads, chosen);
    } else {
      using W = std::decay_t<decltype(in.target)>;
      solver::Dfs<W> dfs(in, ctl);
      outcome = dfs.find(chosen);
    }
    return finish(p, outcome, chosen, std::min(ctl.nodes.load(), cfg.node_budget),
                  Strategy::dfs_bnb);
  });
}

namespace {

BigInt dp_count(const std::vector<std::uint64_t>& w, std::uint64_t t) {
  const auto& k = simd::active_kernels();
  if (w.size() <= 63) {
    std::vector<std::uint64_t> cur(t + 1, 0), nxt(t + 1, 0);
    cur[0] = 1;
    for (auto wi : w) {
      if (wi > t) continue;
      std::copy(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(wi), nxt.begin());
      k.add_u64(nxt.data() + wi, cur.data() + wi, cur.data(), t + 1 - wi);
      cur.swap(nxt);
    }
    return BigInt(static_cast<unsigned long>(cur[t]));
  }
  std::vector<BigInt> cur(t + 1, 0);
  cur[0] = 1;
  for (auto wi : w) {
    if (wi > t) continue;
    for (std::uint64_t s = t; s >= wi; --s) {
      cur[s] += cur[s - wi];
      if (s == wi) break;
    }
  }
  return cur[t];
}

std::size_t count_strategy_check(std::size_t n, const CountConfig& cfg) {
  if (n > cfg.exhaustive_bound || n > kMaxMeetMiddle) {
    throw ResourceError("|A| = " + std::to_string(n) +
                        " exceeds the exhaustive bound " +
                        std::to_string(cfg.exhaustive_bound));
  }
  return n;
}

}  // namespace

BigInt count_subsets(const IntSet& a, const Rational& target, const CountConfig& cfg) {
  if (target.sign() < 0) throw DomainError("target must be >= 0");
  if (target.is_zero()) return 1;
  const Prepared p = prepare(a, target, cfg.padic_prefilter);
  if (p.infeasible) return 0;
  const std::size_t n = p.elems.size();

  Strategy s = cfg.strategy;
  if (s == Strategy::auto_select) {
    if (dp_applicable(p, cfg.dp_bound)) {
      s = Strategy::residue_dp;
    } else if (n <= cfg.exhaustive_bound && n <= kMaxMeetMiddle) {
      s = Strategy::meet_middle;
    } else {
      throw ResourceError("count_subsets: |A| = " + std::to_string(n) +
                          " and lcm exceed both configured bounds");
    }
  }

  switch (s) {
    case Strategy::residue_dp:
      if (!dp_applicable(p, cfg.dp_bound)) {
        if (n > cfg.exhaustive_bound) {
          throw ResourceError("count_subsets: |A| = " + std::to_string(n) +
                              " and lcm exceed both configured bounds");
        }
        return with_repr(p, [&](const auto& in) { return solver::sparse_count(in); });
      }
      return dp_count(small_weights(p), p.t.get_ui());
    case Strategy::meet_middle:
      count_strategy_check(n, cfg);
      return with_repr(p, [&](const auto& in) {
        const solver::MeetMiddle mm(in);
        std::uint64_t total = 0;
        mm.for_each_match(in.target, [&](std::uint64_t) {
          ++total;
          return true;
        });
        return BigInt(static_cast<unsigned long>(total));
      });
    case Strategy::dfs_bnb:
    case Strategy::auto_select:
      break;
  }
  count_strategy_check(n, cfg);
  return with_repr(p, [&](const auto& in) {
    using W = std::decay_t<decltype(in.target)>;
    solver::SearchControl ctl;
    ctl.budget = ~std::uint64_t{0};
    solver::Dfs<W> dfs(in, ctl);
    return BigInt(static_cast<unsigned long>(dfs.count_from(0, in.target)));
  });
}

namespace {

// F(A) by a cyclic DP over residues modulo l.
BigInt integral_dp(const std::vector<std::uint64_t>& residues, std::uint64_t l) {
  const auto& k = simd::active_kernels();
  if (residues.size() <= 63) {
    std::vector<std::uint64_t> cur(l, 0), nxt(l, 0);
    cur[0] = 1;
    for (auto c : residues) {
      if (c == 0) {
        k.add_u64(nxt.data(), cur.data(), cur.data(), l);
      } else {
        k.add_u64(nxt.data() + c, cur.data() + c, cur.data(), l - c);
        k.add_u64(nxt.data(), cur.data(), cur.data() + (l - c), c);
      }
      cur.swap(nxt);
    }
    return BigInt(static_cast<unsigned long>(cur[0]));
  }
  std::vector<BigInt> cur(l, 0), nxt(l, 0);
  cur[0] = 1;
  for (auto c : residues) {
    for (std::uint64_t r = 0; r < l; ++r) nxt[r] = cur[r] + cur[(r + l - c) % l];
    cur.swap(nxt);
  }
  return cur[0];
}

// F(A) by Gray-code enumeration of all subsets, residues modulo l.
BigInt integral_enumerate(const std::vector<BigInt>& residues, const BigInt& l) {
  const std::size_t n = residues.size();
  std::uint64_t hits = 1;  // empty set
  BigInt s = 0;
  std::uint64_t gray = 0;
  for (std::uint64_t i = 1; i < (std::uint64_t{1} << n); ++i) {
    const unsigned bit = static_cast<unsigned>(std::countr_zero(i));
    gray ^= std::uint64_t{1} << bit;
    if ((gray >> bit) & 1u) {
      s += residues[bit];
      if (s >= l) s -= l;
    } else {
      s -= residues[bit];
      if (sgn(s) < 0) s += l;
    }
    if (sgn(s) == 0) ++hits;
  }
  return BigInt(static_cast<unsigned long>(hits));
}

}  // namespace

BigInt count_integral(const IntSet& a, std::uint64_t k, const CountConfig& cfg) {
  if (k == 0) throw DomainError("k must be a positive integer");
  const BigInt l = lcm_set(a);
  const BigInt kb = static_cast<unsigned long>(k);
  const bool dp_ok = l <= BigInt(static_cast<unsigned long>(cfg.dp_bound));
  const bool enum_ok = a.size() <= cfg.exhaustive_bound && a.size() < 64;

  bool use_dp = false;
  switch (cfg.strategy) {
    case Strategy::residue_dp:
      if (!dp_ok) throw ResourceError("count_integral: lcm exceeds dp_bound");
      use_dp = true;
      break;
    case Strategy::dfs_bnb:
    case Strategy::meet_middle:
      if (!enum_ok) throw ResourceError("count_integral: |A| exceeds exhaustive bound");
      break;
    case Strategy::auto_select:
      if (!dp_ok && !enum_ok) {
        throw ResourceError("count_integral: |A| and lcm exceed both configured bounds");
      }
      use_dp = dp_ok;
      break;
  }

  if (use_dp) {
    const std::uint64_t lu = l.get_ui();
    std::vector<std::uint64_t> residues;
    for (auto n : a) {
      const BigInt c = (kb * (l / BigInt(static_cast<unsigned long>(n)))) % l;
      residues.push_back(c.get_ui());
    }
    return integral_dp(residues, lu);
  }
  std::vector<BigInt> residues;
  for (auto n : a) {
    residues.push_back(BigInt((kb * (l / BigInt(static_cast<unsigned long>(n)))) % l));
  }
  return integral_enumerate(residues, l);
}

std::optional<IntSet> combine_solutions(std::span<const SolutionPart> parts) {
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].d == 0) {
      throw DomainError("part " + std::to_string(i) + ": d must be positive");
    }
    if (recip_sum(parts[i].set) !=
        Rational(BigInt(1), BigInt(static_cast<unsigned long>(parts[i].d)))) {
      throw DomainError("part " + std::to_string(i) + ": reciprocal sum is not 1/" +
                        std::to_string(parts[i].d));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (!parts[i].set.disjoint_from(parts[j].set)) {
        throw DomainError("part " + std::to_string(i) + " overlaps part " +
                          std::to_string(j));
      }
    }
  }
  std::map<std::uint64_t, std::vector<std::size_t>> by_d;
  for (std::size_t i = 0; i < parts.size(); ++i) by_d[parts[i].d].push_back(i);
  for (const auto& [d, idx] : by_d) {
    if (idx.size() < d) continue;
    IntSet out;
    for (std::size_t j = 0; j < d; ++j) out = out.set_union(parts[idx[j]].set);
    return out;
  }
  return std::nullopt;
}

}  // namespace egyfrac
