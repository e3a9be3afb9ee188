#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "egyfrac/cli.hpp"
#include "egyfrac/decomposition.hpp"
#include "egyfrac/errors.hpp"
#include "egyfrac/filters.hpp"
#include "egyfrac/fourier.hpp"
#include "egyfrac/pomerance.hpp"
#include "egyfrac/pruning.hpp"
#include "egyfrac/simd/kernels.hpp"
#include "egyfrac/subset_solver.hpp"

namespace egyfrac::cli {

namespace {

using nlohmann::json;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string join(const IntSet& s) {
  std::string out;
  for (auto n : s) {
    if (!out.empty()) out += ' ';
    out += std::to_string(n);
  }
  return out;
}

std::uint64_t table_bound(const IntSet& a) { return std::max<std::uint64_t>(a.empty() ? 2 : a.back(), 2); }

struct Globals {
  unsigned threads = 1;
  std::string simd = "auto";
  std::string out;
  bool nondeterministic = false;
};

struct Input {
  IntSet set;
  std::string digest;
};

Input load_set(const std::string& path) {
  const std::string text = read_file(path);
  return {parse_int_set(text), sha256_hex(text)};
}

// Writes a JSON document to --out (with a manifest next to it) or stdout.
void emit_json(const Globals& g, RunManifest m, const json& doc, std::ostream& out) {
  const std::string body = doc.dump(2) + "\n";
  if (g.out.empty()) {
    out << body;
    return;
  }
  m.output_path = g.out;
  write_file(g.out, body);
  write_file(g.out + ".manifest.json", m.to_json());
}

RunManifest manifest(std::string command, const Globals& g,
                     std::map<std::string, std::string> params, std::string digest = {}) {
  params["threads"] = std::to_string(g.threads);
  params["deterministic"] = g.nondeterministic ? "false" : "true";
  return RunManifest{std::move(command), std::move(params), std::move(digest), {}};
}

// Experiment artifacts land under the output root as <name>.<ext> plus a
// manifest; the paths are echoed on stdout.
void emit_artifacts(const Globals& g, RunManifest m,
                    const std::vector<std::pair<std::string, std::string>>& files,
                    std::ostream& out) {
  const auto root = output_root(g.out);
  std::string listed;
  for (const auto& [name, body] : files) {
    const auto p = root / name;
    write_file(p, body);
    out << p.string() << "\n";
    if (!listed.empty()) listed += ';';
    listed += p.string();
  }
  m.output_path = listed;
  const auto mp = root / (m.command + ".manifest.json");
  write_file(mp, m.to_json());
  out << mp.string() << "\n";
}

// ---- experiments ----------------------------------------------------------

struct ExperimentArgs {
  std::uint64_t max = 20;
  std::uint64_t x = 1'000'000;
  std::uint64_t n = 0;  // 0: experiment default
  std::uint64_t step = 0;
  double c = 1;
  double y = 3;
  double z = 100;
  std::uint64_t budget = 2'000'000'000;
  std::uint64_t m = 8;
  std::string alpha = "1";
  std::string theta = "0";
  double smooth = 16;
  double pair_z = 8;
  double omega_lo = 0;
  double omega_hi = 10;
  std::uint64_t k = 2;
  double radius = 4;
};

int exp_mertens(const Globals& g, const ExperimentArgs& a, std::ostream& out) {
  if (a.x < 10) throw DomainError("--X must be at least 10");
  const FactorTable t(a.x);
  const Rational at_x = mertens_q_sum(a.x, t);
  const double llx = std::log(std::log(static_cast<double>(a.x)));
  const double c_hat = at_x.to_double() - llx;
  std::vector<std::uint64_t> xs;
  for (std::uint64_t p = 1000; p < a.x; p *= 10) xs.push_back(p);
  xs.push_back(a.x);
  CsvWriter csv({"X", "q_sum", "loglog_X", "c_hat", "drift", "bound", "within", "product_over_log"});
  for (auto x : xs) {
    const double s = x == a.x ? at_x.to_double() : mertens_q_sum(x, t).to_double();
    const double lx = std::log(static_cast<double>(x));
    const double drift = s - std::log(lx) - c_hat;
    const double prod = mertens_product(x, t).to_double() / lx;
    csv.row({std::to_string(x), fmt(s), fmt(std::log(lx)), fmt(c_hat), fmt(drift), fmt(1 / lx),
             std::fabs(drift) <= 1 / lx ? "true" : "false", fmt(prod)});
  }
  emit_artifacts(g, manifest("mertens", g, {{"X", std::to_string(a.x)}}),
                 {{"mertens.csv", csv.str()}}, out);
  return 0;
}

int exp_sieve(const Globals& g, const ExperimentArgs& a, std::ostream& out) {
  const std::uint64_t n = a.n ? a.n : 1'000'000;
  const FactorTable t(2 * n);
  const SieveDensityReport r = sieve_density(n, a.y, a.z, t);
  CsvWriter csv({"N", "y", "z", "count", "ratio", "bound", "K"});
  csv.row({std::to_string(r.n), fmt(r.y), fmt(r.z), std::to_string(r.count), fmt(r.ratio),
           fmt(r.bound), fmt(r.constant)});
  emit_artifacts(g,
                 manifest("sieve", g, {{"N", std::to_string(n)}, {"y", fmt(a.y)}, {"z", fmt(a.z)}}),
                 {{"sieve.csv", csv.str()}, {"sieve.json", json::parse(r.to_json()).dump(2) + "\n"}},
                 out);
  return 0;
}

int exp_pomerance(const Globals& g, const ExperimentArgs& a, std::ostream& out) {
  const std::uint64_t n = a.n ? a.n : 200;
  const std::uint64_t step = a.step ? a.step : n;
  const FactorTable t(std::max<std::uint64_t>(n, 2));
  CsvWriter csv({"N", "C", "size", "recip_float", "recip_exact", "verified"});
  for (std::uint64_t at = step; at <= n; at += step) {
    if (at < 2) continue;
    const PomeranceReport r = pomerance_set(at, a.c, t);
    std::string verified;
    try {
      verified = verify_solution_free(r.set, a.budget) ? "true" : "false";
    } catch (const InconclusiveError&) {
      verified = "inconclusive";
    }
    csv.row({std::to_string(at), fmt(a.c), std::to_string(r.set.size()), fmt(r.recip.to_double()),
             r.recip.to_string(), verified});
  }
  emit_artifacts(g,
                 manifest("pomerance", g,
                          {{"N", std::to_string(n)}, {"C", fmt(a.c)}, {"step", std::to_string(step)},
                           {"budget", std::to_string(a.budget)}}),
                 {{"pomerance.csv", csv.str()}}, out);
  return 0;
}

int exp_lambda(const Globals& g, const ExperimentArgs& a, std::ostream& out) {
  CsvWriter csv({"N", "lambda_exact", "lambda_float", "witness", "nodes"});
  for (std::uint64_t n = 2; n <= a.max; ++n) {
    const LambdaResult r = lambda_exact(n);
    csv.row({std::to_string(n), r.value.to_string(), fmt(r.value.to_double()), join(r.witness),
             std::to_string(r.nodes)});
  }
  emit_artifacts(g, manifest("lambda", g, {{"max", std::to_string(a.max)}}),
                 {{"lambda.csv", csv.str()}}, out);
  return 0;
}

// filter -> repeated prune_to_window carving disjoint windows -> Fourier
// diagnostics on each window.
int exp_prune_demo(const Globals& g, const ExperimentArgs& a, std::ostream& out) {
  const std::uint64_t n = a.n ? a.n : 60;
  const FactorTable t(std::max<std::uint64_t>(n, 2));
  FilterSpec spec;
  spec.smooth_bound = a.smooth;
  spec.y = 1;
  spec.z = a.pair_z;
  spec.omega_lo = a.omega_lo;
  spec.omega_hi = a.omega_hi;
  spec.validate();
  const Rational alpha = Rational::parse(a.alpha);
  const Rational theta = Rational::parse(a.theta);

  const IntSet base = filter_set(IntSet::interval(std::max<std::uint64_t>(a.m, 2), n), spec, t);
  json doc;
  doc["filtered"] = std::vector<std::uint64_t>(base.begin(), base.end());
  doc["filtered_recip"] = recip_sum(base).to_string();
  json windows = json::array();
  IntSet rest = base;
  FourierOptions fo;
  fo.threads = g.threads;
  while (!rest.empty() && recip_sum(rest) >= alpha) {
    json w;
    PruneTrace tr;
    try {
      tr = prune_to_window(rest, alpha, theta, a.m, t);
    } catch (const InfeasibleError& e) {
      w["stopped"] = e.what();
      windows.push_back(std::move(w));
      break;
    }
    w["trace"] = json::parse(tr.to_json());
    if (tr.final.size() <= 52 && lcm_set(tr.final) <= BigInt(static_cast<unsigned long>(fo.lcm_bound))) {
      const ArcDiagnostics d = arc_classify(tr.final, a.k, a.radius, fo);
      const BigInt exact = count_integral(tr.final, a.k);
      w["fourier"] = json::parse(d.to_json(64));
      w["count_integral"] = exact.get_str();
      w["consistent"] = BigInt(static_cast<long>(d.rounded)) == exact;
    } else {
      w["fourier"] = "skipped: lcm or size beyond the Fourier bound";
    }
    windows.push_back(std::move(w));
    rest = rest.set_difference(tr.final);
  }
  doc["windows"] = std::move(windows);
  emit_artifacts(g,
                 manifest("prune-demo", g,
                          {{"N", std::to_string(n)}, {"M", std::to_string(a.m)}, {"alpha", a.alpha},
                           {"theta", a.theta}, {"smooth", fmt(a.smooth)}, {"pair_z", fmt(spec.z)},
                           {"omega_lo", fmt(a.omega_lo)}, {"omega_hi", fmt(a.omega_hi)},
                           {"k", std::to_string(a.k)}, {"K", fmt(a.radius)}}),
                 {{"prune-demo.json", doc.dump(2) + "\n"}}, out);
  return 0;
}

int map_status(SolveStatus s) {
  switch (s) {
    case SolveStatus::found:
      return kExitFound;
    case SolveStatus::exhausted_none:
      return kExitNone;
    case SolveStatus::budget_exceeded:
      return kExitBudget;
  }
  return kExitData;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact unit-fraction search and diagnostics", "egyfrac"};
  app.require_subcommand(1);
  // Global options may follow the subcommand.
  app.fallthrough();
  Globals g;
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--simd", g.simd, "Kernel ISA: auto, scalar or avx2");
  app.add_option("--out", g.out, "Output file (single-result commands) or directory (experiments)");
  app.add_flag("--nondeterministic", g.nondeterministic, "Allow parallel search order");

  std::function<int()> action;

  // solve
  std::string set_file, target = "1";
  std::string strategy = "auto";
  std::uint64_t budget = 2'000'000'000;
  bool no_prefilter = false;
  auto* solve = app.add_subcommand("solve", "Find S subset of A with R(S) = target");
  solve->add_option("set_file", set_file)->required();
  solve->add_option("--target", target, "Target rational p/q");
  solve->add_option("--strategy", strategy, "dfs_bnb, meet_middle, residue_dp or auto");
  solve->add_option("--budget", budget, "Node budget");
  solve->add_flag("--no-prefilter", no_prefilter, "Disable the p-adic prefilter");
  solve->callback([&] {
    action = [&] {
      const Input in = load_set(set_file);
      SolverConfig cfg;
      cfg.strategy = parse_strategy(strategy);
      cfg.node_budget = budget;
      cfg.deterministic = !g.nondeterministic;
      cfg.threads = g.threads;
      cfg.padic_prefilter = !no_prefilter;
      const Rational tgt = Rational::parse(target);
      const SolverResult r = find_subset(in.set, tgt, cfg);
      emit_json(g,
                manifest("solve", g,
                         {{"set_file", set_file}, {"target", tgt.to_string()},
                          {"strategy", strategy}, {"budget", std::to_string(budget)},
                          {"prefilter", no_prefilter ? "false" : "true"}},
                         in.digest),
                json::parse(r.to_json()), out);
      return map_status(r.status);
    };
  });

  // fourier
  std::uint64_t k = 1;
  double radius = 0;
  std::uint64_t lcm_bound = 1'000'000;
  std::size_t cap = 10'000;
  auto* fourier = app.add_subcommand("fourier", "F(A) by orthogonality with arc diagnostics");
  fourier->add_option("set_file", set_file)->required();
  fourier->add_option("-k,--k", k, "Multiplier k")->check(CLI::PositiveNumber);
  fourier->add_option("--K", radius, "Major arc width K");
  fourier->add_option("--lcm-bound", lcm_bound, "Largest lcm(A) accepted");
  fourier->add_option("--cap", cap, "Per-h entries listed before summarising");
  fourier->callback([&] {
    action = [&] {
      const Input in = load_set(set_file);
      FourierOptions fo;
      fo.lcm_bound = lcm_bound;
      fo.threads = g.threads;
      const FourierCount f = fourier_count(in.set, k, fo);
      const ArcDiagnostics d = arc_classify(in.set, k, radius, fo);
      CountConfig cc;
      cc.dp_bound = std::max<std::uint64_t>(cc.dp_bound, lcm_bound);
      const BigInt exact = count_integral(in.set, k, cc);
      json doc = json::parse(d.to_json(cap));
      doc["F"] = f.rounded;
      doc["count_integral"] = exact.get_str();
      doc["consistent"] = BigInt(static_cast<long>(f.rounded)) == exact;
      emit_json(g,
                manifest("fourier", g,
                         {{"set_file", set_file}, {"k", std::to_string(k)}, {"K", fmt(radius)},
                          {"lcm_bound", std::to_string(lcm_bound)}, {"cap", std::to_string(cap)}},
                         in.digest),
                doc, out);
      return 0;
    };
  });

  // count
  std::uint64_t count_k = 0;
  auto* count = app.add_subcommand("count", "Count subsets with R(S) = target, or F(A) with --k");
  count->add_option("set_file", set_file)->required();
  count->add_option("--target", target, "Target rational p/q");
  count->add_option("-k,--k", count_k, "Count S with k R(S) integral instead");
  count->callback([&] {
    action = [&] {
      const Input in = load_set(set_file);
      json doc;
      std::map<std::string, std::string> params{{"set_file", set_file}};
      if (count_k > 0) {
        doc["F"] = count_integral(in.set, count_k).get_str();
        params["k"] = std::to_string(count_k);
      } else {
        const Rational tgt = Rational::parse(target);
        doc["count"] = count_subsets(in.set, tgt).get_str();
        params["target"] = tgt.to_string();
      }
      emit_json(g, manifest("count", g, params, in.digest), doc, out);
      return 0;
    };
  });

  // decompose
  auto* decomp = app.add_subcommand("decompose", "Prime-power decomposition A_q, Q_A, R(A;q)");
  decomp->add_option("set_file", set_file)->required();
  decomp->callback([&] {
    action = [&] {
      const Input in = load_set(set_file);
      const FactorTable t(table_bound(in.set));
      const Decomposition d = decompose(in.set, t);
      json doc = json::parse(d.to_json());
      json masses = json::object();
      for (const auto& [q, part] : d.parts) masses[std::to_string(q)] = d.rec_sum_q(q).to_string();
      doc["masses"] = std::move(masses);
      doc["recip"] = recip_sum(in.set).to_string();
      emit_json(g, manifest("decompose", g, {{"set_file", set_file}}, in.digest), doc, out);
      return 0;
    };
  });

  // prune
  std::string theta = "0", alpha;
  std::uint64_t window_m = 0;
  auto* prune = app.add_subcommand("prune", "Prime-power pruning, or window trimming with --alpha");
  prune->add_option("set_file", set_file)->required();
  prune->add_option("--theta", theta, "Per-q floor");
  prune->add_option("--alpha", alpha, "Window top; enables prune_to_window");
  prune->add_option("--M", window_m, "Window scale M (elements >= M)");
  prune->callback([&] {
    action = [&] {
      const Input in = load_set(set_file);
      const FactorTable t(table_bound(in.set));
      const Rational th = Rational::parse(theta);
      std::map<std::string, std::string> params{{"set_file", set_file}, {"theta", th.to_string()}};
      PruneTrace tr;
      if (alpha.empty()) {
        tr = prune_ppower(in.set, th, t);
      } else {
        if (window_m == 0) throw ParseError("--alpha needs --M");
        const Rational al = Rational::parse(alpha);
        params["alpha"] = al.to_string();
        params["M"] = std::to_string(window_m);
        tr = prune_to_window(in.set, al, th, window_m, t);
      }
      emit_json(g, manifest("prune", g, params, in.digest), json::parse(tr.to_json()), out);
      return 0;
    };
  });

  // experiment
  std::string exp_name;
  ExperimentArgs ea;
  auto* experiment = app.add_subcommand("experiment", "mertens, sieve, pomerance, lambda, prune-demo");
  experiment->add_option("name", exp_name)->required();
  experiment->add_option("--max", ea.max, "lambda: largest N");
  experiment->add_option("--X", ea.x, "mertens: largest X");
  experiment->add_option("--N", ea.n, "sieve/pomerance/prune-demo: scale N");
  experiment->add_option("--step", ea.step, "pomerance: emit a row every step");
  experiment->add_option("--C", ea.c, "pomerance: constant C");
  experiment->add_option("--y", ea.y, "sieve: lower prime bound");
  experiment->add_option("--z", ea.z, "sieve: upper prime bound");
  experiment->add_option("--pair-z", ea.pair_z, "prune-demo: divisor pair bound z");
  experiment->add_option("--budget", ea.budget, "pomerance: verification node budget");
  experiment->add_option("--M", ea.m, "prune-demo: window scale");
  experiment->add_option("--alpha", ea.alpha, "prune-demo: window top");
  experiment->add_option("--theta", ea.theta, "prune-demo: per-q floor");
  experiment->add_option("--smooth", ea.smooth, "prune-demo: smoothness bound");
  experiment->add_option("--omega-lo", ea.omega_lo, "prune-demo: omega window low");
  experiment->add_option("--omega-hi", ea.omega_hi, "prune-demo: omega window high");
  experiment->add_option("-k,--k", ea.k, "prune-demo: multiplier k")->check(CLI::PositiveNumber);
  experiment->add_option("--K", ea.radius, "prune-demo: major arc width");
  experiment->callback([&] {
    action = [&] {
      if (exp_name == "mertens") return exp_mertens(g, ea, out);
      if (exp_name == "sieve") return exp_sieve(g, ea, out);
      if (exp_name == "pomerance") return exp_pomerance(g, ea, out);
      if (exp_name == "lambda") return exp_lambda(g, ea, out);
      if (exp_name == "prune-demo") return exp_prune_demo(g, ea, out);
      err << "egyfrac: unknown experiment '" << exp_name << "'\n";
      return kExitUsage;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "egyfrac: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    simd::set_active_isa(simd::parse_isa(g.simd));
    return action();
  } catch (const ParseError& e) {
    err << "egyfrac: parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceError& e) {
    err << "egyfrac: resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const NumericalError& e) {
    err << "egyfrac: numerical: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const InconclusiveError& e) {
    err << "egyfrac: inconclusive: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const InfeasibleError& e) {
    err << "egyfrac: infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const Error& e) {
    err << "egyfrac: " << e.what() << "\n";
    return kExitData;
  } catch (const std::ios_base::failure& e) {
    err << "egyfrac: " << e.what() << "\n";
    return kExitNoInput;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "egyfrac: " << e.what() << "\n";
    return kExitIo;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace egyfrac::cli
