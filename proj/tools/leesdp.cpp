// leesdp: generate, solve and check symmetry-reduced SDP bounds for Lee codes.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <map>

#include "leesdp/oracle.hpp"
#include "leesdp/runner.hpp"
#include "leesdp/verify.hpp"

namespace {

using namespace leesdp;

constexpr int kExitOk = 0, kExitUsage = 1, kExitVerify = 2, kExitSolver = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int q = 5, n = 1, d = 1;
  std::string metric = "lee";
  std::string bound = "b3";
  std::string route = "integer";
  bool force_cosine = false;
  std::string solver = default_solver_path();
  std::string output;
  bool scale_t = false;
  std::int64_t cap = kDefaultOracleCap;

  ProgramSpec spec() const {
    if (q < 2 || n < 1 || d < 1) throw UsageError("need q >= 2, n >= 1, d >= 1");
    const bool exact_cosine = q == 2 || q == 3 || q == 4 || q == 6;
    if (route == "cosine" && !exact_cosine && !force_cosine)
      throw UsageError("the cosine route has irrational coefficients for q = " + std::to_string(q) +
                       "; pass --force-cosine to use it anyway");
    return {q, n, d, parse_metric(metric), bound == "b2" ? Variant::B2 : Variant::B3,
            route == "cosine" ? DEmptyRoute::Cosine : DEmptyRoute::Integer};
  }
};

void add_program_options(CLI::App& cmd, RunConfig& cfg) {
  cmd.add_option("--q", cfg.q, "alphabet size")->required()->check(CLI::Range(2, 40));
  cmd.add_option("--n", cfg.n, "word length")->required()->check(CLI::PositiveNumber);
  cmd.add_option("--d", cfg.d, "minimum distance")->required()->check(CLI::PositiveNumber);
  cmd.add_option("--metric", cfg.metric, "lee or lee-inf")->check(CLI::IsMember({"lee", "lee-inf"}));
  cmd.add_option("--bound", cfg.bound, "b2 (pairs) or b3 (triples)")->check(CLI::IsMember({"b2", "b3"}));
  cmd.add_option("--route", cfg.route, "empty-set blocks: integer or cosine")
      ->check(CLI::IsMember({"integer", "cosine"}));
  cmd.add_flag("--force-cosine", cfg.force_cosine, "allow the cosine route for any q");
  cmd.add_flag("--scale-t", cfg.scale_t, "rescale the T block by q^n");
}

template <class F>
auto with_program(const ProgramSpec& spec, F&& f) {
  if (spec.route == DEmptyRoute::Cosine) return f(build_program<double>(spec));
  return f(build_program<Integer>(spec));
}

std::string describe(const ProgramSpec& s) {
  std::ostringstream os;
  os << to_string(s.variant) << " q=" << s.q << " n=" << s.n << " d=" << s.d << " " << to_string(s.metric);
  return os.str();
}

int cmd_generate(const RunConfig& cfg, const std::string& summary_path) {
  const auto spec = cfg.spec();
  return with_program(spec, [&](const auto& p) {
    std::string out = cfg.output.empty() ? "leesdp_" + to_string(spec.variant) + "_q" + std::to_string(spec.q) + "_n" +
                                               std::to_string(spec.n) + "_d" + std::to_string(spec.d) + "_" +
                                               to_string(spec.metric) + ".dat-s"
                                         : cfg.output;
    std::ofstream(out) << emit_sdpa(p, cfg.scale_t);
    const std::string json_path = summary_path.empty() ? out + ".json" : summary_path;
    std::ofstream(json_path) << program_summary(p, cfg.scale_t).dump(2) << "\n";
    std::cout << describe(spec) << "\n"
              << "variables " << p.variables.size() << "\n"
              << "blocks " << p.blocks.size() << "\n";
    std::map<int, int> by_dim;
    for (const auto& b : p.blocks) ++by_dim[b.dim()];
    for (const auto& [dim, count] : by_dim) std::cout << "  " << count << " of order " << dim << "\n";
    std::cout << "wrote " << out << " and " << json_path << "\n";
    return kExitOk;
  });
}

void print_run(const SolverRun& run) {
  const auto& o = run.outcome;
  std::printf("raw %.9f\nbound %lld\nphase %s\ngap %.3g\nscaled %s\nverified %s\nseconds %.2f\n", o.raw, o.bound,
              o.phase.c_str(), o.gap, run.scaled ? "yes" : "no", o.verified ? "yes" : "no", run.seconds);
}

int cmd_bound(const RunConfig& cfg) {
  const auto spec = cfg.spec();
  if (!solver_available(cfg.solver))
    throw SolverError("no usable solver; set --solver or LEESDP_SOLVER (tried '" + cfg.solver + "')", "");
  return with_program(spec, [&](const auto& p) {
    std::cout << describe(spec) << "\nvariables " << p.variables.size() << "\n";
    const auto run = solve_program(p, cfg.solver, cfg.scale_t);
    print_run(run);
    if (!run.outcome.verified) {
      std::cerr << "solver result not verified; solver output:\n" << run.log;
      return kExitSolver;
    }
    return kExitOk;
  });
}

int cmd_oracle(const RunConfig& cfg, const std::string& method) {
  if (cfg.q < 2 || cfg.n < 1 || cfg.d < 1) throw UsageError("need q >= 2, n >= 1, d >= 1");
  const auto start = std::chrono::steady_clock::now();
  const auto r = brute_force_optimum(cfg.q, cfg.n, cfg.d, parse_metric(cfg.metric), cfg.cap,
                                     method == "clique" ? OracleMethod::CliqueOnly : OracleMethod::Auto);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.size > 1 && !min_distance(r.witness, parse_metric(cfg.metric)).at_least(cfg.d)) {
    std::cerr << "witness violates the distance\n";
    return kExitVerify;
  }
  std::cout << "value " << r.size << "\nwitness";
  for (const auto& w : r.witness) std::cout << " " << w;
  std::printf("\nseconds %.3f\n", secs);
  return kExitOk;
}

int cmd_selfcheck(int q, int n, int trials) {
  detail::check_cap(q, n);
  const auto table = make_orbit_table(q, n);
  std::vector<VerificationReport> reports;
  reports.push_back(check_block_coefficients(*table, Substitution::DCase));
  reports.back().name = "block coefficients |D|=1";
  reports.push_back(check_block_coefficients(*table, Substitution::EmptyInteger));
  reports.back().name = "block coefficients D=empty";
  reports.push_back(check_isotypical_orthogonality(q, n));
  if (q == 2 || q == 3 || q == 4 || q == 6) reports.push_back(check_cosine_rationality(*table));
  if (ipow(q, n) <= 625) {
    auto s = reduction_soundness(*table, trials);
    s.report.name += " (" + std::to_string(s.psd_trials) + " psd, " + std::to_string(s.non_psd_trials) + " not psd)";
    reports.push_back(s.report);
  } else {
    std::cout << "reduction soundness: skipped (q^n > 625)\n";
  }
  for (auto [d, m] : {std::pair{2, Metric::LeeInf}, std::pair{2, Metric::Lee}, std::pair{3, Metric::Lee}}) {
    const auto code = brute_force_optimum(q, n, d, m).witness;
    const auto p = build_program<Integer>({q, n, d, m, Variant::B3, DEmptyRoute::Integer}, table);
    auto rep = feasibility_transfer(p, code);
    rep.name += " d=" + std::to_string(d) + " " + to_string(m);
    reports.push_back(rep);
  }
  bool ok = true;
  for (const auto& r : reports) {
    std::cout << r.summary() << "\n";
    ok = ok && r.ok();
  }
  std::cout << (ok ? "selfcheck passed" : "selfcheck FAILED") << "\n";
  return ok ? kExitOk : kExitVerify;
}

struct CellResult {
  std::string computed = "-", detail, status;
};

CellResult solve_cell(const ReferenceCell& c, const std::string& solver) {
  CellResult r;
  try {
    const ProgramSpec spec{c.q, c.n, c.d, c.metric, c.variant, DEmptyRoute::Integer};
    const auto run = solve_program(build_program<Integer>(spec), solver);
    const auto& o = run.outcome;
    char buf[160];
    if (c.compare == "floor") {
      std::snprintf(buf, sizeof buf, "%lld", o.bound);
      r.computed = buf;
    } else {
      std::snprintf(buf, sizeof buf, "%.3f", o.raw);
      r.computed = buf;
    }
    std::snprintf(buf, sizeof buf, "raw %.6f gap %.1e %s %.1fs", o.raw, o.gap, o.phase.c_str(), run.seconds);
    r.detail = buf;
    if (!o.verified)
      r.status = "unverified";
    else
      r.status = matches(c, o.raw) ? "match" : "MISMATCH";
  } catch (const std::exception& e) {
    r.status = "solver-error";
    r.detail = e.what();
  }
  return r;
}

int cmd_table(const std::string& which, const std::string& solver, int max_n, int solve_max_n, bool vars_only,
              int jobs, const std::string& data) {
  const auto cells = load_reference(data.empty() ? default_reference_path() : std::filesystem::path(data));
  std::vector<const ReferenceCell*> chosen;
  for (const auto& c : cells)
    if (c.table == which && c.n <= max_n) chosen.push_back(&c);
  if (chosen.empty()) throw UsageError("no cells for " + which + " with n <= " + std::to_string(max_n));

  const bool have_solver = solver_available(solver);
  std::vector<CellResult> results(chosen.size());
  std::map<std::pair<int, int>, std::shared_ptr<const OrbitTable>> tables;
  std::vector<std::size_t> to_solve;
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    const auto& c = *chosen[i];
    auto& r = results[i];
    if (c.quantity == "vars") {
      auto& t = tables[{c.q, c.n}];
      if (!t) t = make_orbit_table(c.q, c.n);
      const auto count = t->feasible(c.d, c.metric).size();
      r.computed = std::to_string(count);
      r.status = matches(c, static_cast<double>(count)) ? "match" : "MISMATCH";
    } else if (vars_only || c.n > solve_max_n) {
      r.status = "skipped";
    } else if (!have_solver) {
      r.status = "skipped";
      r.detail = "no solver";
    } else {
      to_solve.push_back(i);
    }
  }
  tables.clear();

  // Solver runs are independent; at most `jobs` run at once.
  for (std::size_t start = 0; start < to_solve.size(); start += static_cast<std::size_t>(jobs)) {
    std::vector<std::pair<std::size_t, std::future<CellResult>>> batch;
    for (std::size_t k = start; k < std::min(to_solve.size(), start + jobs); ++k) {
      const std::size_t i = to_solve[k];
      batch.emplace_back(i, std::async(std::launch::async, solve_cell, std::cref(*chosen[i]), std::cref(solver)));
    }
    for (auto& [i, f] : batch) results[i] = f.get();
  }

  std::map<std::string, int> tally;
  std::printf("%-7s %-8s %2s %2s %2s %-3s %-6s %10s %10s  %-12s %s\n", "table", "metric", "q", "n", "d", "var", "what",
              "expected", "computed", "status", "detail");
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    const auto& c = *chosen[i];
    const auto& r = results[i];
    ++tally[r.status];
    std::printf("%-7s %-8s %2d %2d %2d %-3s %-6s %10s %10s  %-12s %s\n", c.table.c_str(), to_string(c.metric).c_str(),
                c.q, c.n, c.d, to_string(c.variant).c_str(), c.quantity.c_str(), c.expected.c_str(), r.computed.c_str(),
                r.status.c_str(), r.detail.c_str());
  }
  std::cout << "summary:";
  for (const auto& [status, count] : tally) std::cout << " " << status << "=" << count;
  std::cout << "\n";
  return tally.count("MISMATCH") ? kExitVerify : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetry-reduced SDP upper bounds for codes in the Lee and Lee-infinity metrics"};
  app.require_subcommand(1);
  RunConfig cfg;

  std::string summary_path;
  auto* gen = app.add_subcommand("generate", "write the SDPA program and a JSON summary");
  add_program_options(*gen, cfg);
  gen->add_option("-o,--output", cfg.output, "SDPA output file");
  gen->add_option("--summary", summary_path, "JSON summary file (default: OUTPUT.json)");

  auto* bnd = app.add_subcommand("bound", "solve the program with an external SDPA-compatible solver");
  add_program_options(*bnd, cfg);
  bnd->add_option("--solver", cfg.solver, "solver executable (default: $LEESDP_SOLVER or bundled adapter)");

  std::string method = "auto";
  auto* orc = app.add_subcommand("oracle", "exact maximum code size by exhaustive search");
  orc->add_option("--q", cfg.q)->required()->check(CLI::Range(2, 40));
  orc->add_option("--n", cfg.n)->required()->check(CLI::PositiveNumber);
  orc->add_option("--d", cfg.d)->required()->check(CLI::PositiveNumber);
  orc->add_option("--metric", cfg.metric)->check(CLI::IsMember({"lee", "lee-inf"}));
  orc->add_option("--cap", cfg.cap, "largest q^n searched");
  orc->add_option("--method", method)->check(CLI::IsMember({"auto", "clique"}));

  int trials = 50;
  auto* chk = app.add_subcommand("selfcheck", "run the exact verification suite for (q, n)");
  chk->add_option("--q", cfg.q)->required()->check(CLI::Range(2, 40));
  chk->add_option("--n", cfg.n)->required()->check(CLI::PositiveNumber);
  chk->add_option("--trials", trials, "random trials for the soundness check")->check(CLI::PositiveNumber);

  std::string which, data;
  int max_n = 5, solve_max_n = 3, jobs = 1;
  bool vars_only = false;
  auto* tab = app.add_subcommand("table", "reproduce the reference tables");
  tab->add_option("which", which)->required()->check(CLI::IsMember({"table1", "table2"}));
  tab->add_option("--solver", cfg.solver, "solver executable");
  tab->add_option("--max-n", max_n, "largest n reported");
  tab->add_option("--solve-max-n", solve_max_n, "largest n solved");
  tab->add_flag("--vars-only", vars_only, "skip cells that need a solver");
  tab->add_option("--jobs", jobs, "concurrent solver runs")->check(CLI::PositiveNumber);
  tab->add_option("--data", data, "expected-values file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) return cmd_generate(cfg, summary_path);
    if (*bnd) return cmd_bound(cfg);
    if (*orc) return cmd_oracle(cfg, method);
    if (*chk) return cmd_selfcheck(cfg.q, cfg.n, trials);
    if (*tab) return cmd_table(which, cfg.solver, max_n, solve_max_n, vars_only, jobs, data);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const LimitExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n" << e.log();
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitUsage;
}
