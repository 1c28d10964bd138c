#pragma once

/// \file runner.hpp
/// \brief External solver invocation and the expected-value tables.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include "leesdp/sdpa_io.hpp"

#ifndef LEESDP_DEFAULT_SOLVER
#define LEESDP_DEFAULT_SOLVER ""
#endif
#ifndef LEESDP_DATA_DIR
#define LEESDP_DATA_DIR "data"
#endif

namespace leesdp {

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, std::string log) : std::runtime_error(what), log_(std::move(log)) {}
  const std::string& log() const { return log_; }

 private:
  std::string log_;
};

/// $LEESDP_SOLVER, else the bundled adapter configured at build time.
inline std::string default_solver_path() {
  if (const char* env = std::getenv("LEESDP_SOLVER"); env && *env) return env;
  return LEESDP_DEFAULT_SOLVER;
}

inline bool solver_available(const std::string& path) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (path.empty() || !fs::exists(path, ec)) return false;
  const auto perms = fs::status(path, ec).permissions();
  return (perms & fs::perms::owner_exec) != fs::perms::none;
}

namespace detail {

inline std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

/// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    namespace fs = std::filesystem;
    std::random_device rd;
    for (int attempt = 0; attempt < 100; ++attempt) {
      auto p = fs::temp_directory_path() / ("leesdp-" + std::to_string(rd()));
      if (fs::create_directory(p)) {
        path_ = p;
        return;
      }
    }
    throw std::runtime_error("cannot create a temporary directory");
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace detail

struct SolverRun {
  SolveOutcome outcome;
  bool scaled = false;
  double seconds = 0;
  std::string log;
};

/// Runs `solver INPUT OUTPUT` on SDPA text and parses the result file.
inline SolverRun run_solver(const std::string& solver, const std::string& sdpa_text, double objective_scale) {
  if (!solver_available(solver)) throw SolverError("solver not found or not executable: " + solver, "");
  detail::TempDir dir;
  const auto in = dir.path() / "problem.dat-s";
  const auto out = dir.path() / "problem.out";
  {
    std::ofstream f(in);
    f << sdpa_text;
    if (!f) throw SolverError("cannot write " + in.string(), "");
  }
  const std::string cmd = detail::shell_quote(solver) + " " + detail::shell_quote(in.string()) + " " +
                          detail::shell_quote(out.string()) + " 2>&1";
  const auto start = std::chrono::steady_clock::now();
  SolverRun run;
  std::FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) throw SolverError("cannot start " + solver, "");
  char buf[4096];
  while (std::size_t k = std::fread(buf, 1, sizeof buf, pipe)) run.log.append(buf, k);
  const int status = ::pclose(pipe);
  run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (status != 0) throw SolverError("solver exited with status " + std::to_string(status), run.log);
  if (!std::filesystem::exists(out)) throw SolverError("solver wrote no output file", run.log);
  try {
    run.outcome = parse_solution_and_floor(detail::slurp(out), objective_scale);
  } catch (const ParseError& e) {
    throw SolverError(e.what(), run.log);
  }
  return run;
}

/// Solves a program; an unverified or failed run is retried once with the
/// other T-block scaling and the better attempt is returned.
template <class Coeff>
SolverRun solve_program(const SdpProgram<Coeff>& p, const std::string& solver, bool scale_t = false,
                        bool retry = true) {
  auto attempt = [&](bool scaled) {
    auto run = run_solver(solver, emit_sdpa(p, scaled), static_cast<double>(objective_scale(p, scaled)));
    run.scaled = scaled;
    return run;
  };
  std::optional<SolverRun> first;
  std::string first_error, first_log;
  try {
    first = attempt(scale_t);
    if (first->outcome.verified || !retry) return *first;
  } catch (const SolverError& e) {
    if (!retry) throw;
    first_error = e.what();
    first_log = e.log();
  }
  try {
    auto second = attempt(!scale_t);
    if (second.outcome.verified || !first) return second;
  } catch (const SolverError& e) {
    if (!first) throw SolverError(first_error + "; retry: " + e.what(), first_log + e.log());
  }
  return *first;
}

/// One expected cell of the reproduction tables.
struct ReferenceCell {
  std::string table;
  int q = 0, n = 0, d = 0;
  Metric metric = Metric::Lee;
  Variant variant = Variant::B3;
  std::string quantity;  ///< "bound" or "vars"
  std::string expected;  ///< as printed in the table
  std::string compare;   ///< "floor", "round3" or "exact"

  double expected_value() const { return std::stod(expected); }
};

inline std::filesystem::path default_reference_path() {
  return std::filesystem::path(LEESDP_DATA_DIR) / "reference_values.tsv";
}

inline std::vector<ReferenceCell> load_reference(const std::filesystem::path& path = default_reference_path()) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::vector<ReferenceCell> out;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    std::istringstream f(line);
    ReferenceCell c;
    std::string metric, bound;
    if (!(f >> c.table >> c.q >> c.n >> c.d >> metric >> bound >> c.quantity >> c.expected >> c.compare))
      throw std::runtime_error("bad reference line: " + line);
    c.metric = parse_metric(metric);
    c.variant = bound == "b2" ? Variant::B2 : Variant::B3;
    out.push_back(std::move(c));
  }
  return out;
}

/// Whether a computed value reproduces the cell: floors agree, three
/// decimals agree (half a unit in the last place), or exact equality.
inline bool matches(const ReferenceCell& c, double raw) {
  if (c.compare == "floor") return std::floor(raw + 1e-5) == c.expected_value();
  if (c.compare == "round3") return std::abs(raw - c.expected_value()) <= 5e-4 + 1e-9;
  return raw == c.expected_value();
}

}  // namespace leesdp
