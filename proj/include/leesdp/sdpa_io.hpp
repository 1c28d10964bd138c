#pragma once

/// \file sdpa_io.hpp
/// \brief SDPA sparse (.dat-s) writer and reader, solver-result parsing and
/// the JSON program summary.

#include <cmath>
#include <iomanip>
#include <optional>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "leesdp/sdp.hpp"

namespace leesdp {

class EmissionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string format_double(double v) {
  if (!std::isfinite(v)) throw EmissionError("non-finite coefficient");
  if (v == 0) return "0";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

/// c / divisor, exact when the divisor is one.
inline std::string format_coeff(const Integer& c, const Integer& divisor) {
  if (divisor == 1) return c.str();
  return format_double(static_cast<double>(c) / static_cast<double>(divisor));
}
inline std::string format_coeff(double c, const Integer& divisor) {
  return format_double(c / static_cast<double>(divisor));
}

}  // namespace detail

/// Scale applied to the objective when the T block is rescaled.
template <class Coeff>
Integer objective_scale(const SdpProgram<Coeff>& p, bool scale_t) {
  return scale_t ? Integer(ipow(p.spec.q, p.spec.n)) : Integer(1);
}

/// Sparse SDPA text: minimise c^T x subject to sum_i F_i x_i - F_0 >= 0.
/// Blocks of order one are merged into a single diagonal block (negative
/// size) placed last; c is the negated objective.
template <class Coeff>
std::string emit_sdpa(const SdpProgram<Coeff>& p, bool scale_t = false) {
  std::map<int, int> pos;
  for (std::size_t i = 0; i < p.variables.size(); ++i) pos[p.variables[i]] = static_cast<int>(i) + 1;
  auto var = [&](int w) {
    auto it = pos.find(w);
    if (it == pos.end()) throw EmissionError("block uses a variable outside the program");
    return it->second;
  };
  const Integer one = 1;
  const Integer qn = ipow(p.spec.q, p.spec.n);
  const Integer oscale = scale_t ? qn : one;

  std::vector<const SdpBlock<Coeff>*> mats, diag;
  for (const auto& b : p.blocks) (b.dim() == 1 ? diag : mats).push_back(&b);

  std::ostringstream os;
  os << "\"leesdp q=" << p.spec.q << " n=" << p.spec.n << " d=" << p.spec.d << " metric=" << to_string(p.spec.metric)
     << " variant=" << to_string(p.spec.variant) << " route=" << to_string(p.spec.route)
     << " objective_scale=" << oscale << "\n";
  os << p.variables.size() << "\n";
  os << mats.size() + (diag.empty() ? 0 : 1) << "\n";
  for (std::size_t i = 0; i < mats.size(); ++i) os << (i ? " " : "") << mats[i]->dim();
  if (!diag.empty()) os << (mats.empty() ? "" : " ") << -static_cast<long>(diag.size());
  os << "\n";

  std::vector<std::string> c(p.variables.size(), "0");
  for (const auto& [w, coef] : p.objective.coeffs) c[var(w) - 1] = detail::format_coeff(Coeff(-coef), oscale);
  if (p.objective.constant != Coeff(0)) throw EmissionError("objective constant is not supported");
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i];
  os << "\n";

  auto write_entry = [&](int blk, int i, int j, const LinForm<Coeff>& f, const Integer& divisor) {
    if (f.constant != Coeff(0))
      os << "0 " << blk << ' ' << i << ' ' << j << ' ' << detail::format_coeff(Coeff(-f.constant), divisor) << "\n";
    for (const auto& [w, coef] : f.coeffs)
      os << var(w) << ' ' << blk << ' ' << i << ' ' << j << ' ' << detail::format_coeff(coef, divisor) << "\n";
  };
  for (std::size_t b = 0; b < mats.size(); ++b) {
    const auto& blk = *mats[b];
    const bool t = scale_t && blk.kind() == BlockKind::EmptyCode;
    for (int i = 0; i < blk.dim(); ++i)
      for (int j = i; j < blk.dim(); ++j) {
        Integer divisor = 1;
        if (t) divisor = (i == 1 ? qn : one) * (j == 1 ? qn : one);
        write_entry(static_cast<int>(b) + 1, i + 1, j + 1, blk.at(i, j), divisor);
      }
  }
  const int lp = static_cast<int>(mats.size()) + 1;
  for (std::size_t k = 0; k < diag.size(); ++k) write_entry(lp, static_cast<int>(k) + 1, static_cast<int>(k) + 1, diag[k]->at(0, 0), one);
  return os.str();
}

struct SdpaEntry {
  int matrix, block, i, j;
  double value;
  friend bool operator==(const SdpaEntry&, const SdpaEntry&) = default;
};

struct SdpaProblem {
  int num_vars = 0;
  std::vector<int> block_struct;
  std::vector<double> c;
  std::vector<SdpaEntry> entries;
};

/// Reads sparse SDPA text (comment lines start with '"' or '*').
inline SdpaProblem parse_sdpa(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '"' || line[0] == '*') continue;
    for (char& ch : line)
      if (ch == ',' || ch == '{' || ch == '}' || ch == '(' || ch == ')') ch = ' ';
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    lines.push_back(line);
  }
  if (lines.size() < 4) throw ParseError("SDPA input too short");
  SdpaProblem p;
  int nblock = 0;
  {
    std::istringstream a(lines[0]), b(lines[1]), s(lines[2]), cs(lines[3]);
    if (!(a >> p.num_vars) || !(b >> nblock)) throw ParseError("bad SDPA header");
    for (int i = 0; i < nblock; ++i) {
      int v;
      if (!(s >> v)) throw ParseError("bad block structure");
      p.block_struct.push_back(v);
    }
    for (int i = 0; i < p.num_vars; ++i) {
      double v;
      if (!(cs >> v)) throw ParseError("bad objective vector");
      p.c.push_back(v);
    }
  }
  for (std::size_t k = 4; k < lines.size(); ++k) {
    std::istringstream e(lines[k]);
    SdpaEntry x{};
    if (!(e >> x.matrix >> x.block >> x.i >> x.j >> x.value)) throw ParseError("bad entry line: " + lines[k]);
    if (x.matrix < 0 || x.matrix > p.num_vars || x.block < 1 || x.block > nblock) throw ParseError("entry out of range: " + lines[k]);
    p.entries.push_back(x);
  }
  return p;
}

struct SolveOutcome {
  std::string phase;
  double primal = 0, dual = 0;  ///< solver's objective values (minimisation form)
  double raw = 0;               ///< upper bound in the original scale
  double gap = 0;               ///< primal-dual gap relative to the original scale
  long long bound = 0;          ///< floor(raw + tol)
  bool verified = false;
};

/// Extracts objValPrimal / objValDual from SDPA-style output and floors the
/// dual-side value (the certified upper bound).
inline SolveOutcome parse_solution_and_floor(const std::string& text, double objective_scale = 1.0,
                                             double tol = 1e-5, double gap_threshold = 1e-4) {
  auto grab = [&](const std::string& key) -> std::optional<std::string> {
    std::smatch m;
    std::regex re(key + R"(\s*=\s*(\S+))");
    if (std::regex_search(text, m, re)) return m[1].str();
    return std::nullopt;
  };
  auto num = [&](const std::string& key) {
    auto s = grab(key);
    if (!s) throw ParseError("solver output lacks " + key);
    try {
      return std::stod(*s);
    } catch (const std::exception&) {
      throw ParseError("unreadable " + key + ": " + *s);
    }
  };
  SolveOutcome r;
  r.phase = grab("phase\\.value").value_or("unknown");
  r.primal = num("objValPrimal");
  r.dual = num("objValDual");
  r.raw = -r.dual * objective_scale;
  r.gap = std::abs(r.primal - r.dual) * objective_scale / std::max(1.0, std::abs(r.raw));
  r.bound = static_cast<long long>(std::floor(r.raw + tol));
  const bool bad_phase = r.phase.find("INF") != std::string::npos || r.phase.find("UNBD") != std::string::npos ||
                         r.phase == "noINFO" || r.phase == "unknown";
  r.verified = !bad_phase && r.gap <= gap_threshold && std::isfinite(r.raw);
  return r;
}

template <class Coeff>
nlohmann::json program_summary(const SdpProgram<Coeff>& p, bool scale_t = false) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : p.blocks) blocks.push_back({{"label", b.label()}, {"dim", b.dim()}});
  return {{"q", p.spec.q},
          {"n", p.spec.n},
          {"d", p.spec.d},
          {"metric", to_string(p.spec.metric)},
          {"variant", to_string(p.spec.variant)},
          {"route", to_string(p.spec.route)},
          {"num_vars", p.variables.size()},
          {"blocks", blocks},
          {"objective_scale", static_cast<long long>(objective_scale(p, scale_t))}};
}

}  // namespace leesdp
