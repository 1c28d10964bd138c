#pragma once

/// \file sdp.hpp
/// \brief Assembly of the reduced programs B_3 (|D| = 1 blocks, D = empty
/// blocks, the empty-code block T, nonnegativity) and the pair LP B_2.

#include <memory>
#include <type_traits>

#include <Eigen/Dense>

#include "leesdp/repsets.hpp"

namespace leesdp {

/// constant + sum_w coeffs[w] z(w), keyed by orbit index.
template <class Coeff>
struct LinForm {
  Coeff constant{0};
  std::map<int, Coeff> coeffs;

  void add(int var, const Coeff& c) {
    if (c == Coeff(0)) return;
    auto [it, inserted] = coeffs.try_emplace(var, c);
    if (!inserted) {
      it->second += c;
      if (it->second == Coeff(0)) coeffs.erase(it);
    }
  }
  bool is_zero() const { return constant == Coeff(0) && coeffs.empty(); }

  double evaluate(const std::vector<double>& z) const {
    double v = static_cast<double>(constant);
    for (const auto& [w, c] : coeffs) v += static_cast<double>(c) * z.at(w);
    return v;
  }

  template <class Other>
  LinForm<Other> cast() const {
    LinForm<Other> r;
    r.constant = static_cast<Other>(constant);
    for (const auto& [w, c] : coeffs) r.coeffs.emplace(w, static_cast<Other>(c));
    return r;
  }

  friend bool operator==(const LinForm&, const LinForm&) = default;
};

enum class BlockKind { DOne, DEmpty, Cosine, EmptyCode, Nonnegativity };

inline std::string to_string(BlockKind k) {
  switch (k) {
    case BlockKind::DOne: return "d1";
    case BlockKind::DEmpty: return "d0";
    case BlockKind::Cosine: return "cos";
    case BlockKind::EmptyCode: return "T";
    case BlockKind::Nonnegativity: return "nonneg";
  }
  return "?";
}

/// Symmetric matrix of linear forms.
template <class Coeff>
class SdpBlock {
 public:
  SdpBlock(std::string label, BlockKind kind, int dim)
      : label_(std::move(label)), kind_(kind), dim_(dim), entries_(static_cast<std::size_t>(dim) * dim) {}

  const std::string& label() const { return label_; }
  BlockKind kind() const { return kind_; }
  int dim() const { return dim_; }

  LinForm<Coeff>& at(int i, int j) { return entries_[static_cast<std::size_t>(i) * dim_ + j]; }
  const LinForm<Coeff>& at(int i, int j) const { return entries_[static_cast<std::size_t>(i) * dim_ + j]; }

  bool is_symmetric() const {
    for (int i = 0; i < dim_; ++i)
      for (int j = i + 1; j < dim_; ++j)
        if (!(at(i, j) == at(j, i))) return false;
    return true;
  }

  /// Drops rows (and the matching columns) whose entries are all zero.
  void remove_zero_rows() {
    std::vector<int> keep;
    for (int i = 0; i < dim_; ++i) {
      bool zero = true;
      for (int j = 0; j < dim_ && zero; ++j) zero = at(i, j).is_zero();
      if (!zero) keep.push_back(i);
    }
    if (static_cast<int>(keep.size()) == dim_) return;
    const int nd = static_cast<int>(keep.size());
    std::vector<LinForm<Coeff>> ne(static_cast<std::size_t>(nd) * nd);
    for (int i = 0; i < nd; ++i)
      for (int j = 0; j < nd; ++j) ne[static_cast<std::size_t>(i) * nd + j] = std::move(at(keep[i], keep[j]));
    entries_ = std::move(ne);
    dim_ = nd;
  }

  Eigen::MatrixXd evaluate(const std::vector<double>& z) const {
    Eigen::MatrixXd m(dim_, dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) m(i, j) = at(i, j).evaluate(z);
    return m;
  }

  template <class Other>
  SdpBlock<Other> cast() const {
    SdpBlock<Other> b(label_, kind_, dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) b.at(i, j) = at(i, j).template cast<Other>();
    return b;
  }

 private:
  std::string label_;
  BlockKind kind_;
  int dim_;
  std::vector<LinForm<Coeff>> entries_;
};

enum class Variant { B2, B3 };
enum class DEmptyRoute { Integer, Cosine };

inline std::string to_string(Variant v) { return v == Variant::B2 ? "b2" : "b3"; }
inline std::string to_string(DEmptyRoute r) { return r == DEmptyRoute::Integer ? "integer" : "cosine"; }

struct ProgramSpec {
  int q = 5, n = 1, d = 1;
  Metric metric = Metric::Lee;
  Variant variant = Variant::B3;
  DEmptyRoute route = DEmptyRoute::Integer;
};

/// Maximise objective subject to every block being positive semidefinite.
template <class Coeff>
struct SdpProgram {
  ProgramSpec spec;
  std::shared_ptr<const OrbitTable> orbits;
  std::vector<int> variables;  ///< orbit indices, increasing
  LinForm<Coeff> objective;
  std::vector<SdpBlock<Coeff>> blocks;
};

namespace detail {

template <class Coeff, class Src>
LinForm<Coeff> to_linform(const Polynomial<Src>& p, const OrbitTable& table, int d, Metric m) {
  LinForm<Coeff> f;
  for (const auto& [mu, c] : p) {
    const int w = table.orbit_of_monomial(mu);
    if (table[w].feasible(d, m)) f.add(w, static_cast<Coeff>(c));
  }
  if constexpr (std::is_floating_point_v<Coeff>) {
    double scale = 0;
    for (const auto& [w, c] : f.coeffs) scale = std::max(scale, std::abs(c));
    std::erase_if(f.coeffs, [&](const auto& kv) { return std::abs(kv.second) <= 1e-12 * scale; });
  }
  return f;
}

template <class Coeff>
std::vector<SdpBlock<Coeff>> tableau_blocks(const OrbitTable& table, int d, Metric m, Substitution kind) {
  const int q = table.q(), n = table.n();
  BlockExpander<Integer> ex(q, kind);
  const auto& rd = ex.table().data();
  std::vector<SdpBlock<Coeff>> out;
  for (const auto& bs : enumerate_bishapes(n, rd.m1, rd.m2)) {
    const auto w = tableau_pairs(bs, rd.m1, rd.m2);
    if (w.empty()) continue;
    const int dim = static_cast<int>(w.size());
    SdpBlock<Coeff> blk((kind == Substitution::DCase ? "d1 " : "d0 ") + bs.label(),
                        kind == Substitution::DCase ? BlockKind::DOne : BlockKind::DEmpty, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j) {
        blk.at(i, j) = to_linform<Coeff>(ex.expand(w[i], w[j]), table, d, m);
        if (j != i) blk.at(j, i) = blk.at(i, j);
      }
    blk.remove_zero_rows();
    if (blk.dim() > 0) out.push_back(std::move(blk));
  }
  return out;
}

template <class Coeff>
SdpBlock<Coeff> empty_code_block(const OrbitTable& table, int d, Metric m) {
  const int q = table.q(), n = table.n();
  SdpBlock<Coeff> t("T", BlockKind::EmptyCode, 2);
  t.at(0, 0).constant = Coeff(1);
  LinForm<Coeff> off;
  off.add(table.omega0(), static_cast<Coeff>(ipow(q, n)));
  t.at(0, 1) = off;
  t.at(1, 0) = off;
  t.at(1, 1) = to_linform<Coeff>(expand_p_all_ones(q, n), table, d, m);
  return t;
}

}  // namespace detail

/// Blocks of the |D| = 1 matrix, one per bishape.
template <class Coeff = Integer>
std::vector<SdpBlock<Coeff>> build_blocks_D1(const OrbitTable& table, int d, Metric m) {
  return detail::tableau_blocks<Coeff>(table, d, m, Substitution::DCase);
}

/// Blocks of the D = empty matrix followed by the 2x2 block T.
template <class Coeff = Integer>
std::vector<SdpBlock<Coeff>> build_blocks_Dempty(const OrbitTable& table, int d, Metric m, DEmptyRoute route) {
  std::vector<SdpBlock<Coeff>> out;
  if (route == DEmptyRoute::Integer) {
    out = detail::tableau_blocks<Coeff>(table, d, m, Substitution::EmptyInteger);
  } else {
    if constexpr (!std::is_floating_point_v<Coeff>) {
      throw std::invalid_argument("the cosine route needs floating-point coefficients");
    } else {
      const int q = table.q(), n = table.n();
      auto comps = compositions(n, q / 2 + 1);
      for (std::size_t i = 1; i < comps.size(); ++i) {
        std::string label = "cos (";
        for (std::size_t j = 0; j < comps[i].size(); ++j) label += (j ? "," : "") + std::to_string(comps[i][j]);
        SdpBlock<Coeff> blk(label + ")", BlockKind::Cosine, 1);
        blk.at(0, 0) = detail::to_linform<Coeff>(expand_p_n(q, comps[i]), table, d, m);
        blk.remove_zero_rows();
        if (blk.dim() > 0) out.push_back(std::move(blk));
      }
    }
  }
  out.push_back(detail::empty_code_block<Coeff>(table, d, m));
  return out;
}

/// Orbit table shared by all programs for (q, n).
inline std::shared_ptr<const OrbitTable> make_orbit_table(int q, int n) {
  return std::make_shared<const OrbitTable>(q, n, 3);
}

/// The complete program for B_3 (or B_2 when spec.variant says so).
template <class Coeff = Integer>
SdpProgram<Coeff> build_program(const ProgramSpec& spec, std::shared_ptr<const OrbitTable> table = nullptr) {
  if (spec.q < 2 || spec.n < 1 || spec.d < 1) throw std::invalid_argument("need q >= 2, n >= 1, d >= 1");
  if (!table) table = make_orbit_table(spec.q, spec.n);
  if (table->q() != spec.q || table->n() != spec.n) throw std::invalid_argument("orbit table does not match (q, n)");
  SdpProgram<Coeff> p;
  p.spec = spec;
  p.orbits = table;
  const int max_size = spec.variant == Variant::B3 ? 3 : 2;
  for (int w : table->feasible(spec.d, spec.metric))
    if ((*table)[w].size() <= max_size) p.variables.push_back(w);
  p.objective.add(table->omega0(), static_cast<Coeff>(ipow(spec.q, spec.n)));

  if (spec.variant == Variant::B3)
    for (auto& b : build_blocks_D1<Coeff>(*table, spec.d, spec.metric)) p.blocks.push_back(std::move(b));
  for (auto& b : build_blocks_Dempty<Coeff>(*table, spec.d, spec.metric, spec.route)) p.blocks.push_back(std::move(b));
  for (int w : p.variables) {
    SdpBlock<Coeff> nn("z" + std::to_string(w) + " >= 0", BlockKind::Nonnegativity, 1);
    nn.at(0, 0).add(w, Coeff(1));
    p.blocks.push_back(std::move(nn));
  }
  return p;
}

/// The pair-only program (Delsarte bound); diagonal, hence an LP, on the
/// cosine route.
template <class Coeff = double>
SdpProgram<Coeff> build_lp_b2(int q, int n, int d, Metric m, DEmptyRoute route = DEmptyRoute::Cosine) {
  return build_program<Coeff>({q, n, d, m, Variant::B2, route});
}

/// Value of the objective and every block at an assignment indexed by orbit.
template <class Coeff>
double objective_value(const SdpProgram<Coeff>& p, const std::vector<double>& z) {
  return p.objective.evaluate(z);
}

}  // namespace leesdp
