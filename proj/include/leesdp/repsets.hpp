#pragma once

/// \file repsets.hpp
/// \brief Representative sets for the reflection and dihedral actions on
/// C^{Z_q}, and symbolic expansion of the block entries p_{tau,sigma} and
/// p_n as polynomials in column-class variables.

#include <cmath>
#include <map>
#include <numbers>
#include <tuple>
#include <unordered_map>

#include "leesdp/polynomial.hpp"
#include "leesdp/symmetry.hpp"
#include "leesdp/tableaux.hpp"

namespace leesdp {

struct RepresentativeData {
  int q = 0, m1 = 0, m2 = 0, s = 0;
  std::vector<std::vector<long long>> b1, b2;  ///< columns, each of length q
  std::vector<std::vector<double>> c;          ///< C_1..C_s, each of length q

  /// dim V_j: 1 for j = 0 and (q even) j = q/2, otherwise 2.
  int dim_v(int j) const { return (j == 0 || 2 * j == q) ? 1 : 2; }
};

inline RepresentativeData representative_data(int q) {
  if (q < 2) throw std::invalid_argument("q must be at least 2");
  RepresentativeData r;
  r.q = q;
  r.m1 = q / 2 + 1;
  r.m2 = (q - 1) / 2;
  r.s = q / 2 + 1;
  std::vector<long long> e0(q, 0);
  e0[0] = 1;
  r.b1.push_back(e0);
  for (int i = 1; i <= q / 2; ++i) {
    std::vector<long long> v(q, 0);
    v[i] += 1;
    v[q - i] += 1;
    r.b1.push_back(v);
  }
  for (int i = 1; i <= (q - 1) / 2; ++i) {
    std::vector<long long> v(q, 0);
    v[i] = 1;
    v[q - i] = -1;
    r.b2.push_back(v);
  }
  for (int j = 0; j < r.s; ++j) {
    std::vector<double> v(q);
    const double scale = std::sqrt(static_cast<double>(r.dim_v(j)));
    for (int t = 0; t < q; ++t) v[t] = scale * std::cos(2.0 * std::numbers::pi * j * t / q);
    r.c.push_back(v);
  }
  return r;
}

/// Bishapes for alphabet size q.
inline std::vector<BiShape> enumerate_bishapes(int q, int n) {
  auto r = representative_data(q);
  return enumerate_bishapes(n, r.m1, r.m2);
}

enum class Substitution { DCase, EmptyInteger };

using LinearTerms = std::vector<std::pair<int, long long>>;

/// Linear forms of B_i(a) (x) B_i(b) in the dual class basis, obtained by
/// evaluating the tensor on each class: d-classes pi(0xy) for DCase, and
/// f-classes (the circular distance of x and y) for EmptyInteger.
class SubstitutionTable {
 public:
  SubstitutionTable(int q, Substitution kind) : data_(representative_data(q)), kind_(kind) {
    std::vector<int> cls(q * q);
    if (kind == Substitution::DCase) {
      auto pi = enumerate_pi(q);
      std::map<Tuple, int> idx;
      for (std::size_t i = 0; i < pi.size(); ++i) idx[pi[i].rep()] = static_cast<int>(i);
      for (int x = 0; x < q; ++x)
        for (int y = 0; y < q; ++y) cls[x * q + y] = idx.at(pi_of({0, x, y}, q).rep());
    } else {
      for (int x = 0; x < q; ++x)
        for (int y = 0; y < q; ++y) cls[x * q + y] = circular_distance(x, y, q);
    }
    for (int f = 0; f < 2; ++f) {
      const auto& cols = f == 0 ? data_.b1 : data_.b2;
      const int m = static_cast<int>(cols.size());
      forms_[f].assign(m * m, {});
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
          std::map<int, long long> acc;
          for (int x = 0; x < q; ++x)
            for (int y = 0; y < q; ++y)
              if (long long v = cols[a][x] * cols[b][y]; v) acc[cls[x * q + y]] += v;
          auto& out = forms_[f][a * m + b];
          for (auto [c, v] : acc)
            if (v) out.emplace_back(c, v);
        }
    }
  }

  int q() const { return data_.q; }
  Substitution kind() const { return kind_; }
  const RepresentativeData& data() const { return data_; }
  int m(int factor) const { return factor == 0 ? data_.m1 : data_.m2; }

  /// Form for B_{factor+1}(a+1) (x) B_{factor+1}(b+1).
  const LinearTerms& form(int factor, int a, int b) const { return forms_[factor][a * m(factor) + b]; }

 private:
  RepresentativeData data_;
  Substitution kind_;
  std::array<std::vector<LinearTerms>, 2> forms_;
};

/// Expands p_{tau,sigma} for one alphabet size and substitution kind,
/// caching per-factor polynomials and substituted x-monomials.
template <class Coeff = Integer>
class BlockExpander {
 public:
  BlockExpander(int q, Substitution kind) : table_(q, kind) {}

  const SubstitutionTable& table() const { return table_; }

  Polynomial<Coeff> expand(const TableauPair& tau, const TableauPair& sigma) {
    check(tau.t1, sigma.t1, table_.m(0));
    check(tau.t2, sigma.t2, table_.m(1));
    return factor(0, tau.t1, sigma.t1) * factor(1, tau.t2, sigma.t2);
  }

  /// Sum over row-equivalent tau', sigma' and column stabilisers, as a
  /// polynomial in the symbols x_{ab} = B(a) (x) B(b), id a*m + b (0-based).
  static Polynomial<Integer> x_polynomial(const Tableau& t, const Tableau& s, int m) {
    const Partition& shape = t.shape();
    if (shape.empty()) return Polynomial<Integer>::constant(1);
    const auto col_len = shape.columns();
    const int ncols = static_cast<int>(col_len.size());

    auto column_lists = [&](const Tableau& tab) {
      auto per_row = row_arrangements(tab);
      std::vector<std::vector<std::vector<int>>> out;
      std::vector<std::size_t> pick(per_row.size(), 0);
      while (true) {
        std::vector<std::vector<int>> cols(ncols);
        for (std::size_t r = 0; r < per_row.size(); ++r) {
          const auto& row = per_row[r][pick[r]];
          for (std::size_t c = 0; c < row.size(); ++c) cols[c].push_back(row[c]);
        }
        out.push_back(std::move(cols));
        std::size_t r = 0;
        while (r < pick.size() && ++pick[r] == per_row[r].size()) pick[r++] = 0;
        if (r == pick.size()) break;
      }
      return out;
    };
    const auto lt = column_lists(t);
    const auto ls = column_lists(s);

    std::map<std::pair<std::vector<int>, std::vector<int>>, int> pair_id;
    std::vector<Polynomial<Integer>> dets;
    auto id_of = [&](const std::vector<int>& u, const std::vector<int>& w) {
      auto [it, inserted] = pair_id.try_emplace({u, w}, static_cast<int>(dets.size()));
      if (inserted) dets.push_back(column_determinant(u, w, m));
      return it->second;
    };

    std::map<std::vector<int>, long long> counts;
    std::vector<int> key(ncols);
    for (const auto& a : lt)
      for (const auto& b : ls) {
        for (int c = 0; c < ncols; ++c) key[c] = id_of(a[c], b[c]);
        std::vector<int> k = key;
        std::sort(k.begin(), k.end());
        ++counts[k];
      }

    Integer stab = 1;
    for (int len : col_len)
      for (int i = 2; i <= len; ++i) stab *= i;

    Polynomial<Integer> total;
    for (const auto& [k, cnt] : counts) {
      Polynomial<Integer> prod = Polynomial<Integer>::constant(stab * cnt);
      for (int id : k) prod = prod * dets[id];
      total += prod;
    }
    return total;
  }

 private:
  static void check(const Tableau& t, const Tableau& s, int m) {
    if (!(t.shape() == s.shape())) throw std::invalid_argument("tableaux of different shapes");
    if (!t.is_semistandard(m) || !s.is_semistandard(m))
      throw std::invalid_argument("tableau is not semistandard for this alphabet");
  }

  /// det [x_{u_r, w_c}] over a column pair (entries 1-based).
  static Polynomial<Integer> column_determinant(const std::vector<int>& u, const std::vector<int>& w, int m) {
    const int h = static_cast<int>(u.size());
    std::vector<int> g(h);
    std::iota(g.begin(), g.end(), 0);
    Polynomial<Integer> det;
    do {
      int inv = 0;
      for (int i = 0; i < h; ++i)
        for (int j = i + 1; j < h; ++j) inv += g[i] > g[j];
      std::vector<int> vars(h);
      for (int r = 0; r < h; ++r) vars[r] = (u[r] - 1) * m + (w[g[r]] - 1);
      det.add(Monomial::from_range(vars.begin(), vars.end()), Integer(inv % 2 ? -1 : 1));
    } while (std::next_permutation(g.begin(), g.end()));
    return det;
  }

  const Polynomial<Coeff>& factor(int which, const Tableau& t, const Tableau& s) {
    auto key = std::make_tuple(which, t, s);
    if (auto it = factor_cache_.find(key); it != factor_cache_.end()) return it->second;
    const int m = table_.m(which);
    Polynomial<Coeff> out;
    for (const auto& [xm, c] : x_polynomial(t, s, m)) {
      Polynomial<Coeff> term = substitute(which, xm);
      term *= static_cast<Coeff>(c);
      out += term;
    }
    return factor_cache_.emplace(key, std::move(out)).first->second;
  }

  Polynomial<Coeff> substitute(int which, const Monomial& xm) {
    const int m = table_.m(which);
    Polynomial<Coeff> out = Polynomial<Coeff>::constant(Coeff(1));
    for (auto [var, e] : xm.exponents()) out = out * power(which, var / m, var % m, e);
    return out;
  }

  const Polynomial<Coeff>& power(int which, int a, int b, int e) {
    auto key = std::make_tuple(which, a, b, e);
    if (auto it = power_cache_.find(key); it != power_cache_.end()) return it->second;
    Polynomial<Coeff> base;
    for (auto [cls, v] : table_.form(which, a, b)) base.add(Monomial{cls}, Coeff(v));
    Polynomial<Coeff> r = e == 1 ? base : power(which, a, b, e - 1) * base;
    return power_cache_.emplace(key, std::move(r)).first->second;
  }

  SubstitutionTable table_;
  std::map<std::tuple<int, Tableau, Tableau>, Polynomial<Coeff>> factor_cache_;
  std::map<std::tuple<int, int, int, int>, Polynomial<Coeff>> power_cache_;
};

/// p_{tau,sigma} in d-class (DCase) or f-class (EmptyInteger) monomials.
inline Polynomial<Integer> expand_p_tau_sigma(int q, const BiShape& bs, const TableauPair& tau,
                                             const TableauPair& sigma, Substitution kind) {
  if (!(tau.t1.shape() == bs.lambda1) || !(tau.t2.shape() == bs.lambda2))
    throw std::invalid_argument("tableau pair does not match bishape");
  BlockExpander<Integer> ex(q, kind);
  return ex.expand(tau, sigma);
}

/// Coefficients (C_i (x) C_i)(f_t) for i = 0..s-1, t = 0..floor(q/2).
inline std::vector<std::vector<double>> cosine_forms(int q) {
  auto r = representative_data(q);
  std::vector<std::vector<double>> out(r.s, std::vector<double>(q / 2 + 1, 0.0));
  for (int i = 0; i < r.s; ++i)
    for (int x = 0; x < q; ++x)
      for (int y = 0; y < q; ++y) out[i][circular_distance(x, y, q)] += r.c[i][x] * r.c[i][y];
  for (auto& row : out)
    for (auto& v : row)
      if (std::abs(v - std::round(v)) < 1e-9) v = std::round(v);
  return out;
}

/// All s-tuples of nonnegative integers summing to n, (n,0,...,0) first.
inline std::vector<std::vector<int>> compositions(int n, int s) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(s, 0);
  auto rec = [&](auto&& self, int i, int rest) -> void {
    if (i == s - 1) {
      cur[i] = rest;
      out.push_back(cur);
      return;
    }
    for (int v = rest; v >= 0; --v) {
      cur[i] = v;
      self(self, i + 1, rest - v);
    }
  };
  if (s > 0) rec(rec, 0, n);
  return out;
}

/// p_n = prod_i (C_i (x) C_i)^{n_i} in f-class monomials.
inline Polynomial<double> expand_p_n(int q, const std::vector<int>& composition) {
  const int s = q / 2 + 1;
  if (static_cast<int>(composition.size()) != s)
    throw std::invalid_argument("composition must have floor(q/2)+1 entries");
  const auto forms = cosine_forms(q);
  Polynomial<double> out = Polynomial<double>::constant(1.0);
  for (int i = 0; i < s; ++i) {
    if (composition[i] < 0) throw std::invalid_argument("composition entries must be nonnegative");
    Polynomial<double> lin;
    for (int t = 0; t <= q / 2; ++t) lin.add(Monomial{t}, forms[i][t]);
    for (int k = 0; k < composition[i]; ++k) out = out * lin;
  }
  // Drop cancellation residue.
  double scale = 0;
  for (const auto& [m, c] : out) scale = std::max(scale, std::abs(c));
  Polynomial<double> clean;
  for (const auto& [m, c] : out)
    if (std::abs(c) > 1e-12 * scale) clean.add(m, c);
  return clean;
}

/// p_(n,0,...,0) exactly: (sum_t #{(x,y) : dist(x,y) = t} f_t)^n.
inline Polynomial<Integer> expand_p_all_ones(int q, int n) {
  Polynomial<Integer> lin;
  for (int t = 0; t <= q / 2; ++t) lin.add(Monomial{t}, Integer(q * ((t == 0 || 2 * t == q) ? 1 : 2)));
  Polynomial<Integer> out = Polynomial<Integer>::constant(1);
  for (int k = 0; k < n; ++k) out = out * lin;
  return out;
}

}  // namespace leesdp
