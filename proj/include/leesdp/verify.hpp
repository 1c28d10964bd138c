#pragma once

/// \file verify.hpp
/// \brief Brute-force cross-checks at small q^n: explicit representative
/// vectors, explicit orbit matrices, PSD tests, coefficient identity and
/// reduction soundness.

#include <random>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Eigenvalues>

#include "leesdp/sdp.hpp"

namespace leesdp {

inline constexpr std::int64_t kVerifyCap = 2500;

using Rational = boost::multiprecision::cpp_rational;

/// Dense symmetric matrix stored row-major.
template <class T>
class DenseSymmetric {
 public:
  explicit DenseSymmetric(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim) * dim, T(0)) {}
  int dim() const { return dim_; }
  T& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * dim_ + j]; }
  const T& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * dim_ + j]; }

  bool is_symmetric(double tol = 1e-12) const {
    for (int i = 0; i < dim_; ++i)
      for (int j = i + 1; j < dim_; ++j) {
        if constexpr (std::is_floating_point_v<T>) {
          if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
        } else if ((*this)(i, j) != (*this)(j, i)) {
          return false;
        }
      }
    return true;
  }

 private:
  int dim_;
  std::vector<T> a_;
};

namespace detail {
inline void check_cap(int q, int n) {
  if (ipow(q, n) > kVerifyCap) throw LimitExceeded("q^n exceeds the verification cap");
}
}  // namespace detail

/// u_{tau,B} = sum_{tau' ~ tau} sum_{c in C_lambda} sgn(c) (x)_y B(tau'(c(y))),
/// with cells taken row by row as tensor positions.
inline std::vector<long long> explicit_u(const Tableau& tau, const std::vector<std::vector<long long>>& cols, int q) {
  const Partition& shape = tau.shape();
  const int n = shape.size();
  const std::size_t len = static_cast<std::size_t>(ipow(q, n));
  std::vector<long long> u(len, 0);
  if (n == 0) {
    u[0] = 1;
    return u;
  }
  // Cell coordinates in row-major order.
  std::vector<std::pair<int, int>> cells;
  for (int r = 0; r < shape.height(); ++r)
    for (int c = 0; c < shape[r]; ++c) cells.emplace_back(r, c);
  const auto col_len = shape.columns();

  auto per_row = row_arrangements(tau);
  std::vector<std::size_t> pick(per_row.size(), 0);
  while (true) {
    // tau' rows.
    std::vector<std::vector<int>> rows(per_row.size());
    for (std::size_t r = 0; r < per_row.size(); ++r) rows[r] = per_row[r][pick[r]];
    // Enumerate c in C_lambda as one permutation per column.
    std::vector<std::vector<int>> perm(col_len.size());
    for (std::size_t c = 0; c < col_len.size(); ++c) {
      perm[c].resize(col_len[c]);
      std::iota(perm[c].begin(), perm[c].end(), 0);
    }
    while (true) {
      int sign = 1;
      for (const auto& p : perm)
        for (std::size_t i = 0; i < p.size(); ++i)
          for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) sign = -sign;
      // Entry placed at cell y is tau'(c(y)).
      std::vector<int> entry(n);
      for (int k = 0; k < n; ++k) {
        auto [r, c] = cells[k];
        entry[k] = rows[perm[c][r]][c];
      }
      // Add the tensor product of the chosen columns.
      for (std::size_t idx = 0; idx < len; ++idx) {
        long long v = sign;
        std::size_t rest = idx;
        for (int k = n - 1; k >= 0 && v; --k) {
          v *= cols[entry[k] - 1][rest % q];
          rest /= q;
        }
        u[idx] += v;
      }
      std::size_t c = 0;
      while (c < perm.size() && !std::next_permutation(perm[c].begin(), perm[c].end())) ++c;
      if (c == perm.size()) break;
    }
    std::size_t r = 0;
    while (r < pick.size() && ++pick[r] == per_row[r].size()) pick[r++] = 0;
    if (r == pick.size()) break;
  }
  return u;
}

/// v_tau = u_{tau1,B1} (x) u_{tau2,B2}, a vector over Z_q^n.
inline std::vector<long long> explicit_u_tau(int q, const TableauPair& tau) {
  auto rd = representative_data(q);
  detail::check_cap(q, tau.t1.shape().size() + tau.t2.shape().size());
  auto a = explicit_u(tau.t1, rd.b1, q);
  auto b = explicit_u(tau.t2, rd.b2, q);
  std::vector<long long> v(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) v[i * b.size() + j] = a[i] * b[j];
  return v;
}

/// Orbit index of {0, alpha, beta} (D size 1) or {alpha, beta} (D size 0)
/// for every pair of word indices.
inline std::vector<int> pair_orbit_table(const OrbitTable& table, int d_size) {
  const int q = table.q(), n = table.n();
  detail::check_cap(q, n);
  const int N = static_cast<int>(ipow(q, n));
  std::vector<std::vector<int>> words(N);
  for (int i = 0; i < N; ++i) {
    auto w = Word::from_index(q, n, i);
    words[i].assign(w.symbols().begin(), w.symbols().end());
  }
  const std::vector<int> zero(n, 0);
  std::vector<int> out(static_cast<std::size_t>(N) * N);
  const auto& can = table.canonicalizer();
  for (int a = 0; a < N; ++a)
    for (int b = a; b < N; ++b) {
      std::vector<std::vector<int>> code;
      if (d_size == 1) code.push_back(zero);
      code.push_back(words[a]);
      code.push_back(words[b]);
      std::sort(code.begin(), code.end());
      code.erase(std::unique(code.begin(), code.end()), code.end());
      const int w = table.find(can.key(code));
      if (w < 0) throw std::logic_error("pair orbit missing from table");
      out[static_cast<std::size_t>(a) * N + b] = out[static_cast<std::size_t>(b) * N + a] = w;
    }
  return out;
}

/// The 0/1 matrix N_omega (D size 1) or N'_omega (D size 0) over Z_q^n.
inline DenseSymmetric<int> explicit_N_omega(const OrbitTable& table, int d_size, int omega) {
  auto orb = pair_orbit_table(table, d_size);
  const int N = static_cast<int>(ipow(table.q(), table.n()));
  DenseSymmetric<int> m(N);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) m(a, b) = orb[static_cast<std::size_t>(a) * N + b] == omega;
  return m;
}

/// Float PSD test: minimum eigenvalue >= -tol.
inline bool psd_check(const Eigen::MatrixXd& m, double tol = 1e-8) {
  if (m.rows() != m.cols()) throw std::invalid_argument("psd_check: matrix is not square");
  if (m.rows() == 0) return true;
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, m.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("psd_check: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

inline double min_eigenvalue(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) return 0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

/// Exact PSD test by symmetric pivoting: a zero pivot demands a zero row.
inline bool psd_check_exact(DenseSymmetric<Rational> m) {
  if (!m.is_symmetric()) throw std::invalid_argument("psd_check_exact: matrix is not symmetric");
  const int n = m.dim();
  std::vector<char> done(n, 0);
  for (int step = 0; step < n; ++step) {
    int p = -1;
    for (int i = 0; i < n; ++i)
      if (!done[i] && (p < 0 || m(i, i) > m(p, p))) p = i;
    if (m(p, p) < 0) return false;
    if (m(p, p) == 0) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (!done[i] && !done[j] && m(i, j) != 0) return false;
      return true;
    }
    done[p] = 1;
    for (int i = 0; i < n; ++i) {
      if (done[i] || m(i, p) == 0) continue;
      const Rational f = m(i, p) / m(p, p);
      for (int j = 0; j < n; ++j)
        if (!done[j]) m(i, j) -= f * m(p, j);
    }
  }
  return true;
}

struct VerificationReport {
  std::string name;
  long long checks = 0;
  long long failures = 0;
  std::string first_failure;

  bool ok() const { return failures == 0; }
  void fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
  std::string summary() const {
    std::ostringstream os;
    os << name << ": " << (ok() ? "pass" : "FAIL") << " (" << checks - failures << "/" << checks << ")";
    if (!ok()) os << " first mismatch: " << first_failure;
    return os.str();
  }
};

/// Compares every symbolic block coefficient against v_tau^T N_omega v_sigma
/// computed from explicit tensors, exactly.
inline VerificationReport check_block_coefficients(const OrbitTable& table, Substitution kind) {
  const int q = table.q(), n = table.n();
  detail::check_cap(q, n);
  VerificationReport rep;
  rep.name = std::string("block coefficients ") + (kind == Substitution::DCase ? "|D|=1" : "D=empty") + " q=" +
             std::to_string(q) + " n=" + std::to_string(n);
  const int N = static_cast<int>(ipow(q, n));
  const auto orb = pair_orbit_table(table, kind == Substitution::DCase ? 1 : 0);
  const int W = static_cast<int>(table.size());
  BlockExpander<Integer> ex(q, kind);
  const auto& rd = ex.table().data();

  for (const auto& bs : enumerate_bishapes(n, rd.m1, rd.m2)) {
    const auto w = tableau_pairs(bs, rd.m1, rd.m2);
    if (w.empty()) continue;
    const int dim = static_cast<int>(w.size());
    // V is N x dim.
    std::vector<std::vector<long long>> v(dim);
    for (int i = 0; i < dim; ++i) v[i] = explicit_u_tau(q, w[i]);
    // G[omega](i, j) = sum_{a,b: orb(a,b) = omega} v_i[a] v_j[b]
    std::vector<std::vector<long long>> g(W, std::vector<long long>(static_cast<std::size_t>(dim) * dim, 0));
    std::vector<std::vector<long long>> s(W);
    std::vector<int> touched;
    for (int a = 0; a < N; ++a) {
      bool any = false;
      for (int i = 0; i < dim && !any; ++i) any = v[i][a] != 0;
      if (!any) continue;
      touched.clear();
      for (int b = 0; b < N; ++b) {
        const int om = orb[static_cast<std::size_t>(a) * N + b];
        if (s[om].empty()) {
          s[om].assign(dim, 0);
          touched.push_back(om);
        }
        for (int j = 0; j < dim; ++j) s[om][j] += v[j][b];
      }
      for (int om : touched) {
        for (int i = 0; i < dim; ++i) {
          if (!v[i][a]) continue;
          for (int j = 0; j < dim; ++j) g[om][static_cast<std::size_t>(i) * dim + j] += v[i][a] * s[om][j];
        }
        s[om].clear();
      }
    }
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        std::vector<Integer> sym(W, 0);
        for (const auto& [mu, c] : ex.expand(w[i], w[j])) sym[table.orbit_of_monomial(mu)] += c;
        for (int om = 0; om < W; ++om) {
          ++rep.checks;
          if (sym[om] != g[om][static_cast<std::size_t>(i) * dim + j]) {
            std::ostringstream os;
            os << bs << ' ' << w[i] << ' ' << w[j] << " orbit " << om << ": symbolic " << sym[om] << " explicit "
               << g[om][static_cast<std::size_t>(i) * dim + j];
            rep.fail(os.str());
          }
        }
      }
  }
  return rep;
}

/// Number of codes in each orbit, by explicit enumeration over Z_q^n.
inline std::vector<long long> orbit_sizes(const OrbitTable& table) {
  const int q = table.q(), n = table.n();
  detail::check_cap(q, n);
  const int N = static_cast<int>(ipow(q, n));
  // Orbits of sets containing 0: |orbit| = q^n * #{S in orbit : 0 in S} / |S|.
  std::vector<long long> with_zero(table.size(), 0);
  auto orb = pair_orbit_table(table, 1);
  for (int a = 0; a < N; ++a)
    for (int b = a; b < N; ++b) {
      // {0, a, b} with a <= b lists every set containing 0 once, except
      // a == b > 0 which repeats {0, a}.
      const bool canonical = a == 0 || a != b;
      if (canonical) ++with_zero[orb[static_cast<std::size_t>(a) * N + b]];
    }
  std::vector<long long> out(table.size());
  for (std::size_t w = 0; w < table.size(); ++w) out[w] = static_cast<long long>(N) * with_zero[w] / table[w].size();
  return out;
}

/// z(omega) = #{S in omega : S subset of C} / |omega| for a concrete code.
inline std::vector<double> code_assignment(const OrbitTable& table, const Code& c, const std::vector<long long>& sizes) {
  std::vector<long long> hits(table.size(), 0);
  const auto& can = table.canonicalizer();
  std::vector<std::vector<int>> w;
  for (const auto& x : c) w.emplace_back(x.symbols().begin(), x.symbols().end());
  const int m = static_cast<int>(w.size());
  for (int i = 0; i < m; ++i) {
    ++hits[table.find(can.key({w[i]}))];
    for (int j = i + 1; j < m; ++j) {
      ++hits[table.find(can.key({w[i], w[j]}))];
      for (int k = j + 1; k < m; ++k) ++hits[table.find(can.key({w[i], w[j], w[k]}))];
    }
  }
  std::vector<double> z(table.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = static_cast<double>(hits[i]) / static_cast<double>(sizes[i]);
  return z;
}

/// The full matrices M_{3,{0}}(z) (rows {0,alpha}) and M_{3,empty}(z)
/// (rows empty set then words).
inline Eigen::MatrixXd explicit_M_D1(const std::vector<int>& orb1, int N, const std::vector<double>& z) {
  Eigen::MatrixXd m(N, N);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) m(a, b) = z[orb1[static_cast<std::size_t>(a) * N + b]];
  return m;
}
inline Eigen::MatrixXd explicit_M_D0(const std::vector<int>& orb0, int N, const std::vector<double>& z, int omega0) {
  Eigen::MatrixXd m(N + 1, N + 1);
  m(0, 0) = 1;
  for (int a = 0; a < N; ++a) m(0, a + 1) = m(a + 1, 0) = z[omega0];
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) m(a + 1, b + 1) = z[orb0[static_cast<std::size_t>(a) * N + b]];
  return m;
}

enum class PsdStatus { Psd, NotPsd, Borderline };

/// Classifies with a relative margin so that float noise is not mistaken
/// for a verdict.
inline PsdStatus psd_status(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) return PsdStatus::Psd;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff()) * static_cast<double>(m.rows());
  const double lo = min_eigenvalue(m);
  if (lo >= -1e-9 * scale) return PsdStatus::Psd;
  if (lo < -1e-6 * scale) return PsdStatus::NotPsd;
  return PsdStatus::Borderline;
}

inline PsdStatus combine(PsdStatus a, PsdStatus b) {
  if (a == PsdStatus::NotPsd || b == PsdStatus::NotPsd) return PsdStatus::NotPsd;
  if (a == PsdStatus::Borderline || b == PsdStatus::Borderline) return PsdStatus::Borderline;
  return PsdStatus::Psd;
}

template <class Coeff>
PsdStatus blocks_status(const std::vector<SdpBlock<Coeff>>& blocks, const std::vector<double>& z) {
  PsdStatus s = PsdStatus::Psd;
  for (const auto& b : blocks) s = combine(s, psd_status(b.evaluate(z)));
  return s;
}

struct SoundnessReport {
  VerificationReport report;
  int psd_trials = 0, non_psd_trials = 0, skipped = 0;
};

/// Random H-invariant assignments (mixtures of code assignments, optionally
/// perturbed); the PSD status of each explicit matrix must match that of its
/// reduced blocks, for D = {0} and for D = empty on both routes.
inline SoundnessReport reduction_soundness(const OrbitTable& table, int trials, std::uint64_t seed = 1) {
  const int q = table.q(), n = table.n();
  if (ipow(q, n) > 625) throw LimitExceeded("reduction_soundness needs q^n <= 625");
  SoundnessReport out;
  out.report.name = "reduction soundness q=" + std::to_string(q) + " n=" + std::to_string(n);
  const int N = static_cast<int>(ipow(q, n));
  const auto orb1 = pair_orbit_table(table, 1);
  const auto orb0 = pair_orbit_table(table, 0);
  const auto sizes = orbit_sizes(table);
  const auto d1 = build_blocks_D1<double>(table, 1, Metric::Lee);
  const auto d0i = build_blocks_Dempty<double>(table, 1, Metric::Lee, DEmptyRoute::Integer);
  const auto d0c = build_blocks_Dempty<double>(table, 1, Metric::Lee, DEmptyRoute::Cosine);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> word(0, N - 1), pieces(1, 3), kind(0, 4);
  const int max_code = std::min(N, 40);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 1.0);
  int done = 0, attempts = 0;
  while (done < trials && attempts < 20 * trials) {
    ++attempts;
    std::vector<double> z(table.size(), 0.0);
    const int k = pieces(rng);
    double total = 0;
    for (int piece = 0; piece < k; ++piece) {
      std::vector<Word> ws;
      const int size = std::uniform_int_distribution<int>(1, max_code)(rng);
      for (int i = 0; i < size; ++i) ws.push_back(Word::from_index(q, n, word(rng)));
      const double wt = unit(rng) + 0.1;
      total += wt;
      auto zc = code_assignment(table, Code(std::move(ws)), sizes);
      for (std::size_t i = 0; i < z.size(); ++i) z[i] += wt * zc[i];
    }
    for (double& x : z) x /= total;
    const int mode = kind(rng);
    if (mode == 1 || mode == 2) {
      const double eps = mode == 1 ? 1e-3 : 1e-1;
      for (double& x : z) x = std::max(0.0, x + eps * noise(rng));
    } else if (mode == 3) {
      z[table.omega0()] -= 10.0;
    } else if (mode == 4) {
      // Independent values per orbit, scaled so both outcomes occur.
      const double spread = unit(rng);
      for (std::size_t w = 0; w < z.size(); ++w) z[w] = static_cast<int>(w) == table.omega0() ? unit(rng) : spread * unit(rng) * z[table.omega0()];
    }
    const PsdStatus e1 = psd_status(explicit_M_D1(orb1, N, z));
    const PsdStatus e0 = psd_status(explicit_M_D0(orb0, N, z, table.omega0()));
    const PsdStatus r1 = blocks_status(d1, z);
    const PsdStatus r0i = blocks_status(d0i, z);
    const PsdStatus r0c = blocks_status(d0c, z);
    if (e1 == PsdStatus::Borderline || e0 == PsdStatus::Borderline || r1 == PsdStatus::Borderline ||
        r0i == PsdStatus::Borderline || r0c == PsdStatus::Borderline) {
      ++out.skipped;
      continue;
    }
    ++done;
    auto check = [&](PsdStatus explicit_s, PsdStatus reduced, const char* what) {
      ++out.report.checks;
      if (explicit_s != reduced)
        out.report.fail(std::string(what) + " disagrees in trial " + std::to_string(done));
    };
    check(e1, r1, "|D|=1");
    check(e0, r0i, "D=empty integer route");
    check(e0, r0c, "D=empty cosine route");
    (combine(e1, e0) == PsdStatus::Psd ? out.psd_trials : out.non_psd_trials)++;
  }
  if (done < trials) out.report.fail("only " + std::to_string(done) + " decisive trials");
  return out;
}

/// Representative vectors of distinct bishapes are orthogonal.
inline VerificationReport check_isotypical_orthogonality(int q, int n, double tol = 1e-8) {
  detail::check_cap(q, n);
  VerificationReport rep;
  rep.name = "isotypical orthogonality q=" + std::to_string(q) + " n=" + std::to_string(n);
  const auto rd = representative_data(q);
  std::vector<std::pair<std::size_t, std::vector<long long>>> vecs;
  const auto shapes = enumerate_bishapes(n, rd.m1, rd.m2);
  for (std::size_t s = 0; s < shapes.size(); ++s)
    for (const auto& t : tableau_pairs(shapes[s], rd.m1, rd.m2)) vecs.emplace_back(s, explicit_u_tau(q, t));
  for (std::size_t i = 0; i < vecs.size(); ++i)
    for (std::size_t j = i + 1; j < vecs.size(); ++j) {
      if (vecs[i].first == vecs[j].first) continue;
      double dot = 0, ni = 0, nj = 0;
      for (std::size_t k = 0; k < vecs[i].second.size(); ++k) {
        const double a = static_cast<double>(vecs[i].second[k]), b = static_cast<double>(vecs[j].second[k]);
        dot += a * b;
        ni += a * a;
        nj += b * b;
      }
      ++rep.checks;
      if (std::abs(dot) > tol * std::sqrt(ni * nj))
        rep.fail("vectors " + std::to_string(i) + " and " + std::to_string(j) + " have inner product " + std::to_string(dot));
    }
  return rep;
}

/// For q in {2, 3, 4, 6} the cosines are rational, so every coefficient of
/// the cosine route is an integer up to float noise.
inline VerificationReport check_cosine_rationality(const OrbitTable& table, double tol = 1e-9) {
  VerificationReport rep;
  rep.name = "cosine route integrality q=" + std::to_string(table.q()) + " n=" + std::to_string(table.n());
  for (const auto& b : build_blocks_Dempty<double>(table, 1, Metric::Lee, DEmptyRoute::Cosine)) {
    if (b.kind() != BlockKind::Cosine) continue;
    for (const auto& [w, c] : b.at(0, 0).coeffs) {
      ++rep.checks;
      if (std::abs(c - std::round(c)) > tol * std::max(1.0, std::abs(c)))
        rep.fail(b.label() + " coefficient " + std::to_string(c) + " is not integral");
    }
  }
  return rep;
}

/// Orbit-averaged assignment of a code, objective value and the smallest
/// eigenvalue over all blocks of the program.
template <class Coeff>
VerificationReport feasibility_transfer(const SdpProgram<Coeff>& p, const Code& c, double tol = 1e-8) {
  const auto& table = *p.orbits;
  VerificationReport rep;
  rep.name = "feasibility transfer |C|=" + std::to_string(c.size());
  const auto sizes = orbit_sizes(table);
  const auto z = code_assignment(table, c, sizes);
  ++rep.checks;
  const double obj = p.objective.evaluate(z);
  if (std::abs(obj - static_cast<double>(c.size())) > 1e-9 * std::max<double>(1, c.size()))
    rep.fail("objective " + std::to_string(obj) + " != |C| = " + std::to_string(c.size()));
  for (const auto& b : p.blocks) {
    ++rep.checks;
    const auto m = b.evaluate(z);
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double lo = min_eigenvalue(m) / scale;
    if (lo < -tol) rep.fail("block " + b.label() + " min eigenvalue " + std::to_string(lo));
  }
  // Variables outside the program must vanish on the code.
  for (std::size_t w = 0; w < z.size(); ++w) {
    if (z[w] == 0) continue;
    if (!std::binary_search(p.variables.begin(), p.variables.end(), static_cast<int>(w))) {
      ++rep.checks;
      rep.fail("code meets orbit " + std::to_string(w) + " which the program fixes to zero");
    }
  }
  return rep;
}

}  // namespace leesdp
