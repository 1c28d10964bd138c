#pragma once

/// \file symmetry.hpp
/// \brief The group H = D_q^n x| S_n acting on codes of size at most three:
/// column classes, canonical forms, orbit tables and the monomial-to-orbit
/// maps r and r'.

#include <algorithm>
#include <numeric>
#include <ostream>
#include <random>
#include <unordered_map>

#include "leesdp/lee_core.hpp"
#include "leesdp/polynomial.hpp"

namespace leesdp {

using Tuple = std::vector<int>;

/// All 2q images of t under D_q acting coordinate-wise: q rotations
/// x -> x+s, then q reflections x -> s-x.
inline std::vector<Tuple> dihedral_images(const Tuple& t, int q) {
  if (t.empty()) throw std::invalid_argument("dihedral_images: empty tuple");
  std::vector<Tuple> out;
  out.reserve(2 * q);
  for (int refl = 0; refl < 2; ++refl)
    for (int s = 0; s < q; ++s) {
      Tuple img(t.size());
      for (std::size_t i = 0; i < t.size(); ++i)
        img[i] = ((refl ? s - t[i] : s + t[i]) % q + q) % q;
      out.push_back(std::move(img));
    }
  return out;
}

/// A column orbit under D_q, represented by its lexicographically least image.
class ColumnClass {
 public:
  ColumnClass(int q, Tuple rep) : q_(q), rep_(std::move(rep)) {}
  int q() const { return q_; }
  int arity() const { return static_cast<int>(rep_.size()); }
  const Tuple& rep() const { return rep_; }
  int operator[](int i) const { return rep_[i]; }

  friend bool operator==(const ColumnClass&, const ColumnClass&) = default;
  friend auto operator<=>(const ColumnClass& a, const ColumnClass& b) { return a.rep_ <=> b.rep_; }
  friend std::ostream& operator<<(std::ostream& os, const ColumnClass& c) {
    for (int x : c.rep_) os << x;
    return os;
  }

 private:
  int q_;
  Tuple rep_;
};

inline ColumnClass column_class_of(const Tuple& v, int q) {
  auto imgs = dihedral_images(v, q);
  return ColumnClass(q, *std::min_element(imgs.begin(), imgs.end()));
}

/// pi(v) for a column v in Z_q^3.
inline ColumnClass pi_of(const Tuple& v, int q) {
  if (v.size() != 3) throw std::invalid_argument("pi_of expects a triple");
  return column_class_of(v, q);
}

/// Every lex-minimal triple class, in increasing order.
inline std::vector<ColumnClass> enumerate_pi(int q) {
  if (q < 2) throw std::invalid_argument("q must be at least 2");
  std::vector<ColumnClass> out;
  for (int b = 0; b < q; ++b)
    for (int c = 0; c < q; ++c) {
      Tuple t{0, b, c};
      if (column_class_of(t, q).rep() == t) out.emplace_back(q, t);
    }
  return out;
}

/// The classes (0,0,j), j = 0..floor(q/2); these are the first entries of
/// enumerate_pi(q), so list positions agree.
inline std::vector<ColumnClass> enumerate_pi_prime(int q) {
  std::vector<ColumnClass> out;
  for (int j = 0; j <= q / 2; ++j) out.emplace_back(q, Tuple{0, 0, j});
  return out;
}

/// Element of H: word w maps to h(w) with h(w)[perm[i]] = g_i(w[i]), where
/// g_i(x) = shift[i] + x or shift[i] - x.
struct HElement {
  std::vector<int> perm, shift;
  std::vector<char> reflect;

  Word apply(const Word& w) const {
    const int q = w.q();
    std::vector<int> s(w.length());
    for (int i = 0; i < w.length(); ++i) {
      int x = reflect[i] ? shift[i] - w[i] : shift[i] + w[i];
      s[perm[i]] = ((x % q) + q) % q;
    }
    return Word(q, std::move(s));
  }
  Code apply(const Code& c) const {
    std::vector<Word> ws;
    for (const auto& w : c) ws.push_back(apply(w));
    return Code(std::move(ws));
  }

  template <class Rng>
  static HElement random(int q, int n, Rng& rng) {
    HElement h;
    h.perm.resize(n);
    std::iota(h.perm.begin(), h.perm.end(), 0);
    std::shuffle(h.perm.begin(), h.perm.end(), rng);
    std::uniform_int_distribution<int> sh(0, q - 1), coin(0, 1);
    for (int i = 0; i < n; ++i) {
      h.shift.push_back(sh(rng));
      h.reflect.push_back(static_cast<char>(coin(rng)));
    }
    return h;
  }
};

/// Canonical key of an orbit of codes of size 1..3: the code size and the
/// sorted list of column-class codes, minimised over word orderings.
struct OrbitKey {
  int size = 0;
  std::vector<std::uint16_t> columns;

  friend bool operator==(const OrbitKey&, const OrbitKey&) = default;
  friend auto operator<=>(const OrbitKey&, const OrbitKey&) = default;
};

struct OrbitKeyHash {
  std::size_t operator()(const OrbitKey& k) const {
    std::size_t h = static_cast<std::size_t>(k.size) * 0x9e3779b97f4a7c15ULL;
    for (auto c : k.columns) h = (h ^ c) * 0x100000001b3ULL;
    return h;
  }
};

/// Canonical forms for codes of size <= 3 in Z_q^n.
class Canonicalizer {
 public:
  Canonicalizer(int q, int n) : q_(q), n_(n) {
    if (q < 2 || q > 40) throw std::invalid_argument("Canonicalizer: q out of range");
    if (n < 1) throw std::invalid_argument("Canonicalizer: n must be positive");
    for (int k = 1; k <= 3; ++k) {
      const int total = static_cast<int>(ipow(q, k));
      auto& tab = min_code_[k];
      tab.resize(total);
      for (int code = 0; code < total; ++code) tab[code] = static_cast<std::uint16_t>(encode(column_class_of(decode(code, k), q).rep()));
    }
  }

  int q() const { return q_; }
  int n() const { return n_; }

  /// Key for a list of distinct words given as symbol rows.
  OrbitKey key(const std::vector<std::vector<int>>& words) const {
    const int k = static_cast<int>(words.size());
    if (k < 1 || k > 3) throw std::invalid_argument("canonical form needs 1 to 3 words");
    std::array<int, 3> order{0, 1, 2};
    OrbitKey best;
    best.size = k;
    std::vector<std::uint16_t> cols(n_);
    bool have = false;
    do {
      for (int i = 0; i < n_; ++i) {
        int code = 0;
        for (int r = 0; r < k; ++r) code = code * q_ + words[order[r]][i];
        cols[i] = min_code_[k][code];
      }
      std::sort(cols.begin(), cols.end());
      if (!have || cols < best.columns) {
        best.columns = cols;
        have = true;
      }
    } while (std::next_permutation(order.begin(), order.begin() + k));
    return best;
  }

  OrbitKey key(const Code& c) const {
    std::vector<std::vector<int>> ws;
    for (const auto& w : c) {
      if (w.q() != q_ || w.length() != n_) throw std::invalid_argument("code does not match (q, n)");
      ws.emplace_back(w.symbols().begin(), w.symbols().end());
    }
    return key(ws);
  }

  /// The code spelled by a key (row r of the columns is word r).
  Code code_of(const OrbitKey& key) const {
    std::vector<std::vector<int>> rows(key.size, std::vector<int>(n_));
    for (int i = 0; i < n_; ++i) {
      Tuple t = decode(key.columns[i], key.size);
      for (int r = 0; r < key.size; ++r) rows[r][i] = t[r];
    }
    std::vector<Word> ws;
    for (auto& r : rows) ws.emplace_back(q_, std::move(r));
    return Code(std::move(ws));
  }

  Tuple decode(int code, int k) const {
    Tuple t(k);
    for (int r = k - 1; r >= 0; --r) {
      t[r] = code % q_;
      code /= q_;
    }
    return t;
  }
  int encode(const Tuple& t) const {
    int code = 0;
    for (int x : t) code = code * q_ + x;
    return code;
  }

 private:
  int q_, n_;
  std::array<std::vector<std::uint16_t>, 4> min_code_;
};

/// Canonical representative of the H-orbit of c (|c| in 1..3).
inline Code canonical_code(const Code& c) {
  if (c.empty()) throw std::invalid_argument("canonical_code: empty code");
  Canonicalizer can(c[0].q(), c[0].length());
  return can.code_of(can.key(c));
}

/// One H-orbit of nonempty codes.
struct OrbitInfo {
  OrbitKey key;
  Code canonical;
  Distance lee = Distance::infinity();
  Distance lee_inf = Distance::infinity();

  int size() const { return key.size; }
  Distance min_distance(Metric m) const { return m == Metric::Lee ? lee : lee_inf; }
  bool feasible(int d, Metric m) const { return min_distance(m).at_least(d); }
};

/// Every H-orbit of nonempty codes of size <= k (k in {2,3}) in Z_q^n,
/// generated as the image of the monomial map. Orbits are indexed in key
/// order, so index 0 is the orbit of singletons.
class OrbitTable {
 public:
  OrbitTable(int q, int n, int k) : can_(q, n), k_(k) {
    if (k != 2 && k != 3) throw std::invalid_argument("orbit table needs k = 2 or 3");
    const auto classes = k == 3 ? enumerate_pi(q) : enumerate_pi_prime(q);
    classes_ = classes;
    build();
  }

  int q() const { return can_.q(); }
  int n() const { return can_.n(); }
  int k() const { return k_; }
  const Canonicalizer& canonicalizer() const { return can_; }
  const std::vector<ColumnClass>& classes() const { return classes_; }

  std::size_t size() const { return orbits_.size(); }
  const OrbitInfo& operator[](std::size_t i) const { return orbits_[i]; }
  const std::vector<OrbitInfo>& orbits() const { return orbits_; }
  int omega0() const { return 0; }

  /// Index of the orbit with this key, or -1.
  int find(const OrbitKey& key) const {
    auto it = index_.find(key);
    return it == index_.end() ? -1 : it->second;
  }
  int index_of(const Code& c) const {
    int i = find(can_.key(c));
    if (i < 0) throw std::out_of_range("code is not covered by this orbit table");
    return i;
  }

  /// r (k = 3) or r' (k = 2): orbit of {0, alpha, beta} realised from the
  /// columns (0, alpha_i, beta_i) named by the monomial's class ids.
  int orbit_of_monomial(const Monomial& mu) const {
    if (mu.degree() != n()) throw std::invalid_argument("monomial degree must equal n");
    auto it = r_.find(mu);
    if (it != r_.end()) return it->second;
    return find(realize(mu));
  }

  std::vector<int> feasible(int d, Metric m) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < orbits_.size(); ++i)
      if (orbits_[i].feasible(d, m)) out.push_back(static_cast<int>(i));
    return out;
  }

  /// One line per orbit: canonical code, size, Lee and Lee-inf distances.
  void write_tsv(std::ostream& os) const {
    os << "canonical\tsize\td_lee\td_lee_inf\n";
    for (const auto& o : orbits_) {
      for (std::size_t i = 0; i < o.canonical.size(); ++i) os << (i ? " " : "") << o.canonical[i];
      os << '\t' << o.size() << '\t' << o.lee << '\t' << o.lee_inf << '\n';
    }
  }

 private:
  OrbitKey realize(const Monomial& mu) const {
    const int n = this->n();
    std::vector<std::vector<int>> rows(3, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) {
      const auto& c = classes_.at(mu[i]);
      rows[1][i] = c[1];
      rows[2][i] = c[2];
    }
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    return can_.key(rows);
  }

  void build() {
    const int n = this->n();
    const int m = static_cast<int>(classes_.size());
    std::vector<int> idx(n, 0);
    std::vector<std::pair<Monomial, OrbitKey>> images;
    std::unordered_map<OrbitKey, int, OrbitKeyHash> seen;
    std::vector<OrbitKey> keys;
    // Nondecreasing index sequences = multisets of n classes.
    while (true) {
      Monomial mu = Monomial::from_range(idx.begin(), idx.end());
      OrbitKey key = realize(mu);
      if (seen.emplace(key, 0).second) keys.push_back(key);
      images.emplace_back(mu, std::move(key));
      int p = n - 1;
      while (p >= 0 && idx[p] == m - 1) --p;
      if (p < 0) break;
      ++idx[p];
      for (int j = p + 1; j < n; ++j) idx[j] = idx[p];
    }
    std::sort(keys.begin(), keys.end());
    const Metric metrics[] = {Metric::Lee, Metric::LeeInf};
    for (std::size_t i = 0; i < keys.size(); ++i) {
      index_[keys[i]] = static_cast<int>(i);
      OrbitInfo info{keys[i], can_.code_of(keys[i])};
      info.lee = min_distance(info.canonical, metrics[0]);
      info.lee_inf = min_distance(info.canonical, metrics[1]);
      orbits_.push_back(std::move(info));
    }
    r_.reserve(images.size());
    for (auto& [mu, key] : images) r_.emplace(mu, index_.at(key));
  }

  Canonicalizer can_;
  int k_;
  std::vector<ColumnClass> classes_;
  std::vector<OrbitInfo> orbits_;
  std::unordered_map<OrbitKey, int, OrbitKeyHash> index_;
  std::unordered_map<Monomial, int, MonomialHash> r_;
};

struct OrbitEnumeration {
  std::vector<int> all;       ///< indices into the table
  std::vector<int> feasible;  ///< those with min distance >= d
};

/// Orbits of nonempty codes of size <= k and the feasible sublist.
inline OrbitEnumeration enumerate_orbits(const OrbitTable& table, int d, Metric m) {
  OrbitEnumeration e;
  e.all.resize(table.size());
  std::iota(e.all.begin(), e.all.end(), 0);
  e.feasible = table.feasible(d, m);
  return e;
}

}  // namespace leesdp
