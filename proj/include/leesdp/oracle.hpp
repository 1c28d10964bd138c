#pragma once

/// \file oracle.hpp
/// \brief Exact A_q(n,d) under the Lee / Lee-infinity metric by exhaustive
/// maximum-clique search over Z_q^n.

#include <array>
#include <bit>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>

#include "leesdp/lee_core.hpp"
#include "leesdp/max_clique.hpp"

namespace leesdp {

inline constexpr std::int64_t kDefaultOracleCap = 2500;

struct OptimumResult {
  int size = 0;
  Code witness;
};

enum class OracleMethod { Auto, CliqueOnly };

inline OptimumResult brute_force_optimum(int q, int n, int d, Metric m, std::int64_t cap,
                                         OracleMethod method);

namespace detail {

/// Slabs of w consecutive values of the first coordinate. Two words of a
/// slab differ there by at most w - 1, so their remaining coordinates form a
/// code of length n - 1 with distance d (Lee-infinity, w <= d) or
/// d - w + 1 (Lee). Picks the window with the smallest average cap.
inline std::optional<CoverBound> slab_cover(int q, int n, int d, Metric m, const std::vector<Word>& words,
                                            std::int64_t cap, OracleMethod method) {
  if (n < 2) return std::nullopt;
  const int max_w = std::min(q, d);
  double best_ratio = static_cast<double>(ipow(q, n));
  int best_w = 0, best_cap = 0;
  for (int w = 1; w <= max_w; ++w) {
    const int rest_d = m == Metric::LeeInf ? d : d - w + 1;
    const int c = rest_d <= 1 ? static_cast<int>(ipow(q, n - 1)) : brute_force_optimum(q, n - 1, rest_d, m, cap, method).size;
    const double ratio = static_cast<double>(q) * c / w;
    if (ratio < best_ratio) {
      best_ratio = ratio;
      best_w = w;
      best_cap = c;
    }
  }
  if (best_w == 0) return std::nullopt;
  CoverBound cover;
  cover.multiplicity = best_w;
  const int N = static_cast<int>(words.size());
  for (int s = 0; s < q; ++s) {
    Bitset g(N);
    for (int v = 0; v < N; ++v)
      if ((words[v][0] - s + q) % q < best_w) g.set(v);
    cover.groups.push_back(std::move(g));
    cover.caps.push_back(best_cap);
  }
  return cover;
}


/// Inline bitset of W 64-bit words for the hot loops of the layered search.
template <int W>
struct FixedBits {
  std::array<std::uint64_t, W> w{};

  void set(int i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { w[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1U; }
  bool any() const {
    for (auto x : w)
      if (x) return true;
    return false;
  }
  int count() const {
    int c = 0;
    for (auto x : w) c += std::popcount(x);
    return c;
  }
  int first() const {
    for (int k = 0; k < W; ++k)
      if (w[k]) return k * 64 + std::countr_zero(w[k]);
    return -1;
  }
  template <class F>
  void for_each(F&& f) const {
    for (int k = 0; k < W; ++k)
      for (std::uint64_t x = w[k]; x; x &= x - 1) f(k * 64 + std::countr_zero(x));
  }
  FixedBits& operator&=(const FixedBits& o) {
    for (int k = 0; k < W; ++k) w[k] &= o.w[k];
    return *this;
  }
  FixedBits& operator|=(const FixedBits& o) {
    for (int k = 0; k < W; ++k) w[k] |= o.w[k];
    return *this;
  }
  FixedBits& and_not(const FixedBits& o) {
    for (int k = 0; k < W; ++k) w[k] &= ~o.w[k];
    return *this;
  }
  friend FixedBits operator&(FixedBits a, const FixedBits& b) { return a &= b; }
  friend bool operator==(const FixedBits&, const FixedBits&) = default;
  friend auto operator<=>(const FixedBits&, const FixedBits&) = default;
};

template <int W>
struct FixedBitsHash {
  std::size_t operator()(const FixedBits<W>& b) const {
    std::size_t h = 0;
    for (auto x : b.w) h = h * 1000003U ^ std::hash<std::uint64_t>{}(x);
    return h;
  }
};

/// Exact search for Lee-infinity distance 2 by layers of the first
/// coordinate. Layer i holds an independent set S_i of the (n-1)-dimensional
/// graph, and S_i, S_{i+1} (cyclically) must have an independent union, so
/// |S_i| + |S_{i+1}| <= alpha_{n-1}. Rotating the layers puts a largest pair
/// sum s at (0, 1); S_0 u S_1 is then an independent set of size s, taken up
/// to automorphisms of the layer graph. Later layers are grown one at a
/// time, with sizes bounded by the pair sums and failures memoised.
template <int W>
class LayeredSearch {
 public:
  using Bits = FixedBits<W>;
  static constexpr std::size_t kMaxBaseSets = 2'000'000;
  static constexpr std::int64_t kMaxAutomorphisms = 20'000;

  LayeredSearch(int q, int n, int layer_alpha) : q_(q), m_(n - 1), alpha_(layer_alpha) {
    if (q < 3 || n < 2) throw std::invalid_argument("layered search needs q >= 3 and n >= 2");
    size_ = static_cast<int>(ipow(q, m_));
    if (size_ > 64 * W) throw std::invalid_argument("layer too large for the bitset width");
    for (int i = 0; i < size_; ++i) words_.push_back(Word::from_index(q, m_, i));
    closed_.assign(size_, Bits{});
    for (int u = 0; u < size_; ++u)
      for (int v = 0; v < size_; ++v)
        if (lee_inf_distance(words_[u], words_[v]) <= 1) closed_[u].set(v);
    for (int v = 0; v < size_; ++v) all_.set(v);
    build_automorphisms();
  }

  /// A code of size >= target as q layer sets, if one exists. Throws
  /// LimitExceeded when too many base sets would have to be examined.
  std::optional<std::vector<std::vector<int>>> find(int target) {
    target_ = target;
    for (int s = alpha_; s >= 0 && q_ * s >= 2 * target; --s) {
      for (const auto& base : independent_set_orbits(s)) {
        // The reflection i -> 1 - i swaps S_0 and S_1, so the last element
        // of the base can be kept in S_1.
        const unsigned splits = s == 0 ? 1U : 1U << (s - 1);
        for (unsigned mask = 0; mask < splits; ++mask) {
          layers_.assign(q_, Bits{});
          counts_.assign(q_, 0);
          for (int k = 0; k < s; ++k) {
            const int layer = (mask >> k) & 1U ? 0 : 1;
            layers_[layer].set(base[k]);
            ++counts_[layer];
          }
          closed_first_ = closure(layers_[0]);
          memo_.assign(q_, {});
          pair_cap_ = s;
          build_rest_table();
          if (extend(2, s)) {
            std::vector<std::vector<int>> out(q_);
            for (int i = 0; i < q_; ++i) layers_[i].for_each([&](int v) { out[i].push_back(v); });
            return out;
          }
        }
      }
    }
    return std::nullopt;
  }

  /// Word of Z_q^n for vertex v of layer i.
  Word word(int layer, int v) const {
    std::vector<int> sym{layer};
    for (int x : words_[v].symbols()) sym.push_back(x);
    return Word(q_, std::move(sym));
  }

 private:
  void build_automorphisms() {
    std::vector<int> perm(m_);
    std::iota(perm.begin(), perm.end(), 0);
    const int per_coord = 2 * q_;
    const std::int64_t combos = ipow(per_coord, m_);
    std::int64_t perms = 1;
    for (int i = 2; i <= m_; ++i) perms *= i;
    if (combos * perms > kMaxAutomorphisms) throw LimitExceeded("layer graph has too many automorphisms to list");
    do {
      for (std::int64_t c = 0; c < combos; ++c) {
        std::vector<int> image(size_);
        for (int v = 0; v < size_; ++v) {
          std::vector<int> sym(m_);
          std::int64_t rest = c;
          for (int i = 0; i < m_; ++i) {
            const int g = static_cast<int>(rest % per_coord);
            rest /= per_coord;
            const int x = words_[v][i];
            sym[perm[i]] = g < q_ ? (x + g) % q_ : (g - q_ - x + q_) % q_;
          }
          std::int64_t idx = 0;
          for (int x : sym) idx = idx * q_ + x;
          image[v] = static_cast<int>(idx);
        }
        autos_.push_back(std::move(image));
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  Bits closure(const Bits& set) const {
    Bits c;
    set.for_each([&](int v) { c |= closed_[v]; });
    return c;
  }
  Bits complement(const Bits& b) const {
    Bits c = all_;
    return c.and_not(b);
  }

  /// Calls f on each independent k-subset of region until f returns true.
  template <class F>
  bool for_each_independent(const Bits& region, int k, F&& f) const {
    Bits cur;
    auto rec = [&](auto&& self, const Bits& cand, int left) -> bool {
      if (left == 0) return f(cur);
      if (cand.count() < left) return false;
      Bits c = cand;
      while (c.any()) {
        const int v = c.first();
        c.reset(v);
        Bits next = c;
        next.and_not(closed_[v]);
        cur.set(v);
        if (self(self, next, left - 1)) return true;
        cur.reset(v);
        if (c.count() < left) return false;
      }
      return false;
    };
    return rec(rec, region, k);
  }

  /// Greedy clique cover size: an upper bound on the independence number.
  int clique_cover(Bits rest) const {
    int cliques = 0;
    while (rest.any()) {
      Bits cand = rest & closed_[rest.first()];
      while (cand.any()) {
        const int u = cand.first();
        rest.reset(u);
        cand &= closed_[u];
        cand.reset(u);
      }
      ++cliques;
    }
    return cliques;
  }

  /// An independent set of size `need` inside `region`, built into `out`.
  bool region_has(const Bits& region, int need, Bits& out) const {
    if (need <= 0) return true;
    if (region.count() < need || clique_cover(region) < need) return false;
    int pick = -1, deg = -1;
    region.for_each([&](int v) {
      const int d = (closed_[v] & region).count();
      if (d > deg) {
        deg = d;
        pick = v;
      }
    });
    Bits with = region;
    with.and_not(closed_[pick]);
    out.set(pick);
    if (region_has(with, need - 1, out)) return true;
    out.reset(pick);
    Bits without = region;
    without.reset(pick);
    return region_has(without, need, out);
  }

  std::vector<int> canonical(const std::vector<int>& set) const {
    std::vector<int> best = set, img(set.size());
    for (const auto& a : autos_) {
      for (std::size_t k = 0; k < set.size(); ++k) img[k] = a[set[k]];
      std::sort(img.begin(), img.end());
      if (img < best) best = img;
    }
    return best;
  }

  std::vector<std::vector<int>> independent_set_orbits(int s) const {
    std::set<std::vector<int>> reps;
    std::size_t seen = 0;
    for_each_independent(all_, s, [&](const Bits& b) {
      if (++seen > kMaxBaseSets) throw LimitExceeded("layered search meets too many base sets");
      std::vector<int> members;
      b.for_each([&](int v) { members.push_back(v); });
      reps.insert(canonical(members));
      return false;
    });
    return {reps.begin(), reps.end()};
  }

  /// rest_[j][a]: most words layers j..q-1 can add when layer j-1 holds a.
  void build_rest_table() {
    rest_.assign(q_ + 1, std::vector<int>(pair_cap_ + 1, 0));
    for (int j = q_ - 1; j >= 2; --j)
      for (int a = 0; a <= pair_cap_; ++a) {
        int hi = pair_cap_ - a;
        if (j == q_ - 1) hi = std::min(hi, pair_cap_ - counts_[0]);
        int best = std::numeric_limits<int>::min() / 2;
        for (int b = 0; b <= hi; ++b) best = std::max(best, b + rest_[j + 1][b]);
        rest_[j][a] = best;
      }
  }

  bool extend(int j, int total) {
    if (j == q_) return total >= target_;
    const Bits prev = layers_[j - 1];
    if (j == q_ - 1) {
      // The last layer only has to fit beside S_{q-2} and S_0.
      Bits region = complement(closure(prev));
      region.and_not(closed_first_);
      Bits out;
      if (!region_has(region, target_ - total, out)) return false;
      layers_[j] = out;
      counts_[j] = out.count();
      return true;
    }
    // Layers j.. gain at most memo_[j][prev] words after S_{j-1} = prev.
    const int need = target_ - total;
    auto known = memo_[j].find(prev);
    if (known != memo_[j].end() && known->second < need) return false;
    const int bound = known == memo_[j].end() ? need - 1 : std::min(known->second, need - 1);
    const int hi = pair_cap_ - counts_[j - 1];
    const Bits region = complement(closure(prev));
    for (int k = hi; k >= 0; --k) {
      if (total + k + rest_[j + 1][k] < target_) continue;
      auto attempt = [&](const Bits& layer) {
        layers_[j] = layer;
        counts_[j] = k;
        return extend(j + 1, total + k);
      };
      if (for_each_independent(region, k, attempt)) return true;
    }
    memo_[j][prev] = bound;
    return false;
  }

  int q_, m_, size_ = 0, alpha_ = 0;
  std::vector<Word> words_;
  std::vector<Bits> closed_;
  Bits all_;
  std::vector<std::vector<int>> autos_;
  std::vector<Bits> layers_;
  std::vector<int> counts_;
  Bits closed_first_;
  std::vector<std::vector<int>> rest_;
  std::vector<std::unordered_map<Bits, int, FixedBitsHash<W>>> memo_;
  int target_ = 0, pair_cap_ = 0;
};

/// Runs the layered search with the narrowest bitset that fits q^(n-1).
template <class F>
auto with_layered_search(int q, int n, int layer_alpha, F&& f) {
  const std::int64_t size = ipow(q, n - 1);
  if (size <= 64) {
    LayeredSearch<1> s(q, n, layer_alpha);
    return f(s);
  }
  if (size <= 128) {
    LayeredSearch<2> s(q, n, layer_alpha);
    return f(s);
  }
  if (size <= 256) {
    LayeredSearch<4> s(q, n, layer_alpha);
    return f(s);
  }
  if (size > 1024) throw LimitExceeded("layer too large for the layered search");
  LayeredSearch<16> s(q, n, layer_alpha);
  return f(s);
}

}  // namespace detail

/// Maximum size of a code in Z_q^n with minimum distance >= d.
///
/// The compatibility graph is vertex-transitive (translations), so the search
/// fixes the zero word. The stabiliser of zero (coordinate reflections and
/// permutations) is used once more: a second word is drawn from each
/// stabiliser orbit in turn, and words of earlier orbits are excluded from
/// later subproblems.
/// For Lee-infinity distance 2 (q >= 4, n >= 3) the layered search above
/// replaces the clique search unless `method` asks for the clique search.
inline OptimumResult brute_force_optimum(int q, int n, int d, Metric m,
                                         std::int64_t cap = kDefaultOracleCap,
                                         OracleMethod method = OracleMethod::Auto);

inline OptimumResult brute_force_optimum(int q, int n, int d, Metric m, std::int64_t cap, OracleMethod method) {
  if (q < 2 || n < 1 || d < 1) throw std::invalid_argument("need q >= 2, n >= 1, d >= 1");
  const std::int64_t total = ipow(q, n);
  if (total > cap)
    throw LimitExceeded("q^n = " + std::to_string(total) + " exceeds oracle cap " +
                        std::to_string(cap));
  const int N = static_cast<int>(total);
  std::vector<Word> words;
  words.reserve(N);
  for (int i = 0; i < N; ++i) words.push_back(Word::from_index(q, n, i));

  if (d <= 1) return {N, Code(words)};

  Graph g(N);
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j)
      if (distance(words[i], words[j], m) >= d) g.add_edge(i, j);

  // Stabiliser orbits of the neighbours of zero, keyed by the sorted
  // multiset of per-coordinate circular values.
  std::map<std::vector<int>, std::vector<int>> orbits;
  g.neighbours(0).for_each([&](int v) {
    std::vector<int> key(n);
    for (int i = 0; i < n; ++i) key[i] = circular_distance(words[v][i], 0, q);
    std::sort(key.begin(), key.end());
    orbits[key].push_back(v);
  });

  // A good incumbent lets the exact search start by proving optimality.
  std::vector<int> best = heuristic_clique(g, 2000);
  if (best.size() < 2) best = {0};

  // Balls of radius (d-1)/2 around codewords are disjoint; an incumbent
  // meeting the packing bound is optimal.
  const int radius = (d - 1) / 2;
  const auto ball = std::count_if(words.begin(), words.end(),
                                  [&](const Word& w) { return distance(words[0], w, m) <= radius; });
  if (static_cast<std::int64_t>(best.size()) >= total / ball) {
    std::vector<Word> witness;
    for (int v : best) witness.push_back(words[v]);
    return {static_cast<int>(best.size()), Code(std::move(witness))};
  }

  if (method == OracleMethod::Auto && m == Metric::LeeInf && d == 2 && q >= 4 && n >= 3) {
    try {
      const int layer_alpha = brute_force_optimum(q, n - 1, 2, m, cap, method).size;
      return detail::with_layered_search(q, n, layer_alpha, [&](auto& layered) {
        std::vector<Word> witness;
        for (int v : best) witness.push_back(words[v]);
        while (auto found = layered.find(static_cast<int>(witness.size()) + 1)) {
          witness.clear();
          for (int i = 0; i < q; ++i)
            for (int v : (*found)[i]) witness.push_back(layered.word(i, v));
        }
        return OptimumResult{static_cast<int>(witness.size()), Code(std::move(witness))};
      });
    } catch (const LimitExceeded&) {
      // Too loose for the layered search; fall through to clique search.
    }
  }

  const auto cover = detail::slab_cover(q, n, d, m, words, cap, method);
  Bitset excluded(N);
  for (const auto& [key, members] : orbits) {
    const int rep = members.front();
    Bitset cand = g.neighbours(0) & g.neighbours(rep);
    cand.and_not(excluded);
    MaxCliqueSolver solver(g, cover ? &*cover : nullptr);
    auto clique = solver.solve(cand, static_cast<int>(best.size()) - 2, {0, rep});
    if (static_cast<int>(clique.size()) + 2 > static_cast<int>(best.size())) {
      best = {0, rep};
      best.insert(best.end(), clique.begin(), clique.end());
    } else if (best.size() < 2) {
      best = {0, rep};
    }
    for (int v : members) excluded.set(v);
  }

  std::vector<Word> witness;
  for (int v : best) witness.push_back(words[v]);
  return {static_cast<int>(best.size()), Code(std::move(witness))};
}

/// Independence number of the n-th strong power of the circular graph
/// C_{d,q} (vertices at circular distance < d adjacent).
inline int alpha_circular_power(int d, int q, int n, std::int64_t cap = kDefaultOracleCap) {
  return brute_force_optimum(q, n, d, Metric::LeeInf, cap).size;
}

}  // namespace leesdp
