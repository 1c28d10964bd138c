#pragma once

/// \file max_clique.hpp
/// \brief Bitset branch-and-bound maximum clique with a greedy colouring bound.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

namespace leesdp {

class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(int n) : n_(n), blocks_((n + 63) / 64, 0) {}

  int universe() const { return n_; }
  void set(int i) { blocks_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  void reset(int i) { blocks_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(int i) const { return (blocks_[i >> 6] >> (i & 63)) & 1U; }

  bool any() const {
    return std::any_of(blocks_.begin(), blocks_.end(), [](std::uint64_t b) { return b != 0; });
  }
  int count() const {
    int c = 0;
    for (auto b : blocks_) c += std::popcount(b);
    return c;
  }
  /// Lowest set index, or -1.
  int first() const {
    for (std::size_t k = 0; k < blocks_.size(); ++k)
      if (blocks_[k]) return static_cast<int>(k * 64 + std::countr_zero(blocks_[k]));
    return -1;
  }

  Bitset& operator&=(const Bitset& o) {
    for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] &= o.blocks_[k];
    return *this;
  }
  Bitset& and_not(const Bitset& o) {
    for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] &= ~o.blocks_[k];
    return *this;
  }
  Bitset& operator|=(const Bitset& o) {
    for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] |= o.blocks_[k];
    return *this;
  }
  bool is_subset_of(const Bitset& o) const {
    for (std::size_t k = 0; k < blocks_.size(); ++k)
      if (blocks_[k] & ~o.blocks_[k]) return false;
    return true;
  }
  bool intersects(const Bitset& o) const {
    for (std::size_t k = 0; k < blocks_.size(); ++k)
      if (blocks_[k] & o.blocks_[k]) return true;
    return false;
  }
  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend bool operator==(const Bitset&, const Bitset&) = default;

  std::size_t hash() const {
    std::size_t h = 0;
    for (auto b : blocks_) h = h * 1000003U ^ std::hash<std::uint64_t>{}(b);
    return h;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
      std::uint64_t b = blocks_[k];
      while (b) {
        f(static_cast<int>(k * 64 + std::countr_zero(b)));
        b &= b - 1;
      }
    }
  }

 private:
  int n_ = 0;
  std::vector<std::uint64_t> blocks_;
};

struct BitsetHash {
  std::size_t operator()(const Bitset& b) const { return b.hash(); }
};

/// Undirected simple graph stored as adjacency bitsets.
class Graph {
 public:
  explicit Graph(int n) : adj_(n, Bitset(n)) {}
  int order() const { return static_cast<int>(adj_.size()); }
  void add_edge(int u, int v) {
    adj_[u].set(v);
    adj_[v].set(u);
  }
  bool adjacent(int u, int v) const { return adj_[u].test(v); }
  const Bitset& neighbours(int v) const { return adj_[v]; }

 private:
  std::vector<Bitset> adj_;
};

/// Vertex groups covering every vertex exactly `multiplicity` times, each
/// meeting any clique in at most `caps[j]` vertices. A clique K then has
/// |K| <= sum_j min(caps[j], |K & groups[j]|) / multiplicity.
struct CoverBound {
  std::vector<Bitset> groups;
  std::vector<int> caps;
  int multiplicity = 1;
};

/// Exact maximum clique restricted to `candidates`; only cliques strictly
/// larger than `lower_bound` are reported (an empty result means none exists).
/// With a cover bound, `fixed` lists vertices already in the clique that
/// the cover counts must include.
class MaxCliqueSolver {
 public:
  explicit MaxCliqueSolver(const Graph& g, const CoverBound* cover = nullptr) : g_(g), cover_(cover) {}

  std::vector<int> solve(const Bitset& candidates, int lower_bound = 0, const std::vector<int>& fixed = {}) {
    // Relabel by non-increasing degree inside the candidate set.
    std::vector<int> verts;
    candidates.for_each([&](int v) { verts.push_back(v); });
    std::vector<int> deg(g_.order(), 0);
    for (int v : verts) deg[v] = (g_.neighbours(v) & candidates).count();
    std::stable_sort(verts.begin(), verts.end(), [&](int a, int b) { return deg[a] > deg[b]; });

    const int m = static_cast<int>(verts.size());
    order_ = verts;
    adj_.assign(m, Bitset(m));
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        if (g_.adjacent(verts[i], verts[j])) {
          adj_[i].set(j);
          adj_[j].set(i);
        }

    if (cover_) {
      const std::size_t k = cover_->groups.size();
      groups_.assign(k, Bitset(m));
      member_of_.assign(m, {});
      for (std::size_t j = 0; j < k; ++j)
        for (int i = 0; i < m; ++i)
          if (cover_->groups[j].test(verts[i])) {
            groups_[j].set(i);
            member_of_[i].push_back(static_cast<int>(j));
          }
      in_group_.assign(k, 0);
      for (int v : fixed)
        for (std::size_t j = 0; j < k; ++j)
          if (cover_->groups[j].test(v)) ++in_group_[j];
      fixed_size_ = static_cast<int>(fixed.size());
    }

    best_.clear();
    best_size_ = lower_bound;
    current_.clear();
    Bitset all(m);
    for (int i = 0; i < m; ++i) all.set(i);
    expand(all);

    std::vector<int> out;
    for (int i : best_) out.push_back(order_[i]);
    return out;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  void colour_sort(const Bitset& p, std::vector<int>& vs, std::vector<int>& colours) const {
    Bitset uncoloured = p;
    int k = 0;
    while (uncoloured.any()) {
      ++k;
      Bitset q = uncoloured;
      while (q.any()) {
        int v = q.first();
        uncoloured.reset(v);
        q.reset(v);
        q.and_not(adj_[v]);
        vs.push_back(v);
        colours.push_back(k);
      }
    }
  }

  int cover_total(const std::vector<int>& colours_in_group) const {
    int total = 0;
    for (std::size_t j = 0; j < groups_.size(); ++j)
      total += std::min(cover_->caps[j], in_group_[j] + colours_in_group[j]);
    return total / cover_->multiplicity - fixed_size_;
  }

  void expand(Bitset p) {
    ++nodes_;
    std::vector<int> vs, colours;
    colour_sort(p, vs, colours);
    // A clique meets each colour class at most once, so within a group it
    // gains at most the number of colour classes that meet the group.
    std::vector<int> colours_in_group;
    std::vector<std::vector<int>> hits;
    if (cover_) {
      colours_in_group.assign(groups_.size(), 0);
      hits.assign(colours.empty() ? 0 : colours.back() + 1, std::vector<int>(groups_.size(), 0));
      for (std::size_t i = 0; i < vs.size(); ++i)
        for (int j : member_of_[vs[i]])
          if (hits[colours[i]][j]++ == 0) ++colours_in_group[j];
    }
    for (int i = static_cast<int>(vs.size()) - 1; i >= 0; --i) {
      if (static_cast<int>(current_.size()) + colours[i] <= best_size_) return;
      if (cover_ && cover_total(colours_in_group) <= best_size_) return;
      int v = vs[i];
      current_.push_back(v);
      if (cover_)
        for (int j : member_of_[v]) ++in_group_[j];
      Bitset np = p & adj_[v];
      if (np.any()) {
        expand(np);
      } else if (static_cast<int>(current_.size()) > best_size_) {
        best_ = current_;
        best_size_ = static_cast<int>(current_.size());
      }
      current_.pop_back();
      if (cover_)
        for (int j : member_of_[v]) {
          --in_group_[j];
          if (--hits[colours[i]][j] == 0) --colours_in_group[j];
        }
      p.reset(v);
    }
  }

  const Graph& g_;
  const CoverBound* cover_;
  std::vector<Bitset> groups_;
  std::vector<std::vector<int>> member_of_;
  std::vector<int> in_group_;
  int fixed_size_ = 0;
  std::vector<int> order_;
  std::vector<Bitset> adj_;
  std::vector<int> current_, best_;
  int best_size_ = 0;
  std::uint64_t nodes_ = 0;
};

/// Iterated local search for a large clique: (1,2)-swaps plus random forced
/// insertions. Deterministic for a fixed seed; returns the best clique seen.
inline std::vector<int> heuristic_clique(const Graph& g, int iterations, std::uint64_t seed = 1) {
  const int n = g.order();
  if (n == 0) return {};
  std::mt19937_64 rng(seed);
  std::vector<char> in(n, 0);
  // tight[v]: members of the clique that v is not adjacent to (v itself excluded).
  std::vector<int> tight(n, 0);
  std::vector<int> sol;
  auto conflicts = [&](int u, int v) { return u != v && !g.adjacent(u, v); };
  auto insert = [&](int v) {
    in[v] = 1;
    sol.push_back(v);
    for (int u = 0; u < n; ++u)
      if (conflicts(u, v)) ++tight[u];
  };
  auto erase = [&](int v) {
    in[v] = 0;
    sol.erase(std::find(sol.begin(), sol.end(), v));
    for (int u = 0; u < n; ++u)
      if (conflicts(u, v)) --tight[u];
  };
  auto fill = [&] {
    std::vector<int> free;
    for (int v = 0; v < n; ++v)
      if (!in[v] && tight[v] == 0) free.push_back(v);
    std::shuffle(free.begin(), free.end(), rng);
    for (int v : free)
      if (!in[v] && tight[v] == 0) insert(v);
  };
  // Replace x by two vertices whose only conflict in the clique is x.
  auto two_improve = [&] {
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t k = 0; k < sol.size() && !improved; ++k) {
        const int x = sol[k];
        std::vector<int> cand;
        for (int v = 0; v < n; ++v)
          if (!in[v] && tight[v] == 1 && conflicts(v, x)) cand.push_back(v);
        for (std::size_t a = 0; a < cand.size() && !improved; ++a)
          for (std::size_t b = a + 1; b < cand.size() && !improved; ++b)
            if (g.adjacent(cand[a], cand[b])) {
              erase(x);
              insert(cand[a]);
              insert(cand[b]);
              fill();
              improved = true;
            }
      }
    }
  };
  fill();
  two_improve();
  std::vector<int> best = sol;
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int it = 0; it < iterations; ++it) {
    const auto saved = sol;
    int v = pick(rng);
    while (in[v]) v = pick(rng);
    std::vector<int> drop;
    for (int u : sol)
      if (conflicts(u, v)) drop.push_back(u);
    for (int u : drop) erase(u);
    insert(v);
    fill();
    two_improve();
    if (sol.size() > best.size()) best = sol;
    if (sol.size() + 1 < saved.size()) {
      while (!sol.empty()) erase(sol.back());
      for (int u : saved) insert(u);
    }
  }
  std::sort(best.begin(), best.end());
  return best;
}

}  // namespace leesdp
