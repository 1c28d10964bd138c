#include <gtest/gtest.h>

#include <random>

#include "leesdp/oracle.hpp"

using namespace leesdp;

namespace {

Word w(int q, std::vector<int> s) { return Word(q, std::move(s)); }

Word random_word(int q, int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> sym(0, q - 1);
  std::vector<int> s(n);
  for (auto& x : s) x = sym(rng);
  return Word(q, std::move(s));
}

// Plain backtracking over all words, independent of the clique machinery.
int naive_optimum(int q, int n, int d, Metric m) {
  const int N = static_cast<int>(ipow(q, n));
  std::vector<Word> words;
  for (int i = 0; i < N; ++i) words.push_back(Word::from_index(q, n, i));
  std::vector<int> chosen;
  int best = 0;
  auto rec = [&](auto&& self, int next) -> void {
    best = std::max(best, static_cast<int>(chosen.size()));
    if (static_cast<int>(chosen.size()) + (N - next) <= best) return;
    for (int v = next; v < N; ++v) {
      bool ok = true;
      for (int u : chosen)
        if (distance(words[u], words[v], m) < d) {
          ok = false;
          break;
        }
      if (!ok) continue;
      chosen.push_back(v);
      self(self, v + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);
  return best;
}

}  // namespace

TEST(LeeDistance, Examples) {
  EXPECT_EQ(lee_distance(w(5, {0, 0}), w(5, {0, 0})), 0);
  EXPECT_EQ(lee_distance(w(5, {0, 0}), w(5, {1, 4})), 2);
  EXPECT_EQ(lee_distance(w(7, {0, 3, 6}), w(7, {6, 3, 1})), 3);
}

TEST(LeeInfDistance, Examples) {
  EXPECT_EQ(lee_inf_distance(w(5, {0, 0}), w(5, {1, 4})), 1);
  EXPECT_EQ(lee_inf_distance(w(7, {0, 3}), w(7, {6, 3})), 1);
  EXPECT_EQ(lee_inf_distance(w(7, {0, 0, 0}), w(7, {3, 1, 2})), 3);
}

TEST(LeeDistance, RejectsMismatchedWords) {
  EXPECT_THROW(lee_distance(w(5, {0, 0}), w(5, {0, 0, 0})), std::invalid_argument);
  EXPECT_THROW(lee_distance(w(5, {0}), w(7, {0})), std::invalid_argument);
  EXPECT_THROW(w(5, {5}), std::invalid_argument);
}

TEST(MinDistance, Examples) {
  EXPECT_TRUE(min_distance(Code{}, Metric::Lee).is_infinite());
  EXPECT_TRUE(min_distance(Code({w(5, {0, 0})}), Metric::Lee).is_infinite());
  Code c({w(5, {0, 0}), w(5, {1, 4}), w(5, {2, 3})});
  EXPECT_EQ(min_distance(c, Metric::Lee), Distance(2));
  EXPECT_TRUE(Distance::infinity().at_least(1000));
  EXPECT_LT(Distance(1000), Distance::infinity());
}

TEST(LeeDistance, MetricAxiomsOnRandomTriples) {
  std::mt19937_64 rng(7);
  for (int q : {5, 6, 7})
    for (int n = 1; n <= 6; ++n)
      for (int t = 0; t < 200; ++t) {
        auto a = random_word(q, n, rng), b = random_word(q, n, rng), c = random_word(q, n, rng);
        for (Metric m : {Metric::Lee, Metric::LeeInf}) {
          EXPECT_EQ(distance(a, b, m), distance(b, a, m));
          EXPECT_EQ(distance(a, b, m) == 0, a == b);
          EXPECT_LE(distance(a, c, m), distance(a, b, m) + distance(b, c, m));
        }
        const int li = lee_inf_distance(a, b), l = lee_distance(a, b);
        EXPECT_LE(li, l);
        EXPECT_LE(l, n * li);
      }
}

TEST(Oracle, PublishedSmallValues) {
  EXPECT_EQ(brute_force_optimum(5, 3, 2, Metric::LeeInf).size, 10);
  EXPECT_EQ(brute_force_optimum(7, 2, 2, Metric::LeeInf).size, 10);
  EXPECT_EQ(alpha_circular_power(3, 7, 3), 8);
  EXPECT_EQ(alpha_circular_power(2, 4, 1), 2);
}

TEST(Oracle, LeeFiveTwoThreeMatchesNaiveSearch) {
  const int naive = naive_optimum(5, 2, 3, Metric::Lee);
  EXPECT_EQ(naive, 5);
  EXPECT_EQ(brute_force_optimum(5, 2, 3, Metric::Lee).size, naive);
}

TEST(Oracle, AgreesWithNaiveSearchOnTinyInstances) {
  for (int q : {3, 4, 5})
    for (int n = 1; n <= 2; ++n)
      for (int d = 1; d <= 4; ++d)
        for (Metric m : {Metric::Lee, Metric::LeeInf})
          EXPECT_EQ(brute_force_optimum(q, n, d, m).size, naive_optimum(q, n, d, m))
              << q << " " << n << " " << d << " " << to_string(m);
}

TEST(Oracle, WitnessIsAValidCode) {
  for (auto [q, n, d, m] : {std::tuple{5, 3, 2, Metric::LeeInf}, std::tuple{6, 3, 4, Metric::Lee},
                            std::tuple{7, 2, 3, Metric::Lee}, std::tuple{7, 3, 3, Metric::LeeInf}}) {
    const auto r = brute_force_optimum(q, n, d, m);
    EXPECT_EQ(static_cast<int>(r.witness.size()), r.size);
    EXPECT_TRUE(min_distance(r.witness, m).at_least(d));
  }
}

TEST(Oracle, PerfectLeeCodeMeetsThePackingBound) {
  // 343 words, radius-1 balls of size 7: a perfect code has 49 words.
  const auto r = brute_force_optimum(7, 3, 3, Metric::Lee);
  EXPECT_EQ(r.size, 49);
  EXPECT_TRUE(min_distance(r.witness, Metric::Lee).at_least(3));
}

TEST(Oracle, NoConstraintGivesWholeSpace) {
  for (int q : {2, 5, 7})
    for (int n = 1; n <= 3; ++n) EXPECT_EQ(brute_force_optimum(q, n, 1, Metric::Lee).size, ipow(q, n));
}

TEST(Oracle, MonotoneInDistance) {
  for (auto [q, n] : {std::pair{5, 2}, std::pair{6, 2}, std::pair{5, 3}})
    for (Metric m : {Metric::Lee, Metric::LeeInf}) {
      int prev = brute_force_optimum(q, n, 1, m).size;
      for (int d = 2; d <= n * (q / 2) + 1; ++d) {
        const int cur = brute_force_optimum(q, n, d, m).size;
        EXPECT_LE(cur, prev);
        prev = cur;
      }
    }
}

TEST(Oracle, LayeredAndCliqueSearchesAgree) {
  for (auto [q, n] : {std::pair{4, 3}, std::pair{5, 3}, std::pair{6, 3}, std::pair{4, 4}, std::pair{5, 4}})
    EXPECT_EQ(brute_force_optimum(q, n, 2, Metric::LeeInf, kDefaultOracleCap, OracleMethod::Auto).size,
              brute_force_optimum(q, n, 2, Metric::LeeInf, kDefaultOracleCap, OracleMethod::CliqueOnly).size)
        << q << " " << n;
}

TEST(Oracle, CapIsEnforced) {
  EXPECT_THROW(brute_force_optimum(7, 5, 2, Metric::LeeInf), LimitExceeded);
  EXPECT_THROW(brute_force_optimum(5, 2, 0, Metric::Lee), std::invalid_argument);
}
