#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "leesdp/sdp.hpp"
#include "leesdp/oracle.hpp"
#include "leesdp/verify.hpp"

using namespace leesdp;

namespace {

Tableau tab(std::vector<int> shape, std::vector<std::vector<int>> rows) {
  return Tableau(Partition(std::move(shape)), std::move(rows));
}
Tableau empty_tab() { return Tableau(Partition(), {}); }

int class_index(int q, Tuple t) {
  const auto pi = enumerate_pi(q);
  for (std::size_t i = 0; i < pi.size(); ++i)
    if (pi[i].rep() == t) return static_cast<int>(i);
  return -1;
}

// Number of semistandard tableaux by the hook-content formula.
long long hook_content(const Partition& p, int m) {
  const auto cols = p.columns();
  long long num = 1, den = 1;
  for (int r = 0; r < p.height(); ++r)
    for (int c = 0; c < p[r]; ++c) {
      num *= m + c - r;
      den *= (p[r] - c - 1) + (cols[c] - r - 1) + 1;
    }
  return num / den;
}

}  // namespace

TEST(Partitions, Counts) {
  EXPECT_EQ(partitions(4).size(), 5u);
  EXPECT_EQ(partitions(7).size(), 15u);
  EXPECT_EQ(partitions(5, 2).size(), 3u);
  EXPECT_EQ(partitions(0).size(), 1u);
  EXPECT_THROW(Partition({1, 2}), std::invalid_argument);
  EXPECT_THROW(Partition({2, 0}), std::invalid_argument);
}

TEST(Tableaux, Examples) {
  EXPECT_EQ(semistandard_tableaux(Partition({4}), 1).size(), 1u);
  EXPECT_EQ(semistandard_tableaux(Partition({1, 1}), 2).size(), 1u);
  EXPECT_EQ(semistandard_tableaux(Partition({2}), 2).size(), 3u);
  EXPECT_EQ(semistandard_tableaux(Partition({2, 1}), 3).size(), 8u);
  EXPECT_TRUE(semistandard_tableaux(Partition({1, 1, 1}), 2).empty());
}

TEST(Tableaux, HookContentFormula) {
  for (int n = 1; n <= 6; ++n)
    for (const auto& p : partitions(n))
      for (int m = 1; m <= 4; ++m) {
        const auto ts = semistandard_tableaux(p, m);
        EXPECT_EQ(static_cast<long long>(ts.size()), p.height() > m ? 0 : hook_content(p, m)) << p << " m=" << m;
        std::set<Tableau> distinct(ts.begin(), ts.end());
        EXPECT_EQ(distinct.size(), ts.size());
        for (const auto& t : ts) EXPECT_TRUE(t.is_semistandard(m));
      }
}

TEST(Tableaux, RowArrangementsAreDistinct) {
  const auto arr = row_arrangements(tab({3, 1}, {{1, 1, 2}, {2}}));
  ASSERT_EQ(arr.size(), 2u);
  EXPECT_EQ(arr[0].size(), 3u);
  EXPECT_EQ(arr[1].size(), 1u);
}

TEST(Bishapes, Examples) {
  EXPECT_EQ(enumerate_bishapes(5, 1).size(), 2u);
  const auto b52 = enumerate_bishapes(5, 2);
  EXPECT_EQ(b52.size(), 5u);
  const auto b22 = enumerate_bishapes(2, 2);
  ASSERT_EQ(b22.size(), 2u);
  for (const auto& b : b22) EXPECT_TRUE(b.lambda2.empty());
}

TEST(RepresentativeData, Parameters) {
  const auto r5 = representative_data(5);
  EXPECT_EQ(r5.m1, 3);
  EXPECT_EQ(r5.m2, 2);
  EXPECT_EQ(r5.s, 3);
  EXPECT_EQ(r5.m1 * r5.m1 + r5.m2 * r5.m2, 13);
  const auto r6 = representative_data(6);
  EXPECT_EQ(r6.m1 * r6.m1 + r6.m2 * r6.m2, 20);
}

TEST(RepresentativeData, CentralizerDimensions) {
  for (int q = 2; q <= 12; ++q) {
    const auto r = representative_data(q);
    const int expected = q % 2 == 0 ? q * q / 2 + 2 : (q * q + 1) / 2;
    EXPECT_EQ(r.m1 * r.m1 + r.m2 * r.m2, expected) << "q=" << q;
    // Orbits of x -> -x on pairs.
    std::set<std::pair<int, int>> refl;
    for (int x = 0; x < q; ++x)
      for (int y = 0; y < q; ++y) refl.insert(std::min(std::pair{x, y}, std::pair{(q - x) % q, (q - y) % q}));
    EXPECT_EQ(static_cast<int>(refl.size()), expected) << "q=" << q;
    // Orbits of D_q on pairs: one per circular distance.
    std::set<std::vector<int>> dq;
    for (int x = 0; x < q; ++x)
      for (int y = 0; y < q; ++y) dq.insert(column_class_of({x, y}, q).rep());
    EXPECT_EQ(static_cast<int>(dq.size()), q / 2 + 1);
    EXPECT_EQ(r.s, q / 2 + 1);
    int sum = 0;
    for (int j = 0; j < r.s; ++j) sum += r.dim_v(j);
    EXPECT_EQ(sum, q);
  }
}

TEST(RepresentativeData, ColumnsAreOrthogonal) {
  for (int q = 2; q <= 9; ++q) {
    const auto r = representative_data(q);
    std::vector<std::vector<double>> cols;
    for (const auto& c : r.b1) cols.emplace_back(c.begin(), c.end());
    for (const auto& c : r.b2) cols.emplace_back(c.begin(), c.end());
    EXPECT_EQ(static_cast<int>(cols.size()), q);
    for (std::size_t i = 0; i < cols.size(); ++i)
      for (std::size_t j = i + 1; j < cols.size(); ++j) {
        double dot = 0;
        for (int t = 0; t < q; ++t) dot += cols[i][t] * cols[j][t];
        EXPECT_NEAR(dot, 0.0, 1e-12);
      }
    for (int i = 0; i < r.s; ++i)
      for (int j = i + 1; j < r.s; ++j) {
        double dot = 0;
        for (int t = 0; t < q; ++t) dot += r.c[i][t] * r.c[j][t];
        EXPECT_NEAR(dot, 0.0, 1e-9);
      }
  }
}

TEST(Expansion, SingleCellExamples) {
  const BiShape bs{Partition({1}), Partition()};
  const TableauPair one{tab({1}, {{1}}), empty_tab()};
  const TableauPair two{tab({1}, {{2}}), empty_tab()};
  const auto p11 = expand_p_tau_sigma(5, bs, one, one, Substitution::DCase);
  EXPECT_EQ(p11.size(), 1u);
  EXPECT_EQ(p11.coefficient(Monomial{class_index(5, {0, 0, 0})}), 1);
  const auto p12 = expand_p_tau_sigma(5, bs, one, two, Substitution::DCase);
  EXPECT_EQ(p12.size(), 1u);
  EXPECT_EQ(p12.coefficient(Monomial{class_index(5, {0, 0, 1})}), 2);
}

TEST(Expansion, SubstitutionForms) {
  // B1(j+1) (x) B1(h+1) = 2 d(0jh) + 2 d(0j(q-h)); B2(j) (x) B2(h) = 2 d(0jh) - 2 d(0j(q-h)).
  const int q = 7;
  SubstitutionTable t(q, Substitution::DCase);
  for (int j = 1; j <= q / 2; ++j)
    for (int h = 1; h <= q / 2; ++h) {
      std::map<int, long long> want1, want2;
      want1[class_index(q, pi_of({0, j, h}, q).rep())] += 2;
      want1[class_index(q, pi_of({0, j, q - h}, q).rep())] += 2;
      want2[class_index(q, pi_of({0, j, h}, q).rep())] += 2;
      want2[class_index(q, pi_of({0, j, q - h}, q).rep())] -= 2;
      std::erase_if(want2, [](const auto& kv) { return kv.second == 0; });
      const auto& f1 = t.form(0, j, h);
      const auto& f2 = t.form(1, j - 1, h - 1);
      EXPECT_EQ((std::map<int, long long>(f1.begin(), f1.end())), want1);
      EXPECT_EQ((std::map<int, long long>(f2.begin(), f2.end())), want2);
    }
  const auto& f00 = t.form(0, 0, 0);
  ASSERT_EQ(f00.size(), 1u);
  EXPECT_EQ(f00[0], (std::pair<int, long long>{class_index(q, {0, 0, 0}), 1}));
}

TEST(Expansion, EmptySetFormsUseCircularDistances) {
  // B1(j+1) (x) B1(h+1) on pairs: f_{|j-h|} and f_{min(j+h, q-j-h)}, twice each.
  const int q = 5;
  SubstitutionTable t(q, Substitution::EmptyInteger);
  for (int j = 1; j <= q / 2; ++j)
    for (int h = 1; h <= q / 2; ++h) {
      std::map<int, long long> want;
      want[std::abs(j - h)] += 2;
      want[std::min(j + h, q - j - h)] += 2;
      const auto& f = t.form(0, j, h);
      EXPECT_EQ((std::map<int, long long>(f.begin(), f.end())), want);
    }
}

TEST(Expansion, RejectsBadInput) {
  const BiShape bs{Partition({1}), Partition()};
  const TableauPair bad{tab({1}, {{9}}), empty_tab()};
  const TableauPair ok{tab({1}, {{1}}), empty_tab()};
  EXPECT_THROW(expand_p_tau_sigma(5, bs, bad, ok, Substitution::DCase), std::invalid_argument);
  const BiShape other{Partition({2}), Partition()};
  EXPECT_THROW(expand_p_tau_sigma(5, other, ok, ok, Substitution::DCase), std::invalid_argument);
}

TEST(Expansion, SymmetricAfterOrbitSubstitution) {
  for (int q : {5, 6, 7})
    for (int n = 1; n <= 3; ++n) {
      OrbitTable table(q, n, 3);
      for (auto kind : {Substitution::DCase, Substitution::EmptyInteger}) {
        BlockExpander<Integer> ex(q, kind);
        const auto& rd = ex.table().data();
        for (const auto& bs : enumerate_bishapes(n, rd.m1, rd.m2)) {
          const auto w = tableau_pairs(bs, rd.m1, rd.m2);
          for (std::size_t i = 0; i < w.size(); ++i)
            for (std::size_t j = i + 1; j < w.size(); ++j) {
              const auto a = detail::to_linform<Integer>(ex.expand(w[i], w[j]), table, 1, Metric::Lee);
              const auto b = detail::to_linform<Integer>(ex.expand(w[j], w[i]), table, 1, Metric::Lee);
              EXPECT_EQ(a.coeffs, b.coeffs) << q << " " << n << " " << bs;
            }
        }
      }
    }
}

TEST(Expansion, CosineForms) {
  const auto f5 = cosine_forms(5);
  EXPECT_NEAR(f5[1][1], 10 * std::cos(2 * std::numbers::pi / 5), 1e-12);
  const auto p = expand_p_n(5, {0, 1, 0});
  EXPECT_NEAR(p.coefficient(Monomial{1}), 10 * std::cos(2 * std::numbers::pi / 5), 1e-12);
  // q = 6, i = 3: 6 (f0 - f3 + 2 sum_j cos(pi j) f_j).
  const auto f6 = cosine_forms(6);
  EXPECT_EQ(f6[3], (std::vector<double>{6, -12, 12, -6}));
  for (const auto& row : f6)
    for (double v : row) EXPECT_EQ(v, std::round(v));
  EXPECT_THROW(expand_p_n(5, {1, 0}), std::invalid_argument);
}

TEST(Expansion, Compositions) {
  const auto c = compositions(3, 3);
  EXPECT_EQ(c.size(), 10u);
  EXPECT_EQ(c.front(), (std::vector<int>{3, 0, 0}));
  for (const auto& v : c) EXPECT_EQ(v[0] + v[1] + v[2], 3);
}

TEST(Expansion, AllOnesFormCountsPairsOfACode) {
  // p_(n,0,...,0) on a code assignment is sum over ordered pairs of x({a,b}) = |C|^2.
  for (int q : {5, 7})
    for (int n = 1; n <= 3; ++n) {
      OrbitTable table(q, n, 3);
      const auto sizes = orbit_sizes(table);
      std::vector<int> comp(q / 2 + 1, 0);
      comp[0] = n;
      const auto cosine = detail::to_linform<double>(expand_p_n(q, comp), table, 1, Metric::Lee);
      const auto exact = detail::to_linform<Integer>(expand_p_all_ones(q, n), table, 1, Metric::Lee);
      for (int d : {3, 4}) {
        const auto code = brute_force_optimum(q, n, d, Metric::LeeInf).witness;
        const auto z = code_assignment(table, code, sizes);
        const double c2 = static_cast<double>(code.size() * code.size());
        EXPECT_NEAR(cosine.evaluate(z), c2, 1e-7 * c2);
        EXPECT_NEAR(exact.evaluate(z), c2, 1e-9 * c2);
      }
    }
}
