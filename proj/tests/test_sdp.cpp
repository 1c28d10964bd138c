#include <gtest/gtest.h>

#include <random>

#include "leesdp/sdpa_io.hpp"
#include "leesdp/verify.hpp"

using namespace leesdp;

namespace {

template <class Coeff>
const SdpBlock<Coeff>* find_kind(const SdpProgram<Coeff>& p, BlockKind k) {
  for (const auto& b : p.blocks)
    if (b.kind() == k) return &b;
  return nullptr;
}

}  // namespace

TEST(Program, VariableCounts) {
  EXPECT_EQ(build_program({5, 3, 2, Metric::LeeInf}).variables.size(), 48u);
  EXPECT_EQ(build_program({7, 2, 2, Metric::LeeInf}).variables.size(), 43u);
  EXPECT_EQ(build_program({7, 2, 3, Metric::LeeInf}).variables.size(), 12u);
}

TEST(Program, VariablesAreExactlyTheUsedOrbits) {
  const auto p = build_program({5, 3, 2, Metric::LeeInf});
  std::set<int> used;
  for (const auto& b : p.blocks)
    for (int i = 0; i < b.dim(); ++i)
      for (int j = 0; j < b.dim(); ++j)
        for (const auto& [w, c] : b.at(i, j).coeffs) used.insert(w);
  EXPECT_EQ(std::vector<int>(used.begin(), used.end()), p.variables);
}

TEST(Program, BlocksAreSymmetric) {
  for (auto spec : {ProgramSpec{5, 2, 2, Metric::LeeInf}, ProgramSpec{6, 3, 4, Metric::Lee},
                    ProgramSpec{7, 2, 3, Metric::Lee}})
    for (const auto& b : build_program(spec).blocks) EXPECT_TRUE(b.is_symmetric()) << b.label();
}

TEST(Program, EmptyCodeBlock) {
  for (auto [q, n] : {std::pair{5, 1}, std::pair{5, 3}, std::pair{7, 2}}) {
    const auto p = build_program({q, n, 2, Metric::LeeInf});
    const auto* t = find_kind(p, BlockKind::EmptyCode);
    ASSERT_NE(t, nullptr);
    ASSERT_EQ(t->dim(), 2);
    EXPECT_EQ(t->at(0, 0).constant, 1);
    EXPECT_TRUE(t->at(0, 0).coeffs.empty());
    ASSERT_EQ(t->at(0, 1).coeffs.size(), 1u);
    EXPECT_EQ(t->at(0, 1).coeffs.at(p.orbits->omega0()), ipow(q, n));
  }
}

TEST(Program, FiveOneOneStructure) {
  const auto p = build_program({5, 1, 1, Metric::Lee});
  const int bishapes = static_cast<int>(enumerate_bishapes(5, 1).size());
  int d1 = 0, d0 = 0, t = 0, nn = 0;
  for (const auto& b : p.blocks) {
    d1 += b.kind() == BlockKind::DOne;
    d0 += b.kind() == BlockKind::DEmpty;
    t += b.kind() == BlockKind::EmptyCode;
    nn += b.kind() == BlockKind::Nonnegativity;
  }
  EXPECT_EQ(d1, bishapes);
  EXPECT_EQ(t, 1);
  EXPECT_EQ(nn, static_cast<int>(p.variables.size()));
  EXPECT_EQ(static_cast<int>(p.blocks.size()), d1 + d0 + t + nn);
  // Distance one: every orbit stays.
  EXPECT_EQ(p.variables.size(), p.orbits->size());
}

TEST(Program, WholeSpaceIsFeasibleAtDistanceOne) {
  for (auto [q, n] : {std::pair{5, 1}, std::pair{5, 2}, std::pair{6, 2}}) {
    const auto p = build_program({q, n, 1, Metric::Lee});
    std::vector<Word> all;
    for (int i = 0; i < ipow(q, n); ++i) all.push_back(Word::from_index(q, n, i));
    const auto rep = feasibility_transfer(p, Code(all));
    EXPECT_TRUE(rep.ok()) << rep.summary();
  }
}

TEST(Program, LpIsDiagonalOnTheCosineRoute) {
  const auto lp = build_lp_b2(5, 3, 2, Metric::LeeInf);
  for (const auto& b : lp.blocks) {
    if (b.kind() == BlockKind::EmptyCode) continue;
    EXPECT_EQ(b.dim(), 1) << b.label();
  }
  for (int w : lp.variables) EXPECT_LE((*lp.orbits)[w].size(), 2);
}

TEST(Program, CosineRouteIsIntegralForSix) {
  const auto p = build_program<double>({6, 3, 2, Metric::LeeInf, Variant::B3, DEmptyRoute::Cosine});
  for (const auto& b : p.blocks)
    for (int i = 0; i < b.dim(); ++i)
      for (int j = 0; j < b.dim(); ++j)
        for (const auto& [w, c] : b.at(i, j).coeffs) EXPECT_EQ(c, std::round(c)) << b.label();
}

TEST(Program, IntegerAndCosineRoutesAgreeOnPsdStatus) {
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 2; ++n) {
    const auto table = make_orbit_table(5, n);
    const auto ints =
        build_blocks_Dempty<double>(*table, 1, Metric::Lee, DEmptyRoute::Integer);
    const auto coss = build_blocks_Dempty<double>(*table, 1, Metric::Lee, DEmptyRoute::Cosine);
    const auto sizes = orbit_sizes(*table);
    std::vector<Word> all;
    for (int i = 0; i < ipow(5, n); ++i) all.push_back(Word::from_index(5, n, i));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int agree = 0, decided = 0;
    for (int t = 0; t < 20; ++t) {
      // Mixture of code assignments plus noise: sometimes PSD, sometimes not.
      std::vector<Word> pick;
      for (const auto& w : all)
        if (u(rng) < 0.3) pick.push_back(w);
      if (pick.empty()) pick.push_back(all[0]);
      auto z = code_assignment(*table, Code(pick), sizes);
      const double noise = t % 2 ? 0.5 : 0.0;
      for (std::size_t w = 1; w < z.size(); ++w) z[w] += noise * (u(rng) - 0.5);
      // The cosine route leaves the trivial component to T, so both keep T.
      const auto a = blocks_status(ints, z), b = blocks_status(coss, z);
      if (a == PsdStatus::Borderline || b == PsdStatus::Borderline) continue;
      ++decided;
      agree += a == b;
    }
    EXPECT_GT(decided, 10);
    EXPECT_EQ(agree, decided);
  }
}

TEST(Emission, HeaderAndLayout) {
  const auto p = build_program({5, 1, 1, Metric::Lee});
  const auto text = emit_sdpa(p);
  const auto sp = parse_sdpa(text);
  EXPECT_EQ(sp.num_vars, static_cast<int>(p.variables.size()));
  int mats = 0, diag = 0;
  for (const auto& b : p.blocks) (b.dim() == 1 ? diag : mats)++;
  ASSERT_EQ(static_cast<int>(sp.block_struct.size()), mats + (diag ? 1 : 0));
  EXPECT_EQ(sp.block_struct.back(), -diag);
  // Objective: maximise q^n z(omega0), written as minimise its negation.
  EXPECT_EQ(sp.c[0], -5.0);
}

TEST(Emission, Deterministic) {
  const auto a = emit_sdpa(build_program({5, 2, 2, Metric::LeeInf}));
  const auto b = emit_sdpa(build_program({5, 2, 2, Metric::LeeInf}));
  EXPECT_EQ(a, b);
}

TEST(Emission, RoundTripPreservesBlocksAndCoefficients) {
  const auto p = build_program({6, 3, 4, Metric::Lee});
  const auto sp = parse_sdpa(emit_sdpa(p));
  std::vector<int> dims;
  int diag = 0;
  std::multiset<double> want;
  for (const auto& b : p.blocks) {
    if (b.dim() == 1)
      ++diag;
    else
      dims.push_back(b.dim());
    for (int i = 0; i < b.dim(); ++i)
      for (int j = i; j < b.dim(); ++j) {
        const auto& f = b.at(i, j);
        if (f.constant != 0) want.insert(static_cast<double>(-f.constant));
        for (const auto& [w, c] : f.coeffs) want.insert(static_cast<double>(c));
      }
  }
  dims.push_back(-diag);
  EXPECT_EQ(sp.block_struct, dims);
  std::multiset<double> got;
  for (const auto& e : sp.entries) got.insert(e.value);
  EXPECT_EQ(got, want);
}

TEST(Emission, ScaledTBlock) {
  const auto p = build_program({5, 2, 2, Metric::LeeInf});
  const auto sp = parse_sdpa(emit_sdpa(p, true));
  EXPECT_EQ(objective_scale(p, true), 25);
  // Objective becomes -z(omega0) and the T corner stays 1.
  EXPECT_EQ(sp.c[0], -1.0);
}

TEST(Emission, Summary) {
  const auto p = build_program({5, 3, 2, Metric::LeeInf});
  const auto j = program_summary(p);
  EXPECT_EQ(j["num_vars"], 48);
  EXPECT_EQ(j["metric"], "lee-inf");
  EXPECT_EQ(j["variant"], "b3");
  EXPECT_EQ(j["blocks"].size(), p.blocks.size());
  EXPECT_EQ(j["objective_scale"], 1);
}

TEST(ParseSdpa, RejectsMalformedInput) {
  EXPECT_THROW(parse_sdpa("1\n"), ParseError);
  EXPECT_THROW(parse_sdpa("1\n1\n2\n1\n0 2 1 1 1\n"), ParseError);
  EXPECT_THROW(parse_sdpa("1\n1\n2\n1\n0 1 1 x 1\n"), ParseError);
}

TEST(ParseSolution, FloorsTheDualValue) {
  const auto r = parse_solution_and_floor("phase.value  = pdOPT\nobjValPrimal = -4.90000003e+01\nobjValDual   = -4.90000003e+01\n");
  EXPECT_EQ(r.bound, 49);
  EXPECT_TRUE(r.verified);
  EXPECT_NEAR(r.raw, 49.0000003, 1e-9);
  const auto s = parse_solution_and_floor("phase.value = pdOPT\nobjValPrimal = -10.9146\nobjValDual = -10.9146\n");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", s.raw);
  EXPECT_STREQ(buf, "10.915");
  // Just under an integer still floors down unless within the tolerance.
  EXPECT_EQ(parse_solution_and_floor("objValPrimal = -9.999999\nobjValDual = -9.999999\nphase.value = pdOPT").bound, 10);
  EXPECT_EQ(parse_solution_and_floor("objValPrimal = -9.99\nobjValDual = -9.99\nphase.value = pdOPT").bound, 9);
}

TEST(ParseSolution, Scale) {
  const auto r = parse_solution_and_floor("phase.value = pdOPT\nobjValPrimal = -0.4\nobjValDual = -0.4\n", 25.0);
  EXPECT_NEAR(r.raw, 10.0, 1e-12);
  EXPECT_EQ(r.bound, 10);
}

TEST(ParseSolution, Unverified) {
  EXPECT_FALSE(parse_solution_and_floor("phase.value = pdOPT\nobjValPrimal = -10.0\nobjValDual = -10.1\n").verified);
  EXPECT_FALSE(parse_solution_and_floor("phase.value = pINF\nobjValPrimal = -10\nobjValDual = -10\n").verified);
  EXPECT_FALSE(parse_solution_and_floor("phase.value = noINFO\nobjValPrimal = -10\nobjValDual = -10\n").verified);
  EXPECT_FALSE(parse_solution_and_floor("objValPrimal = -10\nobjValDual = -10\n").verified);
  EXPECT_THROW(parse_solution_and_floor("phase.value = pdOPT\nobjValDual = -10\n"), ParseError);
}
