#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#ifndef LEESDP_CLI_PATH
#error "LEESDP_CLI_PATH must name the leesdp executable"
#endif

namespace {

struct Result {
  int status;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string("'") + LEESDP_CLI_PATH + "' " + args + " 2>&1";
  std::FILE* pipe = ::popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::size_t k = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, k);
  const int raw = ::pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "leesdp-cli-test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Cli, GenerateReportsVariablesAndWritesFiles) {
  const auto out = scratch("g.dat-s");
  const auto r = run("generate --q 5 --n 3 --d 2 --metric lee-inf --bound b3 -o " + out.string());
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("variables 48"), std::string::npos) << r.out;
  std::ifstream js(out.string() + ".json");
  const auto j = nlohmann::json::parse(js);
  EXPECT_EQ(j["num_vars"], 48);
  EXPECT_TRUE(std::filesystem::file_size(out) > 0);
}

TEST(Cli, GenerateIsDeterministic) {
  const auto a = scratch("a.dat-s"), b = scratch("b.dat-s");
  ASSERT_EQ(run("generate --q 5 --n 2 --d 2 --metric lee-inf -o " + a.string()).status, 0);
  ASSERT_EQ(run("generate --q 5 --n 2 --d 2 --metric lee-inf -o " + b.string()).status, 0);
  std::ifstream fa(a), fb(b);
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  EXPECT_EQ(sa.str(), sb.str());
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").status, 1);
  EXPECT_EQ(run("generate --q 1 --n 2 --d 2").status, 1);
  EXPECT_EQ(run("generate --q 5 --n 2 --d 2 --metric hamming").status, 1);
  const auto r = run("generate --q 5 --n 2 --d 2 --route cosine -o " + scratch("c.dat-s").string());
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("--force-cosine"), std::string::npos);
  EXPECT_EQ(run("generate --q 5 --n 2 --d 2 --route cosine --force-cosine -o " + scratch("c.dat-s").string()).status,
            0);
  EXPECT_EQ(run("generate --q 6 --n 2 --d 2 --route cosine -o " + scratch("c6.dat-s").string()).status, 0);
  EXPECT_EQ(run("oracle --q 7 --n 5 --d 2 --metric lee-inf").status, 1);
}

TEST(Cli, OracleValues) {
  auto r = run("oracle --q 5 --n 3 --d 2 --metric lee-inf");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("value 10\n"), std::string::npos) << r.out;
  r = run("oracle --q 7 --n 2 --d 2 --metric lee-inf");
  EXPECT_NE(r.out.find("value 10\n"), std::string::npos) << r.out;
  r = run("oracle --q 5 --n 2 --d 3 --metric lee");
  EXPECT_NE(r.out.find("value 5\n"), std::string::npos) << r.out;
}

TEST(Cli, SelfcheckPasses) {
  for (const char* args : {"--q 5 --n 2", "--q 7 --n 2", "--q 6 --n 2"}) {
    const auto r = run(std::string("selfcheck ") + args);
    EXPECT_EQ(r.status, 0) << r.out;
    EXPECT_NE(r.out.find("selfcheck passed"), std::string::npos);
  }
  const auto six = run("selfcheck --q 6 --n 2");
  EXPECT_NE(six.out.find("cosine route integrality"), std::string::npos);
}

TEST(Cli, BoundWithoutSolverIsASolverFailure) {
  EXPECT_EQ(run("bound --q 5 --n 1 --d 1 --solver /nonexistent/solver").status, 3);
}

TEST(Cli, TableVariableCountsWithoutSolver) {
  const auto r = run("table table2 --vars-only");
  EXPECT_NE(r.out.find("match=14"), std::string::npos) << r.out;
  // The (7,1,2) cell differs: three orbits of nonempty codes are listed,
  // the enumeration finds four ({0}, {0,2}, {0,3}, {0,2,4}).
  EXPECT_NE(r.out.find("MISMATCH=1"), std::string::npos) << r.out;
  EXPECT_EQ(r.status, 2);
}
