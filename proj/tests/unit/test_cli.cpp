#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli_app.hpp"

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "scol");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = scol::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

}  // namespace

TEST(Cli, GenEmitsInstance) {
  const auto r = run({"--gen", "star:3", "--q", "7", "--no-timestamp", "gen"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.json();
  EXPECT_EQ(j.at("schema"), scol::kSchema);
  EXPECT_EQ(j.at("n"), 4);
  EXPECT_EQ(j.at("lists").size(), 4U);
  EXPECT_FALSE(j.contains("timestamp"));
}

TEST(Cli, VerifyExitCodes) {
  auto ok = run({"--gen", "star:3", "--q", "7", "--no-timestamp", "verify", "--check", "obs11"});
  EXPECT_EQ(ok.code, 0) << ok.err;
  EXPECT_TRUE(ok.json().at("pass").get<bool>());
  EXPECT_EQ(ok.json().at("config").at("check"), "obs11");
  auto gate = run({"--gen", "star:3", "--q", "4", "verify", "--check", "thm19"});
  EXPECT_EQ(gate.code, 2);
  EXPECT_NE(gate.err.find("hypothesis violated"), std::string::npos);
  EXPECT_EQ(run({"verify", "--check", "obs11"}).code, 2);
  EXPECT_EQ(run({"--gen", "star:3", "--q", "7", "verify", "--check", "bogus"}).code, 2);
  EXPECT_EQ(run({"--gen", "wheel:3", "--q", "7", "verify", "--check", "obs11"}).code, 2);
  EXPECT_EQ(run({"--input", "/nonexistent.json", "verify", "--check", "obs11"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, FailingCheckExitsOne) {
  // a negative tolerance turns every identity residual into a failure
  auto r = run({"--gen", "path:4", "--q", "4", "--tol", "-1", "--no-timestamp", "verify", "--check", "lemma14"});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(r.json().at("pass").get<bool>());
}

TEST(Cli, ByteIdenticalReruns) {
  const std::vector<std::string> args{"--gen", "grid:2x3", "--q", "5", "--seed", "9", "--no-timestamp",
                                      "sample", "--steps", "300", "--stride", "100", "--chains", "2"};
  const auto a = run(args);
  const auto b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  auto other = args;
  other[5] = "10";
  EXPECT_NE(run(other).out, a.out);
}

TEST(Cli, TraceFormat) {
  const auto r = run({"--gen", "path:3", "--q", "3", "--seed", "4", "--no-timestamp", "sample", "--steps", "20",
                      "--stride", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.json();
  EXPECT_EQ(j.at("seed"), 4);
  EXPECT_EQ(j.at("stride"), 10);
  const auto& stats = j.at("stats");
  ASSERT_EQ(stats.size(), 3U);
  EXPECT_EQ(stats[0].at("t"), 0);
  EXPECT_EQ(stats[2].at("t"), 20);
  EXPECT_EQ(stats[0].at("color_counts").size(), 3U);
  EXPECT_TRUE(stats[0].contains("hamming"));
}

TEST(Cli, OutFileAndInput) {
  const std::string inst = ::testing::TempDir() + "scol_cli_inst.json";
  const std::string rep = ::testing::TempDir() + "scol_cli_rep.json";
  auto g = run({"--gen", "cycle:4", "--q", "5", "--no-timestamp", "--out", inst, "gen"});
  ASSERT_EQ(g.code, 0) << g.err;
  auto r = run({"--input", inst, "--no-timestamp", "--out", rep, "oracle", "count"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream fr(rep);
  const auto out = nlohmann::json::parse(fr);
  // proper 5-colorings of C4: (q-1)^4 + (q-1)
  EXPECT_EQ(out.at("total").get<std::uint64_t>(), 260U);
  std::remove(inst.c_str());
  std::remove(rep.c_str());
}

TEST(Cli, OtherSubcommands) {
  EXPECT_EQ(run({"--gen", "path:3", "--q", "5", "spectral", "--check", "thm8"}).code, 0);
  EXPECT_EQ(run({"--gen", "path:3", "--q", "5", "spectral", "--check", "gap"}).code, 0);
  EXPECT_EQ(run({"--gen", "path:3", "--q", "5", "tv", "--steps", "50", "--chains", "200"}).code, 0);
  EXPECT_EQ(run({"--gen", "path:3", "--q", "5", "couple"}).code, 0);
  EXPECT_EQ(run({"--gen", "path:3", "--q", "5", "oracle", "marginals"}).code, 0);
  const auto b = run({"--gen", "star:3", "--q", "12", "--epsilon", "1", "--no-timestamp", "bound"});
  EXPECT_EQ(b.code, 0) << b.err;
}
