#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = primroot::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, GpFortyOne) {
  const auto r = run({"gp", "41"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "g(41) = 6");
  EXPECT_NE(r.out.find("\"t_q_map\""), std::string::npos);
}

TEST(Cli, JacobsthalThirty) {
  const auto r = run({"jacobsthal", "30"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "J(30) = 6");
  EXPECT_NE(r.out.find("witness: 2..6"), std::string::npos);
}

TEST(Cli, ScanWritesCsv) {
  const auto path = std::filesystem::temp_directory_path() / "primroot_cli_scan.csv";
  const auto r = run({"scan", "--x-min", "1000", "--x-max", "2000", "--delta", "1e-7", "--xi", "1.0", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto text = slurp(path);
  EXPECT_EQ(text.substr(0, text.find('\r')), "p,omega,sum_i,cond_i,r_found,tail_at_r,cond_ii,g,bound,holds");
  std::size_t rows = 0;
  for (char c : text) rows += c == '\n';
  EXPECT_EQ(rows, 1u + 135u);  // header + pi(2000) - pi(1000)
  std::filesystem::remove(path);
}

TEST(Cli, ThreadsFlagAndEnvironment) {
  const auto a = run({"sum-recip", "--x", "200000", "--R", "10", "--xi", "1.5", "--threads", "1"});
  const auto b = run({"sum-recip", "--x", "200000", "--R", "10", "--xi", "1.5", "--threads", "8"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  setenv("PRIMROOT_THREADS", "3", 1);
  const auto c = run({"sum-recip", "--x", "200000", "--R", "10", "--xi", "1.5"});
  setenv("PRIMROOT_THREADS", "zero", 1);
  const auto d = run({"sum-recip", "--x", "200000", "--R", "10", "--xi", "1.5"});
  unsetenv("PRIMROOT_THREADS");
  EXPECT_EQ(c.out, a.out);
  EXPECT_EQ(d.code, 2);
}

TEST(Cli, JsonFormat) {
  const auto r = run({"divisor-exceptions", "--x", "1000", "--t", "2", "--c", "2", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.front(), '{');
  EXPECT_NE(r.out.find("\"paper_comparison\""), std::string::npos);
}

TEST(Cli, LilJson) {
  const auto r = run({"lil", "--eta", "2", "--epsilon", "1", "--trials", "1000", "--seed", "42"});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* key : {"\"eta\"", "\"estimate\"", "\"stderr\"", "\"truncation_mass\""})
    EXPECT_NE(r.out.find(key), std::string::npos) << key;
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"gp"}).code, 2);
  EXPECT_EQ(run({"gp", "abc"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"scan", "--x-min", "5", "--x-max", "1", "--delta", "0.01"}).code, 2);
  EXPECT_EQ(run({"scan", "--x-min", "5", "--x-max", "10", "--delta", "0.01", "--threads", "0"}).code, 2);
  const auto np = run({"gp", "40"});
  EXPECT_EQ(np.code, 1);
  EXPECT_NE(np.err.find("not-prime"), std::string::npos);
  EXPECT_EQ(run({"lil", "--eta", "2", "--epsilon", "1", "--trials", "0", "--seed", "1"}).code, 1);
  EXPECT_EQ(run({"scan", "--x-min", "5", "--x-max", "10", "--delta", "0.5"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, OtherSubcommands) {
  EXPECT_EQ(run({"chain", "31", "--r", "1", "--delta", "0.001"}).code, 0);
  const auto w = run({"wstar", "6", "--sigma", "0.5"});
  EXPECT_EQ(w.out.substr(0, w.out.find('\n')), "W*(6, 0.5) = 2");
  EXPECT_EQ(run({"poisson", "--j", "1", "--x", "10000"}).code, 0);
  EXPECT_EQ(run({"poisson", "--j", "3", "--x", "10000"}).code, 1);
  EXPECT_EQ(run({"density", "--x", "10000", "--delta", "1e-7"}).code, 0);
}
