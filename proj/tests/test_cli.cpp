#include <gtest/gtest.h>

#include <qmcforge/cli.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qmcforge;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "qmcforge");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = runCli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string dropFirstLine(const std::string& text) { return text.substr(text.find('\n') + 1); }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("qmcforge-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

const std::vector<std::string> kPlrCommand{"-t", "lattice", "-c", "polynomial", "-s", "2^8", "-d", "12", "-e", "fast-CBC", "-f",
                                           "CU:P2", "-q", "2", "-w", "order-dependent:0,0,10.,0.1,0.001", "-O", "lattice"};

std::vector<std::string> with(std::vector<std::string> base, const std::vector<std::string>& extra) {
  base.insert(base.end(), extra.begin(), extra.end());
  return base;
}

// The command with the value of `flag` replaced.
std::vector<std::string> replaced(std::vector<std::string> base, const std::string& flag, const std::string& v) {
  const auto it = std::find(base.begin(), base.end(), flag);
  it[1] = v;
  return base;
}

}  // namespace

TEST_F(CliTest, PolynomialLatticeCommand) {
  const auto r = run(with(kPlrCommand, {"-o", (dir_ / "a").string()}));
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto params = slurp(dir_ / "a" / "parameters.txt");
  const auto def = parseLatticeFile(params);
  const auto& rule = std::get<PolynomialLatticeRule>(def);
  EXPECT_EQ(rule.k(), 8);
  EXPECT_EQ(rule.dimension(), 12);
  EXPECT_EQ(rule.gen[0], BinaryPolynomial(1));
  const auto summary = slurp(dir_ / "a" / "summary.txt");
  for (const char* key : {"set-type: lattice", "construction: polynomial", "size: 2^8", "dimension: 12", "exploration: fast-CBC",
                          "figure: P2tilde", "norm-exponent: 2", "weights: order-dependent:0,0,10.,0.1,0.001",
                          "output-format: lattice", "interlacing: 1", "higher-order: 1", "output-digits: 31", "modulus: ",
                          "multilevel: none", "seed: ", "guard: ", "merit: ", "evaluations: "}) {
    EXPECT_NE(summary.find(key), std::string::npos) << key;
  }
  // The reported merit is the merit of the written rule.
  FomSpec fom = parseFom("CU:P2", false);
  fom.q = 2;
  fom.weights = parseWeights("order-dependent:0,0,10.,0.1,0.001");
  const auto line = summary.substr(summary.find("merit: ") + 7);
  EXPECT_NEAR(evaluateMerit(def, fom), std::stod(line), 1e-12 * std::fabs(std::stod(line)));
}

TEST_F(CliTest, DeterministicApartFromSummaryComment) {
  const auto cmd = replaced(kPlrCommand, "-e", "random-CBC:20");
  ASSERT_EQ(run(with(cmd, {"--seed", "7", "-o", (dir_ / "a").string()})).code, kExitOk);
  ASSERT_EQ(run(with(cmd, {"--seed", "7", "-o", (dir_ / "b").string(), "--threads", "3"})).code, kExitOk);
  EXPECT_EQ(slurp(dir_ / "a" / "parameters.txt"), slurp(dir_ / "b" / "parameters.txt"));
  const auto sa = slurp(dir_ / "a" / "summary.txt");
  const auto sb = slurp(dir_ / "b" / "summary.txt");
  EXPECT_EQ(sa.front(), '#');
  EXPECT_EQ(dropFirstLine(sa), dropFirstLine(sb));
  // A different seed explores different candidates.
  ASSERT_EQ(run(with(cmd, {"-o", (dir_ / "c").string(), "--seed", "8"})).code, kExitOk);
  EXPECT_NE(dropFirstLine(sa), dropFirstLine(slurp(dir_ / "c" / "summary.txt")));
}

TEST_F(CliTest, NetOutputAndSobol) {
  auto r = run({"-t", "net", "-c", "polynomial", "-s", "2^6", "-d", "4", "-e", "random-CBC:10", "-f", "CU:P2", "-w", "product:0.5:",
                "-O", "net", "-o", (dir_ / "n").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto net = parseNetFile(slurp(dir_ / "n" / "parameters.txt"));
  EXPECT_EQ(net.k(), 6);
  EXPECT_EQ(net.dimension(), 4);

  r = run({"-t", "net", "-c", "sobol", "-s", "2^6", "-d", "5", "-e", "mixed-CBC:20:2", "-f", "projdep:t-value", "-q", "inf", "-w",
           "order-dependent:0:0,1.0,0.5", "-o", (dir_ / "s").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto text = slurp(dir_ / "s" / "parameters.txt");
  const auto f = parseSobolFile(text);
  EXPECT_EQ(f.s, 5);
  EXPECT_NE(slurp(dir_ / "s" / "summary.txt").find("norm-exponent: inf"), std::string::npos);
}

TEST_F(CliTest, OutputRootEnvironment) {
  ::setenv(kOutputRootEnv, dir_.c_str(), 1);
  const auto r = run(kPlrCommand);
  ::unsetenv(kOutputRootEnv);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(fs::exists(dir_ / "qmcforge-run" / "parameters.txt"));
  EXPECT_TRUE(fs::exists(dir_ / "qmcforge-run" / "summary.txt"));
}

TEST_F(CliTest, ExitCodes) {
  const auto out = (dir_ / "x").string();
  EXPECT_EQ(run({"--bogus"}).code, kExitFlagError);
  EXPECT_EQ(run({"-t", "lattice", "-c", "polynomial", "-s", "2^6"}).code, kExitFlagError);
  EXPECT_EQ(run(with(replaced(kPlrCommand, "-w", "nonsense"), {"-o", out})).code, kExitFlagError);
  EXPECT_EQ(run(with(replaced(kPlrCommand, "-f", "CU:Q2"), {"-o", out})).code, kExitFlagError);
  EXPECT_EQ(run(with(replaced(kPlrCommand, "-O", "sobol"), {"-o", out})).code, kExitFlagError);
  EXPECT_EQ(run({"-t", "lattice", "-c", "sobol", "-s", "2^6", "-d", "2", "-o", out}).code, kExitFlagError);
  // Fast CBC is a lattice-type search.
  const auto u = run({"-t", "net", "-c", "sobol", "-s", "2^6", "-d", "3", "-e", "fast-CBC", "-f", "projdep:t-value", "-o", out});
  EXPECT_EQ(u.code, kExitUnsupported) << u.err;
  // Exhaustive search over a space above the guard.
  const auto g = run({"-t", "lattice", "-c", "ordinary", "-s", "1009", "-d", "5", "-e", "exhaustive", "-f", "P2", "-w",
                      "product:0.5:", "--guard", "100", "-o", out});
  EXPECT_EQ(g.code, kExitSearchFailure) << g.err;
  EXPECT_FALSE(g.err.empty());
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST_F(CliTest, Subcommands) {
  ASSERT_EQ(run(with(kPlrCommand, {"-o", (dir_ / "p").string()})).code, kExitOk);
  const auto params = (dir_ / "p" / "parameters.txt").string();

  auto r = run({"points", params, "--end", "4"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream in(r.out);
  std::string line;
  int count = 0;
  while (std::getline(in, line)) ++count;
  EXPECT_EQ(count, 4);
  EXPECT_EQ(r.out.substr(0, 1), "0");

  const auto a = run({"points", params, "-r", "LMS", "--seed", "3", "--end", "8"});
  const auto b = run({"points", params, "-r", "LMS", "--seed", "3", "--end", "8"});
  const auto c = run({"points", params, "-r", "LMS", "--seed", "3", "--replicate", "1", "--end", "8"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);

  r = run({"tvalues", params, "--orders", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.rfind("order\tt\tcount", 0), 0U);

  r = run({"quantiles", "-d", "3", "-k", "4,5", "-n", "5", "--no-reference"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.rfind("k\tq0.1\tq0.5\tq0.9\tcbc", 0), 0U);

  r = run({"variance", "-c", "iid", "--integrand", "prodLinear:0.5,0.5", "-m", "20", "-k", "4..6"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("# slope"), std::string::npos);

  EXPECT_EQ(run({"points", (dir_ / "missing.txt").string()}).code, kExitFlagError);
  EXPECT_EQ(run({"variance", "-r", "bogus"}).code, kExitFlagError);
}

#ifdef QMCFORGE_CLI_PATH
TEST_F(CliTest, BinaryRuns) {
  const auto out = dir_ / "bin";
  std::string cmd = std::string(QMCFORGE_CLI_PATH);
  for (const auto& a : kPlrCommand) cmd += " '" + a + "'";
  cmd += " -o '" + out.string() + "' > /dev/null";
  EXPECT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_TRUE(fs::exists(out / "parameters.txt"));
  const std::string bad = std::string(QMCFORGE_CLI_PATH) + " --bogus > /dev/null 2>&1";
  const int status = std::system(bad.c_str());
  EXPECT_EQ(WEXITSTATUS(status), kExitFlagError);
}
#endif
