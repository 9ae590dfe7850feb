#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <string>

#include "json.hpp"

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(DBR_CLI_PATH) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(DBR_DATA_DIR) + "/" + name; }

nlohmann::json report(const CliRun& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST(Cli, ClassifyConstant) {
  const CliRun r = run(R"(classify --no-timings --symbol '{"type":"constant","value":0.6}')");
  ASSERT_EQ(r.code, 0);
  const auto j = report(r);
  EXPECT_EQ(j["command"], "classify");
  EXPECT_EQ(j["results"]["verdict"], "Nonextreme");
  EXPECT_NEAR(j["results"]["a0"].get<double>(), 0.8, 1e-12);
  EXPECT_FALSE(j.contains("timings"));
}

TEST(Cli, ClassifyFromFiles) {
  EXPECT_EQ(report(run("classify --symbol " + data("blaschke2.json")))["results"]["verdict"], "Extreme");
  EXPECT_EQ(report(run("classify --symbol " + data("contact_grid.json")))["results"]["verdict"], "Extreme");
}

TEST(Cli, NormHalf) {
  const CliRun r = run(R"(norm --symbol '{"type":"poly","coeffs":[[0.5,0],[0.5,0]]}')");
  ASSERT_EQ(r.code, 0);
  const auto j = report(r);
  EXPECT_NEAR(j["results"]["lhs"].get<double>(), 3.0, 1e-5 * 4.0);
  EXPECT_NEAR(j["results"]["rhs"].get<double>(), 3.0, 1e-5 * 4.0);
}

TEST(Cli, ModelNilpotent) {
  const CliRun r = run("model --matrix " + data("nilpotent.json"));
  ASSERT_EQ(r.code, 0);
  const auto b = report(r)["results"]["b"];
  EXPECT_NEAR(b[2][0].get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(b[0][0].get<double>(), 0.0, 1e-12);
  EXPECT_EQ(report(r)["results"]["rank"], 2);
}

TEST(Cli, KernelAndJulia) {
  const CliRun k = run(R"(kernel --symbol '{"type":"constant","value":0.6}' -N 8 --points '[0, [0.3, 0.1]]')");
  ASSERT_EQ(k.code, 0);
  EXPECT_EQ(report(k)["results"]["kernels"].size(), 2u);
  const CliRun j = run(R"(julia --matrix '{"rows":1,"cols":1,"data":[[0.6,0]]}')");
  ASSERT_EQ(j.code, 0);
  EXPECT_EQ(report(j)["results"]["rank_T"], 1);
}

TEST(Cli, HplusAndOuter) {
  const CliRun h = run(R"(hplus --symbol '{"type":"constant","value":0.6}' -N 8 --series '[1]')");
  ASSERT_EQ(h.code, 0);
  EXPECT_NEAR(report(h)["results"]["h_plus"][0][0].get<double>(), 0.75, 1e-12);
  const CliRun o = run(R"(outer --symbol '{"type":"constant","value":0.6}' -N 8)");
  ASSERT_EQ(o.code, 0);
  EXPECT_NEAR(report(o)["results"]["a0"].get<double>(), 0.8, 1e-12);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run(R"(classify --symbol '{"type":"constant","value":1.5}')").code, 2);
  EXPECT_EQ(run(R"(classify --symbol '{"type":"spline"}')").code, 2);
  EXPECT_EQ(run(R"(classify --symbol '{not json')").code, 2);
  EXPECT_EQ(run(R"(classify -N 2 --symbol '{"type":"constant","value":0.5}')").code, 2);
  EXPECT_EQ(run(R"(classify -M 100 --symbol '{"type":"constant","value":0.5}')").code, 2);
  EXPECT_EQ(run(R"(kernel --symbol '{"type":"constant","value":0.5}' --points '[[1.2, 0]]')").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  const CliRun e = run(R"(outer --symbol '{"type":"poly","coeffs":[0,1]}' -N 8)");
  EXPECT_EQ(e.code, 2);
  EXPECT_EQ(report(e)["error"]["kind"], "ClassifiedExtreme");
}

TEST(Cli, Determinism) {
  const std::string args = R"(classify --no-timings --symbol '{"type":"poly","coeffs":[0.3,[0.2,0.1]]}' -N 16)";
  const CliRun a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}