#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Outcome {
  int code = -1;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("umbral_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path file(const std::string& name, const std::string& content) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << content;
    return p;
  }

  Outcome run(const std::string& args, const std::string& env = "") {
    const fs::path o = dir_ / "stdout", e = dir_ / "stderr";
    const std::string cmd = env + " " + UMBRAL_CLI_PATH + " " + args + " >" + o.string() + " 2>" + e.string();
    const int status = std::system(cmd.c_str());
    Outcome r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(o);
    r.err = slurp(e);
    return r;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, UltrasphericalCatalan) {
  const Outcome r = run("family ultraspherical --params lambda=1,a=0,b=1 --order 8");
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = r.json();
  // mu_4 = 4! f0_4 = 2
  EXPECT_EQ(j["f0"]["coeffs"][4], "1/12");
  EXPECT_EQ(j["recurrence"]["b"][2], "1/2");
  EXPECT_EQ(j["polys"][2], Json::array({"-1", "0", "1"}));
  for (const auto& c : j["checks"]) EXPECT_TRUE(c["pass"].get<bool>()) << c["name"];
}

TEST_F(Cli, HahnIntegerPath) {
  const Outcome r = run("family hahn --params lambda=2,a=1/2,s=2 --order 6");
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = r.json();
  // (e^y + 1)/2
  EXPECT_EQ(j["f0"]["coeffs"][0], "1");
  EXPECT_EQ(j["f0"]["coeffs"][3], "1/12");
  EXPECT_EQ(j["recurrence"]["b"][1], "1/4");
  EXPECT_EQ(j["degenerate_at"], 2);
}

TEST_F(Cli, ParameterErrors) {
  Outcome r = run("family jacobi --params lambda=0");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("lambda=0 invalid: kappa undefined"), std::string::npos) << r.err;
  EXPECT_EQ(run("family sheffer --params zeta=1").code, 2);
  EXPECT_EQ(run("family sheffer --params lambda=x").code, 2);
  EXPECT_EQ(run("family nonesuch").code, 2);
  EXPECT_EQ(run("family sheffer --order 3").code, 2);
  EXPECT_EQ(run("verify base --samples 0").code, 2);
  EXPECT_EQ(run("family sheffer --format xml").code, 2);
  EXPECT_EQ(run("").code, 2);
}

TEST_F(Cli, VerifySuites) {
  Outcome r = run("verify longdiv --samples 3 --seed 7");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.json()["pass"].get<bool>());
  r = run("verify base --samples 1 --params lambda=0,a=0,b=1/2");
  EXPECT_EQ(r.code, 0) << r.err;
  r = run("verify ortho --samples 2 --format csv");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("name,pass,witness\n", 0), 0u);
}

TEST_F(Cli, Deterministic) {
  const Outcome a = run("verify jacobi --seed 3 --order 12"), b = run("verify jacobi --seed 3 --order 12");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST_F(Cli, ContinuedFractions) {
  const fs::path cat = file("cat.json", R"({"order": 10, "coeffs": ["1","0","1","0","2","0","5","0","14","0","42"]})");
  Outcome r = run("cfrac moments2rec " + cat.string() + " --roundtrip");
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = r.json();
  for (int n = 1; n < 5; ++n) {
    EXPECT_EQ(j["recurrence"]["a"][n], "0");
    EXPECT_EQ(j["recurrence"]["b"][n], n == 1 ? "1" : "1/" + std::to_string(n));
  }
  EXPECT_TRUE(j["roundtrip"]["identical"].get<bool>());

  const fs::path geo = file("geo.json", R"(["1","1","1","1","1","1"])");
  r = run("cfrac moments2rec " + geo.string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("b_1 = 0 at depth 1"), std::string::npos) << r.err;

  const fs::path rec = file("rec.json", R"({"a": ["1","-2","1/3","0","5","1/7"], "b": ["0","1","2","-1/2","3","4/5"]})");
  r = run("cfrac rec2moments " + rec.string() + " --roundtrip");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.json()["roundtrip"]["identical"].get<bool>());

  const fs::path bad = file("bad.json", "{ nope");
  EXPECT_EQ(run("cfrac moments2rec " + bad.string()).code, 2);
}

TEST_F(Cli, Associated) {
  Outcome r = run("assoc jacobi --params lambda=2,a=1/2,r=1 --c 1 --order 12");
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = r.json();
  EXPECT_EQ(j["c"], "1");
  EXPECT_EQ(j["pipelines"]["order"], 10);
  EXPECT_EQ(j["pipelines"]["explicit"], j["pipelines"]["tails"]);
  EXPECT_EQ(j["pipelines"]["explicit"], j["pipelines"]["recurrence"]);
  EXPECT_EQ(j["pipelines"]["explicit"], j["pipelines"]["hypergeometric"]);

  r = run("assoc sheffer --c 0 --order 8");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.json()["reduction"], "identical to base");
  EXPECT_NE(r.err.find("identical to base"), std::string::npos);

  r = run("assoc sheffer --c 1/2 --order 8 --format csv");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("f0,0,1\n", 0), 0u);
  EXPECT_EQ(run("assoc hahn --c 1").code, 2);
}

TEST_F(Cli, Asymptotics) {
  Outcome r = run("asym falling-factorial --alpha 1/2 --s 40,80 --level 1");
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = r.json();
  EXPECT_EQ(j["alpha"], "1/2");
  EXPECT_EQ(j["rows"].size(), 2u);
  EXPECT_NEAR(j["order_estimate"].get<double>(), -1.0, 0.3);
  EXPECT_EQ(run("asym falling-factorial --alpha 3/2").code, 2);
  EXPECT_EQ(run("asym nonesuch").code, 2);
  r = run("asym lah --alpha 1/10 --s 40 --format csv --digits 40");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("s,exact,approx,residual\n", 0), 0u);
}

TEST_F(Cli, OrderFromEnvironmentAndOutFile) {
  Outcome r = run("family sheffer", "UMBRAL_ORDER=6");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.json()["order"], 6);
  r = run("family sheffer --order 5", "UMBRAL_ORDER=6");
  EXPECT_EQ(r.json()["order"], 5);
  const fs::path out = dir_ / "family.json";
  r = run("family sheffer --order 5 --out " + out.string());
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(Json::parse(slurp(out))["order"], 5);
}
