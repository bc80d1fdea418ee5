// Runs the mushybench executable end to end.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>
#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const fs::path kData = MUSHYBENCH_DATA;

struct Invocation {
  int code = -1;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("mushybench_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Invocation invoke(const std::string& args, const std::string& env = {}) const {
    const fs::path err = dir_ / "stderr.txt";
    const std::string cmd = env + " \"" + std::string(MUSHYBENCH_CLI) + "\" " + args + " > \"" +
                            (dir_ / "stdout.txt").string() + "\" 2> \"" + err.string() + "\"";
    const int status = std::system(cmd.c_str());
    Invocation out;
    out.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    out.err = slurp(err);
    return out;
  }

  fs::path write_material(const std::string& name, const nlohmann::json& doc) const {
    const fs::path p = dir_ / name;
    std::ofstream(p) << doc.dump();
    return p;
  }

  nlohmann::json vt3() const { return nlohmann::json::parse(slurp(kData / "vt3-1.json")); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, LinearizeWritesResult) {
  const fs::path out = dir_ / "lin";
  const auto r = invoke("linearize --material \"" + (kData / "vt3-1.json").string() +
                        "\" --out \"" + out.string() + "\"");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(slurp(out / "linearization.json"));
  EXPECT_NEAR(doc["alpha_sl"].get<double>(), 2.26891e-7, 5e-4 * 2.26891e-7);
  EXPECT_FALSE(doc["eutectic_experimental"].get<bool>());
  EXPECT_TRUE(fs::exists(out / "alpha_scan.csv"));
}

TEST_F(Cli, InvertedMushRangeIsInputError) {
  auto doc = vt3();
  doc["T_s"] = 1620.0;
  doc["T_l"] = 1550.0;
  const fs::path out = dir_ / "never";
  const auto r = invoke("linearize --material \"" + write_material("bad.json", doc).string() +
                        "\" --out \"" + out.string() + "\"");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("T_s"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(out));
}

TEST_F(Cli, MissingMaterialIsInputError) {
  const auto r = invoke("linearize --material \"" + (dir_ / "absent.json").string() + "\"");
  EXPECT_EQ(r.code, 1);
}

TEST_F(Cli, UnknownSubcommandIsInputError) { EXPECT_EQ(invoke("frobnicate").code, 1); }

TEST_F(Cli, EutecticIsFlagged) {
  auto doc = vt3();
  doc["lambda0"] = 0.3;
  const fs::path out = dir_ / "eut";
  const auto r = invoke("linearize --material \"" + write_material("eut.json", doc).string() +
                        "\" --out \"" + out.string() + "\"");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(nlohmann::json::parse(slurp(out / "linearization.json"))["eutectic_experimental"]);
}

TEST_F(Cli, LinearizeWithoutRootIsSolverFailure) {
  // A solid far more conductive than the liquid pushes every trial
  // diffusivity below the solidus target.
  auto doc = vt3();
  doc["kappa_s"] = 400.0;
  doc["kappa_l"] = 1.0;
  doc["lambda0"] = 0.999;
  const fs::path out = dir_ / "noroot";
  const auto r = invoke("linearize --material \"" + write_material("noroot.json", doc).string() +
                        "\" --out \"" + out.string() + "\"");
  EXPECT_EQ(r.code, 2) << r.err;
  EXPECT_NE(r.err.find("alpha_candidate"), std::string::npos);
}

TEST_F(Cli, ExactWritesRootsAndProfiles) {
  const fs::path out = dir_ / "exact";
  const auto r = invoke("exact --material \"" + (kData / "vt3-1.json").string() + "\" --out \"" +
                        out.string() + "\"");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(slurp(out / "exact.json"));
  EXPECT_NEAR(doc["k_s"].get<double>(), 0.00134109, 1e-3 * 0.00134109);
  EXPECT_NEAR(doc["k_l"].get<double>(), 0.00206009, 1e-3 * 0.00206009);
  EXPECT_TRUE(fs::exists(out / "exact_profile_t020.0s.csv"));
  EXPECT_TRUE(fs::exists(out / "exact_profile_t500.0s.csv"));
}

TEST_F(Cli, ExactRejectsZeroSampleTime) {
  const fs::path out = dir_ / "exact0";
  const auto r = invoke("exact --material \"" + (kData / "vt3-1.json").string() +
                        "\" --samples 0 --out \"" + out.string() + "\"");
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(fs::exists(out));
}

TEST_F(Cli, FdmRunsAndValidatesGrid) {
  const std::string mat = "--material \"" + (kData / "vt3-1.json").string() + "\"";
  const fs::path out = dir_ / "fdm";
  const auto ok = invoke("fdm " + mat + " --nodes 10 --t-end 50 --samples 20 --out \"" +
                         out.string() + "\"");
  ASSERT_EQ(ok.code, 0) << ok.err;
  EXPECT_TRUE(fs::exists(out / "front_trace.csv"));
  EXPECT_TRUE(fs::exists(out / "profile_t020.0s.csv"));
  EXPECT_EQ(invoke("fdm " + mat + " --tau 0 --out \"" + out.string() + "\"").code, 1);
  EXPECT_EQ(invoke("fdm " + mat + " --tau -1 --out \"" + out.string() + "\"").code, 1);
}

TEST_F(Cli, CompareExitCodeFollowsVerdict) {
  const std::string mat = "--material \"" + (kData / "vt3-1.json").string() + "\"";
  const std::string grid = " --nodes 100 --tau 0.5 --t-end 100 --samples 20,100 --levels 1";
  const fs::path strict = dir_ / "strict";
  EXPECT_EQ(invoke("compare " + mat + grid + " --tolerance 0 --out \"" + strict.string() + "\"").code, 3);
  const auto summary = nlohmann::json::parse(slurp(strict / "summary.json"));
  EXPECT_FALSE(summary["acceptance"]["passed"].get<bool>());
  EXPECT_TRUE(fs::exists(strict / "front_errors.csv"));

  const fs::path loose = dir_ / "loose";
  const auto r = invoke("compare " + mat + grid + " --tolerance 50 --out \"" + loose.string() + "\"");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(nlohmann::json::parse(slurp(loose / "summary.json"))["acceptance"]["passed"]);
}

TEST_F(Cli, OutputDirectoryFromEnvironment) {
  const fs::path out = dir_ / "from_env";
  const auto r = invoke("linearize --material \"" + (kData / "vt3-1.json").string() + "\"",
                        "MUSHYBENCH_OUT=\"" + out.string() + "\"");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(out / "linearization.json"));
}
