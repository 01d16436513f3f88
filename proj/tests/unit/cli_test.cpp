// Drives the fracdiff executable end to end.

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "fracdiff/app/commands.hpp"
#include "fracdiff/app/pgm.hpp"
#include "fracdiff/fracops.hpp"
#include "oracles.hpp"

namespace fracdiff::app {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::random_device rd;
    dir_ = fs::temp_directory_path() / ("fracdiff_cli_" + std::to_string(rd()));
    fs::create_directories(dir_);
    const Grid camera = read_pgm(testing::data_path("camera.pgm"));
    write_pgm(crop(camera, 200, 100, 48, 40), path("small.pgm"));
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int fracdiff(const std::string& args) const {
    const std::string cmd = std::string(FRACDIFF_CLI) + " " + args + " > " + path("stdout.txt") +
                            " 2> " + path("stderr.txt");
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string read(const std::string& name) const {
    std::ifstream f(path(name), std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
  }

  fs::path dir_;
};

TEST_F(CliTest, UsageErrorsExitOne) {
  EXPECT_EQ(fracdiff(""), kExitUsage);
  EXPECT_EQ(fracdiff("frobnicate"), kExitUsage);
  EXPECT_EQ(fracdiff("denoise " + path("small.pgm") + " --no-such-flag"), kExitUsage);
  EXPECT_EQ(fracdiff("denoise " + path("small.pgm") + " --alpha 1.9 --out " + path("o")), kExitUsage);
  EXPECT_EQ(fracdiff("denoise " + path("small.pgm") + " --K 3 --K-percentile 80"), kExitUsage);
  EXPECT_EQ(fracdiff("denoise " + path("small.pgm") + " --edge sigmoid"), kExitUsage);
  EXPECT_EQ(fracdiff("kernel --alpha 2.5"), kExitUsage);
  EXPECT_EQ(fracdiff("--help"), kExitOk);
}

TEST_F(CliTest, IoErrorsExitTwo) {
  EXPECT_EQ(fracdiff("denoise " + path("missing.pgm") + " --out " + path("o")), kExitIo);
  std::ofstream(path("broken.pgm")) << "P5 4 4 255\nabc";
  EXPECT_EQ(fracdiff("denoise " + path("broken.pgm") + " --out " + path("o")), kExitIo);
  EXPECT_NE(read("stderr.txt").find("truncated"), std::string::npos);
}

TEST_F(CliTest, NumericalFailureExitsThree) {
  EXPECT_EQ(fracdiff("denoise " + path("small.pgm") + " --dt 1e308 --steps 3 --out " + path("o")),
            kExitNumerical);
  EXPECT_NE(read("stderr.txt").find("pixel"), std::string::npos);
}

TEST_F(CliTest, DenoiseWritesImagesAndOneScoredRow) {
  const std::string input = read("small.pgm");
  ASSERT_EQ(fracdiff("denoise " + path("small.pgm") + " --sigma 10 --seed 3 --steps 5 --out " +
                     path("o") + " --csv " + path("r.csv")),
            kExitOk);
  const Grid noisy = read_pgm(path("o/small_noisy.pgm"));
  const Grid den = read_pgm(path("o/small_denoised.pgm"));
  EXPECT_EQ(noisy.width(), 48);
  EXPECT_EQ(den.height(), 40);
  ASSERT_EQ(fracdiff("denoise " + path("small.pgm") + " --sigma 10 --seed 3 --steps 5 --out " +
                     path("o2") + " --csv " + path("r.csv")),
            kExitOk);
  EXPECT_EQ(read("o/small_denoised.pgm"), read("o2/small_denoised.pgm"));
  const std::string csv = read("r.csv");
  EXPECT_EQ(csv.rfind(kResultHeader, 0), 0u);
  EXPECT_EQ(csv.find(kResultHeader, 1), std::string::npos);
  EXPECT_NE(csv.find("small,proposed,10,"), std::string::npos);
  EXPECT_EQ(read("small.pgm"), input);  // input untouched
}

TEST_F(CliTest, DenoiseAsciiAndCrop) {
  ASSERT_EQ(fracdiff("denoise " + path("small.pgm") + " --steps 2 --crop 4,6,10,12 --ascii --out " +
                     path("o")),
            kExitOk);
  const Grid den = read_pgm(path("o/small_denoised.pgm"));
  EXPECT_EQ(den.width(), 10);
  EXPECT_EQ(den.height(), 12);
  EXPECT_EQ(read("o/small_denoised.pgm").substr(0, 2), "P2");
  EXPECT_EQ(fracdiff("denoise " + path("small.pgm") + " --crop 40,0,10,10 --out " + path("o")),
            kExitUsage);
}

TEST_F(CliTest, KernelDumpMatchesLibrary) {
  ASSERT_EQ(fracdiff("kernel --alpha 1.5 --mem 8 --out " + path("k.txt")), kExitOk);
  std::ifstream in(path("k.txt"));
  const KernelDump d = read_kernel_dump(in);
  EXPECT_EQ(d.alpha, 1.5);
  EXPECT_EQ(d.n_mem, 8);
  const TwoSidedKernel k(1.5, 8, 1.0);
  EXPECT_EQ(d.coeffs, std::vector<double>(k.coeffs().begin(), k.coeffs().end()));
  ASSERT_EQ(fracdiff("kernel --alpha 1.67 --gl 5"), kExitOk);
  const std::string out = read("stdout.txt");
  EXPECT_EQ(out.rfind("# alpha=1.67 N=15 h=1\n", 0), 0u);
  EXPECT_NE(out.find("# gl alpha=1.67 count=5"), std::string::npos);
}

TEST_F(CliTest, ResponseCsv) {
  ASSERT_EQ(fracdiff("response --alphas 0.5 1.5 --points 11 --csv " + path("resp.csv")), kExitOk);
  std::ifstream in(path("resp.csv"));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "alpha,omega,response");
  int rows = 0;
  double first_omega = 0, last_omega = 0;
  while (std::getline(in, line)) {
    double a, w, r;
    char c1, c2;
    std::istringstream ls(line);
    ASSERT_TRUE(ls >> a >> c1 >> w >> c2 >> r) << line;
    EXPECT_NEAR(r, std::pow(w, a), 1e-9 * r);
    if (rows == 0) first_omega = w;
    last_omega = w;
    ++rows;
  }
  EXPECT_EQ(rows, 22);
  EXPECT_NEAR(first_omega, 0.01, 1e-12);
  EXPECT_NEAR(last_omega, 10.0, 1e-9);
}

TEST_F(CliTest, FeatureMapsAreNormalized) {
  ASSERT_EQ(fracdiff("feature-map " + path("small.pgm") + " --beta 1.5 --out " + path("f")), kExitOk);
  for (const std::string name : {"f/small_grad.pgm", "f/small_fracgrad_b1.5.pgm"}) {
    const Grid g = read_pgm(path(name));
    double lo = 255, hi = 0;
    for (double v : g.values()) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    EXPECT_EQ(lo, 0.0) << name;
    EXPECT_EQ(hi, 255.0) << name;
  }
}

TEST_F(CliTest, BenchmarkWritesCsvTablesAndImages) {
  ASSERT_EQ(fracdiff("benchmark " + path("small.pgm") + " --sigma 10 20 --steps 6 --pm-steps 6 --out " +
                     path("b")),
            kExitOk);
  const std::string csv = read("b/benchmark.csv");
  EXPECT_EQ(csv.rfind(kResultHeader, 0), 0u);
  for (const char* method : {"noisy", "gaussian", "median", "pm", "proposed"}) {
    EXPECT_NE(csv.find(std::string("small,") + method + ",10,"), std::string::npos) << method;
    EXPECT_NE(csv.find(std::string("small,") + method + ",20,"), std::string::npos) << method;
    EXPECT_TRUE(fs::exists(path(std::string("b/small_s10_") + method + ".pgm"))) << method;
  }
  EXPECT_TRUE(fs::exists(path("b/table_sigma10.csv")));
  EXPECT_TRUE(fs::exists(path("b/table_sigma20.csv")));
  EXPECT_NE(read("b/table_sigma10.csv").find("small,PSNR"), std::string::npos);
}

}  // namespace
}  // namespace fracdiff::app
