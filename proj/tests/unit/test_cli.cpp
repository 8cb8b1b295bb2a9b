#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "unitransform/cli.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;
using unitransform::cli::run;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;

  Json json() const { return Json::parse(out); }
  Json error() const { return Json::parse(err); }
};

Outcome cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("unitransform-cli-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "-" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::string read(const std::string& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), {}};
}

void expect_single_error_line(const Outcome& r, int code) {
  EXPECT_EQ(r.code, code);
  ASSERT_FALSE(r.err.empty());
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1) << r.err;
  const Json e = r.error();
  EXPECT_EQ(e["status"], "error");
  EXPECT_EQ(e["code"], code);
  EXPECT_TRUE(e["message"].is_string());
}

}  // namespace

TEST(Cli, SeriesOfTheSawtooth) {
  const Outcome r = cli({"series", "--expr", "x", "--L", "1", "--K", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json doc = r.json();
  EXPECT_EQ(doc["kind"], "fourier-coefficients");
  ASSERT_EQ(doc["c"].size(), 7u);
  const Json& c1 = doc["c"][4];
  EXPECT_EQ(c1[0], 1);
  EXPECT_NEAR(c1[1].get<double>(), 0.0, 1e-14);
  EXPECT_NEAR(c1[2].get<double>(), 1.0 / std::numbers::pi, 1e-12);
  EXPECT_NEAR(c1[2].get<double>(), 0.3183, 1e-4);
  EXPECT_EQ(doc["meta"]["request"]["expr"], "x");
}

TEST(Cli, LaplaceValueAtTwo) {
  const Outcome r = cli({"lt", "--expr", "1", "--s", "2+0i", "--X", "40"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(r.json()["values"][0][0].get<double>(), 0.5, 1e-12);
  EXPECT_NEAR(r.json()["values"][0][1].get<double>(), 0.0, 1e-15);
}

TEST(Cli, VerifyOrthogonality) {
  const Outcome r = cli({"verify-orthogonality", "--L", "1", "--K", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json doc = r.json();
  EXPECT_LE(doc["max_off_diagonal"].get<double>(), 1e-10);
  EXPECT_EQ(doc["expected_diagonal"], 2.0);
  EXPECT_EQ(doc["gram"].size(), 5u);
}

TEST(Cli, OtherVerificationCommandsPass) {
  EXPECT_EQ(cli({"verify-residual"}).code, 0);
  EXPECT_EQ(cli({"verify-residual", "--problem", "weighted-halfline", "--sigma", "0.5", "--lambda", "2"}).code, 0);
  EXPECT_EQ(cli({"verify-sl", "--L", "pi", "--K", "4"}).code, 0);
  const Outcome a = cli({"estimate-abscissa", "--expr", "exp(2*x)", "--x-grid", "0:10:101"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_NEAR(a.json()["sigma_hat"].get<double>(), 2.0, 0.01);
}

TEST(Cli, FailedVerificationExitsTwo) {
  const Outcome r = cli({"verify-orthogonality", "--L", "1", "--K", "2", "--threshold", "1e-30"});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.out.empty());
  EXPECT_EQ(cli({"verify-orthogonality", "--L", "1", "--K", "2", "--threshold", "0"}).code, 1);
}

TEST(Cli, UnknownCommand) {
  const Outcome r = cli({"transmogrify", "--expr", "x"});
  expect_single_error_line(r, 1);
  EXPECT_NE(r.error()["message"].get<std::string>().find("transmogrify"), std::string::npos);
  expect_single_error_line(cli({}), 1);
}

TEST(Cli, MissingParameterNamesTheField) {
  const Outcome r = cli({"series", "--expr", "x", "--L", "1"});
  expect_single_error_line(r, 1);
  EXPECT_EQ(r.error()["field"], "K");
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, ExactlyOneSource) {
  expect_single_error_line(cli({"ft", "--lambda-grid", "0:1:3"}), 1);
  expect_single_error_line(cli({"ft", "--expr", "x", "--input", "f.json", "--lambda-grid", "0:1:3"}), 1);
}

TEST(Cli, BadValuesAreInvalidRequests) {
  EXPECT_EQ(cli({"series", "--expr", "x", "--L", "one", "--K", "2"}).error()["field"], "L");
  EXPECT_EQ(cli({"series", "--expr", "x", "--L", "1", "--K", "2.5"}).code, 1);
  EXPECT_EQ(cli({"series", "--expr", "x", "--L", "-1", "--K", "2"}).code, 1);
  EXPECT_EQ(cli({"lt", "--expr", "1", "--s", "2+"}).code, 1);
  EXPECT_EQ(cli({"ft", "--expr", "x", "--lambda-grid", "0:1"}).code, 1);
  EXPECT_EQ(cli({"series", "--expr", "x", "--L", "1", "--K", "2", "--format", "xml"}).code, 1);
  EXPECT_EQ(cli({"series", "--expr", "x", "--L", "1", "--K", "2", "--quad-method", "simpson"}).code, 1);
}

TEST(Cli, ParseErrorCarriesTheOffset) {
  const Outcome r = cli({"series", "--expr", "x + foo(x)", "--L", "1", "--K", "1"});
  expect_single_error_line(r, 1);
  EXPECT_EQ(r.error()["field"], "expr");
  EXPECT_EQ(r.error()["offset"], 4);
}

TEST(Cli, NumericalFailureExitsTwo) {
  const Outcome r = cli({"lt", "--expr", "1", "--s", "0+1i", "--X", "40"});
  expect_single_error_line(r, 2);
  EXPECT_EQ(r.error()["kind"], "divergence");
  expect_single_error_line(cli({"series", "--expr", "1/x", "--L", "1", "--K", "1"}), 2);
}

TEST(Cli, PiMultiples) {
  for (const char* L : {"pi", "1*pi", "1pi", "2pi/2"}) {
    const Outcome r = cli({"real-series", "--expr", "sin(x)", "--L", L, "--K", "1"});
    ASSERT_EQ(r.code, 0) << L << " " << r.err;
    EXPECT_EQ(r.json()["L"].get<double>(), std::numbers::pi) << L;
    EXPECT_NEAR(r.json()["b"][0][1].get<double>(), 1.0, 1e-12);
  }
  const Outcome half = cli({"series", "--expr", "1", "--L", "0.5pi", "--K", "0"});
  EXPECT_EQ(half.json()["L"].get<double>(), 0.5 * std::numbers::pi);
  const Outcome neg = cli({"ft", "--expr", "exp(-x^2)", "--lambda-grid", "-pi/2,pi", "--A", "10"});
  ASSERT_EQ(neg.code, 0) << neg.err;
  EXPECT_EQ(neg.json()["lambda_grid"][0].get<double>(), -std::numbers::pi / 2);
}

TEST(Cli, CsvFormat) {
  const Outcome r = cli({"series", "--expr", "1", "--L", "1", "--K", "1", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "k,re,im");
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 4);
  const Outcome lt = cli({"lt", "--expr", "1", "--s", "2,4", "--X", "40", "--format", "csv"});
  EXPECT_EQ(lt.out.substr(0, lt.out.find('\n')), "s_re,s_im,re,im");
}

TEST(Cli, OutputFileAndDeterminism) {
  TempDir dir;
  const std::vector<std::string> args = {"ft", "--expr", "exp(-x^2/2)", "--lambda-grid", "-2:2:9", "--A", "12"};
  auto with_out = [&](const std::string& path) {
    auto a = args;
    a.insert(a.end(), {"--out", path});
    return cli(a);
  };
  const Outcome first = with_out(dir.file("a.json"));
  ASSERT_EQ(first.code, 0) << first.err;
  EXPECT_TRUE(first.out.empty());
  ASSERT_EQ(with_out(dir.file("b.json")).code, 0);
  const std::string a = read(dir.file("a.json"));
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, read(dir.file("b.json")));
  EXPECT_EQ(cli(args).out, a);

  const Outcome bad = with_out(dir.file("missing-dir/c.json"));
  expect_single_error_line(bad, 1);
  EXPECT_EQ(bad.error()["field"], "out");
}

TEST(Cli, ForwardThenInverseThroughFiles) {
  TempDir dir;
  const std::string spectrum = dir.file("ft.json");
  ASSERT_EQ(cli({"ft", "--expr", "exp(-x^2/2)", "--lambda-grid", "-12:12:481", "--A", "12", "--out", spectrum}).code, 0);
  const Outcome inv = cli({"ift", "--input", spectrum, "--x-grid", "0,1"});
  ASSERT_EQ(inv.code, 0) << inv.err;
  EXPECT_NEAR(inv.json()["values"][0][0].get<double>(), 1.0, 1e-6);
  EXPECT_NEAR(inv.json()["values"][1][0].get<double>(), std::exp(-0.5), 1e-6);
  // A spectrum of the wrong convention is a format error.
  expect_single_error_line(cli({"ilt", "--input", spectrum, "--t-grid", "1"}), 1);
}

TEST(Cli, LaplaceLineThroughFiles) {
  TempDir dir;
  const std::string spectrum = dir.file("lt.json");
  ASSERT_EQ(cli({"lt", "--expr", "exp(-x)", "--sigma", "1", "--tau-grid", "-100:100:4001", "--X", "60", "--out",
                 spectrum})
                .code,
            0);
  const Outcome inv = cli({"ilt", "--input", spectrum, "--t-grid", "0.5,1"});
  ASSERT_EQ(inv.code, 0) << inv.err;
  EXPECT_NEAR(inv.json()["values"][0][0].get<double>(), std::exp(-0.5), 1e-3);
  EXPECT_NEAR(inv.json()["values"][1][0].get<double>(), std::exp(-1.0), 1e-3);
  EXPECT_EQ(inv.json()["meta"]["diagnostics"]["truncation_warning"], true);

  // The same warning escalates under --strict.
  const Outcome strict = cli({"ilt", "--input", spectrum, "--t-grid", "1", "--strict"});
  expect_single_error_line(strict, 2);
}

TEST(Cli, FourierLaplaceThroughFiles) {
  TempDir dir;
  const std::string spectrum = dir.file("flt.json");
  const Outcome fwd = cli({"flt", "--expr-x", "exp(-x^2/2)", "--expr-t", "exp(-t)", "--lambda-grid", "-12:12:97",
                           "--sigma", "1", "--tau-grid", "-100:100:4001", "--out", spectrum});
  ASSERT_EQ(fwd.code, 0) << fwd.err;
  const Outcome inv = cli({"iflt", "--input", spectrum, "--x-grid", "0", "--t-grid", "1"});
  ASSERT_EQ(inv.code, 0) << inv.err;
  EXPECT_EQ(inv.json()["kind"], "function2d");
  EXPECT_NEAR(inv.json()["values"][0][0][0].get<double>(), std::exp(-1.0), 1e-3);

  const Outcome general =
      cli({"flt", "--expr", "exp(-x^2/2)*exp(-t)", "--lambda-grid", "0", "--sigma", "1", "--tau-grid", "0"});
  ASSERT_EQ(general.code, 0) << general.err;
  EXPECT_NEAR(general.json()["values"][0][0].get<double>(), 0.19947, 1e-5);
}

TEST(Cli, UnreadableInput) {
  TempDir dir;
  const Outcome missing = cli({"ift", "--input", dir.file("nope.json"), "--x-grid", "0"});
  expect_single_error_line(missing, 1);
  EXPECT_EQ(missing.error()["field"], "input");
  std::ofstream(dir.file("junk.json")) << "{not json";
  expect_single_error_line(cli({"ift", "--input", dir.file("junk.json"), "--x-grid", "0"}), 1);
}

TEST(Cli, SampledSeriesInput) {
  TempDir dir;
  // f(x) = x on the Gauss nodes of (-1, 1), written by hand.
  Json doc = {{"kind", "function"}, {"grid", Json::array()}, {"values", Json::array()}, {"meta", Json::object()}};
  const int n = 401;
  for (int i = 0; i < n; ++i) {
    const double x = -1.0 + 2.0 * i / (n - 1);
    doc["grid"].push_back(x);
    doc["values"].push_back(Json::array({x, 0.0}));
  }
  std::ofstream(dir.file("f.json")) << doc.dump();
  const Outcome r = cli({"series", "--input", dir.file("f.json"), "--L", "1", "--K", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  // Trapezoid on a uniform grid of x: c_1 within O(h^2) of 1/pi.
  EXPECT_NEAR(r.json()["c"][2][2].get<double>(), 1.0 / std::numbers::pi, 1e-3);
}

TEST(Cli, ToleranceFromTheEnvironment) {
  ::setenv("UNITRANSFORM_QUAD_TOL", "1e-8", 1);
  const Outcome r = cli({"series", "--expr", "x", "--L", "1", "--K", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["meta"]["quadrature"]["tolerance"], 1e-8);
  EXPECT_EQ(r.json()["meta"]["quadrature"]["tolerance_source"], "environment");
  const Outcome option = cli({"series", "--expr", "x", "--L", "1", "--K", "1", "--quad-tol", "1e-6"});
  EXPECT_EQ(option.json()["meta"]["quadrature"]["tolerance"], 1e-6);
  ::setenv("UNITRANSFORM_QUAD_TOL", "-3", 1);
  expect_single_error_line(cli({"series", "--expr", "x", "--L", "1", "--K", "1"}), 1);
  ::unsetenv("UNITRANSFORM_QUAD_TOL");
  EXPECT_EQ(cli({"series", "--expr", "x", "--L", "1", "--K", "1"}).json()["meta"]["quadrature"]["tolerance_source"],
            "default");
}

TEST(Cli, RoundTripCommand) {
  const Outcome ft = cli({"roundtrip", "--expr", "exp(-x^2/2)", "--transform", "ft", "--max-error", "1e-6"});
  ASSERT_EQ(ft.code, 0) << ft.err;
  const Outcome series = cli({"roundtrip", "--expr", "exp(cos(pi*x))", "--transform", "series", "--max-error", "1e-8"});
  ASSERT_EQ(series.code, 0) << series.err;
  const Outcome tight = cli({"roundtrip", "--expr", "exp(-x^2/2)", "--transform", "ft", "--lambda-grid", "-2:2:81",
                             "--max-error", "1e-6"});
  EXPECT_EQ(tight.code, 2);
}

TEST(Cli, HelpExitsZero) {
  const Outcome r = cli({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("UNITRANSFORM_QUAD_TOL"), std::string::npos);
  EXPECT_NE(r.out.find("0.5pi"), std::string::npos);
}
