#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "tmsurf/app.hpp"
#include "tmsurf/tolerances.hpp"

using namespace tms::cli;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "tmsurf");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "tmsurf_unit";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count_prefix(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);)
    if (line.rfind(prefix, 0) == 0) ++n;
  return n;
}

}  // namespace

TEST_CASE("exit code mapping") {
  CHECK(exit_code_for(tms::ErrorKind::InvalidArgument) == kExitUsage);
  CHECK(exit_code_for(tms::ErrorKind::OutsideBigCell) == kExitDomain);
  CHECK(exit_code_for(tms::ErrorKind::PoleSingular) == kExitDomain);
  CHECK(exit_code_for(tms::ErrorKind::NotIntegrable) == kExitFailure);
}

TEST_CASE("generate OBJ") {
  const auto path = scratch("e.obj");
  const Result r = run_cli({"generate", "--example", "enneper-cousin", "--eps", "1", "--u-range", "-0.5:0.5",
                            "--v-range", "-0.5:0.5", "--nu", "51", "--nv", "51", "--format", "obj", "--out",
                            path.string()});
  REQUIRE(r.code == 0);
  const std::string obj = slurp(path);
  CHECK(count_prefix(obj, "v ") == 2601);
  CHECK(count_prefix(obj, "f ") == 5000);

  const auto again = scratch("e2.obj");
  run_cli({"generate", "--example", "enneper-cousin", "--eps", "1", "--format", "obj", "--out", again.string()});
  CHECK(slurp(again) == obj);

  const Result viaq = run_cli({"generate", "--q", "u", "--r", "v", "--lambda", "1", "--format", "obj"});
  REQUIRE(viaq.code == 0);
  std::istringstream a(obj), b(viaq.out);
  double worst = 0.0;
  for (std::string la, lb; std::getline(a, la) && std::getline(b, lb);) {
    if (la.rfind("v ", 0) != 0) continue;
    std::istringstream sa(la.substr(2)), sb(lb.substr(2));
    for (int k = 0; k < 3; ++k) {
      double x, y;
      sa >> x;
      sb >> y;
      worst = std::fmax(worst, std::fabs(x - y));
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("generate errors and formats") {
  CHECK(run_cli({"generate", "--q", "u", "--r", "u"}).code == kExitUsage);
  CHECK(run_cli({"generate", "--q", "u +", "--r", "v"}).code == kExitUsage);
  CHECK(run_cli({"generate", "--example", "torus"}).code == kExitUsage);
  CHECK(run_cli({"generate", "--example", "enneper-cousin", "--eps", "-1", "--u-range", "0:2", "--v-range", "0:2"})
            .code == kExitDomain);
  CHECK(run_cli({"generate", "--example", "catenoid", "--nu", "2"}).code == kExitUsage);
  CHECK(run_cli({"bogus"}).code == kExitUsage);
  CHECK(run_cli({"generate", "--example", "catenoid", "--out", "/nonexistent/dir/x.obj"}).code == kExitFailure);

  const Result csv = run_cli({"generate", "--example", "catenoid", "--nu", "5", "--nv", "4", "--format", "csv"});
  REQUIRE(csv.code == 0);
  CHECK(csv.out.rfind("u,v,x1,x2,x3,eomega,Q,R,H,K\n", 0) == 0);
  CHECK(count_prefix(csv.out, "") == 21);

  const Result js = run_cli({"generate", "--example", "revolution", "--case", "3", "--nu", "5", "--nv", "5",
                             "--format", "json"});
  REQUIRE(js.code == 0);
  const json doc = json::parse(js.out);
  CHECK(doc["rows"].size() == 25);
  CHECK(doc["rows"][0][5].is_null());
}

TEST_CASE("validate") {
  const Result ok = run_cli({"validate", "--example", "enneper-cousin", "--eps", "1"});
  REQUIRE(ok.code == 0);
  const json rep = json::parse(ok.out);
  CHECK(rep["derivative_mode"] == "analytic");
  CHECK(rep["passed"] == true);
  for (const auto& [key, value] : rep["residuals"].items()) {
    CHECK_MESSAGE(value.get<double>() <= rep["tolerances"][key]["value"].get<double>(), key);
  }
  CHECK(run_cli({"validate", "--example", "enneper-cousin", "--eps", "1"}).out == ok.out);

  const Result bad = run_cli({"validate", "--example", "enneper-cousin", "--eps", "1", "--perturb", "1e-2"});
  CHECK(bad.code != 0);
  const json brep = json::parse(bad.out);
  CHECK(brep["pass"]["mean_curvature"] == false);
  CHECK(brep["derivative_mode"] == "finite-difference");

  for (const char* ex : {"catenoid", "helicoid", "parabolic-null-cylinder", "revolution"})
    CHECK_MESSAGE(run_cli({"validate", "--example", ex}).code == 0, ex);

  const auto tol = scratch("tight.txt");
  std::ofstream(tol) << "gauss_harmonic = 1e-30\n";
  CHECK(run_cli({"validate", "--example", "catenoid", "--tolerances", tol.string()}).code == kExitFailure);
  std::ofstream(tol) << "no_such_key = 1\n";
  CHECK(run_cli({"validate", "--example", "catenoid", "--tolerances", tol.string()}).code == kExitUsage);
}

TEST_CASE("tolerance table") {
  ToleranceTable t = ToleranceTable::defaults();
  CHECK(t.get("mean_curvature", tms::DerivativeMode::Analytic) == 1e-9);
  CHECK(t.get("mean_curvature", tms::DerivativeMode::FiniteDifference) == 1e-5);
  std::istringstream in("# comment\nmean_curvature = 2e-9\n");
  t.load(in);
  CHECK(t.get("mean_curvature", tms::DerivativeMode::Analytic) == 2e-9);
  std::istringstream bad("mean_curvature 1\n");
  CHECK_THROWS_AS(t.load(bad), std::invalid_argument);
}

TEST_CASE("frames") {
  const Result r = run_cli({"frames", "--q", "u", "--r", "v", "--at", "1,1", "--lambda", "1", "--format", "json"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  const double c = 1.0 / std::sqrt(2.0);
  CHECK(doc["Phi"][0][0].get<double>() == doctest::Approx(c));
  CHECK(doc["Phi"][0][1].get<double>() == doctest::Approx(-c));
  CHECK(doc["Phi"][1][0].get<double>() == doctest::Approx(c));
  CHECK(doc["Phi"][1][1].get<double>() == doctest::Approx(c));

  const json zero = json::parse(run_cli({"frames", "--q", "u", "--r", "v", "--format", "json"}).out);
  CHECK(zero["Phi"] == json::parse("[[1.0,0.0],[0.0,1.0]]"));
  CHECK(zero["Lminus_inv"] == zero["Phi"]);
  CHECK(zero["Lplus_inv"] == zero["Phi"]);
  CHECK(zero["N"] == json::parse("[0.0,0.0,1.0]"));

  CHECK(run_cli({"frames", "--q", "u", "--r", "-1/v", "--at", "1,1"}).code == kExitDomain);
  CHECK(run_cli({"frames", "--q", "u", "--r", "v", "--lambda", "0"}).code != 0);
}

TEST_CASE("factorize") {
  const auto id = scratch("id.json");
  std::ofstream(id) << R"({"coeffs": {"0": [[1,0],[0,1]]}})";
  const Result r = run_cli({"factorize", "--loop", id.string()});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["residual"].get<double>() == 0.0);
  CHECK(doc["factor1"]["coeffs"]["0"] == json::parse("[[1.0,0.0],[0.0,1.0]]"));

  const auto loop = scratch("frames_loop.json");
  REQUIRE(run_cli({"frames", "--q", "u", "--r", "v", "--at", "1,1", "--loop-out", loop.string()}).code == 0);
  for (const char* order : {"mp", "pm"}) {
    const Result f = run_cli({"factorize", "--loop", loop.string(), "--order", order, "--degree", "4"});
    REQUIRE(f.code == 0);
    CHECK(json::parse(f.out)["residual"].get<double>() <= 1e-8);
  }

  const auto diag = scratch("diag.json");
  std::ofstream(diag) << R"({"coeffs": {"1": [[1,0],[0,0]], "-1": [[0,0],[0,1]]}})";
  CHECK(run_cli({"factorize", "--loop", diag.string()}).code == kExitDomain);
  CHECK(run_cli({"factorize", "--loop", scratch("missing.json").string()}).code == kExitFailure);
  const auto junk = scratch("junk.json");
  std::ofstream(junk) << "{not json";
  CHECK(run_cli({"factorize", "--loop", junk.string()}).code != 0);
}
