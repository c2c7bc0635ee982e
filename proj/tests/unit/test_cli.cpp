#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "weingarten/export.hpp"

namespace fs = std::filesystem;
using namespace weingarten::cli;
using nlohmann::json;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("weingarten_cli_" + name)) {
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

int invoke(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
  args.insert(args.begin(), "weingarten");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

RunConfig command(const std::string& name, const fs::path& dir) {
  RunConfig c;
  c.command = name;
  c.output_dir = dir.string();
  return c;
}

}  // namespace

TEST_CASE("config round-trips through its JSON form") {
  RunConfig c;
  c.command = "rot-r3 integrate";
  c.a = 2.0000000000000004;
  c.b = -2.0 / 3.0;
  c.z0 = std::numbers::pi;
  c.tol = 1e-10;
  c.periods = 3;
  c.surface = "rot";
  c.seed = 18446744073709551615ull;
  c.output_dir = "some/dir";
  const std::string text = weingarten::io::dump_json(to_json(c));
  const RunConfig back = config_from_json(json::parse(text));
  CHECK(back == c);
  CHECK(weingarten::io::dump_json(to_json(back)) == text);
}

TEST_CASE("config file errors") {
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"bogus": 1})")), UsageError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"a": "two"})")), UsageError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"periods": 1.5})")), UsageError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"([1, 2])")), UsageError);
  CHECK_NOTHROW(config_from_json(json::parse(R"({"a": 1, "periods": 2, "surface": "cone"})")));
}

TEST_CASE("flags override the file") {
  RunConfig file;
  file.a = 1.0;
  file.b = 2.0;
  RunConfig flags;
  flags.b = 3.0;
  const auto m = merge(file, flags);
  CHECK(*m.a == 1.0);
  CHECK(*m.b == 3.0);
}

TEST_CASE("every command lists") {
  CHECK(commands().size() == 9);
}

TEST_CASE("rot-r3 integrate on the reference configuration") {
  TempDir tmp("rot");
  std::string out;
  REQUIRE(invoke({"rot-r3", "integrate", "--a", "2", "--b", "-2", "--z0", "3", "--periods", "3", "--out",
                  tmp.path.string()},
                 &out) == Pass);
  const auto report = json::parse(slurp(tmp.path / "rot_integrate.json"));
  CHECK(report["pass"] == true);
  CHECK(std::abs(report["results"]["T"].get<double>() - 2.0 * std::numbers::pi) < 1e-6);
  CHECK(report["results"]["self_intersection_count"].get<int>() >= 1);
  CHECK(fs::exists(tmp.path / "rot_curve.csv"));
  CHECK(slurp(tmp.path / "rot_curve.csv").rfind("s,x,z,theta,theta_prime,first_integral_residual\n", 0) == 0);
  CHECK(out.find("PASS first_integral") != std::string::npos);
}

TEST_CASE("parab-h3 classify") {
  TempDir tmp("classify");
  REQUIRE(invoke({"parab-h3", "classify", "--a", "0.5", "--b", "-1", "--z0", "1", "--out", tmp.path.string()}) ==
          Pass);
  const auto r = json::parse(slurp(tmp.path / "parab_classify.json"))["results"];
  CHECK(r["label"] == "CompleteConcaveGraph");
  CHECK(std::abs(r["theta1"].get<double>() + std::numbers::pi / 3.0) < 1e-9);
  CHECK(r["termination"]["observed"] == "BoundaryReached");

  REQUIRE(invoke({"parab-h3", "classify", "--b", "-0.2", "--out", tmp.path.string()}) == Pass);
  const auto p = json::parse(slurp(tmp.path / "parab_classify.json"))["results"];
  CHECK(p["label"] == "PeriodicComplete");
  CHECK(p["theta1"].is_null());
}

TEST_CASE("exit codes") {
  TempDir tmp("codes");
  const std::string dir = tmp.path.string();
  std::string err;
  CHECK(invoke({"rot-r3", "integrate", "--a", "nan", "--out", dir}, nullptr, &err) == Usage);
  CHECK(err.find("--a must be a finite number") != std::string::npos);
  CHECK(invoke({"rot-r3", "integrate", "--a", "two", "--out", dir}) == Usage);
  CHECK(invoke({"rot-r3", "integrate", "--z0", "1", "--out", dir}) == Usage);  // z0 below -2b/a
  CHECK(invoke({"parab-h3", "classify", "--a", "1.5", "--out", dir}) == Usage);
  CHECK(invoke({"cyclic", "cone", "--r1", "-5", "--out", dir}) == Usage);
  CHECK(invoke({"cyclic", "riemann", "--center-law", "third", "--out", dir}) == Usage);
  CHECK(invoke({"nonsense"}) == Usage);
  CHECK(invoke({}) == Usage);
  CHECK(invoke({"--help"}) == Pass);
  // The second-derivative centre law is not minimal: a verdict failure.
  CHECK(invoke({"cyclic", "riemann", "--center-law", "second", "--out", dir}) == VerdictFailure);
  CHECK(json::parse(slurp(tmp.path / "cyclic_riemann.json"))["verdicts"]["minimal"] == false);
  // The relation cannot be fitted by the coefficients of a wrong constant.
  CHECK(invoke({"cyclic", "coeffs", "--surface", "sphere", "--c", "1.5", "--out", dir}) == VerdictFailure);
}

TEST_CASE("config file with flag overrides") {
  TempDir tmp("config");
  fs::create_directories(tmp.path);
  const fs::path cfg = tmp.path / "cfg.json";
  std::ofstream(cfg) << R"({"command": "parab-h3 classify", "a": 0.5, "b": 0.3, "z0": 1})";
  REQUIRE(invoke({"--config", cfg.string(), "--out", tmp.path.string()}) == Pass);
  CHECK(json::parse(slurp(tmp.path / "parab_classify.json"))["results"]["label"] == "IncompleteNonGraph");
  REQUIRE(invoke({"--config", cfg.string(), "parab-h3", "classify", "--b", "-0.8", "--out", tmp.path.string()}) ==
          Pass);
  CHECK(json::parse(slurp(tmp.path / "parab_classify.json"))["results"]["label"] == "IncompleteGraph");
  std::ofstream(tmp.path / "bad.json") << "{not json";
  CHECK(invoke({"--config", (tmp.path / "bad.json").string()}) == Usage);
  CHECK(invoke({"--config", (tmp.path / "missing.json").string()}) == Usage);
}

TEST_CASE("WEINGARTEN_OUT overrides the output directory") {
  TempDir a("env_a"), b("env_b");
  ::setenv("WEINGARTEN_OUT", b.path.c_str(), 1);
  const int code = invoke({"cyclic", "cone", "--out", a.path.string()});
  ::unsetenv("WEINGARTEN_OUT");
  CHECK(code == Pass);
  CHECK(fs::exists(b.path / "cyclic_cone.json"));
  CHECK_FALSE(fs::exists(a.path / "cyclic_cone.json"));
}

TEST_CASE("artifacts are byte-identical across runs") {
  TempDir a("det_a"), b("det_b");
  for (const auto* dir : {&a, &b}) {
    std::ostringstream log;
    for (const auto* name : {"rot-r3 report", "parab-h3 integrate", "cyclic riemann", "cyclic coeffs", "mesh export",
                             "figures reproduce"}) {
      const auto r = run(command(name, dir->path), log);
      CHECK(r.exit_code == Pass);
    }
  }
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(a.path)) {
    const auto other = b.path / entry.path().filename();
    REQUIRE(fs::exists(other));
    CHECK(slurp(entry.path()) == slurp(other));
    ++files;
  }
  CHECK(files >= 14);
}

TEST_CASE("each command passes with its defaults") {
  TempDir tmp("all");
  std::ostringstream log;
  for (const auto& name : commands()) {
    CAPTURE(name);
    const auto r = run(command(name, tmp.path), log);
    CHECK(r.exit_code == Pass);
    CHECK(r.report["pass"] == true);
    CHECK(r.report["command"] == name);
    CHECK_FALSE(r.report["config"].contains("output_dir"));
  }
  const auto figs = json::parse(slurp(tmp.path / "figures.json"));
  CHECK(figs["results"]["figures"].size() == 5);
  CHECK(fs::exists(tmp.path / "parab_incomplete_non_graph.csv"));
  CHECK(fs::exists(tmp.path / "rot_periodic_profile.csv"));
  CHECK(slurp(tmp.path / "rot.obj").rfind("# rot surface", 0) == 0);
}

TEST_CASE("mesh export of every surface") {
  TempDir tmp("mesh");
  for (const auto* s : {"rot", "parab", "riemann", "cone", "sphere"}) {
    CAPTURE(s);
    REQUIRE(invoke({"mesh", "export", "--surface", s, "--phi-samples", "8", "--out", tmp.path.string()}) == Pass);
    CHECK(fs::exists(tmp.path / (std::string(s) + ".obj")));
  }
  CHECK(invoke({"mesh", "export", "--surface", "torus", "--out", tmp.path.string()}) == Usage);
}
