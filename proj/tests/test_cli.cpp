#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("cstgeo_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(const fs::path& dir, const json& config, const std::string& extra = "") {
  const fs::path cfg = dir / "config.json";
  std::ofstream(cfg) << config.dump(2);
  const std::string cmd = std::string(CSTGEO_CLI_PATH) + " --config " + cfg.string() + " --out " +
                          (dir / "out").string() + " " + extra + " > " + (dir / "stdout.txt").string() +
                          " 2> " + (dir / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const json kParams = {{"D", 0.5}, {"E", 1}, {"h2", 0.2}, {"h4", 0.25}, {"m", 1}, {"a", 0.5}};

}  // namespace

TEST_CASE("classify accepts the free matrix") {
  const auto dir = scratch("classify");
  const json cfg = {{"command", "classify"},
                    {"params", {{"D", "D"}}},
                    {"a", {{"m^-1", "D*m^-1", 0}, {"D*m^-1", "D^2*m^-1", 0}, {0, 0, 0}}}};
  CHECK(run_cli(dir, cfg) == 0);
  CHECK(slurp(dir / "stdout.txt").find("geometrisable: true") != std::string::npos);
  const auto manifest = json::parse(slurp(dir / "out" / "manifest.json"));
  CHECK(manifest["status"] == 0);
  CHECK(manifest["outputs"].size() == 1);
}

TEST_CASE("reduce rejects a failing matrix with exit status 2") {
  const auto dir = scratch("reduce_bad");
  const json cfg = {{"command", "reduce"}, {"params", {{"D", 0.5}}}, {"a", {{0, 0, 0}, {0, 1, 0}, {0, 0, 0}}}};
  CHECK(run_cli(dir, cfg) == 2);
  CHECK(slurp(dir / "stderr.txt").find("a22 = D^2*a11") != std::string::npos);
}

TEST_CASE("reduce emits the canonical operator") {
  const auto dir = scratch("reduce");
  const json cfg = {{"command", "reduce"}, {"model", "free"}};
  CHECK(run_cli(dir, cfg) == 0);
  const auto r = json::parse(slurp(dir / "out" / "reduction.json"));
  CHECK(r["order"] == 1);
  CHECK(r["pushforward"].get<std::string>() ==
        "(4*i*u1*u2*h4*m^-1*pi)*du1 + (4*i*u2^2*h4*m^-1*pi)*du2 + "
        "(-u1^2*h4^2*m^-1*pi^2 + 8*u2^2*h2*h4*m^-1*pi^2 + 2*i*u2*h4*m^-1*pi)");
}

TEST_CASE("transform then verify") {
  const auto dir = scratch("verify");
  const json t = {{"command", "transform"},
                  {"params", kParams},
                  {"grid1d", {{"lo", -7}, {"hi", 7}, {"n", 701}}},
                  {"grid3d", {{"lo", {-0.5, -0.5, -0.5}}, {"hi", {0.5, 0.5, 0.5}}, {"n", {21, 21, 21}}}},
                  {"state", {{"kind", "gaussian"}, {"center", 0.3}, {"width", 0.9}, {"momentum", 0.7}}}};
  REQUIRE(run_cli(dir, t) == 0);
  const auto vdir = scratch("verify2");
  const json v = {{"command", "verify"}, {"params", kParams}, {"field", (dir / "out" / "field.json").string()}};
  CHECK(run_cli(vdir, v) == 0);
  const auto r = json::parse(slurp(vdir / "out" / "verify.json"));
  CHECK(r["analytic_ratio"].get<double>() > 3.5);
  CHECK(r["structural_ratio"].get<double>() > 3.5);
  CHECK(run_cli(vdir, v, "--tolerance 1e-9") == 3);
}

TEST_CASE("outputs are byte identical across runs and thread counts") {
  const json t = {{"command", "transform"},
                  {"params", kParams},
                  {"seed", 5},
                  {"grid1d", {{"lo", -7}, {"hi", 7}, {"n", 351}}},
                  {"grid3d", {{"lo", {-0.5, -0.5, -0.5}}, {"hi", {0.5, 0.5, 0.5}}, {"n", {9, 9, 9}}}},
                  {"state", {{"kind", "random"}, {"packets", 3}}}};
  const auto a = scratch("det_a"), b = scratch("det_b");
  REQUIRE(run_cli(a, t, "--threads 1") == 0);
  REQUIRE(run_cli(b, t, "--threads 3") == 0);
  CHECK(slurp(a / "out" / "field.bin") == slurp(b / "out" / "field.bin"));
  const auto manifest = json::parse(slurp(a / "out" / "manifest.json"));
  bool found = false;
  for (const auto& o : manifest["outputs"]) found = found || o["path"].get<std::string>().ends_with("field.bin");
  CHECK(found);
  const auto c = scratch("det_c");
  REQUIRE(run_cli(c, t, "--format csv") == 0);
  CHECK(fs::exists(c / "out" / "field.csv"));
}

TEST_CASE("invalid parameters exit with status 2") {
  const auto dir = scratch("invalid");
  json p = kParams;
  p["E"] = -1;
  const json cfg = {{"command", "fiducial"}, {"params", p}, {"grid1d", {{"lo", -4}, {"hi", 4}, {"n", 81}}}};
  CHECK(run_cli(dir, cfg) == 2);
  CHECK(run_cli(dir, json{{"command", "nonsense"}}) == 2);
}

TEST_CASE("figure commands write csv and svg") {
  const auto dir = scratch("figures");
  CHECK(run_cli(dir, {{"command", "fiducial"}, {"params", kParams}, {"grid1d", {{"lo", -4}, {"hi", 4}, {"n", 801}}}}) == 0);
  CHECK(fs::exists(dir / "out" / "fiducial.svg"));
  CHECK(run_cli(dir, {{"command", "interference"}, {"params", kParams}, {"delta", 1.5},
                      {"grid1d", {{"lo", -5}, {"hi", 5}, {"n", 501}}}}) == 0);
  CHECK(fs::exists(dir / "out" / "interference.csv"));
  CHECK(run_cli(dir, {{"command", "orbits"}, {"params", kParams}, {"model", "harmonic"},
                      {"orbits", {{"t_end", 6.3}, {"dt", 0.01}, {"initial", {{0.5, 0.0}, {1.0, -0.5}}}}}}) == 0);
  CHECK(fs::exists(dir / "out" / "orbit_1.csv"));
}

TEST_CASE("oracle, evolve and compare commands") {
  const auto dir = scratch("dynamics");
  const json grid3 = {{"lo", {-0.5, -0.5, -0.5}}, {"hi", {0.5, 0.5, 0.5}}, {"n", {11, 11, 11}}};
  CHECK(run_cli(dir, {{"command", "oracle"}, {"params", kParams}, {"model", "free"}, {"t", 0.2}, {"dt", 0.01},
                      {"grid1d", {{"lo", -6}, {"hi", 6}, {"n", 601}}}, {"state", {{"kind", "fiducial"}}}}) == 0);
  CHECK(fs::exists(dir / "out" / "trajectory.csv"));
  CHECK(run_cli(dir, {{"command", "evolve"}, {"params", kParams}, {"model", "harmonic"}, {"times", {0.0, 0.3}},
                      {"dt", 0.01}, {"grid3d", grid3}, {"density", {{"kind", "gaussian"}, {"n", 41}}}}) == 0);
  CHECK(fs::exists(dir / "out" / "field_t1.json"));
  CHECK(run_cli(dir, {{"command", "compare"}, {"params", kParams}, {"model", "harmonic"}, {"t", 0.1},
                      {"delta", 0.02}, {"cn_dt", 0.01}, {"grid3d", grid3},
                      {"grid1d", {{"lo", -6}, {"hi", 6}, {"n", 601}}}, {"state", {{"kind", "fiducial"}}}}) == 0);
  const auto r = json::parse(slurp(dir / "out" / "compare.json"));
  CHECK(r["wrong_sign_residual"].get<double>() > 0.1);
}
