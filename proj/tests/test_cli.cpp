#include <sstream>

#include <doctest.h>

#include "pprad/scenario.hpp"

using namespace pprad;
using namespace pprad::cli;

namespace {

Json small_sweep() {
  return Json::parse(R"({
    "mode": "sweep", "quantity": "hr", "temperature": 300,
    "particles": [{"material": "sic", "radius": 1e-10, "position": [0, 0, 1e-7]}],
    "environment": {"type": "plate", "material": "mirror"},
    "sweep": {"parameter": "plate_distance", "scale": "log", "min": 1e-8, "max": 1e-4, "count": 20}
  })");
}

Json sphere_ht() {
  return Json::parse(R"({
    "mode": "ht", "temperature": 300,
    "particles": [{"material": "sic", "radius": 5e-9, "position": [0, 0, 2e-7]},
                  {"material": "sic", "radius": 5e-9, "position": [0, 0, -2e-7]}],
    "environment": {"type": "sphere", "radius": 1e-7, "material": "gold"}
  })");
}

int run_json(const Json& j, std::string& csv, std::string& err, RunOptions o = {}) {
  std::ostringstream a, b;
  const int rc = run(parse_config(j), o, a, b);
  csv = a.str();
  err = b.str();
  return rc;
}

std::vector<std::vector<std::string>> rows(const std::string& csv) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(csv);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string c;
    while (std::getline(ls, c, ',')) cells.push_back(c);
    out.push_back(cells);
  }
  return out;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("schema errors") {
  auto j = small_sweep();
  j["colour"] = "blue";
  CHECK_THROWS_AS(parse_config(j), Error);
  j = small_sweep();
  j["sweep"]["max"] = 1e-9;
  CHECK_THROWS(parse_config(j));
  j = small_sweep();
  j["sweep"]["parameter"] = "sphere_radius";
  CHECK_THROWS(parse_config(j));
  j = sphere_ht();
  j["environment"] = {{"type", "plate"}, {"material", "gold"}};
  CHECK_THROWS(parse_config(j));
  j = sphere_ht();
  j["particles"][0]["material"] = "mirror";
  CHECK_THROWS(parse_config(j));
  j = sphere_ht();
  j["particles"][0]["material"] = {{"model", "drude"}, {"omega_p", 1e16}, {"omega_tau", -1}};
  CHECK_THROWS(parse_config(j));
  j = sphere_ht();
  j.erase("temperature");
  CHECK_THROWS(parse_config(j));
  try {
    parse_config(Json::parse(R"({"mode": "nope"})"));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
  }
}

TEST_CASE("canonical round trip and hash") {
  for (const auto& p : preset_list()) {
    const auto c = preset(p.name);
    const auto again = parse_config(to_json(c));
    CHECK(to_json(again) == to_json(c));
    CHECK(config_hash(again) == config_hash(c));
  }
  CHECK(config_hash(preset("fig-plate")) != config_hash(preset("fig-sphere")));
  CHECK_THROWS(preset("fig-none"));
  auto j = to_json(preset("fig-plate"));
  j["particles"][0]["material"] = {{"model", "constant"}, {"eps", {3.0, 1.0}}};
  CHECK(material_to_json(parse_config(j).particles[0].material)["eps"][1] == 1.0);
}

TEST_CASE("validation report") {
  for (const auto& p : preset_list()) {
    const auto rep = validate(preset(p.name));
    CAPTURE(p.name);
    for (const auto& e : rep.entries) {
      CAPTURE(e.check);
      CHECK(e.verdict == materials::Verdict::Pass);
    }
  }
  auto j = sphere_ht();
  j["particles"][0]["position"] = {0, 0, 0.5e-7};
  auto rep = validate(j);
  CHECK_FALSE(rep.ok());
  bool geometry = false;
  for (const auto& e : rep.entries) geometry |= e.check.find("geometry") != std::string::npos && !rep.ok();
  CHECK(geometry);

  // R/h = 0.1
  j = sphere_ht();
  j["particles"][0]["radius"] = 1e-8;
  rep = validate(j);
  CHECK(rep.ok());
  bool warned = false;
  for (const auto& e : rep.entries) warned |= e.verdict == materials::Verdict::Warn;
  CHECK(warned);

  rep = validate(Json::parse(R"({"mode": "hr"})"));
  CHECK_FALSE(rep.ok());
  CHECK(rep.to_json()["checks"][0]["check"] == "schema");
}

TEST_CASE("sweep mapping") {
  const auto c = preset("fig-sphere");
  SweepAxis a = *c.sweep;
  const auto v = a.values();
  CHECK(v.size() == 60);
  CHECK(v.front() == 1e-9);
  CHECK(v.back() == 3e-5);
  for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i] > v[i - 1]);
  a.log = false;
  a.count = 3;
  CHECK(a.values()[1] == doctest::Approx((1e-9 + 3e-5) / 2));
}

TEST_CASE("run: deterministic CSV with metadata") {
  std::string a, b, err;
  RunOptions o;
  o.reproducible = true;
  REQUIRE(run_json(small_sweep(), a, err, o) == kExitOk);
  o.threads = 3;
  REQUIRE(run_json(small_sweep(), b, err, o) == kExitOk);
  CHECK(a == b);
  CHECK(a.find("# tool_version=") == 0);
  CHECK(a.find("# config_hash=") != std::string::npos);
  CHECK(a.find("# constants=CODATA-2018") != std::string::npos);
  CHECK(a.find("plate_distance,value_W,normalized,quad_error,max_lmax,wall_time_s") != std::string::npos);
  CHECK(a.find("# status=ok") != std::string::npos);
  const auto r = rows(a);
  REQUIRE(r.size() == 20);
  CHECK(std::stod(r.front()[0]) == 1e-8);
  CHECK(std::stod(r.front()[9]) == doctest::Approx(2.0 / 3.0).epsilon(1e-3));
  CHECK(r.front()[5] == "0");
}

TEST_CASE("run: error column bounds a tighter re-run") {
  std::string loose, tight, err;
  auto j = small_sweep();
  j["quadrature"] = {{"rel_tol", 1e-5}};
  REQUIRE(run_json(j, loose, err) == kExitOk);
  j["quadrature"]["rel_tol"] = 1e-6;
  REQUIRE(run_json(j, tight, err) == kExitOk);
  const auto a = rows(loose), b = rows(tight);
  for (std::size_t i = 0; i < a.size(); i += 10)
    CHECK(std::abs(std::stod(a[i][1]) - std::stod(b[i][1])) <= std::stod(a[i][3]));

  REQUIRE(run_json(sphere_ht(), loose, err, {1, 1e-5, false}) == kExitOk);
  REQUIRE(run_json(sphere_ht(), tight, err, {1, 1e-6, false}) == kExitOk);
  CHECK(std::abs(std::stod(rows(loose)[0][1]) - std::stod(rows(tight)[0][1])) <= std::stod(rows(loose)[0][3]));
}

TEST_CASE("run: exit codes") {
  std::string csv, err;
  auto j = sphere_ht();
  j["particles"][0]["position"] = {0, 0, 0.5e-7};
  CHECK(run_json(j, csv, err) == kExitPhysics);
  CHECK(Json::parse(err)["error"]["exit_code"] == kExitPhysics);

  j = small_sweep();
  j["quadrature"] = {{"rel_tol", 1e-15}, {"max_panels", 12}};
  CHECK(run_json(j, csv, err) == kExitAccuracy);
  CHECK(csv.find("accuracy_not_met") != std::string::npos);
  CHECK(rows(csv).size() == 20);

  j = sphere_ht();
  j["multipole"] = {{"l_cap", 2}};
  CHECK(run_json(j, csv, err) == kExitAccuracy);
  CHECK(csv.find("# status=error") != std::string::npos);

  std::ostringstream a, b;
  CHECK(run(parse_config(small_sweep()), {1, -1.0, false}, a, b) == kExitConfig);
}

TEST_CASE("run: convergence rows") {
  auto j = sphere_ht();
  j["mode"] = "convergence";
  j["convergence"] = {{"l_grid", {{"min", 0}, {"max", 40}, {"step", 10}}}, {"isolated_sphere", true}};
  std::string csv, err;
  REQUIRE(run_json(j, csv, err) == kExitOk);
  const auto r = rows(csv);
  REQUIRE(r.size() == 10);
  CHECK(r[0][6] == "sphere");
  CHECK(r[5][6] == "isolated_sphere_hr");
  CHECK(std::stod(r[4][2]) == doctest::Approx(1.0).epsilon(1e-4));
}

}  // TEST_SUITE
