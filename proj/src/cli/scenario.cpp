#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "detail.hpp"
#include "pprad/scenario.hpp"

namespace pprad::cli {

namespace {

using greens::Vec3;

[[noreturn]] void bad(const std::string& msg) { fail(ErrorKind::Config, msg); }

void allow_keys(const Json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) bad(where + ": expected an object");
  const std::set<std::string> ok(keys.begin(), keys.end());
  for (const auto& [k, _] : j.items())
    if (!ok.count(k)) bad(where + ": unknown field '" + k + "'");
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) bad(where + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) bad(where + ": not finite");
  return v;
}

double positive(const Json& j, const std::string& where) {
  const double v = number(j, where);
  if (!(v > 0.0)) bad(where + ": must be > 0");
  return v;
}

int integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where + ": expected an integer");
  return j.get<int>();
}

Vec3 vec3(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) bad(where + ": expected [x, y, z] in m");
  return {number(j[0], where), number(j[1], where), number(j[2], where)};
}

Json vec3_json(const Vec3& v) { return Json::array({v.x(), v.y(), v.z()}); }

greens::MultipolePolicy parse_multipole(const Json& j, const std::string& where) {
  allow_keys(j, where, {"rel_tol", "l_cap", "l_fixed"});
  greens::MultipolePolicy m;
  if (j.contains("rel_tol")) m.rel_tol = positive(j["rel_tol"], where + ".rel_tol");
  if (j.contains("l_cap")) m.l_cap = integer(j["l_cap"], where + ".l_cap");
  if (j.contains("l_fixed")) m.l_fixed = integer(j["l_fixed"], where + ".l_fixed");
  if (m.l_cap < 1 || m.l_cap > specfun::kOrderCap)
    bad(where + ".l_cap: must be in [1, " + std::to_string(specfun::kOrderCap) + "]");
  if (m.l_fixed < 0 || m.l_fixed > m.l_cap) bad(where + ".l_fixed: must be in [0, l_cap]");
  return m;
}

Json multipole_json(const greens::MultipolePolicy& m) {
  return {{"rel_tol", m.rel_tol}, {"l_cap", m.l_cap}, {"l_fixed", m.l_fixed}};
}

greens::Environment parse_environment(const Json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("type")) bad(where + ": needs a 'type'");
  const std::string type = j["type"].get<std::string>();
  if (type == "vacuum") {
    allow_keys(j, where, {"type"});
    return greens::Vacuum{};
  }
  if (type == "sphere" || type == "dipole_sphere") {
    allow_keys(j, where, {"type", "radius", "material", "mu", "center"});
    if (!j.contains("radius") || !j.contains("material")) bad(where + ": sphere needs radius and material");
    const double r = positive(j["radius"], where + ".radius");
    const auto mat = material_from_json(j["material"]);
    const Vec3 c = j.contains("center") ? vec3(j["center"], where + ".center") : Vec3::Zero();
    if (type == "dipole_sphere") {
      if (j.contains("mu")) bad(where + ": dipole_sphere has no mu");
      return greens::DipoleSphere{r, mat, c};
    }
    const double mu = j.contains("mu") ? positive(j["mu"], where + ".mu") : 1.0;
    return greens::SphereBody{r, mat, mu, c};
  }
  if (type == "plate") {
    allow_keys(j, where, {"type", "material", "mu"});
    if (!j.contains("material")) bad(where + ": plate needs a material");
    const double mu = j.contains("mu") ? positive(j["mu"], where + ".mu") : 1.0;
    return greens::HalfSpace{material_from_json(j["material"]), mu};
  }
  if (type == "cavity") {
    allow_keys(j, where, {"type", "radius", "center"});
    if (!j.contains("radius")) bad(where + ": cavity needs a radius");
    const Vec3 c = j.contains("center") ? vec3(j["center"], where + ".center") : Vec3::Zero();
    return greens::MirrorCavity{positive(j["radius"], where + ".radius"), c};
  }
  bad(where + ": unknown environment type '" + type + "'");
}

Json environment_json(const greens::Environment& env) {
  struct V {
    Json operator()(const greens::Vacuum&) const { return {{"type", "vacuum"}}; }
    Json operator()(const greens::SphereBody& s) const {
      return {{"type", "sphere"}, {"radius", s.radius}, {"material", material_to_json(s.material)},
              {"mu", s.mu}, {"center", vec3_json(s.center)}};
    }
    Json operator()(const greens::DipoleSphere& s) const {
      return {{"type", "dipole_sphere"}, {"radius", s.radius}, {"material", material_to_json(s.material)},
              {"center", vec3_json(s.center)}};
    }
    Json operator()(const greens::HalfSpace& h) const {
      return {{"type", "plate"}, {"material", material_to_json(h.material)}, {"mu", h.mu}};
    }
    Json operator()(const greens::MirrorCavity& c) const {
      return {{"type", "cavity"}, {"radius", c.radius}, {"center", vec3_json(c.center)}};
    }
  };
  return std::visit(V{}, env);
}

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::HR: return "hr";
    case Mode::HT: return "ht";
    case Mode::Sweep: return "sweep";
    case Mode::Convergence: return "convergence";
  }
  return "?";
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<double> SweepAxis::values() const {
  std::vector<double> v;
  for (int i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    v.push_back(log ? min * std::pow(max / min, t) : min + (max - min) * t);
  }
  if (count > 1) v.back() = max;
  return v;
}

materials::DielectricModel material_from_json(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "sic") return materials::silicon_carbide();
    if (s == "gold") return materials::gold_drude();
    if (s == "mirror") return materials::PerfectMirror{};
    if (s == "vacuum") return materials::VacuumMedium{};
    bad("material: unknown name '" + s + "' (sic, gold, mirror, vacuum or an object)");
  }
  if (!j.is_object() || !j.contains("model")) bad("material: needs a 'model'");
  const std::string m = j["model"].get<std::string>();
  materials::DielectricModel out;
  if (m == "constant") {
    allow_keys(j, "material", {"model", "eps"});
    if (!j.contains("eps") || !j["eps"].is_array() || j["eps"].size() != 2) bad("material.eps: expected [re, im]");
    out = materials::ConstantPermittivity{{number(j["eps"][0], "material.eps"), number(j["eps"][1], "material.eps")}};
  } else if (m == "lorentz") {
    allow_keys(j, "material", {"model", "eps_inf", "omega_lo", "omega_to", "gamma"});
    for (const char* k : {"eps_inf", "omega_lo", "omega_to", "gamma"})
      if (!j.contains(k)) bad(std::string("material: lorentz needs ") + k);
    out = materials::LorentzOscillator{number(j["eps_inf"], "material.eps_inf"),
                                       number(j["omega_lo"], "material.omega_lo"),
                                       number(j["omega_to"], "material.omega_to"), number(j["gamma"], "material.gamma")};
  } else if (m == "drude") {
    allow_keys(j, "material", {"model", "omega_p", "omega_tau"});
    if (!j.contains("omega_p") || !j.contains("omega_tau")) bad("material: drude needs omega_p and omega_tau");
    out = materials::DrudeMetal{number(j["omega_p"], "material.omega_p"), number(j["omega_tau"], "material.omega_tau")};
  } else if (m == "mirror") {
    out = materials::PerfectMirror{};
  } else if (m == "vacuum") {
    out = materials::VacuumMedium{};
  } else {
    bad("material: unknown model '" + m + "'");
  }
  try {
    materials::validate(out);
  } catch (const Error& e) {
    bad(std::string("material: ") + e.what());
  }
  return out;
}

Json material_to_json(const materials::DielectricModel& m) {
  struct V {
    Json operator()(const materials::VacuumMedium&) const { return {{"model", "vacuum"}}; }
    Json operator()(const materials::ConstantPermittivity& c) const {
      return {{"model", "constant"}, {"eps", Json::array({c.eps.real(), c.eps.imag()})}};
    }
    Json operator()(const materials::LorentzOscillator& s) const {
      return {{"model", "lorentz"}, {"eps_inf", s.eps_inf}, {"omega_lo", s.omega_lo}, {"omega_to", s.omega_to},
              {"gamma", s.gamma}};
    }
    Json operator()(const materials::DrudeMetal& d) const {
      return {{"model", "drude"}, {"omega_p", d.omega_p}, {"omega_tau", d.omega_tau}};
    }
    Json operator()(const materials::PerfectMirror&) const { return {{"model", "mirror"}}; }
  };
  return std::visit(V{}, m);
}

ScenarioConfig parse_config(const Json& j) {
  allow_keys(j, "config", {"mode", "quantity", "temperature", "particles", "environment", "series", "sweep",
                           "baseline", "quadrature", "multipole", "convergence", "output"});
  ScenarioConfig c;
  if (!j.contains("mode")) bad("config: missing 'mode'");
  const std::string mode = j["mode"].get<std::string>();
  if (mode == "hr") c.mode = Mode::HR, c.quantity = Quantity::HR;
  else if (mode == "ht") c.mode = Mode::HT, c.quantity = Quantity::HT;
  else if (mode == "sweep") c.mode = Mode::Sweep;
  else if (mode == "convergence") c.mode = Mode::Convergence, c.quantity = Quantity::HT;
  else bad("mode: expected hr, ht, sweep or convergence");

  if (j.contains("quantity")) {
    const std::string q = j["quantity"].get<std::string>();
    if (q == "hr") c.quantity = Quantity::HR;
    else if (q == "ht") c.quantity = Quantity::HT;
    else bad("quantity: expected hr or ht");
    if (c.mode != Mode::Sweep) bad("quantity: only meaningful for mode 'sweep'");
  } else if (c.mode == Mode::Sweep) {
    bad("sweep mode needs 'quantity' (hr or ht)");
  }

  const double default_t = j.contains("temperature") ? positive(j["temperature"], "temperature") : 0.0;
  if (!j.contains("particles") || !j["particles"].is_array()) bad("config: 'particles' must be an array");
  for (std::size_t i = 0; i < j["particles"].size(); ++i) {
    const auto& pj = j["particles"][i];
    const std::string where = "particles[" + std::to_string(i) + "]";
    allow_keys(pj, where, {"material", "radius", "position", "temperature"});
    if (!pj.contains("material") || !pj.contains("radius") || !pj.contains("position"))
      bad(where + ": needs material, radius and position");
    materials::Particle p{material_from_json(pj["material"]), positive(pj["radius"], where + ".radius"),
                          vec3(pj["position"], where + ".position"), 0.0};
    if (pj.contains("temperature")) p.temperature = positive(pj["temperature"], where + ".temperature");
    else if (default_t > 0.0) p.temperature = default_t;
    else bad(where + ": no temperature and no top-level default");
    if (materials::is_mirror(p.material)) bad(where + ": particles cannot be perfect mirrors");
    c.particles.push_back(p);
  }
  const std::size_t need = c.quantity == Quantity::HT ? 2 : 1;
  if (c.particles.size() < need)
    bad("config: " + std::string(c.quantity == Quantity::HT ? "heat transfer needs two particles" : "no particle"));

  if (j.contains("series") && j.contains("environment")) bad("config: give either 'environment' or 'series'");
  if (j.contains("series")) {
    if (!j["series"].is_array() || j["series"].empty()) bad("series: expected a non-empty array");
    for (std::size_t i = 0; i < j["series"].size(); ++i) {
      const auto& sj = j["series"][i];
      const std::string where = "series[" + std::to_string(i) + "]";
      allow_keys(sj, where, {"name", "environment", "multipole"});
      if (!sj.contains("name") || !sj.contains("environment")) bad(where + ": needs name and environment");
      Series s{sj["name"].get<std::string>(), parse_environment(sj["environment"], where + ".environment"),
               std::nullopt};
      if (sj.contains("multipole")) s.multipole = parse_multipole(sj["multipole"], where + ".multipole");
      c.series.push_back(std::move(s));
    }
  } else {
    const greens::Environment env =
        j.contains("environment") ? parse_environment(j["environment"], "environment") : greens::Vacuum{};
    c.series.push_back({greens::environment_name(env), env, std::nullopt});
  }

  if (j.contains("sweep")) {
    if (c.mode != Mode::Sweep) bad("sweep: only valid with mode 'sweep'");
    const auto& sj = j["sweep"];
    allow_keys(sj, "sweep", {"parameter", "scale", "min", "max", "count", "gap"});
    SweepAxis a;
    if (!sj.contains("parameter")) bad("sweep: needs 'parameter'");
    a.parameter = sj["parameter"].get<std::string>();
    if (a.parameter != "sphere_radius" && a.parameter != "plate_distance" && a.parameter != "separation" &&
        a.parameter != "temperature")
      bad("sweep.parameter: expected sphere_radius, plate_distance, separation or temperature");
    const std::string scale = sj.value("scale", "log");
    if (scale != "log" && scale != "linear") bad("sweep.scale: expected log or linear");
    a.log = scale == "log";
    if (!sj.contains("min") || !sj.contains("max") || !sj.contains("count")) bad("sweep: needs min, max and count");
    a.min = positive(sj["min"], "sweep.min");
    a.max = positive(sj["max"], "sweep.max");
    a.count = integer(sj["count"], "sweep.count");
    if (a.count < 1) bad("sweep.count: must be >= 1");
    if (a.count > 1 && !(a.max > a.min)) bad("sweep: grid must increase strictly (max > min)");
    if (sj.contains("gap")) {
      if (a.parameter != "sphere_radius") bad("sweep.gap: only used with sphere_radius");
      a.gap = positive(sj["gap"], "sweep.gap");
    }
    if (a.parameter == "separation" && c.particles.size() < 2) bad("sweep: separation needs two particles");
    c.sweep = a;
  } else if (c.mode == Mode::Sweep) {
    bad("mode 'sweep' needs a 'sweep' block");
  }

  if (j.contains("baseline")) {
    if (!j["baseline"].is_boolean()) bad("baseline: expected true or false");
    c.baseline = j["baseline"].get<bool>();
  }
  if (j.contains("quadrature")) {
    const auto& q = j["quadrature"];
    allow_keys(q, "quadrature", {"x_min", "x_max", "rel_tol", "windows", "window_panels", "max_panels"});
    if (q.contains("x_min")) c.quadrature.x_min = positive(q["x_min"], "quadrature.x_min");
    if (q.contains("x_max")) c.quadrature.x_max = positive(q["x_max"], "quadrature.x_max");
    if (q.contains("rel_tol")) c.quadrature.rel_tol = positive(q["rel_tol"], "quadrature.rel_tol");
    if (q.contains("window_panels")) c.quadrature.window_panels = integer(q["window_panels"], "quadrature.window_panels");
    if (q.contains("max_panels")) c.quadrature.max_panels = integer(q["max_panels"], "quadrature.max_panels");
    if (q.contains("windows")) {
      if (!q["windows"].is_array()) bad("quadrature.windows: expected [[lo, hi], ...] in rad/s");
      for (const auto& w : q["windows"]) {
        if (!w.is_array() || w.size() != 2) bad("quadrature.windows: expected [lo, hi] pairs");
        c.quadrature.windows.emplace_back(number(w[0], "quadrature.windows"), number(w[1], "quadrature.windows"));
      }
    }
    try {
      transport::validate(c.quadrature);
    } catch (const Error& e) {
      bad(e.what());
    }
  }
  if (j.contains("multipole")) c.multipole = parse_multipole(j["multipole"], "multipole");

  if (c.mode == Mode::Convergence) {
    if (!j.contains("convergence")) bad("mode 'convergence' needs a 'convergence' block");
    const auto& cj = j["convergence"];
    allow_keys(cj, "convergence", {"l_grid", "isolated_sphere"});
    if (!cj.contains("l_grid")) bad("convergence: needs l_grid");
    const auto& g = cj["l_grid"];
    if (g.is_array()) {
      for (const auto& v : g) c.l_grid.push_back(integer(v, "convergence.l_grid"));
    } else {
      allow_keys(g, "convergence.l_grid", {"min", "max", "step"});
      const int lo = integer(g.at("min"), "l_grid.min"), hi = integer(g.at("max"), "l_grid.max");
      const int step = g.contains("step") ? integer(g["step"], "l_grid.step") : 1;
      if (step < 1) bad("convergence.l_grid.step: must be >= 1");
      for (int l = lo; l <= hi; l += step) c.l_grid.push_back(l);
    }
    if (c.l_grid.empty() || c.l_grid.front() < 0) bad("convergence.l_grid: needs non-negative orders");
    for (std::size_t i = 1; i < c.l_grid.size(); ++i)
      if (c.l_grid[i] <= c.l_grid[i - 1]) bad("convergence.l_grid: must increase strictly");
    if (c.l_grid.back() > specfun::kOrderCap) bad("convergence.l_grid: above the order cap");
    if (cj.contains("isolated_sphere")) c.isolated_sphere = cj["isolated_sphere"].get<bool>();
    if (c.series.size() != 1 || !std::holds_alternative<greens::SphereBody>(c.series[0].environment))
      bad("convergence: needs exactly one sphere environment");
  } else if (j.contains("convergence")) {
    bad("convergence: only valid with mode 'convergence'");
  }

  if (c.quantity == Quantity::HT)
    for (const auto& s : c.series)
      if (std::holds_alternative<greens::HalfSpace>(s.environment) ||
          std::holds_alternative<greens::MirrorCavity>(s.environment))
        bad("series '" + s.name + "': heat transfer is not supported for plate or cavity environments");
  if (c.sweep && c.sweep->parameter == "sphere_radius")
    for (const auto& s : c.series)
      if (!std::holds_alternative<greens::SphereBody>(s.environment) &&
          !std::holds_alternative<greens::DipoleSphere>(s.environment))
        bad("series '" + s.name + "': sphere_radius sweep needs a sphere environment");
  if (c.sweep && c.sweep->parameter == "plate_distance")
    for (const auto& s : c.series)
      if (!std::holds_alternative<greens::HalfSpace>(s.environment))
        bad("series '" + s.name + "': plate_distance sweep needs a plate environment");

  if (j.contains("output")) c.output = j["output"].get<std::string>();
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open config file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    bad(std::string("config is not valid JSON: ") + e.what());
  }
  try {
    return parse_config(j);
  } catch (const Json::exception& e) {
    bad(std::string("config field has the wrong type: ") + e.what());
  }
}

Json to_json(const ScenarioConfig& c) {
  Json j;
  j["mode"] = mode_name(c.mode);
  if (c.mode == Mode::Sweep) j["quantity"] = c.quantity == Quantity::HR ? "hr" : "ht";
  j["particles"] = Json::array();
  for (const auto& p : c.particles)
    j["particles"].push_back({{"material", material_to_json(p.material)},
                              {"radius", p.radius},
                              {"position", vec3_json(p.position)},
                              {"temperature", p.temperature}});
  j["series"] = Json::array();
  for (const auto& s : c.series) {
    Json sj{{"name", s.name}, {"environment", environment_json(s.environment)}};
    if (s.multipole) sj["multipole"] = multipole_json(*s.multipole);
    j["series"].push_back(sj);
  }
  if (c.sweep) {
    const auto& a = *c.sweep;
    j["sweep"] = {{"parameter", a.parameter}, {"scale", a.log ? "log" : "linear"},
                  {"min", a.min}, {"max", a.max}, {"count", a.count}};
    if (a.parameter == "sphere_radius") j["sweep"]["gap"] = a.gap;
  }
  j["baseline"] = c.baseline;
  Json wins = Json::array();
  for (const auto& [a, b] : c.quadrature.windows) wins.push_back(Json::array({a, b}));
  j["quadrature"] = {{"x_min", c.quadrature.x_min},     {"x_max", c.quadrature.x_max},
                     {"rel_tol", c.quadrature.rel_tol}, {"windows", wins},
                     {"window_panels", c.quadrature.window_panels}, {"max_panels", c.quadrature.max_panels}};
  j["multipole"] = multipole_json(c.multipole);
  if (c.mode == Mode::Convergence) j["convergence"] = {{"l_grid", c.l_grid}, {"isolated_sphere", c.isolated_sphere}};
  if (!c.output.empty()) j["output"] = c.output;
  return j;
}

std::string config_hash(const ScenarioConfig& c) {
  const std::string s = to_json(c).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------

namespace detail {

Point apply(const ScenarioConfig& c, const Series& s, std::optional<double> value) {
  Point p{c.particles, s.environment};
  if (!value || !c.sweep) return p;
  const auto& a = *c.sweep;
  const double v = *value;
  if (a.parameter == "temperature") {
    p.particles[0].temperature = v;
  } else if (a.parameter == "plate_distance") {
    p.particles[0].position.z() = v;
  } else if (a.parameter == "separation") {
    const Vec3 d = p.particles[1].position - p.particles[0].position;
    if (d.norm() == 0.0) bad("separation sweep: particles 0 and 1 coincide, direction undefined");
    p.particles[1].position = p.particles[0].position + d.normalized() * v;
  } else if (a.parameter == "sphere_radius") {
    Vec3 center = Vec3::Zero();
    if (auto* sb = std::get_if<greens::SphereBody>(&p.environment)) {
      sb->radius = v;
      center = sb->center;
    } else if (auto* ds = std::get_if<greens::DipoleSphere>(&p.environment)) {
      ds->radius = v;
      center = ds->center;
    }
    for (auto& q : p.particles) {
      const Vec3 d = q.position - center;
      if (d.norm() == 0.0) bad("sphere_radius sweep: particle at the sphere center, direction undefined");
      q.position = center + d.normalized() * (v + a.gap);
    }
  }
  return p;
}

std::vector<double> neighbour_distances(const Point& p, std::size_t i) {
  std::vector<double> out;
  const double s = greens::surface_distance(p.environment, p.particles[i].position);
  if (std::isfinite(s)) out.push_back(s);
  for (std::size_t k = 0; k < p.particles.size(); ++k)
    if (k != i) out.push_back((p.particles[k].position - p.particles[i].position).norm());
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------

bool ValidationReport::ok() const {
  for (const auto& e : entries)
    if (e.verdict == materials::Verdict::Fail) return false;
  return true;
}

Json ValidationReport::to_json() const {
  Json j;
  j["ok"] = ok();
  j["checks"] = Json::array();
  for (const auto& e : entries)
    j["checks"].push_back({{"check", e.check}, {"verdict", materials::to_string(e.verdict)}, {"message", e.message}});
  return j;
}

ValidationReport validate(const ScenarioConfig& c) {
  using materials::Verdict;
  ValidationReport rep;
  rep.entries.push_back({"schema", Verdict::Pass, "config parsed"});

  std::vector<std::optional<double>> points{std::nullopt};
  if (c.sweep) {
    points.clear();
    for (double v : c.sweep->values()) points.emplace_back(v);
  }

  for (const auto& s : c.series) {
    // report each distinct finding once per series, with the worst sweep point
    std::map<std::string, ReportEntry> worst;
    auto note = [&](const std::string& key, Verdict v, const std::string& msg) {
      auto it = worst.find(key);
      if (it == worst.end() || static_cast<int>(v) > static_cast<int>(it->second.verdict))
        worst[key] = {key, v, msg};
    };
    for (const auto& value : points) {
      std::ostringstream at;
      at.precision(6);
      if (value) at << " at " << c.sweep->parameter << " = " << *value;
      detail::Point p;
      try {
        p = detail::apply(c, s, value);
      } catch (const Error& e) {
        note(s.name + ": sweep", Verdict::Fail, e.what() + at.str());
        continue;
      }
      for (std::size_t i = 0; i < p.particles.size(); ++i) {
        const std::string who = s.name + ": particle " + std::to_string(i);
        try {
          materials::validate(p.particles[i]);
          greens::check_point(p.environment, p.particles[i].position);
          note(who + " geometry", Verdict::Pass, "inside the allowed region");
        } catch (const Error& e) {
          note(who + " geometry", Verdict::Fail, e.what() + at.str());
          continue;
        }
        const auto dv = materials::dipole_validity(p.particles[i], detail::neighbour_distances(p, i));
        for (const auto& chk : dv.checks) {
          std::ostringstream msg;
          msg.precision(4);
          msg << chk.name << " = " << chk.ratio << at.str();
          note(who + " " + chk.name.substr(0, chk.name.find('[')), chk.verdict, msg.str());
        }
      }
      for (std::size_t i = 0; i < p.particles.size(); ++i)
        for (std::size_t k = i + 1; k < p.particles.size(); ++k)
          if ((p.particles[i].position - p.particles[k].position).norm() == 0.0)
            note(s.name + ": particles " + std::to_string(i) + "," + std::to_string(k), Verdict::Fail,
                 "particles coincide" + at.str());
    }
    for (auto& [_, e] : worst) rep.entries.push_back(e);
  }
  return rep;
}

ValidationReport validate(const Json& j) {
  try {
    return validate(parse_config(j));
  } catch (const Error& e) {
    ValidationReport rep;
    rep.entries.push_back({"schema", materials::Verdict::Fail, e.what()});
    return rep;
  } catch (const Json::exception& e) {
    ValidationReport rep;
    rep.entries.push_back({"schema", materials::Verdict::Fail, std::string("wrong field type: ") + e.what()});
    return rep;
  }
}

}  // namespace pprad::cli
