#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <ostream>
#include <thread>

#include "detail.hpp"
#include "pprad/scenario.hpp"

namespace pprad::cli {

namespace {

struct Row {
  double param = 0.0;
  transport::TransferResult result;
  double wall = 0.0;
  std::string series;
  double baseline = 0.0, baseline_normalized = 0.0;
  bool has_baseline = false;
  std::string status = "ok";
};

struct Outcome {
  std::vector<Row> rows;
  std::optional<Error> error;  // first non-accuracy failure
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Config: return kExitConfig;
    case ErrorKind::Accuracy:
    case ErrorKind::NonConvergence: return kExitAccuracy;
    default: return kExitPhysics;
  }
}

template <class F>
double timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

transport::TransferResult transfer(const ScenarioConfig& c, const detail::Point& p, const greens::MultipolePolicy& m) {
  try {
    if (c.quantity == Quantity::HR) return transport::hr(p.particles[0], p.environment, c.quadrature, m);
    return transport::ht(p.particles[0], p.particles[1], p.environment, c.quadrature, m);
  } catch (const transport::AccuracyError& e) {
    auto best = e.best();
    best.converged = false;
    return best;
  }
}

transport::TransferResult baseline(const ScenarioConfig& c, const detail::Point& p) {
  try {
    if (c.quantity == Quantity::HR) return transport::hr_vacuum(p.particles[0], c.quadrature);
    return transport::ht_vacuum(p.particles[0], p.particles[1], c.quadrature);
  } catch (const transport::AccuracyError& e) {
    auto best = e.best();
    best.converged = false;
    return best;
  }
}

using Task = std::function<Outcome()>;

std::vector<Task> point_tasks(const ScenarioConfig& c) {
  std::vector<std::optional<double>> values{std::nullopt};
  if (c.sweep) {
    values.clear();
    for (double v : c.sweep->values()) values.emplace_back(v);
  }
  std::vector<Task> tasks;
  for (const auto& s : c.series)
    for (std::size_t i = 0; i < values.size(); ++i)
      tasks.push_back([&c, &s, v = values[i], i]() {
        Outcome out;
        Row row;
        row.series = s.name;
        row.param = v ? *v : static_cast<double>(i);
        try {
          const auto p = detail::apply(c, s, v);
          row.wall = timed([&] { row.result = transfer(c, p, s.multipole.value_or(c.multipole)); });
          if (!row.result.converged) row.status = "accuracy_not_met";
          if (c.baseline) {
            const auto b = baseline(c, p);
            if (!b.converged) row.status = "accuracy_not_met";
            row.baseline = b.power;
            row.baseline_normalized = b.normalized;
            row.has_baseline = true;
          }
          out.rows.push_back(row);
        } catch (const Error& e) {
          out.error = e;
        }
        return out;
      });
  return tasks;
}

std::vector<Task> convergence_tasks(const ScenarioConfig& c) {
  std::vector<Task> tasks;
  const auto& s = c.series.front();
  tasks.push_back([&c, &s]() {
    Outcome out;
    try {
      const auto& sphere = std::get<greens::SphereBody>(s.environment);
      transport::Series st;
      const double wall = timed([&] {
        st = transport::convergence_study(c.particles[0], c.particles[1], sphere, c.l_grid, c.quadrature,
                                          s.multipole.value_or(c.multipole));
      });
      for (const auto& pt : st.points) {
        Row r;
        r.series = s.name;
        r.param = pt.l_max;
        r.result.power = pt.value;
        r.result.normalized = pt.normalized;
        r.result.error = st.error;
        r.result.max_l = pt.l_max;
        r.wall = wall;
        r.baseline = st.converged;
        r.baseline_normalized = 1.0;
        r.has_baseline = true;
        out.rows.push_back(r);
      }
    } catch (const Error& e) {
      out.error = e;
    }
    return out;
  });
  if (c.isolated_sphere)
    tasks.push_back([&c, &s]() {
      Outcome out;
      try {
        const auto& sphere = std::get<greens::SphereBody>(s.environment);
        transport::Series st;
        const double wall = timed([&] {
          st = transport::hr_isolated_sphere(sphere.radius, sphere.material, c.particles[0].temperature, c.l_grid,
                                             c.quadrature);
        });
        for (const auto& pt : st.points) {
          Row r;
          r.series = "isolated_sphere_hr";
          r.param = pt.l_max;
          r.result.power = pt.value;
          r.result.normalized = pt.normalized;
          r.result.error = st.error;
          r.result.max_l = pt.l_max;
          r.wall = wall;
          r.baseline = st.converged;
          r.baseline_normalized = 1.0;
          r.has_baseline = true;
          out.rows.push_back(r);
        }
      } catch (const Error& e) {
        out.error = e;
      }
      return out;
    });
  return tasks;
}

std::vector<Outcome> run_pool(const std::vector<Task>& tasks, int threads) {
  std::vector<Outcome> out(tasks.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) out[i] = tasks[i]();
  };
  const int n = std::max(1, std::min<int>(threads, static_cast<int>(tasks.size())));
  std::vector<std::jthread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(work);
  work();
  return out;
}

}  // namespace

Json error_json(const std::string& kind, const std::string& message, int exit_code) {
  return {{"error", {{"kind", kind}, {"message", message}, {"exit_code", exit_code}}}};
}

int run(const ScenarioConfig& config, const RunOptions& opts, std::ostream& csv, std::ostream& err) {
  ScenarioConfig c = config;
  if (opts.tolerance) {
    c.quadrature.rel_tol = *opts.tolerance;
    try {
      transport::validate(c.quadrature);
    } catch (const Error& e) {
      err << error_json(to_string(e.kind()), e.what(), kExitConfig).dump() << "\n";
      return kExitConfig;
    }
  }

  const auto report = validate(c);
  if (!report.ok()) {
    std::string msg;
    for (const auto& e : report.entries)
      if (e.verdict == materials::Verdict::Fail) msg += (msg.empty() ? "" : "; ") + e.check + ": " + e.message;
    Json j = error_json("Geometry", msg, kExitPhysics);
    j["report"] = report.to_json();
    err << j.dump() << "\n";
    return kExitPhysics;
  }
  for (const auto& e : report.entries)
    if (e.verdict == materials::Verdict::Warn)
      err << Json{{"warning", {{"check", e.check}, {"message", e.message}}}}.dump() << "\n";

  const bool conv = c.mode == Mode::Convergence;
  const auto tasks = conv ? convergence_tasks(c) : point_tasks(c);
  const auto outcomes = run_pool(tasks, opts.threads);

  csv << "# tool_version=" << kToolVersion << "\n";
  csv << "# config_hash=" << config_hash(c) << "\n";
  csv << "# constants=CODATA-2018\n";
  const std::string param = conv ? "l_max" : c.sweep ? c.sweep->parameter : "point";
  csv << param << ",value_W,normalized,quad_error,max_lmax,wall_time_s,series,baseline_W,baseline_normalized,ratio,status\n";

  bool inexact = false;
  for (const auto& o : outcomes) {
    for (const auto& r : o.rows) {
      inexact |= r.status != "ok";
      const double wall = opts.reproducible ? 0.0 : r.wall;
      csv << num(r.param) << ',' << num(r.result.power) << ',' << num(r.result.normalized) << ','
          << num(r.result.error) << ',' << r.result.max_l << ',' << num(wall) << ',' << r.series << ',';
      if (r.has_baseline)
        csv << num(r.baseline) << ',' << num(r.baseline_normalized) << ',' << num(r.result.power / r.baseline);
      else
        csv << ",,";
      csv << ',' << r.status << "\n";
    }
    if (o.error) {
      const int code = exit_code(o.error->kind());
      csv << "# status=error\n";
      csv.flush();
      err << error_json(to_string(o.error->kind()), o.error->what(), code).dump() << "\n";
      return code;
    }
  }
  csv << "# status=" << (inexact ? "accuracy_not_met" : "ok") << "\n";
  csv.flush();
  if (inexact) {
    err << error_json("Accuracy", "quadrature tolerance not met on flagged rows", kExitAccuracy).dump() << "\n";
    return kExitAccuracy;
  }
  return kExitOk;
}

}  // namespace pprad::cli
