#include "qheis/verification.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "verify/check.hpp"

namespace qheis {
namespace {

using json = nlohmann::ordered_json;
using verify::Check;
using verify::Suite;

const std::vector<Suite>& registry() {
  static const std::vector<Suite> suites = {
      verify::core_suite(),     verify::pentagon_suite(), verify::hopf_a_suite(),
      verify::hopf_ahat_suite(), verify::modular_suite(), verify::duality_suite(),
      verify::classical_suite(), verify::opcop_suite(),   verify::invariance_suite(),
      verify::trace_suite()};
  return suites;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

double tolerance_for(const SuiteConfig& config, const Suite& suite, const Check& check) {
  for (const auto& key : {suite.name + "/" + check.identity, check.identity, suite.name})
    if (auto it = config.tolerances.find(key); it != config.tolerances.end()) return it->second;
  return check.tolerance;
}

std::vector<double> lambdas_for(const SuiteConfig& config, const Check& check) {
  std::vector<double> out;
  switch (check.lambdas) {
    case verify::LambdaSet::all:
      return config.lambdas;
    case verify::LambdaSet::zero:
      for (double l : config.lambdas)
        if (l == 0.0) out.push_back(l);
      return out;
    case verify::LambdaSet::nonzero:
      for (double l : config.lambdas)
        if (l != 0.0) out.push_back(l);
      return out;
    case verify::LambdaSet::first_nonzero:
      for (double l : config.lambdas)
        if (l != 0.0) return {l};
      if (!config.lambdas.empty()) return {config.lambdas.front()};
      return out;
  }
  return out;
}

bool is_grid_free(const Check& check) { return !check.refined && !check.sweep; }

QuadratureSpec scaled_spec(const QuadratureSpec& base, const Check& check) {
  QuadratureSpec q = base;
  q.nodes_per_axis = 2 * std::max(2, base.nodes_per_axis * check.num / (2 * check.den));  // lattices stay even
  if (check.max_levels) q.refinement_levels = std::min(q.refinement_levels, *check.max_levels);
  return q;
}

struct Task {
  std::size_t record;  // index into the record list
  const Suite* suite;
  const Check* check;
  double lambda;
  int sample;
};

struct TaskResult {
  std::vector<double> trend;
  std::string error;
  double seconds = 0;
};

TaskResult execute(const SuiteConfig& config, const Task& t) {
  TaskResult out;
  const auto start = std::chrono::steady_clock::now();
  try {
    verify::Context ctx;
    ctx.params = DeformationParams{t.lambda, config.n};
    ctx.box = t.check->box.value_or(config.box);
    ctx.quad = scaled_spec(config.quad, *t.check);
    ctx.family = t.check->family.value_or(PacketFamily{});
    const std::uint64_t base =
        mix_seed(mix_seed(config.seed, fnv1a(t.suite->name + "/" + t.check->identity)), std::bit_cast<std::uint64_t>(t.lambda));
    ctx.seed = mix_seed(base, static_cast<std::uint64_t>(t.sample));
    if (t.check->sweep) {
      ctx.grid = QuadGrid::make(ctx.params, ctx.box, ctx.quad, 0);
      out.trend = t.check->sweep(ctx);
    } else {
      const int levels = t.check->refined ? ctx.quad.refinement_levels : 1;
      for (int level = 0; level < levels; ++level) {
        ctx.level = level;
        ctx.grid = QuadGrid::make(ctx.params, ctx.box, ctx.quad, level);
        if (t.check->r_intervals) ctx.grid.r = make_rule(ctx.quad.rule, *t.check->r_intervals, ctx.box.half_width_r);
        out.trend.push_back(t.check->residual(ctx));
      }
    }
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

int worker_count(const SuiteConfig& config) {
  if (config.threads > 0) return config.threads;
  if (const char* env = std::getenv("QHEIS_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void run_pool(const SuiteConfig& config, const std::vector<Task>& tasks, std::vector<TaskResult>& results) {
  const int workers = std::min<int>(worker_count(config), static_cast<int>(tasks.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) results[i] = execute(config, tasks[i]);
  };
  if (workers <= 1) {
    work();
    return;
  }
  std::vector<std::jthread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
}

bool strictly_improving(const std::vector<double>& trend, bool whole) {
  if (trend.size() < 2) return true;
  const std::size_t from = whole ? 1 : trend.size() - 1;
  for (std::size_t i = from; i < trend.size(); ++i)
    if (!(trend[i] < trend[i - 1] || trend[i] <= kTrendFloor)) return false;
  return true;
}

void judge(CheckRecord& rec, const Check& check) {
  if (!rec.note.empty()) {
    rec.pass = false;
    return;
  }
  rec.residual = rec.trend.back();
  if (!std::isfinite(rec.residual)) {
    rec.pass = false;
    rec.note = "non-finite residual";
    return;
  }
  if (check.negative_control) {
    rec.pass = rec.residual > rec.tolerance;
    if (!rec.pass) rec.note = "mutation went undetected";
    return;
  }
  const bool within = rec.residual <= rec.tolerance;
  const bool trend_ok = strictly_improving(rec.trend, static_cast<bool>(check.sweep));
  rec.pass = within && trend_ok;
  if (!within) rec.note = "residual above tolerance";
  if (!trend_ok) rec.note += std::string(rec.note.empty() ? "" : "; ") + "residual not decreasing under refinement";
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

void SuiteConfig::validate() const {
  if (lambdas.empty()) throw std::invalid_argument("config: at least one lambda is required");
  for (double l : lambdas)
    if (!std::isfinite(l)) throw std::invalid_argument("config: lambda must be finite");
  DeformationParams{0.0, n}.validate();
  box.validate();
  quad.validate();
  const auto& names = suite_names();
  for (const auto& s : suites)
    if (std::find(names.begin(), names.end(), s) == names.end())
      throw std::invalid_argument("config: unknown suite '" + s + "'");
  for (const auto& [name, tol] : tolerances)
    if (!(tol > 0)) throw std::invalid_argument("config: tolerance for '" + name + "' must be positive");
  if (threads < 0) throw std::invalid_argument("config: threads must be >= 0");
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : registry()) out.push_back(s.name);
    return out;
  }();
  return names;
}

std::string suite_description(const std::string& name) {
  for (const auto& s : registry())
    if (s.name == name) return s.description;
  throw std::invalid_argument("unknown suite '" + name + "'");
}

std::size_t VerificationReport::passed() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const auto& r) { return r.pass; }));
}

std::size_t VerificationReport::failed() const { return records.size() - passed(); }

bool VerificationReport::overall_pass() const { return !records.empty() && failed() == 0; }

VerificationReport run(const SuiteConfig& config) {
  config.validate();
  VerificationReport report;
  report.config = config;
  report.unitaries = {{"U", "fundamental weighted composition"},
                      {"U_hat", "Sigma (j x 1) U (j x 1) Sigma"},
                      {"U_tilde", "(j x 1) Sigma U Sigma (j x 1)"},
                      {"U_hat_hat", "(j x j) U (j x j)"}};

  std::vector<const Suite*> selected;
  for (const auto& s : registry())
    if (config.suites.empty() || std::find(config.suites.begin(), config.suites.end(), s.name) != config.suites.end())
      selected.push_back(&s);

  // Waves follow the dependency order; a suite runs only once every selected dependency passed.
  std::map<std::string, int> wave;
  for (const Suite* s : selected) {
    int w = 0;
    for (const auto& d : s->depends_on)
      if (auto it = wave.find(d); it != wave.end()) w = std::max(w, it->second + 1);
    wave[s->name] = w;
  }
  const int waves = wave.empty() ? 0 : std::max_element(wave.begin(), wave.end(), [](auto& a, auto& b) {
                                         return a.second < b.second;
                                       })->second + 1;

  struct Slot {
    const Suite* suite;
    const Check* check;
  };
  std::vector<Slot> slots;
  std::set<std::string> failed_suites;

  for (int w = 0; w < waves; ++w) {
    std::vector<Task> tasks;
    const std::size_t first = report.records.size();
    for (const Suite* s : selected) {
      if (wave[s->name] != w) continue;
      std::string blocked;
      for (const auto& d : s->depends_on)
        if (failed_suites.count(d)) blocked = d;
      for (const auto& check : s->checks)
        for (double lambda : lambdas_for(config, check)) {
          CheckRecord rec;
          rec.suite = s->name;
          rec.identity = check.identity;
          rec.anchor = check.anchor;
          rec.lambda = lambda;
          rec.tolerance = tolerance_for(config, *s, check);
          rec.samples = std::max(1, check.samples);
          rec.residual = std::numeric_limits<double>::quiet_NaN();
          if (!blocked.empty()) rec.note = "not run: suite '" + blocked + "' failed";
          const std::size_t idx = report.records.size();
          report.records.push_back(rec);
          slots.push_back({s, &check});
          if (!blocked.empty()) continue;
          for (int k = 0; k < rec.samples; ++k) tasks.push_back({idx, s, &check, lambda, k});
        }
    }

    std::vector<TaskResult> results(tasks.size());
    run_pool(config, tasks, results);

    for (std::size_t i = 0; i < tasks.size(); ++i) {
      auto& rec = report.records[tasks[i].record];
      const auto& res = results[i];
      rec.runtime_s += res.seconds;
      if (!res.error.empty()) {
        if (rec.note.empty()) rec.note = "error: " + res.error;
        continue;
      }
      if (rec.trend.empty()) rec.trend.assign(res.trend.size(), 0.0);
      for (std::size_t l = 0; l < res.trend.size(); ++l)
        rec.trend[l] = std::isnan(res.trend[l]) || std::isnan(rec.trend[l]) ? std::numeric_limits<double>::quiet_NaN()
                                                                             : std::max(rec.trend[l], res.trend[l]);
    }
    for (std::size_t r = first; r < report.records.size(); ++r) {
      auto& rec = report.records[r];
      const Check& check = *slots[r].check;
      const QuadratureSpec q = scaled_spec(config.quad, check);
      if (check.sweep) {
        rec.trend_nodes = check.sweep_labels;
        rec.level = static_cast<int>(check.sweep_labels.size()) - 1;
      } else if (check.refined) {
        for (int l = 0; l < q.refinement_levels; ++l) rec.trend_nodes.push_back(q.nodes_at(l));
        rec.level = q.finest_level();
      } else {
        rec.trend_nodes.push_back(is_grid_free(check) ? 0 : q.nodes_at(0));
      }
      rec.nodes = check.sweep ? 0 : rec.trend_nodes.empty() ? 0 : rec.trend_nodes.back();
      if (is_grid_free(check)) rec.nodes = 0;
      if (rec.note.empty() && rec.trend.empty()) rec.note = "no result";
      judge(rec, check);
      if (!rec.pass) failed_suites.insert(rec.suite);
    }
  }
  return report;
}

std::string convergence_study(SuiteConfig config, const std::string& suite) {
  if (suite.empty()) return convergence_csv(VerificationReport{});
  config.suites = {suite};
  return convergence_csv(run(config));
}

std::string config_json(const SuiteConfig& c) {
  json j;
  j["lambdas"] = c.lambdas;
  j["n"] = c.n;
  j["box"] = {{"half_width_x", c.box.half_width_x},
              {"half_width_y", c.box.half_width_y},
              {"half_width_r", c.box.half_width_r},
              {"support_inflation", c.box.support_inflation}};
  j["quad"] = {{"nodes_per_axis", c.quad.nodes_per_axis},
               {"rule", c.quad.rule == QuadratureRule::trapezoid ? "trapezoid" : "gauss_legendre"},
               {"refinement_levels", c.quad.refinement_levels}};
  j["seed"] = c.seed;
  j["suites"] = c.suites;
  j["tolerances"] = json::object();
  for (const auto& [k, v] : c.tolerances) j["tolerances"][k] = v;
  j["report"] = c.report_path;
  j["csv"] = c.csv_path;
  return j.dump(2);
}

SuiteConfig config_from_json(const std::string& text, SuiteConfig c) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
  try {
    if (j.contains("lambdas")) c.lambdas = j["lambdas"].get<std::vector<double>>();
    if (j.contains("n")) c.n = j["n"].get<int>();
    if (j.contains("box")) {
      const auto& b = j["box"];
      c.box.half_width_x = b.value("half_width_x", c.box.half_width_x);
      c.box.half_width_y = b.value("half_width_y", c.box.half_width_y);
      c.box.half_width_r = b.value("half_width_r", c.box.half_width_r);
      c.box.support_inflation = b.value("support_inflation", c.box.support_inflation);
    }
    if (j.contains("quad")) {
      const auto& q = j["quad"];
      c.quad.nodes_per_axis = q.value("nodes_per_axis", c.quad.nodes_per_axis);
      c.quad.refinement_levels = q.value("refinement_levels", c.quad.refinement_levels);
      if (q.contains("rule")) {
        const auto rule = q["rule"].get<std::string>();
        if (rule == "trapezoid")
          c.quad.rule = QuadratureRule::trapezoid;
        else if (rule == "gauss_legendre")
          c.quad.rule = QuadratureRule::gauss_legendre;
        else
          throw std::invalid_argument("config: unknown quadrature rule '" + rule + "'");
      }
    }
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("suites")) c.suites = j["suites"].get<std::vector<std::string>>();
    if (j.contains("tolerances")) c.tolerances = j["tolerances"].get<std::map<std::string, double>>();
    if (j.contains("report")) c.report_path = j["report"].get<std::string>();
    if (j.contains("csv")) c.csv_path = j["csv"].get<std::string>();
    if (j.contains("threads")) c.threads = j["threads"].get<int>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

std::string report_json(const VerificationReport& report, bool include_runtime) {
  json j;
  j["schema"] = kReportSchema;
  j["artifact_version"] = "1.0.0";
  j["config"] = json::parse(config_json(report.config));
  j["unitaries"] = json::object();
  for (const auto& [k, v] : report.unitaries) j["unitaries"][k] = v;
  json records = json::array();
  for (const auto& r : report.records) {
    json rec;
    rec["suite"] = r.suite;
    rec["identity"] = r.identity;
    rec["anchor"] = r.anchor;
    rec["lambda"] = r.lambda;
    rec["residual"] = number_or_null(r.residual);
    rec["tolerance"] = r.tolerance;
    rec["pass"] = r.pass;
    rec["level"] = r.level;
    rec["nodes"] = r.nodes;
    json trend = json::array();
    for (double v : r.trend) trend.push_back(number_or_null(v));
    rec["trend"] = trend;
    rec["trend_nodes"] = r.trend_nodes;
    rec["samples"] = r.samples;
    rec["note"] = r.note;
    if (include_runtime) rec["runtime_s"] = r.runtime_s;
    records.push_back(rec);
  }
  j["records"] = records;
  j["summary"] = {{"records", report.records.size()},
                  {"passed", report.passed()},
                  {"failed", report.failed()},
                  {"overall", report.overall_pass() ? "PASS" : "FAIL"}};
  return j.dump(2) + "\n";
}

std::string convergence_csv(const VerificationReport& report) {
  std::ostringstream os;
  os.precision(17);
  os << "suite,identity,lambda,level,nodes,residual,tolerance\n";
  for (const auto& r : report.records)
    for (std::size_t l = 0; l < r.trend.size(); ++l) {
      os << r.suite << ',' << r.identity << ',' << r.lambda << ',' << l << ','
         << (l < r.trend_nodes.size() ? r.trend_nodes[l] : 0) << ',';
      if (std::isfinite(r.trend[l])) os << r.trend[l];
      os << ',' << r.tolerance << '\n';
    }
  return os.str();
}

}  // namespace qheis
