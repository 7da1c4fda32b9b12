#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qheis/verification.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification runner for the quantum Heisenberg group and its dual"};

  std::string config_path;
  std::vector<double> lambdas;
  int n = 0, quad_order = 0, levels = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> suites, tolerances;
  std::string report_path, csv_path;
  bool list = false, quiet = false;

  app.add_option("--config", config_path, "JSON config file; flags override its fields")->check(CLI::ExistingFile);
  app.add_option("--lambda", lambdas, "deformation parameter (repeatable)");
  app.add_option("--n", n, "block dimension of x and y")->check(CLI::Range(1, 3));
  app.add_option("--quad-order", quad_order, "quadrature intervals per axis at the coarsest level")
      ->check(CLI::PositiveNumber);
  app.add_option("--levels", levels, "refinement levels")->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", seed, "base seed");
  app.add_option("--suite", suites, "suite to run (repeatable; default: all)");
  app.add_option("--tolerance", tolerances, "override as NAME=VALUE, NAME a suite, identity or suite/identity");
  app.add_option("--report", report_path, "write the JSON report here");
  app.add_option("--csv", csv_path, "write the convergence table here");
  app.add_flag("--list-suites", list, "print the suite names and exit");
  app.add_flag("-q,--quiet", quiet, "only print the summary line");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (list) {
    for (const auto& name : qheis::suite_names()) std::cout << name << "  " << qheis::suite_description(name) << '\n';
    return 0;
  }

  qheis::SuiteConfig config;
  try {
    if (!config_path.empty()) config = qheis::config_from_json(read_file(config_path));
    if (!lambdas.empty()) config.lambdas = lambdas;
    if (n > 0) config.n = n;
    if (quad_order > 0) config.quad.nodes_per_axis = quad_order;
    if (levels > 0) config.quad.refinement_levels = levels;
    if (seed_opt->count() > 0) config.seed = seed;
    if (!suites.empty()) config.suites = suites;
    for (const auto& t : tolerances) {
      const auto eq = t.find('=');
      if (eq == std::string::npos || eq == 0) throw std::invalid_argument("--tolerance expects NAME=VALUE, got " + t);
      config.tolerances[t.substr(0, eq)] = std::stod(t.substr(eq + 1));
    }
    if (!report_path.empty()) config.report_path = report_path;
    if (!csv_path.empty()) config.csv_path = csv_path;
    config.validate();
  } catch (const std::exception& e) {
    std::cerr << "qheis: " << e.what() << '\n';
    return 2;
  }

  const auto report = qheis::run(config);
  if (!quiet) {
    for (const auto& r : report.records) {
      std::printf("%s  %-12s %-34s lambda=%-5g residual=%-10.3e tol=%-8.1e %s\n", r.pass ? "PASS" : "FAIL",
                  r.suite.c_str(), r.identity.c_str(), r.lambda, r.residual, r.tolerance, r.note.c_str());
    }
  }
  std::printf("%s: %zu passed, %zu failed\n", report.overall_pass() ? "PASS" : "FAIL", report.passed(),
              report.failed());
  try {
    if (!config.report_path.empty()) write_file(config.report_path, qheis::report_json(report));
    if (!config.csv_path.empty()) write_file(config.csv_path, qheis::convergence_csv(report));
  } catch (const std::exception& e) {
    std::cerr << "qheis: " << e.what() << '\n';
    return 2;
  }
  return report.overall_pass() ? 0 : 1;
}
