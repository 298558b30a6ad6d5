#include "levyconv/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "levyconv/error.hpp"
#include "levyconv/io.hpp"
#include "levyconv/lawlab.hpp"
#include "levyconv/rng.hpp"
#include "levyconv/scenario.hpp"
#include "levyconv/skorokhod.hpp"

namespace levyconv {
namespace {

namespace fs = std::filesystem;

struct RunConfig {
  std::string input;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  unsigned grid = 8;
  double horizon = 1.0;
  std::string kind = "dyadic";
  bool force = false;
  bool witness = false;
  int verbosity = 0;
};

/// Thrown for anything that should end with exit code 2.
struct ConfigFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Runner {
 public:
  Runner(RunConfig cfg, std::ostream& out, std::ostream& err)
      : cfg_(std::move(cfg)), out_(out), err_(err) {}

  void simulate();
  void convolve();
  void project();
  void distance();
  void lawtest();
  void verify_bounds();

 private:
  void log(const std::string& msg) const {
    if (cfg_.verbosity > 0) err_ << "levyconv: " << msg << '\n';
  }

  Json load_document() const {
    try {
      return read_json_file(cfg_.input);
    } catch (const Error& e) {
      throw ConfigFailure(e.what());
    }
  }

  Scenario build(const Json& doc) const {
    try {
      Scenario s = Scenario::from_json(doc);
      if (cfg_.seed) s = s.with_seed(*cfg_.seed);
      if (cfg_.samples) s = s.with_samples(*cfg_.samples);
      return s;
    } catch (const HypothesisError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigFailure(std::string("scenario: ") + e.what());
    }
  }

  fs::path output(const std::string& name) const {
    fs::create_directories(cfg_.out_dir);
    return fs::path(cfg_.out_dir) / name;
  }

  void write(const std::string& name, const std::string& content) const {
    const fs::path p = output(name);
    std::ofstream f(p, std::ios::binary);
    if (!f) throw Error("cannot write '" + p.string() + "'");
    f << content;
    if (!f) throw Error("write failed for '" + p.string() + "'");
    out_ << p.string() << '\n';
  }

  void write_json(const std::string& name, const Json& j) const { write(name, j.dump(2) + "\n"); }

  Json scenario_header(const Scenario& s) const {
    return Json{{"digest", s.digest()}, {"seed", s.seed}, {"construction", construction_name(s.construction)}};
  }

  Json input_header() const {
    Json h{{"input_digest", fnv1a_hex(read_text_file(cfg_.input))}};
    h["seed"] = cfg_.seed ? Json(*cfg_.seed) : Json(nullptr);
    return h;
  }

  std::vector<PiecewiseConstPath> load_paths(std::vector<std::string>* ids) const {
    try {
      std::istringstream in(read_text_file(cfg_.input));
      return read_step_paths_csv(in, cfg_.horizon, ids);
    } catch (const Error& e) {
      throw ConfigFailure(e.what());
    }
  }

  RunConfig cfg_;
  std::ostream& out_;
  std::ostream& err_;
};

void Runner::simulate() {
  const Scenario s = build(load_document());
  Json report = scenario_header(s);
  report["command"] = "simulate";
  report["horizon"] = s.horizon;
  if (cfg_.samples) {
    std::vector<PrmRealization> draws;
    Json counts = Json::array();
    for (std::size_t i = 0; i < s.samples; ++i) {
      draws.push_back(draw_realization(s, i));
      counts.push_back(draws.back().size());
    }
    std::ostringstream csv;
    write_realizations_csv(csv, draws);
    write("realizations.csv", csv.str());
    report["samples"] = s.samples;
    report["atom_counts"] = counts;
  } else {
    const PrmRealization eta = draw_realization(s, 0);
    std::ostringstream csv;
    write_realization_csv(csv, eta);
    write("realization.csv", csv.str());
    report["atoms"] = eta.size();
  }
  write_json("simulate.json", report);
}

void Runner::convolve() {
  const Scenario s = build(load_document());
  const PrmRealization eta = draw_realization(s, 0);
  log("draw 0 has " + std::to_string(eta.size()) + " atoms");
  const GridPath u = draw_solution(s, eta);
  std::ostringstream path_csv, eta_csv;
  write_path_csv(path_csv, u);
  write_realization_csv(eta_csv, eta);
  write("realization.csv", eta_csv.str());
  write("solution.csv", path_csv.str());
  Json report = scenario_header(s);
  report["command"] = "convolve";
  report["atoms"] = eta.size();
  report["nodes"] = u.size();
  Json final_value = Json::array();
  for (Eigen::Index i = 0; i < u.back().size(); ++i) final_value.push_back(u.back()(i));
  report["u_T"] = final_value;
  write_json("convolve.json", report);
}

double step_integral_over(const PiecewiseConstPath& x, std::size_t coord, double a, double b) {
  // x is right-continuous and piecewise constant, so the integral is a sum over pieces.
  double total = 0.0;
  double left = a;
  std::size_t k = 0;
  const auto& jumps = x.jump_times();
  while (k < jumps.size() && jumps[k] <= a) ++k;
  while (left < b) {
    const double right = k < jumps.size() ? std::min(jumps[k], b) : b;
    total += (right - left) * x.piece(k)(static_cast<Eigen::Index>(coord));
    left = right;
    ++k;
  }
  return total;
}

void Runner::project() {
  std::vector<std::string> ids;
  const auto paths = load_paths(&ids);
  if (paths.size() != 1) throw ConfigFailure("project: expected exactly one path");
  const PiecewiseConstPath& x = paths.front();
  const unsigned n = cfg_.grid;
  std::ostringstream csv;
  if (cfg_.kind == "dyadic") {
    write_step_path_csv(csv, dyadic_project(n, x));
  } else if (cfg_.kind == "haar" || cfg_.kind == "shifted-haar") {
    if (x.horizon() != 1.0) throw ConfigFailure("project: Haar projections need horizon 1");
    const std::size_t cells = std::size_t{1} << n;
    Matrix values(static_cast<Eigen::Index>(x.dimension()), static_cast<Eigen::Index>(cells));
    const double h = 1.0 / static_cast<double>(cells);
    for (std::size_t i = 0; i < cells; ++i) {
      for (std::size_t c = 0; c < x.dimension(); ++c) {
        values(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(i)) =
            step_integral_over(x, c, static_cast<double>(i) * h, static_cast<double>(i + 1) * h) / h;
      }
    }
    SampledFunction f(n, std::move(values));
    write_sampled_csv(csv, cfg_.kind == "haar" ? f : delay(n, f));
  } else {
    throw ConfigFailure("project: unknown kind '" + cfg_.kind + "'");
  }
  write("projection.csv", csv.str());
  Json report = input_header();
  report["command"] = "project";
  report["kind"] = cfg_.kind;
  report["order"] = n;
  write_json("project.json", report);
}

void Runner::distance() {
  std::vector<std::string> ids;
  const auto paths = load_paths(&ids);
  log("computing " + std::to_string(paths.size() * (paths.size() - 1) / 2) + " pairwise bounds");
  const Matrix d = pairwise_d0(paths, cfg_.grid);
  std::ostringstream csv;
  write_matrix_csv(csv, d, ids);
  write("distance.csv", csv.str());
  if (cfg_.witness) {
    std::ostringstream w;
    w << "a,b,t,lambda\n";
    for (std::size_t i = 0; i < paths.size(); ++i) {
      for (std::size_t j = i + 1; j < paths.size(); ++j) {
        const D0Bound fwd = d0_upper(paths[i], paths[j], cfg_.grid);
        const D0Bound bwd = d0_upper(paths[j], paths[i], cfg_.grid);
        // A witness for d(y, x) inverts to one for d(x, y) with the same log norm.
        const TimeChange lambda = fwd.bound <= bwd.bound ? fwd.witness : bwd.witness.inverse();
        for (std::size_t k = 0; k < lambda.times().size(); ++k) {
          w << ids[i] << ',' << ids[j] << ',' << format_number(lambda.times()[k]) << ','
            << format_number(lambda.images()[k]) << '\n';
        }
      }
    }
    write("witness.csv", w.str());
  }
  Json report = input_header();
  report["command"] = "distance";
  report["bound"] = "upper";
  report["grid"] = cfg_.grid;
  report["paths"] = ids;
  write_json("distance.json", report);
}

void Runner::lawtest() {
  const Json doc = load_document();
  const Scenario a = build(doc);
  Json patch = doc.contains("alternative") ? doc.at("alternative") : Json::object();
  if (!patch.is_object()) throw ConfigFailure("scenario: 'alternative' must be an object");
  if (!patch.contains("construction")) {
    patch["construction"] = construction_name(a.construction == Construction::kExponential
                                                  ? Construction::kBinomial
                                                  : Construction::kExponential);
  }
  Json base = a.source;
  base.erase("alternative");
  Scenario b = [&] {
    try {
      return Scenario::from_json(merge_scenario(base, patch));
    } catch (const HypothesisError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigFailure(std::string("alternative scenario: ") + e.what());
    }
  }();
  if (!patch.contains("seed")) b = b.with_seed(derive_seed(a.seed, 1));
  if (cfg_.samples) b = b.with_samples(*cfg_.samples);
  log("sampling " + std::to_string(a.samples) + " + " + std::to_string(b.samples) + " draws");
  LawTestOptions options;
  options.force = cfg_.force;
  const TestReport r = law_equality_experiment(a, b, options);
  Json report = scenario_header(a);
  report["command"] = "lawtest";
  report["test"] = report_to_json(r);
  std::ostringstream csv;
  write_ks_csv(csv, r);
  write("lawtest.csv", csv.str());
  write_json("lawtest.json", report);
}

void Runner::verify_bounds() {
  const Scenario s = build(load_document());
  const MaximalRatio m = maximal_ratio_experiment(s, s.q_prime);
  const AnalyticBound b = analytic_bound_experiment(s);
  Json report = scenario_header(s);
  report["command"] = "verify-bounds";
  report["samples"] = s.samples;
  report["maximal"] = {{"q_prime", s.q_prime}, {"lhs", m.lhs}, {"rhs", m.rhs},
                       {"ratio", m.ratio}, {"degenerate", m.degenerate}};
  report["analytic"] = {{"alpha", s.alpha}, {"p", s.p}, {"constant", b.constant},
                        {"lhs", b.lhs}, {"rhs", b.rhs}, {"ratio", b.ratio},
                        {"satisfied", b.lhs <= b.rhs}};
  write_json("bounds.json", report);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Levy-driven stochastic convolutions: simulation, projections and law tests",
               "levyconv"};
  app.require_subcommand(1);
  RunConfig cfg;
  if (const char* env = std::getenv(kOutDirEnv); env && *env) {
    cfg.out_dir = env;
  } else {
    cfg.out_dir = ".";
  }
  std::uint64_t seed = 0;
  std::size_t samples = 0;

  auto add_common = [&](CLI::App* sub, const char* input_help) {
    sub->add_option("input", cfg.input, input_help)->required();
    sub->add_option("--out", cfg.out_dir, "output directory (default $" + std::string(kOutDirEnv) + " or .)");
    sub->add_flag("-v,--verbose", cfg.verbosity, "progress messages on stderr");
  };
  auto add_scenario_flags = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "override the scenario seed");
    sub->add_option("--samples", samples, "override the number of draws")->check(CLI::PositiveNumber);
  };

  auto* simulate = app.add_subcommand("simulate", "draw Poisson random measure realizations");
  add_common(simulate, "scenario JSON");
  add_scenario_flags(simulate);
  auto* convolve = app.add_subcommand("convolve", "simulate one solution path");
  add_common(convolve, "scenario JSON");
  add_scenario_flags(convolve);
  auto* project = app.add_subcommand("project", "dyadic or Haar projection of a step path");
  add_common(project, "path CSV (path,t,v1..vd)");
  project->add_option("--grid", cfg.grid, "projection order n")->check(CLI::Range(0u, 30u));
  project->add_option("--kind", cfg.kind, "dyadic | haar | shifted-haar");
  project->add_option("--horizon", cfg.horizon, "path horizon T");
  project->add_option("--seed", seed, "recorded in the report");
  auto* distance = app.add_subcommand("distance", "pairwise Skorokhod distance bounds");
  add_common(distance, "paths CSV (path,t,v1..vd)");
  distance->add_option("--grid", cfg.grid, "dyadic lattice order")->check(CLI::Range(1u, 30u));
  distance->add_option("--horizon", cfg.horizon, "path horizon T");
  distance->add_flag("--witness", cfg.witness, "also write the time changes");
  distance->add_option("--seed", seed, "recorded in the report");
  auto* lawtest = app.add_subcommand("lawtest", "law-equality test across constructions");
  add_common(lawtest, "scenario JSON");
  add_scenario_flags(lawtest);
  lawtest->add_flag("--force", cfg.force, "run even if the two scenarios differ in law");
  auto* bounds = app.add_subcommand("verify-bounds", "maximal inequality and analytic bound");
  add_common(bounds, "scenario JSON");
  add_scenario_flags(bounds);

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  if (!argv_rev.empty()) argv_rev.pop_back();  // program name
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "levyconv: " << e.what() << '\n' << app.help();
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  for (const char* name : {"--seed", "--samples"}) {
    CLI::Option* opt = nullptr;
    try {
      opt = sub->get_option(name);
    } catch (const CLI::OptionNotFound&) {
      continue;
    }
    if (opt->count() == 0) continue;
    if (std::string(name) == "--seed") cfg.seed = seed;
    else cfg.samples = samples;
  }

  Runner runner(cfg, out, err);
  try {
    const std::string name = sub->get_name();
    if (name == "simulate") runner.simulate();
    else if (name == "convolve") runner.convolve();
    else if (name == "project") runner.project();
    else if (name == "distance") runner.distance();
    else if (name == "lawtest") runner.lawtest();
    else runner.verify_bounds();
  } catch (const ConfigFailure& e) {
    err << "levyconv: " << e.what() << '\n';
    return 2;
  } catch (const HypothesisError& e) {
    err << "levyconv: hypothesis violated: " << e.what() << '\n';
    return 2;
  } catch (const ConfigurationError& e) {
    err << "levyconv: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "levyconv: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace levyconv
