#pragma once

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ladderlab/error.hpp"
#include "ladderlab/experiments/suite.hpp"
#include "ladderlab/ladder/phi1.hpp"
#include "ladderlab/quad/cumulative_table.hpp"
#include "ladderlab/util/format.hpp"

#ifndef LADDERLAB_DATA_DIR
#define LADDERLAB_DATA_DIR "data"
#endif

namespace ladderlab::cli {

namespace fs = std::filesystem;

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"build-table",    "verify-lemma", "verify-iterated", "verify-theorem",
                                                 "chain-report",   "mean-value",   "all"};
  return names;
}

struct HelpRequested : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string command;
  ExperimentConfig experiment;
  LadderConstants ladder;
  ZEvalConfig zeta;
  std::optional<double> t_max;
  double table_step = 1.0;
  double table_tol = 1e-9;  // per unit length
  double eps_ineq = 0.2;
  int windows = 5;
  std::string cache_dir = ".";
  std::string out_dir = ".";
  std::string bands_path = std::string(LADDERLAB_DATA_DIR) + "/pass_bands.json";
  std::optional<std::string> config_file;

  // Table end needed by the command: the window, or five adjacent windows
  // for the theorem checks, plus a unit of slack.
  double required_t_max() const {
    if (command == "build-table" && t_max) return *t_max;
    const double U = experiment.U();
    const int w = (command == "verify-theorem" || command == "all") ? windows : 1;
    const double need = experiment.T + w * U + 1.0;
    return t_max ? std::max(*t_max, need) : need;
  }
};

namespace detail {

struct Flags {
  std::optional<double> T, epsilon, t_max, T0, quad_tol, U, eps_ineq;
  std::optional<int> n, correction_terms, windows;
  std::optional<std::string> cache_dir, out_dir, config, bands;
};

template <typename V>
void take(std::optional<V>& slot, const nlohmann::json& j, const char* key) {
  if (slot || !j.contains(key)) return;
  try {
    slot = j.at(key).get<V>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorKind::usage, std::string("config file: bad value for '") + key + "'");
  }
}

inline void merge_file(Flags& f, const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::usage, "--config: cannot read " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::usage, "--config: " + path + " is not valid JSON (" + e.what() + ")");
  }
  if (!j.is_object()) throw Error(ErrorKind::usage, "--config: top level must be an object");
  static const std::set<std::string> known = {"T",  "epsilon", "n",         "t_max",   "T0",       "quad_tol",
                                              "U",  "eps_ineq", "windows",  "cache_dir", "out_dir", "bands",
                                              "correction_terms"};
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) throw Error(ErrorKind::usage, "--config: unknown key '" + key + "'");
  }
  take(f.T, j, "T");
  take(f.epsilon, j, "epsilon");
  take(f.n, j, "n");
  take(f.t_max, j, "t_max");
  take(f.T0, j, "T0");
  take(f.quad_tol, j, "quad_tol");
  take(f.U, j, "U");
  take(f.eps_ineq, j, "eps_ineq");
  take(f.windows, j, "windows");
  take(f.correction_terms, j, "correction_terms");
  take(f.cache_dir, j, "cache_dir");
  take(f.out_dir, j, "out_dir");
  take(f.bands, j, "bands");
}

}  // namespace detail

// Flags override the config file, which overrides the defaults. Throws
// Error(usage) for malformed input and Error(admissibility) when T is too
// small for n.
inline Options parse_config(const std::vector<std::string>& args) {
  detail::Flags f;
  CLI::App app{"Numerical Jacob's ladder experiments", "ladderlab"};
  app.require_subcommand(1);
  std::string command;
  for (const auto& name : command_names()) {
    auto* sub = app.add_subcommand(name);
    sub->fallthrough();
    sub->callback([&command, name] { command = name; });
  }
  app.add_option("--T", f.T, "left end of the window");
  app.add_option("--epsilon", f.epsilon, "window exponent offset: U = T^(1/3 + 2 epsilon)");
  app.add_option("--n", f.n, "number of iterates in the product");
  app.add_option("--t-max", f.t_max, "end of the cumulative table");
  app.add_option("--T0", f.T0, "ladder threshold");
  app.add_option("--quad-tol", f.quad_tol, "relative quadrature tolerance");
  app.add_option("--correction-terms", f.correction_terms, "Riemann-Siegel correction terms (0..4)");
  app.add_option("--cache-dir", f.cache_dir, "directory of cumz2.csv and phi1.csv (default $LADDERLAB_CACHE or .)");
  app.add_option("--out-dir", f.out_dir, "directory for reports");
  app.add_option("--config", f.config, "JSON file with any of the flag values");
  app.add_option("--U", f.U, "window length, overriding T^(1/3 + 2 epsilon)");
  app.add_option("--eps-ineq", f.eps_ineq, "slack of the mean inequalities");
  app.add_option("--windows", f.windows, "adjacent windows averaged by verify-theorem");
  app.add_option("--bands", f.bands, "pass band file");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw Error(ErrorKind::usage, e.what());
  }
  if (f.config) detail::merge_file(f, *f.config);

  Options o;
  o.command = command;
  o.config_file = f.config;
  if (f.T) o.experiment.T = *f.T;
  if (f.epsilon) o.experiment.epsilon = *f.epsilon;
  if (f.n) o.experiment.n = *f.n;
  if (f.quad_tol) o.experiment.quad_tol = *f.quad_tol;
  if (f.U) o.experiment.window_length = *f.U;
  if (f.T0) o.ladder.T0 = *f.T0;
  if (f.correction_terms) o.zeta.correction_terms = *f.correction_terms;
  if (f.eps_ineq) o.eps_ineq = *f.eps_ineq;
  if (f.windows) o.windows = *f.windows;
  o.t_max = f.t_max;
  if (const char* env = std::getenv("LADDERLAB_CACHE"); env && *env) o.cache_dir = env;
  if (f.cache_dir) o.cache_dir = *f.cache_dir;
  if (f.out_dir) o.out_dir = *f.out_dir;
  if (f.bands) o.bands_path = *f.bands;

  if (o.t_max && !(*o.t_max >= 0.0)) throw Error(ErrorKind::usage, "--t-max must be >= 0");
  if (!(o.eps_ineq > 0.0 && o.eps_ineq < 1.0)) throw Error(ErrorKind::usage, "--eps-ineq must lie in (0, 1)");
  if (o.windows < 1) throw Error(ErrorKind::usage, "--windows must be >= 1");
  o.zeta.validate();
  o.ladder.validate();
  if (!(command == "build-table" && o.t_max)) o.experiment.validate(o.ladder);
  return o;
}

struct Tables {
  std::shared_ptr<const CumulativeZ2Table> cumulative;
  std::optional<LadderTable> ladder;
  std::string cumulative_path, ladder_path;
  bool cumulative_reused = false;
  bool ladder_reused = false;
};

inline void progress(const std::string& msg) { std::cerr << "[ladderlab] " << msg << std::endl; }

// Loads the caches when they match, extends a short cumulative table, and
// rebuilds what is missing. Updated caches are written back.
inline Tables ensure_tables(const Options& o, double t_max) {
  Tables tb;
  fs::create_directories(o.cache_dir);
  tb.cumulative_path = (fs::path(o.cache_dir) / "cumz2.csv").string();
  tb.ladder_path = (fs::path(o.cache_dir) / "phi1.csv").string();

  std::optional<CumulativeZ2Table> cum;
  if (fs::exists(tb.cumulative_path)) {
    try {
      auto loaded = CumulativeZ2Table::load(tb.cumulative_path, o.zeta);
      if (loaded.step() == o.table_step && loaded.tol_per_unit() == o.table_tol) {
        cum = std::move(loaded);
      } else {
        progress("cumulative cache has a different step or tolerance; rebuilding");
      }
    } catch (const Error& e) {
      progress(std::string("ignoring unreadable cumulative cache: ") + e.what());
    }
  }
  bool cum_changed = false;
  if (!cum) {
    progress("building cumulative Z^2 table to t = " + format_double(t_max));
    cum = CumulativeZ2Table::build(t_max, o.table_step, o.table_tol, o.zeta);
    cum_changed = true;
  } else if (cum->t_max() < t_max) {
    progress("extending cumulative Z^2 table from t = " + format_double(cum->t_max()) + " to " + format_double(t_max));
    cum->extend(t_max);
    cum_changed = true;
  } else {
    tb.cumulative_reused = true;
  }
  if (cum_changed) cum->save(tb.cumulative_path);
  tb.cumulative = std::make_shared<const CumulativeZ2Table>(std::move(*cum));

  if (tb.cumulative->t_max() < o.ladder.T0) {
    progress("table ends below T0; no ladder table");
    return tb;
  }
  if (!cum_changed && fs::exists(tb.ladder_path)) {
    try {
      auto lt = LadderTable::load(tb.ladder_path, tb.cumulative, o.ladder);
      if (lt.t_max() == tb.cumulative->t_max()) {
        tb.ladder = std::move(lt);
        tb.ladder_reused = true;
      }
    } catch (const Error& e) {
      progress(std::string("ignoring ladder cache: ") + e.what());
    }
  }
  if (!tb.ladder) {
    progress("building ladder table on [" + format_double(o.ladder.T0) + ", " + format_double(tb.cumulative->t_max()) + "]");
    tb.ladder = LadderTable::build(tb.cumulative, o.ladder);
    tb.ladder->save(tb.ladder_path);
  }
  return tb;
}

inline nlohmann::ordered_json config_json(const Options& o) {
  nlohmann::ordered_json j;
  j["T"] = o.experiment.T;
  j["epsilon"] = o.experiment.epsilon;
  j["n"] = o.experiment.n;
  j["U"] = o.experiment.U();
  j["quad_tol"] = o.experiment.quad_tol;
  j["T0"] = o.ladder.T0;
  j["c"] = o.ladder.c;
  j["c0"] = o.ladder.c0;
  j["correction_terms"] = o.zeta.correction_terms;
  j["t_switch"] = o.zeta.t_switch;
  j["eps_ineq"] = o.eps_ineq;
  j["windows"] = o.windows;
  j["table_step"] = o.table_step;
  j["table_tol_per_unit"] = o.table_tol;
  return j;
}

// Runs one parsed command. Returns 0 when every asserted check passes and 1
// otherwise; errors propagate to run().
inline int run_command(const Options& o) {
  const auto start = std::chrono::steady_clock::now();
  const double t_max = o.required_t_max();
  Tables tb = ensure_tables(o, t_max);

  nlohmann::ordered_json manifest;
  manifest["command"] = o.command;
  manifest["config"] = config_json(o);
  if (o.config_file) manifest["config_file"] = *o.config_file;
  manifest["inputs"] = {{"cumulative_table", tb.cumulative_path},
                        {"cumulative_reused", tb.cumulative_reused},
                        {"ladder_table", tb.ladder ? nlohmann::ordered_json(tb.ladder_path) : nlohmann::ordered_json()},
                        {"ladder_reused", tb.ladder_reused},
                        {"pass_bands", o.command == "build-table" ? nlohmann::ordered_json() : nlohmann::ordered_json(o.bands_path)}};
  std::vector<std::string> outputs;
  bool pass = true;

  if (o.command == "build-table") {
    outputs.push_back(tb.cumulative_path);
    if (tb.ladder) outputs.push_back(tb.ladder_path);
  } else {
    if (!tb.ladder) throw Error(ErrorKind::out_of_table, "tables do not reach T0");
    const LadderTable& lt = *tb.ladder;
    const PassBands bands = PassBands::load(o.bands_path);
    const ExperimentConfig& c = o.experiment;
    VerificationReport rep;
    const bool all = o.command == "all";
    if (all || o.command == "verify-lemma") {
      progress("substitution identity for f = 1, x, cos(x/1000)");
      rep.append(lemma_report(c, lt, o.zeta));
    }
    if (all || o.command == "verify-iterated") {
      progress("iterated substitution identity");
      rep.append(iterated_report(c, lt, o.zeta));
    }
    if (all || o.command == "verify-theorem") {
      progress("product integral on " + std::to_string(o.windows) + " windows");
      rep.append(theorem_report(c, lt, o.zeta, bands, o.windows));
    }
    if (all || o.command == "chain-report") {
      progress("iterate chain geometry");
      rep.append(recession_report(c, lt, bands));
    }
    if (all || o.command == "mean-value") {
      progress("mean-value point");
      rep.append(mean_value_report(c, lt, o.zeta, bands, o.eps_ineq));
    }
    rep.provenance = nlohmann::ordered_json::object();
    rep.provenance["command"] = o.command;
    rep.provenance["config"] = config_json(o);
    rep.provenance["cumulative_table"] = {{"t_max", tb.cumulative->t_max()},
                                          {"step", tb.cumulative->step()},
                                          {"tol_per_unit", tb.cumulative->tol_per_unit()},
                                          {"error_bound", tb.cumulative->error_bound()}};
    rep.provenance["ladder_table"] = {{"T0", lt.T0()}, {"t_max", lt.t_max()}, {"points", lt.t_grid().size()}};
    rep.provenance["pass_bands"] = bands.source();
    fs::create_directories(o.out_dir);
    const std::string csv = (fs::path(o.out_dir) / (o.command + ".csv")).string();
    const std::string json = (fs::path(o.out_dir) / (o.command + ".json")).string();
    rep.write_csv(csv);
    rep.write_json(json);
    outputs.push_back(csv);
    outputs.push_back(json);
    pass = rep.all_pass();
    std::size_t failed = 0;
    for (const auto& r : rep.records) {
      if (!r.pass) {
        ++failed;
        progress("FAIL " + r.check_name + " n=" + std::to_string(r.n) + " residual=" + format_double(r.residual) +
                 " tolerance=" + format_double(r.tolerance));
      }
    }
    progress(std::to_string(rep.records.size() - failed) + "/" + std::to_string(rep.records.size()) + " checks passed");
  }

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  fs::create_directories(o.out_dir);
  const std::string manifest_path = (fs::path(o.out_dir) / (o.command + "_manifest.json")).string();
  outputs.push_back(manifest_path);
  manifest["outputs"] = outputs;
  manifest["stats"] = {{"wall_seconds", secs},
                       {"table_evals", tb.cumulative->evals()},
                       {"table_rows", tb.cumulative->size()},
                       {"table_error_bound", tb.cumulative->error_bound()}};
  manifest["pass"] = pass;
  std::ofstream(manifest_path) << manifest.dump(2) << '\n';
  return pass ? 0 : 1;
}

inline int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::usage:
    case ErrorKind::admissibility:
    case ErrorKind::domain:
    case ErrorKind::io:
      return 2;
    default:
      return is_numerical(e.kind()) ? 3 : 1;
  }
}

// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or input error,
// 3 numerical non-convergence.
inline int run(const std::vector<std::string>& args) {
  try {
    const Options o = parse_config(args);
    return run_command(o);
  } catch (const HelpRequested& h) {
    std::cerr << h.what();
    return 0;
  } catch (const Error& e) {
    std::cerr << "ladderlab: " << to_string(e.kind()) << " error: " << e.what() << std::endl;
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "ladderlab: " << e.what() << std::endl;
    return 1;
  }
}

inline int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace ladderlab::cli
