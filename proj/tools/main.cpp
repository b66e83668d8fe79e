// Command-line front end: configuration, experiment orchestration, and
// report emission over the shared-library C API. One command per process.
//
// Exit codes: 0 run passed; 1 run completed but failed its gate
// (non-convergence, failed checks); 2 invalid input (config, file system).

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fpleig.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Invalid input: configs, paths, parse failures. Exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// The run itself failed (degenerate numerics mid-run). Exit 1.
struct RunError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string gnum(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", x);
  return buf;
}

[[noreturn]] void rethrow_status(fpl_status st, const std::string& where) {
  const std::string msg = where + ": " + fpl_last_error();
  if (st == FPL_ERR_INVALID_ARGUMENT) throw UsageError(msg);
  throw RunError(msg);
}

void check(fpl_status st, const std::string& where) {
  if (st != FPL_OK) rethrow_status(st, where);
}

std::string take_string(char* s) {
  std::string out = s ? s : "";
  fpl_string_free(s);
  return out;
}

// ---------------------------------------------------------------- config

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* a : allowed) {
      if (it.key() == a) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw UsageError("config." + path + "." + it.key() + ": unknown key");
    }
  }
}

const json* find(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double num_at(const json& v, const std::string& path) {
  if (!v.is_number()) throw UsageError("config." + path + ": expected number");
  return v.get<double>();
}

double num_or(const json& obj, const std::string& path, const char* key,
              double def) {
  const json* v = find(obj, key);
  return v ? num_at(*v, path + "." + key) : def;
}

int int_or(const json& obj, const std::string& path, const char* key,
           int def) {
  const json* v = find(obj, key);
  if (!v) return def;
  if (!v->is_number_integer()) {
    throw UsageError("config." + path + "." + key + ": expected integer");
  }
  return v->get<int>();
}

bool bool_or(const json& obj, const std::string& path, const char* key,
             bool def) {
  const json* v = find(obj, key);
  if (!v) return def;
  if (!v->is_boolean()) {
    throw UsageError("config." + path + "." + key + ": expected boolean");
  }
  return v->get<bool>();
}

std::string string_or(const json& obj, const std::string& path,
                      const char* key, const std::string& def) {
  const json* v = find(obj, key);
  if (!v) return def;
  if (!v->is_string()) {
    throw UsageError("config." + path + "." + key + ": expected string");
  }
  return v->get<std::string>();
}

// Anchor coordinates: a number (1D) or an array of dim numbers.
std::vector<double> coords_at(const json& v, const std::string& path,
                              int dim) {
  std::vector<double> out;
  if (v.is_number()) {
    out.push_back(v.get<double>());
  } else if (v.is_array()) {
    for (size_t i = 0; i < v.size(); ++i) {
      out.push_back(num_at(v[i], path + "[" + std::to_string(i) + "]"));
    }
  } else {
    throw UsageError("config." + path + ": expected number or array");
  }
  if (static_cast<int>(out.size()) != dim) {
    throw UsageError("config." + path + ": expected " + std::to_string(dim) +
                     " coordinate(s)");
  }
  return out;
}

struct RunConfig {
  // domain
  int dim = 1;
  std::vector<double> bounds;
  int n = 0;
  std::string mask_rule;
  double collar_width = 0.0;
  // problem
  std::string variant = "P1";
  double s = 0.5, t = 0.5, theta = 0.5;
  std::optional<double> p;
  std::string alpha_rule = "theta_p";
  std::optional<std::vector<double>> x0, x1, x2;
  // solver
  fpl_solve_opts solver{};
  // sweep
  std::vector<double> p_list;
  // check
  fpl_check_opts check_opts{};
  int layer_k = 3;
  std::vector<std::string> sign_conventions{"minus", "plus"};
  // output
  std::string out_dir = "out";
  bool emit_json = true, emit_csv = true, emit_gnuplot = true;
};

RunConfig parse_config(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw UsageError(file + ": cannot open config file");
  json root;
  try {
    root = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(file + ": " + e.what());
  }
  if (!root.is_object()) throw UsageError("config: expected a JSON object");
  for (auto it = root.begin(); it != root.end(); ++it) {
    const std::string& k = it.key();
    if (k != "domain" && k != "problem" && k != "solver" && k != "sweep" &&
        k != "check" && k != "output") {
      throw UsageError("config." + k + ": unknown key");
    }
  }

  RunConfig cfg;
  fpl_solve_opts_default(&cfg.solver);
  fpl_check_opts_default(&cfg.check_opts);

  const json* domain = find(root, "domain");
  if (!domain || !domain->is_object()) {
    throw UsageError("config.domain: required object");
  }
  check_keys(*domain, "domain", {"dim", "bounds", "n", "mask_rule",
                                 "collar_width"});
  cfg.dim = int_or(*domain, "domain", "dim", 1);
  if (cfg.dim != 1 && cfg.dim != 2) {
    throw UsageError("config.domain.dim: must be 1 or 2");
  }
  const json* bounds = find(*domain, "bounds");
  if (!bounds || !bounds->is_array()) {
    throw UsageError("config.domain.bounds: required array");
  }
  for (size_t i = 0; i < bounds->size(); ++i) {
    cfg.bounds.push_back(
        num_at((*bounds)[i], "domain.bounds[" + std::to_string(i) + "]"));
  }
  const size_t want = cfg.dim == 1 ? 2 : 4;
  if (cfg.bounds.size() != want) {
    throw UsageError("config.domain.bounds: expected " +
                     std::to_string(want) + " numbers");
  }
  const json* n = find(*domain, "n");
  if (!n) throw UsageError("config.domain.n: required");
  cfg.n = int_or(*domain, "domain", "n", 0);
  cfg.mask_rule = string_or(*domain, "domain", "mask_rule",
                            cfg.dim == 1 ? "interval" : "rectangle");
  cfg.collar_width = num_or(*domain, "domain", "collar_width", 0.0);

  const json* problem = find(root, "problem");
  if (problem) {
    if (!problem->is_object()) {
      throw UsageError("config.problem: expected object");
    }
    check_keys(*problem, "problem",
               {"variant", "s", "t", "theta", "p", "anchors", "alpha_rule"});
    cfg.variant = string_or(*problem, "problem", "variant", "P1");
    cfg.s = num_or(*problem, "problem", "s", 0.5);
    cfg.t = num_or(*problem, "problem", "t", 0.5);
    cfg.theta = num_or(*problem, "problem", "theta", 0.5);
    if (const json* pv = find(*problem, "p")) {
      cfg.p = num_at(*pv, "problem.p");
    }
    cfg.alpha_rule = string_or(*problem, "problem", "alpha_rule", "theta_p");
    if (cfg.alpha_rule != "theta_p") {
      throw UsageError("config.problem.alpha_rule: unknown rule '" +
                       cfg.alpha_rule + "' (available: theta_p)");
    }
    if (const json* anchors = find(*problem, "anchors")) {
      if (!anchors->is_object()) {
        throw UsageError("config.problem.anchors: expected object");
      }
      check_keys(*anchors, "problem.anchors", {"x0", "x1", "x2"});
      if (const json* v = find(*anchors, "x0")) {
        cfg.x0 = coords_at(*v, "problem.anchors.x0", cfg.dim);
      }
      if (const json* v = find(*anchors, "x1")) {
        cfg.x1 = coords_at(*v, "problem.anchors.x1", cfg.dim);
      }
      if (const json* v = find(*anchors, "x2")) {
        cfg.x2 = coords_at(*v, "problem.anchors.x2", cfg.dim);
      }
    }
  }

  if (const json* solver = find(root, "solver")) {
    if (!solver->is_object()) {
      throw UsageError("config.solver: expected object");
    }
    check_keys(*solver, "solver",
               {"step", "max_iter", "tol", "positivity", "init", "seed"});
    cfg.solver.step = num_or(*solver, "solver", "step", cfg.solver.step);
    cfg.solver.max_iter =
        int_or(*solver, "solver", "max_iter", cfg.solver.max_iter);
    cfg.solver.tol = num_or(*solver, "solver", "tol", cfg.solver.tol);
    cfg.solver.positivity =
        bool_or(*solver, "solver", "positivity", cfg.solver.positivity != 0)
            ? 1
            : 0;
    const std::string init = string_or(*solver, "solver", "init", "cones");
    if (init == "cones") {
      cfg.solver.init = 0;
    } else if (init == "random") {
      cfg.solver.init = 1;
    } else {
      throw UsageError("config.solver.init: must be \"cones\" or \"random\"");
    }
    if (const json* seed = find(*solver, "seed")) {
      if (!seed->is_number_unsigned() && !seed->is_number_integer()) {
        throw UsageError("config.solver.seed: expected integer");
      }
      cfg.solver.seed = seed->get<std::uint64_t>();
    }
  }

  if (const json* sweepb = find(root, "sweep")) {
    if (!sweepb->is_object()) {
      throw UsageError("config.sweep: expected object");
    }
    check_keys(*sweepb, "sweep", {"p_list"});
    const json* pl = find(*sweepb, "p_list");
    if (!pl || !pl->is_array()) {
      throw UsageError("config.sweep.p_list: required array");
    }
    for (size_t i = 0; i < pl->size(); ++i) {
      cfg.p_list.push_back(
          num_at((*pl)[i], "sweep.p_list[" + std::to_string(i) + "]"));
    }
  }

  if (const json* checkb = find(root, "check")) {
    if (!checkb->is_object()) {
      throw UsageError("config.check: expected object");
    }
    check_keys(*checkb, "check",
               {"limit_tol", "constraint_tol", "bound_tol", "layer_k",
                "sign_conventions"});
    cfg.check_opts.limit_tol =
        num_or(*checkb, "check", "limit_tol", cfg.check_opts.limit_tol);
    cfg.check_opts.constraint_tol = num_or(*checkb, "check", "constraint_tol",
                                           cfg.check_opts.constraint_tol);
    cfg.check_opts.bound_tol =
        num_or(*checkb, "check", "bound_tol", cfg.check_opts.bound_tol);
    cfg.layer_k = int_or(*checkb, "check", "layer_k", cfg.layer_k);
    if (const json* sc = find(*checkb, "sign_conventions")) {
      if (!sc->is_array()) {
        throw UsageError("config.check.sign_conventions: expected array");
      }
      cfg.sign_conventions.clear();
      for (size_t i = 0; i < sc->size(); ++i) {
        const json& v = (*sc)[i];
        if (!v.is_string() ||
            (v.get<std::string>() != "minus" &&
             v.get<std::string>() != "plus")) {
          throw UsageError("config.check.sign_conventions[" +
                           std::to_string(i) +
                           "]: must be \"minus\" or \"plus\"");
        }
        cfg.sign_conventions.push_back(v.get<std::string>());
      }
      if (cfg.sign_conventions.empty()) {
        throw UsageError("config.check.sign_conventions: must be non-empty");
      }
    }
  }

  if (const json* output = find(root, "output")) {
    if (!output->is_object()) {
      throw UsageError("config.output: expected object");
    }
    check_keys(*output, "output", {"directory", "formats"});
    cfg.out_dir = string_or(*output, "output", "directory", cfg.out_dir);
    if (const json* formats = find(*output, "formats")) {
      if (!formats->is_array()) {
        throw UsageError("config.output.formats: expected array");
      }
      cfg.emit_json = cfg.emit_csv = cfg.emit_gnuplot = false;
      for (size_t i = 0; i < formats->size(); ++i) {
        const json& v = (*formats)[i];
        const std::string f = v.is_string() ? v.get<std::string>() : "";
        if (f == "json") {
          cfg.emit_json = true;
        } else if (f == "csv") {
          cfg.emit_csv = true;
        } else if (f == "gnuplot") {
          cfg.emit_gnuplot = true;
        } else {
          throw UsageError("config.output.formats[" + std::to_string(i) +
                           "]: unknown format");
        }
      }
    }
  }

  return cfg;
}

// ------------------------------------------------------------- run setup

struct GridHandle {
  fpl_grid* g = nullptr;
  ~GridHandle() { fpl_grid_free(g); }
};

struct FieldHandle {
  fpl_field* f = nullptr;
  FieldHandle() = default;
  explicit FieldHandle(fpl_field* h) : f(h) {}
  FieldHandle(FieldHandle&& o) noexcept : f(o.f) { o.f = nullptr; }
  FieldHandle& operator=(FieldHandle&& o) noexcept {
    if (this != &o) {
      fpl_field_free(f);
      f = o.f;
      o.f = nullptr;
    }
    return *this;
  }
  FieldHandle(const FieldHandle&) = delete;
  FieldHandle& operator=(const FieldHandle&) = delete;
  ~FieldHandle() { fpl_field_free(f); }
};

struct ProblemHandle {
  fpl_problem* p = nullptr;
  ~ProblemHandle() { fpl_problem_free(p); }
};

void build_grid(const RunConfig& cfg, GridHandle& grid) {
  if (cfg.dim == 1) {
    check(fpl_grid_interval(cfg.bounds[0], cfg.bounds[1], cfg.n,
                            cfg.collar_width, &grid.g),
          "config.domain");
    if (cfg.mask_rule != "interval") {
      throw UsageError("config.domain.mask_rule: must be \"interval\" in 1D");
    }
  } else {
    const double b[4] = {cfg.bounds[0], cfg.bounds[1], cfg.bounds[2],
                         cfg.bounds[3]};
    check(fpl_grid_box2d(b, cfg.n, cfg.mask_rule.c_str(), cfg.collar_width,
                         &grid.g),
          "config.domain");
  }
}

int snap_anchor(const fpl_grid* g, const std::vector<double>& coords) {
  int k = -1;
  check(fpl_grid_nearest_interior(g, coords[0],
                                  coords.size() > 1 ? coords[1] : 0.0, &k),
        "anchor snap");
  return k;
}

// Anchors by variant: P1 needs x0; P2 needs x1 and x2; P1MAX none.
void resolve_anchors(const RunConfig& cfg, const fpl_grid* g, int& anchor0,
                     int& anchor1) {
  anchor0 = -1;
  anchor1 = -1;
  if (cfg.variant == "P1") {
    if (!cfg.x0) throw UsageError("config.problem.anchors.x0: required for P1");
    anchor0 = snap_anchor(g, *cfg.x0);
  } else if (cfg.variant == "P2") {
    if (!cfg.x1) throw UsageError("config.problem.anchors.x1: required for P2");
    if (!cfg.x2) throw UsageError("config.problem.anchors.x2: required for P2");
    anchor0 = snap_anchor(g, *cfg.x1);
    anchor1 = snap_anchor(g, *cfg.x2);
  } else if (cfg.variant != "P1MAX") {
    throw UsageError("config.problem.variant: must be P1, P1MAX, or P2");
  }
}

// The p used to *construct* the problem handle; sweeps override per record.
double effective_p(const RunConfig& cfg, const char* cmd) {
  if (cfg.p) return *cfg.p;
  if (!cfg.p_list.empty()) return cfg.p_list.front();
  throw UsageError(std::string("config.problem.p: required for ") + cmd);
}

void build_problem(const RunConfig& cfg, const fpl_grid* g, double p,
                   ProblemHandle& prob) {
  int anchor0 = -1, anchor1 = -1;
  resolve_anchors(cfg, g, anchor0, anchor1);
  check(fpl_problem_create(g, cfg.variant.c_str(), cfg.s, cfg.t, cfg.theta, p,
                           anchor0, anchor1, &prob.p),
        "config.problem");
}

// ------------------------------------------------------------- artifacts

fs::path resolve_out_dir(const RunConfig& cfg, const std::string& flag_dir) {
  // Precedence: --out flag, then FPLEIG_OUT_DIR, then the config block.
  if (!flag_dir.empty()) return flag_dir;
  if (const char* env = std::getenv("FPLEIG_OUT_DIR"); env && *env) {
    return env;
  }
  return cfg.out_dir;
}

void write_file(const fs::path& dir, const std::string& name,
                const std::string& content) {
  const fs::path path = dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError(path.string() + ": cannot write");
  out << content;
  if (!out) throw UsageError(path.string() + ": write failed");
  std::printf("wrote %s\n", path.string().c_str());
}

fs::path prepare_out_dir(const RunConfig& cfg, const std::string& flag_dir) {
  const fs::path dir = resolve_out_dir(cfg, flag_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw UsageError(dir.string() + ": cannot create directory");
  return dir;
}

void write_grid_json(const fs::path& dir, const fpl_grid* g) {
  char* s = nullptr;
  check(fpl_grid_json(g, &s), "grid report");
  write_file(dir, "grid.json", take_string(s));
}

std::string field_csv(const fpl_field* f) {
  char* s = nullptr;
  check(fpl_field_csv(f, &s), "field report");
  return take_string(s);
}

// Read a field back from its CSV artifact (header row, value last column).
FieldHandle read_field_csv(const fs::path& path, const fpl_grid* g) {
  std::ifstream in(path);
  if (!in) throw UsageError(path.string() + ": cannot open (run sweep first?)");
  std::string line;
  if (!std::getline(in, line)) {
    throw UsageError(path.string() + ": empty file");
  }
  std::vector<double> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const size_t comma = line.find_last_of(',');
    if (comma == std::string::npos) {
      throw UsageError(path.string() + ": malformed row");
    }
    try {
      values.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw UsageError(path.string() + ": malformed number");
    }
  }
  if (static_cast<int>(values.size()) != fpl_grid_interior_count(g)) {
    throw UsageError(path.string() + ": row count does not match the grid");
  }
  FieldHandle f;
  check(fpl_field_create(g, &f.f), "field alloc");
  check(fpl_field_set(f.f, values.data(), static_cast<int>(values.size())),
        path.string());
  return f;
}

// ------------------------------------------------------------- commands

int cmd_solve(const RunConfig& cfg, const std::string& flag_dir) {
  GridHandle grid;
  build_grid(cfg, grid);
  if (!cfg.p) throw UsageError("config.problem.p: required for solve");
  ProblemHandle prob;
  build_problem(cfg, grid.g, *cfg.p, prob);

  fpl_eigenpair* pair = nullptr;
  check(fpl_solve(prob.p, &cfg.solver, nullptr, nullptr, &pair), "solve");

  const fs::path dir = prepare_out_dir(cfg, flag_dir);
  if (cfg.emit_json) {
    write_grid_json(dir, grid.g);
    char* s = nullptr;
    check(fpl_eigenpair_json(pair, &s), "eigenpair report");
    write_file(dir, "eigenpair.json", take_string(s));
  }
  if (cfg.emit_csv) {
    FieldHandle u, v;
    check(fpl_eigenpair_field(pair, 0, &u.f), "eigenpair u");
    check(fpl_eigenpair_field(pair, 1, &v.f), "eigenpair v");
    write_file(dir, "u.csv", field_csv(u.f));
    write_file(dir, "v.csv", field_csv(v.f));
  }

  const int converged = fpl_eigenpair_converged(pair);
  std::printf(
      "solve: p=%s lambda_root=%s iterations=%d weak_residual=%s %s\n",
      gnum(*cfg.p).c_str(), g17(fpl_eigenpair_lambda_root(pair)).c_str(),
      fpl_eigenpair_iterations(pair),
      g17(fpl_eigenpair_weak_residual(pair)).c_str(),
      converged ? "converged" : "NOT converged");
  fpl_eigenpair_free(pair);
  return converged ? 0 : 1;
}

int cmd_sweep(const RunConfig& cfg, const std::string& flag_dir) {
  if (cfg.p_list.empty()) {
    throw UsageError("config.sweep.p_list: required non-empty list");
  }
  GridHandle grid;
  build_grid(cfg, grid);
  ProblemHandle prob;
  build_problem(cfg, grid.g, effective_p(cfg, "sweep"), prob);

  fpl_sweep* sweep = nullptr;
  check(fpl_sweep_run(prob.p, cfg.p_list.data(),
                      static_cast<int>(cfg.p_list.size()), &cfg.solver,
                      &cfg.check_opts, &sweep),
        "sweep");

  const fs::path dir = prepare_out_dir(cfg, flag_dir);
  if (cfg.emit_json) {
    write_grid_json(dir, grid.g);
    char* s = nullptr;
    check(fpl_sweep_json(sweep, &s), "sweep report");
    write_file(dir, "sweep.json", take_string(s));
    s = nullptr;
    check(fpl_sweep_checks_json(sweep, &s), "checks report");
    write_file(dir, "checks.json", take_string(s));
  }
  if (cfg.emit_csv) {
    char* s = nullptr;
    check(fpl_sweep_csv(sweep, &s), "sweep table");
    write_file(dir, "sweep.csv", take_string(s));
    const int count = fpl_sweep_record_count(sweep);
    for (int i = 0; i < count; ++i) {
      fpl_sweep_record rec{};
      check(fpl_sweep_get_record(sweep, i, &rec), "sweep record");
      FieldHandle u, v;
      check(fpl_sweep_field(sweep, i, 0, &u.f), "sweep field u");
      check(fpl_sweep_field(sweep, i, 1, &v.f), "sweep field v");
      write_file(dir, "u_p" + gnum(rec.p) + ".csv", field_csv(u.f));
      write_file(dir, "v_p" + gnum(rec.p) + ".csv", field_csv(v.f));
    }
  }
  if (cfg.emit_gnuplot) {
    char* s = nullptr;
    check(fpl_sweep_gnuplot_lambda(sweep, &s), "gnuplot lambda");
    write_file(dir, "lambda_root.dat", take_string(s));
    s = nullptr;
    check(fpl_sweep_gnuplot_holder(sweep, &s), "gnuplot holder");
    write_file(dir, "holder.dat", take_string(s));
  }

  const int checks = fpl_sweep_check_count(sweep);
  int failed = 0;
  for (int i = 0; i < checks; ++i) {
    const char* name = nullptr;
    int pass = 0;
    double gap = 0.0;
    check(fpl_sweep_check(sweep, i, &name, &pass, &gap), "check row");
    std::printf("check %-24s %s  gap=%s\n", name, pass ? "pass" : "FAIL",
                g17(gap).c_str());
    if (!pass) ++failed;
  }
  const int all_pass = fpl_sweep_all_pass(sweep);
  std::printf("sweep: %d records, limit=%s, %d/%d checks passed\n",
              fpl_sweep_record_count(sweep),
              g17(fpl_sweep_limit(sweep)).c_str(), checks - failed, checks);
  fpl_sweep_free(sweep);
  return all_pass ? 0 : 1;
}

int cmd_cones(const RunConfig& cfg, const std::string& flag_dir) {
  GridHandle grid;
  build_grid(cfg, grid);
  ProblemHandle prob;
  build_problem(cfg, grid.g, effective_p(cfg, "cones"), prob);

  FieldHandle phi, psi;
  check(fpl_cone_pair(prob.p, &phi.f, &psi.f), "cone pair");

  const double R = fpl_grid_inradius(grid.g);
  double limit = 0.0;
  check(fpl_lambda_infinity(cfg.s, cfg.t, cfg.theta, R, &limit), "limit");

  // Closed-form identities: sup-norm level and unit sup-norm coupling.
  const double sup_phi = fpl_field_sup_norm(phi.f);
  const double sup_expected = std::pow(R, (cfg.theta - 1.0) * (cfg.t - cfg.s));
  int anchor_v = -1;
  if (cfg.variant == "P1") {
    anchor_v = snap_anchor(grid.g, *cfg.x0);
  } else if (cfg.variant == "P2") {
    anchor_v = snap_anchor(grid.g, *cfg.x2);
  } else {
    anchor_v = fpl_field_argmax(psi.f);
  }
  std::vector<double> psi_values(fpl_field_size(psi.f));
  check(fpl_field_get(psi.f, psi_values.data(),
                      static_cast<int>(psi_values.size())),
        "psi values");
  const double coupling =
      std::pow(sup_phi, cfg.theta) *
      std::pow(std::fabs(psi_values[anchor_v]), 1.0 - cfg.theta);
  const double sup_gap = std::fabs(sup_phi - sup_expected);
  const double coupling_gap = std::fabs(coupling - 1.0);
  const bool identities_ok = sup_gap <= 1e-12 && coupling_gap <= 1e-12;

  double log_q = 0.0, q_root = 0.0;
  check(fpl_rayleigh(prob.p, phi.f, psi.f, &log_q, &q_root), "cone rayleigh");

  const fs::path dir = prepare_out_dir(cfg, flag_dir);
  if (cfg.emit_csv) {
    write_file(dir, "phi.csv", field_csv(phi.f));
    write_file(dir, "psi.csv", field_csv(psi.f));
  }
  if (cfg.emit_json) {
    write_grid_json(dir, grid.g);
    std::string out = "{";
    out += "\"inradius\":" + g17(R);
    out += ",\"limit\":" + g17(limit);
    out += ",\"sup_phi\":" + g17(sup_phi);
    out += ",\"sup_expected\":" + g17(sup_expected);
    out += ",\"sup_gap\":" + g17(sup_gap);
    out += ",\"coupling\":" + g17(coupling);
    out += ",\"coupling_gap\":" + g17(coupling_gap);
    out += ",\"identities_pass\":";
    out += identities_ok ? "true" : "false";
    out += ",\"p\":" + g17(effective_p(cfg, "cones"));
    out += ",\"log_rayleigh\":" + g17(log_q);
    out += ",\"rayleigh_root\":" + g17(q_root);
    out += "}\n";
    write_file(dir, "cones.json", out);
  }

  std::printf("cones: sup gap=%s coupling gap=%s rayleigh_root=%s %s\n",
              g17(sup_gap).c_str(), g17(coupling_gap).c_str(),
              g17(q_root).c_str(), identities_ok ? "pass" : "FAIL");
  return identities_ok ? 0 : 1;
}

int cmd_viscosity_check(const RunConfig& cfg, const std::string& flag_dir) {
  if (cfg.p_list.empty()) {
    throw UsageError("config.sweep.p_list: required non-empty list");
  }
  GridHandle grid;
  build_grid(cfg, grid);
  ProblemHandle prob;
  build_problem(cfg, grid.g, effective_p(cfg, "viscosity-check"), prob);
  int anchor0 = -1, anchor1 = -1;
  resolve_anchors(cfg, grid.g, anchor0, anchor1);

  const double R = fpl_grid_inradius(grid.g);
  double lambda_inf = 0.0;
  check(fpl_lambda_infinity(cfg.s, cfg.t, cfg.theta, R, &lambda_inf),
        "limit");

  const fs::path dir = prepare_out_dir(cfg, flag_dir);

  // The v-residual trend across every sweep field present in the directory.
  std::string trend = "[";
  std::vector<double> resv_sups;
  for (size_t i = 0; i < cfg.p_list.size(); ++i) {
    const double p = cfg.p_list[i];
    const fs::path vpath = dir / ("v_p" + gnum(p) + ".csv");
    if (!fs::exists(vpath)) continue;
    FieldHandle v = read_field_csv(vpath, grid.g);
    // Source of the v Dirac row: x0 for P1, the max for P1MAX, x2 for P2.
    const int source = cfg.variant == "P2"
                           ? anchor1
                           : (cfg.variant == "P1MAX" ? fpl_field_argmax(v.f)
                                                     : anchor0);
    fpl_residual* rep = nullptr;
    check(fpl_residual_v(v.f, source, cfg.t, cfg.layer_k, &rep),
          "residual_v");
    const double sup = fpl_residual_sup_norm(rep);
    resv_sups.push_back(sup);
    if (trend.size() > 1) trend += ",";
    trend += "{\"p\":" + g17(p) + ",\"sup_norm\":" + g17(sup) + "}";
    fpl_residual_free(rep);
  }
  trend += "]";
  if (resv_sups.empty()) {
    throw UsageError((dir / ("v_p" + gnum(cfg.p_list.back()) + ".csv"))
                         .string() +
                     ": not found (run sweep into this directory first)");
  }

  // Full reports at the largest available p.
  const double p_last = cfg.p_list.back();
  const fs::path upath = dir / ("u_p" + gnum(p_last) + ".csv");
  const fs::path vpath = dir / ("v_p" + gnum(p_last) + ".csv");
  FieldHandle u = read_field_csv(upath, grid.g);
  FieldHandle v = read_field_csv(vpath, grid.g);

  const int source = cfg.variant == "P2"
                         ? anchor1
                         : (cfg.variant == "P1MAX" ? fpl_field_argmax(v.f)
                                                   : anchor0);
  std::vector<double> v_values(fpl_field_size(v.f));
  check(fpl_field_get(v.f, v_values.data(),
                      static_cast<int>(v_values.size())),
        "v values");
  const double v_anchor = v_values[source];
  const int u_exclude = cfg.variant == "P2" ? anchor0 : -1;

  fpl_residual* rep_v = nullptr;
  check(fpl_residual_v(v.f, source, cfg.t, cfg.layer_k, &rep_v), "residual_v");

  std::string out = "{";
  out += "\"p\":" + g17(p_last);
  out += ",\"layer_k\":" + std::to_string(cfg.layer_k);
  out += ",\"lambda_infinity\":" + g17(lambda_inf);
  out += ",\"v\":{\"sup_norm\":" + g17(fpl_residual_sup_norm(rep_v)) +
         ",\"count\":" + std::to_string(fpl_residual_count(rep_v)) + "}";
  if (cfg.emit_csv) {
    char* s = nullptr;
    check(fpl_residual_csv(rep_v, &s), "residual_v csv");
    write_file(dir, "residual_v.csv", take_string(s));
  }
  fpl_residual_free(rep_v);

  double best_sup = 0.0;
  std::string best_name;
  out += ",\"u\":{";
  for (size_t i = 0; i < cfg.sign_conventions.size(); ++i) {
    const std::string& name = cfg.sign_conventions[i];
    fpl_residual* rep = nullptr;
    check(fpl_residual_u(u.f, v_anchor, cfg.s, cfg.theta, lambda_inf,
                         cfg.layer_k, name.c_str(), u_exclude, &rep),
          "residual_u");
    const double sup = fpl_residual_sup_norm(rep);
    if (i > 0) out += ",";
    out += "\"" + name + "\":{\"sup_norm\":" + g17(sup) +
           ",\"count\":" + std::to_string(fpl_residual_count(rep)) + "}";
    if (best_name.empty() || sup < best_sup) {
      best_sup = sup;
      best_name = name;
    }
    if (cfg.emit_csv) {
      char* s = nullptr;
      check(fpl_residual_csv(rep, &s), "residual_u csv");
      write_file(dir, "residual_u_" + name + ".csv", take_string(s));
    }
    fpl_residual_free(rep);
  }
  out += "}";
  out += ",\"preferred_convention\":\"" + best_name + "\"";
  out += ",\"v_trend\":" + trend;
  const bool monotone = resv_sups.size() < 2 ||
                        resv_sups.back() <= resv_sups.front();
  out += ",\"v_trend_non_increasing\":";
  out += monotone ? "true" : "false";
  out += "}\n";
  if (cfg.emit_json) write_file(dir, "viscosity.json", out);

  std::printf(
      "viscosity-check: p=%s resv_sup=%s preferred=%s (sup=%s) trend=%s\n",
      gnum(p_last).c_str(), g17(resv_sups.back()).c_str(), best_name.c_str(),
      g17(best_sup).c_str(), monotone ? "non-increasing" : "INCREASING");
  return 0;
}

int cmd_selftest(bool verbose) {
  char* log = nullptr;
  int failures = 0;
  check(fpl_selftest(verbose ? 1 : 0, &log, &failures), "selftest");
  const std::string text = take_string(log);
  if (!text.empty()) std::fputs(text.c_str(), stdout);
  std::printf("selftest: %d failure(s)\n", failures);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fractional p-Laplacian eigensystem toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", fpl_version());

  std::string config_file;
  std::string out_dir;
  double flag_p = 0.0;
  double flag_tol = 0.0;
  int flag_max_iter = 0;
  std::uint64_t flag_seed = 0;
  std::string flag_init;
  bool verbose = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("-c,--config", config_file, "run configuration (JSON)")
        ->required();
    cmd->add_option("-o,--out", out_dir,
                    "output directory (overrides FPLEIG_OUT_DIR and config)");
  };
  auto add_solver_flags = [&](CLI::App* cmd) {
    cmd->add_option("--p", flag_p, "override problem.p");
    cmd->add_option("--tol", flag_tol, "override solver.tol");
    cmd->add_option("--max-iter", flag_max_iter, "override solver.max_iter");
    cmd->add_option("--seed", flag_seed, "override solver.seed");
    cmd->add_option("--init", flag_init, "override solver.init (cones|random)");
  };

  CLI::App* solve = app.add_subcommand("solve", "minimize one Rayleigh quotient");
  add_common(solve);
  add_solver_flags(solve);
  CLI::App* sweep = app.add_subcommand("sweep", "solve along a p list and run limit checks");
  add_common(sweep);
  add_solver_flags(sweep);
  CLI::App* cones = app.add_subcommand("cones", "emit the extremal cone pair and its identities");
  add_common(cones);
  CLI::App* visc = app.add_subcommand("viscosity-check", "limit-equation residuals on sweep output");
  add_common(visc);
  CLI::App* self = app.add_subcommand("selftest", "built-in cross-check battery");
  self->add_flag("-v,--verbose", verbose, "per-check report lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    // CLI11 returns 0 for --help/--version; anything else is invalid usage.
    return code == 0 ? 0 : 2;
  }

  try {
    if (self->parsed()) return cmd_selftest(verbose);

    RunConfig cfg = parse_config(config_file);
    if (solve->count("--p") || sweep->count("--p")) cfg.p = flag_p;
    if (solve->count("--tol") || sweep->count("--tol")) {
      cfg.solver.tol = flag_tol;
    }
    if (solve->count("--max-iter") || sweep->count("--max-iter")) {
      cfg.solver.max_iter = flag_max_iter;
    }
    if (solve->count("--seed") || sweep->count("--seed")) {
      cfg.solver.seed = flag_seed;
    }
    if (solve->count("--init") || sweep->count("--init")) {
      if (flag_init == "cones") {
        cfg.solver.init = 0;
      } else if (flag_init == "random") {
        cfg.solver.init = 1;
      } else {
        throw UsageError("--init: must be \"cones\" or \"random\"");
      }
    }

    if (solve->parsed()) return cmd_solve(cfg, out_dir);
    if (sweep->parsed()) return cmd_sweep(cfg, out_dir);
    if (cones->parsed()) return cmd_cones(cfg, out_dir);
    if (visc->parsed()) return cmd_viscosity_check(cfg, out_dir);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const RunError& e) {
    std::fprintf(stderr, "run failed: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
