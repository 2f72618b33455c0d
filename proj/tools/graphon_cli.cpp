// graphon: command-line driver over the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "graphon_c.h"

namespace {

// sysexits-style exit codes.
enum Exit {
  kOk = 0,
  kSolverFailed = 1,
  kInfeasible = 2,
  kUsage = 64,
  kDataErr = 65,
  kNoInput = 66,
  kSoftware = 70,
  kCantCreate = 73,
};

struct CliError {
  int code;
  std::string message;
};

int exit_for(graphon_status s) {
  switch (s) {
    case GRAPHON_OK:
      return kOk;
    case GRAPHON_INFEASIBLE:
      return kInfeasible;
    case GRAPHON_SOLVER_FAILURE:
      return kSolverFailed;
    case GRAPHON_PARSE_ERROR:
      return kDataErr;
    case GRAPHON_INVALID_ARGUMENT:
      return kUsage;
    default:
      return kSoftware;
  }
}

void check(graphon_status s) {
  if (s != GRAPHON_OK) throw CliError{exit_for(s), graphon_last_error()};
}

struct CString {
  char* p = nullptr;
  CString() = default;
  CString(const CString&) = delete;
  CString& operator=(const CString&) = delete;
  ~CString() { graphon_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

struct GraphonPtr {
  graphon_graphon* p = nullptr;
  GraphonPtr() = default;
  GraphonPtr(GraphonPtr&& o) noexcept : p(std::exchange(o.p, nullptr)) {}
  GraphonPtr& operator=(GraphonPtr&& o) noexcept {
    std::swap(p, o.p);
    return *this;
  }
  ~GraphonPtr() { graphon_free(p); }
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError{kCantCreate, "cannot write " + path};
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
  if (!out.flush()) throw CliError{kCantCreate, "cannot write " + path};
}

void warn_lines(const std::string& log) {
  std::istringstream in(log);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) std::cerr << "warning: " << line << '\n';
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{kNoInput, "cannot read " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

GraphonPtr load_graphon(const std::string& path) {
  const std::string text = read_file(path);
  GraphonPtr g;
  const graphon_status s = graphon_from_json(text.c_str(), &g.p);
  if (s != GRAPHON_OK) throw CliError{kDataErr, path + ": " + graphon_last_error()};
  return g;
}

struct SolverFlags {
  graphon_options opts{};
  SolverFlags() { graphon_options_default(&opts); }

  void attach(CLI::App* cmd) {
    cmd->add_option("--k-max", opts.k_max, "largest pode count tried")
        ->check(CLI::Range(1, 8))
        ->capture_default_str();
    cmd->add_option("--starts", opts.starts, "multi-start count per pode count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--seed", opts.seed, "64-bit seed")->capture_default_str();
    cmd->add_option("--tol", opts.tol, "constraint tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }
};

struct GridFlags {
  graphon_sweep_spec spec{0.0, 1.0, 1, 0, 0.0, 0.0, 1, 1};
  std::string t_mode = "absolute";

  void attach(CLI::App* cmd) {
    cmd->add_option("--e-min", spec.e_min)->required();
    cmd->add_option("--e-max", spec.e_max)->required();
    cmd->add_option("--e-steps", spec.e_steps)->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--t-min", spec.t_min)->required();
    cmd->add_option("--t-max", spec.t_max)->required();
    cmd->add_option("--t-steps", spec.t_steps)->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--t-mode", t_mode,
                    "absolute, or relative: t fractions of [t_min(e), t_max(e)]")
        ->check(CLI::IsMember({"absolute", "relative"}))
        ->capture_default_str();
  }

  void finish(int workers) {
    spec.t_relative = t_mode == "relative" ? 1 : 0;
    spec.workers = workers;
  }
};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CliError{kUsage, "--deltas: not a number: '" + item + "'"};
    }
  }
  if (out.empty()) throw CliError{kUsage, "--deltas: empty list"};
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy-optimal multipodal graphons under edge/triangle constraints"};
  app.require_subcommand(1);
  int workers = 1;
  std::string out_path;

  SolverFlags solver;

  // optimize
  double e = 0.0, t = 0.0;
  int k = 0;
  bool diagnostics = false;
  auto* optimize = app.add_subcommand("optimize", "maximize entropy at (e, t)");
  optimize->add_option("--e", e, "edge density")->required();
  optimize->add_option("--t", t, "triangle density")->required();
  optimize->add_option("--k", k, "pode count (0: try 1..k-max)")->check(CLI::Range(0, 8));
  optimize->add_flag("--diagnostics", diagnostics, "add the worth-maximization gap");
  optimize->add_option("--workers", workers, "threads for independent starts")
      ->check(CLI::PositiveNumber);
  optimize->add_option("--out", out_path, "output file (default stdout)");
  solver.attach(optimize);

  // sweep
  GridFlags sweep_grid;
  std::string svg_path;
  auto* sweep = app.add_subcommand("sweep", "solve and classify every cell of an (e, t) grid");
  sweep_grid.attach(sweep);
  sweep->add_option("--workers", workers)->check(CLI::PositiveNumber);
  sweep->add_option("--out", out_path, "CSV output (default stdout)");
  sweep->add_option("--svg", svg_path, "also write an SVG phase diagram");
  solver.attach(sweep);

  // boundary
  double b_min = 0.0, b_max = 1.0;
  int b_steps = 11;
  auto* boundary = app.add_subcommand("boundary", "feasible-region boundary table");
  boundary->add_option("--e-min", b_min)->capture_default_str();
  boundary->add_option("--e-max", b_max)->capture_default_str();
  boundary->add_option("--steps", b_steps)->check(CLI::PositiveNumber)->capture_default_str();
  boundary->add_option("--out", out_path);

  // classify
  std::string classify_file;
  auto* classify = app.add_subcommand("classify", "phase label of a graphon file or of the optimum at (e, t)");
  classify->add_option("file", classify_file, "graphon JSON");
  auto* c_e = classify->add_option("--e", e);
  auto* c_t = classify->add_option("--t", t);
  c_e->needs(c_t);
  c_t->needs(c_e);
  classify->add_option("--workers", workers)->check(CLI::PositiveNumber);
  classify->add_option("--out", out_path);
  solver.attach(classify);

  // ergm
  GridFlags ergm_grid;
  bool grid_mode = false;
  auto* ergm = app.add_subcommand("ergm", "ERGM-invisibility test at (e, t) or over a grid");
  auto* g_e = ergm->add_option("--e", e);
  auto* g_t = ergm->add_option("--t", t);
  ergm->add_flag("--grid", grid_mode, "grid mode (CSV); takes the sweep grid flags");
  ergm->add_option("--e-min", ergm_grid.spec.e_min);
  ergm->add_option("--e-max", ergm_grid.spec.e_max);
  ergm->add_option("--e-steps", ergm_grid.spec.e_steps)->check(CLI::PositiveNumber);
  ergm->add_option("--t-min", ergm_grid.spec.t_min);
  ergm->add_option("--t-max", ergm_grid.spec.t_max);
  ergm->add_option("--t-steps", ergm_grid.spec.t_steps)->check(CLI::PositiveNumber);
  ergm->add_option("--t-mode", ergm_grid.t_mode)->check(CLI::IsMember({"absolute", "relative"}));
  ergm->add_option("--workers", workers)->check(CLI::PositiveNumber);
  ergm->add_option("--out", out_path);
  solver.attach(ergm);

  // scaling
  std::string kind;
  std::string deltas = "1e-2,1e-3,1e-4,1e-5";
  auto* scaling = app.add_subcommand("scaling", "near-boundary scaling study (CSV)");
  scaling->add_option("--kind", kind, "flat, scallop or top")
      ->required()
      ->check(CLI::IsMember({"flat", "scallop", "top"}));
  scaling->add_option("--e", e)->required();
  scaling->add_option("--deltas", deltas, "comma-separated distances to the boundary")
      ->capture_default_str();
  scaling->add_option("--workers", workers)->check(CLI::PositiveNumber);
  scaling->add_option("--out", out_path);
  solver.attach(scaling);

  // worthcheck
  std::string worth_file;
  double alpha = 0.0, beta = 0.0;
  auto* worthcheck = app.add_subcommand("worthcheck", "worth spread and worth maximizers of a graphon");
  worthcheck->add_option("file", worth_file, "graphon JSON")->required();
  auto* w_a = worthcheck->add_option("--alpha", alpha);
  auto* w_b = worthcheck->add_option("--beta", beta);
  w_a->needs(w_b);
  w_b->needs(w_a);
  worthcheck->add_option("--seed", solver.opts.seed)->capture_default_str();
  worthcheck->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::CallForAllHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& err) {
    std::cerr << "error: " << err.what() << "\n\n" << app.help();
    return kUsage;
  }
  solver.opts.threads = workers;

  try {
    if (*optimize) {
      graphon_result* raw = nullptr;
      check(graphon_optimize(e, t, k, &solver.opts, &raw));
      std::unique_ptr<graphon_result, decltype(&graphon_result_free)> r(raw, graphon_result_free);
      CString json;
      check(graphon_result_json(r.get(), diagnostics ? 1 : 0, &json.p));
      emit(json.str(), out_path);
    } else if (*sweep) {
      sweep_grid.finish(workers);
      solver.opts.threads = 1;
      CString csv, svg, log;
      check(graphon_sweep(&sweep_grid.spec, &solver.opts, &csv.p, svg_path.empty() ? nullptr : &svg.p,
                          &log.p));
      warn_lines(log.str());
      if (csv.str().find('\n') + 1 == csv.str().size()) {
        std::cerr << "warning: no feasible cells in the grid\n";
      }
      emit(csv.str(), out_path);
      if (!svg_path.empty()) emit(svg.str(), svg_path);
    } else if (*boundary) {
      CString csv;
      check(graphon_boundary_csv(b_min, b_max, b_steps, &csv.p));
      emit(csv.str(), out_path);
    } else if (*classify) {
      GraphonPtr g;
      if (!classify_file.empty()) {
        if (c_e->count() > 0) throw CliError{kUsage, "classify takes a file or --e/--t, not both"};
        g = load_graphon(classify_file);
      } else {
        if (c_e->count() == 0) throw CliError{kUsage, "classify needs a graphon file or --e and --t"};
        graphon_result* raw = nullptr;
        check(graphon_optimize(e, t, 0, &solver.opts, &raw));
        std::unique_ptr<graphon_result, decltype(&graphon_result_free)> r(raw, graphon_result_free);
        check(graphon_result_graphon(r.get(), &g.p));
      }
      CString json;
      check(graphon_classify_json(g.p, &json.p));
      emit(json.str(), out_path);
    } else if (*ergm) {
      if (grid_mode) {
        ergm_grid.finish(workers);
        solver.opts.threads = 1;
        CString csv, log;
        check(graphon_ergm_grid_csv(&ergm_grid.spec, &solver.opts, &csv.p, &log.p));
        warn_lines(log.str());
        emit(csv.str(), out_path);
      } else {
        if (g_e->count() == 0 || g_t->count() == 0) {
          throw CliError{kUsage, "ergm needs --e and --t (or --grid)"};
        }
        CString json;
        check(graphon_invisibility_json(e, t, &solver.opts, &json.p));
        emit(json.str(), out_path);
      }
    } else if (*scaling) {
      const auto d = parse_list(deltas);
      CString csv;
      const graphon_status s =
          graphon_scaling_csv(kind.c_str(), e, d.data(), d.size(), &solver.opts, &csv.p);
      if (csv.p) emit(csv.str(), out_path);
      check(s);
    } else if (*worthcheck) {
      GraphonPtr g = load_graphon(worth_file);
      int have = w_a->count() > 0 ? 1 : 0;
      if (!have) {
        const std::string text = read_file(worth_file);
        const graphon_status s = graphon_multipliers_from_json(text.c_str(), &have, &alpha, &beta);
        if (s != GRAPHON_OK) throw CliError{kDataErr, worth_file + ": " + graphon_last_error()};
      }
      CString json;
      check(graphon_worthcheck_json(g.p, have, alpha, beta, &solver.opts, &json.p));
      emit(json.str(), out_path);
    }
  } catch (const CliError& err) {
    std::cerr << "error: " << err.message << '\n';
    return err.code;
  }
  return kOk;
}
