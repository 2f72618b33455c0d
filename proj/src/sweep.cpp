#include "graphon/sweep.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <sstream>

#include "graphon/boundary.hpp"
#include "graphon/error.hpp"
#include "graphon/random.hpp"
#include "parallel.hpp"
#include "text.hpp"

namespace graphon {

namespace {

constexpr std::uint64_t kCellStream = 7000;

std::string where(const SweepCell& c) {
  return "e=" + detail::num(c.e) + " t=" + detail::num(c.t);
}

SolverOptions cell_options(const SweepSpec& spec, std::size_t index) {
  SolverOptions o = spec.solver;
  o.seed = derive_seed(spec.solver.seed, kCellStream, index);
  o.threads = 1;
  return o;
}

// Runs fn on every feasible cell; infeasible cells and Error throws are
// logged in grid order.
template <typename Row, typename Fn>
void for_cells(const SweepSpec& spec, std::vector<Row>& rows, std::vector<std::string>& log,
               Fn fn) {
  spec.validate();
  const auto cells = sweep_cells(spec);
  std::vector<std::optional<Row>> slots(cells.size());
  std::vector<std::string> notes(cells.size());
  detail::parallel_for(static_cast<int>(cells.size()), spec.workers, [&](int i) {
    const auto idx = static_cast<std::size_t>(i);
    const SweepCell& c = cells[idx];
    if (!contains(c.e, c.t)) {
      notes[idx] = "skipped infeasible cell " + where(c);
      return;
    }
    try {
      slots[idx] = fn(c, cell_options(spec, idx));
    } catch (const Error& err) {
      notes[idx] = "failed at " + where(c) + ": " + err.what();
    }
  });
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (slots[i]) rows.push_back(std::move(*slots[i]));
    if (!notes[i].empty()) log.push_back(notes[i]);
  }
}

const char* region_color(const std::string& tag) {
  if (tag == "ER") return "#1f77b4";
  if (tag == "A(2,0)") return "#2ca02c";
  if (tag.rfind("C(", 0) == 0) return "#d62728";
  if (tag == "F(1,1)") return "#9467bd";
  return "#7f7f7f";
}

}  // namespace

void SweepSpec::validate() const {
  const auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (e_steps < 1 || t_steps < 1) fail(ErrorCode::kInvalidArgument, "steps must be at least 1");
  if (!in_unit(e_min) || !in_unit(e_max) || e_min > e_max) {
    fail(ErrorCode::kInvalidArgument, "e range must satisfy 0 <= e_min <= e_max <= 1");
  }
  if (!in_unit(t_min) || !in_unit(t_max) || t_min > t_max) {
    fail(ErrorCode::kInvalidArgument, "t range must satisfy 0 <= t_min <= t_max <= 1");
  }
  if (workers < 1) fail(ErrorCode::kInvalidArgument, "workers must be at least 1");
}

std::vector<double> linspace(double lo, double hi, int steps) {
  std::vector<double> out;
  if (steps == 1) return {lo};
  for (int i = 0; i < steps; ++i) {
    out.push_back(i == steps - 1 ? hi : lo + (hi - lo) * i / (steps - 1));
  }
  return out;
}

std::vector<SweepCell> sweep_cells(const SweepSpec& spec) {
  std::vector<SweepCell> cells;
  for (double e : linspace(spec.e_min, spec.e_max, spec.e_steps)) {
    for (double f : linspace(spec.t_min, spec.t_max, spec.t_steps)) {
      double t = f;
      if (spec.t_mode == TMode::kRelative) {
        const double lo = min_triangle_density(e);
        t = lo + f * (max_triangle_density(e) - lo);
      }
      cells.push_back({e, t});
    }
  }
  return cells;
}

SweepOutcome run_sweep(const SweepSpec& spec) {
  SweepOutcome out;
  for_cells(spec, out.rows, out.log, [](const SweepCell& c, const SolverOptions& o) {
    SweepRow row;
    row.cell = c;
    row.result = maximize_entropy_auto(c.e, c.t, o);
    row.label = classify(row.result);
    return row;
  });
  return out;
}

std::string sweep_csv(const SweepOutcome& out) {
  std::ostringstream csv;
  csv << kSweepHeader << '\n';
  for (const auto& row : out.rows) {
    const auto& r = row.result;
    const auto& l = row.label;
    csv << detail::num(row.cell.e) << ',' << detail::num(row.cell.t) << ','
        << detail::num(r.entropy) << ',' << detail::num(r.multipliers.alpha) << ','
        << detail::num(r.multipliers.beta) << ',' << r.graphon.size() << ',';
    if (l.symmetry) {
      csv << l.symmetry->first << ',' << l.symmetry->second << ',';
    } else {
      csv << ",,";
    }
    csv << l.rank << ',' << detail::num(l.order_param(2)) << ',' << detail::num(l.order_param(3))
        << ',' << detail::num(l.order_param(4)) << ',' << l.region_tag << ','
        << detail::num(r.el_residual) << ',' << detail::num(r.worth_spread) << ','
        << r.distinct_optima << '\n';
  }
  return csv.str();
}

std::string sweep_svg(const SweepOutcome& out) {
  constexpr double kW = 640, kH = 480, kPad = 50;
  const auto x = [&](double e) { return kPad + e * (kW - 2 * kPad); };
  const auto y = [&](double t) { return kH - kPad - t * (kH - 2 * kPad); };
  std::ostringstream svg;
  svg.setf(std::ios::fixed);
  svg.precision(2);
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kW
      << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW << ' ' << kH << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<rect x=\"" << kPad << "\" y=\"" << kPad << "\" width=\"" << kW - 2 * kPad
      << "\" height=\"" << kH - 2 * kPad << "\" fill=\"none\" stroke=\"black\"/>\n";
  const auto curve = [&](auto fn, const char* stroke, const char* dash) {
    svg << "<polyline fill=\"none\" stroke=\"" << stroke << "\"";
    if (dash) svg << " stroke-dasharray=\"" << dash << "\"";
    svg << " points=\"";
    for (int i = 0; i <= 400; ++i) {
      const double e = i / 400.0;
      svg << (i ? " " : "") << x(e) << ',' << y(fn(e));
    }
    svg << "\"/>\n";
  };
  curve([](double e) { return min_triangle_density(e); }, "black", nullptr);
  curve([](double e) { return max_triangle_density(e); }, "black", nullptr);
  curve([](double e) { return er_curve(e); }, "#555555", "4 3");
  std::map<std::string, const char*> seen;
  for (const auto& row : out.rows) {
    const char* color = region_color(row.label.region_tag);
    seen.emplace(row.label.region_tag, color);
    svg << "<circle cx=\"" << x(row.cell.e) << "\" cy=\"" << y(row.cell.t)
        << "\" r=\"3\" fill=\"" << color << "\"><title>" << row.label.region_tag << " e="
        << detail::num(row.cell.e) << " t=" << detail::num(row.cell.t) << "</title></circle>\n";
  }
  double ly = kPad + 12;
  for (const auto& [tag, color] : seen) {
    svg << "<circle cx=\"" << kPad + 12 << "\" cy=\"" << ly - 4 << "\" r=\"4\" fill=\"" << color
        << "\"/><text x=\"" << kPad + 22 << "\" y=\"" << ly
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << tag << "</text>\n";
    ly += 16;
  }
  svg << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 15
      << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">edge density e</text>\n"
      << "<text x=\"15\" y=\"" << kH / 2
      << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
      << kH / 2 << ")\">triangle density t</text>\n"
      << "</svg>\n";
  return svg.str();
}

std::string boundary_csv(double e_min, double e_max, int steps) {
  if (steps < 1 || !(e_min >= 0.0 && e_max <= 1.0 && e_min <= e_max)) {
    fail(ErrorCode::kInvalidArgument, "boundary grid needs 0 <= e_min <= e_max <= 1, steps >= 1");
  }
  std::ostringstream csv;
  csv << "e,t_min,t_er,t_max,n,c0,p\n";
  for (double e : linspace(e_min, e_max, steps)) {
    csv << detail::num(e) << ',' << detail::num(min_triangle_density(e)) << ','
        << detail::num(er_curve(e)) << ',' << detail::num(max_triangle_density(e)) << ',';
    if (e >= 0.5 && e < 1.0) {
      const ScallopSpec sp = scallop_params(e);
      csv << sp.n << ',' << detail::num(sp.c0) << ',' << detail::num(sp.p) << '\n';
    } else {
      csv << ",,\n";
    }
  }
  return csv.str();
}

ErgmGridOutcome run_ergm_grid(const SweepSpec& spec) {
  ErgmGridOutcome out;
  for_cells(spec, out.rows, out.log, [](const SweepCell& c, const SolverOptions& o) {
    return invisibility_test(c.e, c.t, o);
  });
  return out;
}

std::string ergm_grid_csv(const ErgmGridOutcome& out) {
  std::ostringstream csv;
  csv << "e,t,alpha,beta,visible,margin\n";
  for (const auto& r : out.rows) {
    csv << detail::num(r.e) << ',' << detail::num(r.t) << ',' << detail::num(r.multipliers.alpha)
        << ',' << detail::num(r.multipliers.beta) << ',' << (r.visible ? "true" : "false") << ','
        << detail::num(r.margin) << '\n';
  }
  return csv.str();
}

}  // namespace graphon
