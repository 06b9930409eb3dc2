#include "quadsep/cli.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <limits>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "quadsep/connectivity.hpp"
#include "quadsep/errors.hpp"
#include "quadsep/oracle.hpp"
#include "quadsep/problem_io.hpp"
#include "quadsep/separation.hpp"

namespace quadsep::cli {

namespace {

using nlohmann::json;

json change_json(const AffineChange& ch) {
  json rows = json::array();
  for (std::size_t i = 0; i < ch.S.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < ch.S.cols(); ++j) row.push_back(ch.S(i, j));
    rows.push_back(std::move(row));
  }
  return json{{"S", std::move(rows)}, {"s", ch.s}, {"mu", ch.mu}};
}

json canonical_json(const CanonicalForm& cf) {
  json j{{"form", to_string(cf.form_id)},
         {"k", cf.k},
         {"m", cf.m},
         {"delta", cf.delta},
         {"theta", nullptr},
         {"cprime", nullptr},
         {"change", change_json(cf.change)}};
  if (cf.form_id == FormId::F1) j["theta"] = cf.theta;
  if (cf.form_id == FormId::F4 || cf.form_id == FormId::F5)
    j["cprime"] = cf.cprime;
  return j;
}

json witness_json(const Witness& w) {
  return json{{"point", w.point}, {"side", to_string(w.side)},
              {"value", w.value}};
}

json component_report_json(const ComponentReport& rep) {
  json witnesses = json::array();
  for (const Witness& w : rep.witnesses) witnesses.push_back(witness_json(w));
  return json{{"target", to_string(rep.target)},
              {"count", rep.count},
              {"witnesses", std::move(witnesses)}};
}

json verdict_json(const SeparationVerdict& v) {
  json j{{"separated", v.separated},
         {"lambda", nullptr},
         {"reduction", nullptr},
         {"branch", nullptr},
         {"margin", nullptr},
         {"witnesses", nullptr},
         {"failure", nullptr},
         {"borderline", v.borderline}};
  if (v.lambda) j["lambda"] = *v.lambda;
  if (v.reduction)
    j["reduction"] = json{{"c", v.reduction->c}, {"c0", v.reduction->c0}};
  if (v.certificate) {
    j["branch"] = to_string(v.certificate->branch);
    j["margin"] = v.certificate->margin;
  }
  if (v.witnesses) {
    j["witnesses"] =
        json{{"u_minus",
              {{"point", v.witnesses->first.point},
               {"g_value", v.witnesses->first.g_value}}},
             {"u_plus",
              {{"point", v.witnesses->second.point},
               {"g_value", v.witnesses->second.g_value}}}};
  }
  if (v.failure) j["failure"] = to_string(*v.failure);
  return j;
}

json oracle_json(const OracleReport& rep) {
  json j{{"component_count_estimate", rep.component_count_estimate},
         {"confident", rep.confident},
         {"sign_pattern", rep.sign_pattern},
         {"min_abs_g_on_zero_set", nullptr},
         {"empirical_separation", rep.empirical_separation}};
  if (std::isfinite(rep.min_abs_g_on_zero_set))
    j["min_abs_g_on_zero_set"] = rep.min_abs_g_on_zero_set;
  return j;
}

struct Options {
  std::string input = "-";
  double tol_rel = Tolerances().tol_rel;
  double tol_abs = Tolerances().tol_abs;
  bool tol_rel_set = false;
  bool tol_abs_set = false;
  int samples = 200;
  std::uint64_t seed = 0;
  int grid = 512;
  double window = 8.0;
};

Tolerances effective_tolerances(const ProblemFile& p, const Options& o) {
  double rel = o.tol_rel_set ? o.tol_rel : p.tolerances.tol_rel;
  double abs = o.tol_abs_set ? o.tol_abs : p.tolerances.tol_abs;
  return Tolerances(rel, abs);
}

GridSpec make_grid_spec(const QuadraticFunction& f, const Tolerances& t,
                        const Options& o) {
  // Window centered at the canonical origin pulled back to input space.
  const CanonicalForm cf = canonical_form(f, t);
  GridSpec spec;
  spec.center = cf.change.from_canonical(Vector(f.dim(), 0.0));
  spec.half_widths = {o.window, o.window};
  spec.resolution = o.grid;
  return spec;
}

const QuadraticFunction& require_g(const ProblemFile& p,
                                   const std::string& command) {
  if (!p.g)
    throw InputError(command + " requires function g in the problem file");
  return *p.g;
}

int cmd_classify(const ProblemFile& p, const Tolerances& t,
                 std::ostream& out) {
  json j{{"f", canonical_json(canonical_form(p.f, t))}, {"g", nullptr}};
  if (p.g) j["g"] = canonical_json(canonical_form(*p.g, t));
  out << j.dump(2) << "\n";
  return 0;
}

int cmd_components(const ProblemFile& p, const Tolerances& t,
                   std::ostream& out) {
  json j{{"strict_sublevel",
          component_report_json(components_strict_sublevel(p.f, t))},
         {"sublevel", component_report_json(components_sublevel(p.f, t))},
         {"level", component_report_json(components_level(p.f, t))}};
  out << j.dump(2) << "\n";
  return 0;
}

int cmd_separate(const ProblemFile& p, const Tolerances& t,
                 std::ostream& out) {
  const SeparationVerdict v = separates_level(require_g(p, "separate"), p.f, t);
  out << verdict_json(v).dump(2) << "\n";
  return v.separated ? 0 : 3;
}

int cmd_mutual(const ProblemFile& p, const Tolerances& t, std::ostream& out) {
  const MutualReport rep = check_mutual(p.f, require_g(p, "mutual"), t);
  const bool mutual =
      rep.g_separates_f.separated && rep.f_separates_g.separated;
  json j{{"g_separates_f", verdict_json(rep.g_separates_f)},
         {"f_separates_g", verdict_json(rep.f_separates_g)},
         {"backward_applicable", rep.backward_applicable},
         {"mutual", mutual}};
  out << j.dump(2) << "\n";
  return mutual ? 0 : 3;
}

int cmd_verify(const ProblemFile& p, const Tolerances& t, const Options& o,
               std::ostream& out) {
  const QuadraticFunction& g = require_g(p, "verify");
  const SeparationVerdict v = separates_level(g, p.f, t);
  const ComponentReport lev = components_level(p.f, t);

  OracleReport sampling;
  if (lev.count >= 1) {
    sampling = oracle_separates(g, p.f, o.samples, o.seed, t);
  } else {
    sampling.component_count_estimate = 0;
    sampling.confident = true;
    sampling.min_abs_g_on_zero_set =
        std::numeric_limits<double>::infinity();
  }

  std::optional<OracleReport> grid;
  if (p.n == 2) grid = grid_components_2d(p.f, make_grid_spec(p.f, t, o));

  bool agree = true;
  if (v.separated && !sampling.empirical_separation) agree = false;
  if (grid && grid->confident &&
      grid->component_count_estimate != lev.count)
    agree = false;

  json j{{"analytic", verdict_json(v)},
         {"oracle", oracle_json(sampling)},
         {"grid", grid ? oracle_json(*grid) : json(nullptr)},
         {"agreement", agree}};
  out << j.dump(2) << "\n";
  return agree ? 0 : 4;
}

int cmd_plot(const ProblemFile& p, const Tolerances& t, const Options& o,
             std::ostream& out) {
  if (p.n != 2) throw InputError("plot requires a two-dimensional problem");
  const std::vector<ZeroCell> cells =
      grid_zero_cells(p.f, make_grid_spec(p.f, t, o));
  out << "x,y,component,sign_g\n";
  char line[128];
  for (const ZeroCell& cell : cells) {
    int sign_g = 0;
    if (p.g) {
      const double gv = evaluate(*p.g, Vector{cell.x, cell.y});
      sign_g = gv > 0.0 ? 1 : (gv < 0.0 ? -1 : 0);
    }
    std::snprintf(line, sizeof(line), "%.17g,%.17g,%d,%d\n", cell.x, cell.y,
                  cell.component, sign_g);
    out << line;
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err) {
  CLI::App app{"Connectivity and zero-level-set separation for quadratic "
               "functions on R^n"};
  app.require_subcommand(1);

  Options opts;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("input", opts.input,
                    "Problem file (JSON); '-' reads stdin")
        ->capture_default_str();
    sub->add_option("--tol-rel", opts.tol_rel, "Relative tolerance")
        ->capture_default_str()
        ->each([&](const std::string&) { opts.tol_rel_set = true; });
    sub->add_option("--tol-abs", opts.tol_abs, "Absolute tolerance floor")
        ->capture_default_str()
        ->each([&](const std::string&) { opts.tol_abs_set = true; });
    return sub;
  };

  add_common(app.add_subcommand(
      "classify", "Canonical form of f (and g when present)"));
  add_common(app.add_subcommand(
      "components", "Component counts of {f<0}, {f<=0}, {f=0}"));
  add_common(app.add_subcommand(
      "separate", "Decide whether {g=0} separates {f=0}"));
  add_common(app.add_subcommand(
      "mutual", "Decide separation in both directions"));
  CLI::App* verify = add_common(app.add_subcommand(
      "verify", "Analytic verdict cross-checked by the sampling oracle"));
  CLI::App* plot = add_common(app.add_subcommand(
      "plot", "CSV of grid cells straddling {f=0} (n == 2 only)"));

  for (CLI::App* sub : {verify, plot}) {
    sub->add_option("--grid", opts.grid, "Grid resolution (cells per axis)")
        ->capture_default_str();
    sub->add_option("--window", opts.window, "Window half-width")
        ->capture_default_str();
  }
  verify->add_option("--samples", opts.samples, "Level-set sample count")
      ->capture_default_str();
  verify->add_option("--seed", opts.seed, "Sampling seed")
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    const ProblemFile p = load_problem(opts.input, in);
    for (const std::string& w : p.warnings) err << "warning: " << w << "\n";
    const Tolerances t = effective_tolerances(p, opts);

    if (app.got_subcommand("classify")) return cmd_classify(p, t, out);
    if (app.got_subcommand("components")) return cmd_components(p, t, out);
    if (app.got_subcommand("separate")) return cmd_separate(p, t, out);
    if (app.got_subcommand("mutual")) return cmd_mutual(p, t, out);
    if (app.got_subcommand("verify")) return cmd_verify(p, t, opts, out);
    if (app.got_subcommand("plot")) return cmd_plot(p, t, opts, out);
    err << "error: no command\n";
    return 2;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const InternalError& e) {
    err << "internal inconsistency: " << e.what() << "\n";
    return 4;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 4;
  }
}

int run_main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cin, std::cout, std::cerr);
}

}  // namespace quadsep::cli
