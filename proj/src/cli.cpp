#include "twopoint/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>

#include "twopoint/conditioned_process.hpp"
#include "twopoint/config.hpp"
#include "twopoint/entrance_laws.hpp"
#include "twopoint/errors.hpp"
#include "twopoint/identities.hpp"
#include "twopoint/last_visit.hpp"
#include "twopoint/mc_oracle.hpp"

namespace twopoint::cli {

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

namespace {

struct ArgumentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void header(const std::vector<std::string>& names) { row(names); }
  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) out_ << (i ? "," : "") << csv_field(fields[i]);
    out_ << '\n';
  }

 private:
  std::ostream& out_;
};

std::vector<std::string> names_of(const EvalResult& r) {
  std::vector<std::string> names;
  for (const auto& f : r.fields) names.push_back(f.first);
  names.push_back("value");
  return names;
}

std::vector<std::string> values_of(const EvalResult& r) {
  std::vector<std::string> values;
  for (const auto& f : r.fields) values.push_back(f.second);
  values.push_back(format_number(r.value));
  return values;
}

const std::map<std::string, BoundaryApproach> kSideNames = {
    {"up_to_minus_a", BoundaryApproach::up_to_minus_a},
    {"down_to_minus_a", BoundaryApproach::down_to_minus_a},
    {"up_to_a", BoundaryApproach::up_to_a},
    {"down_to_a", BoundaryApproach::down_to_a},
};
const std::map<std::string, Endpoint> kEndpointNames = {{"minus", Endpoint::minus}, {"plus", Endpoint::plus}};
const std::map<std::string, ExcursionPart> kPartNames = {
    {"total", ExcursionPart::total}, {"down", ExcursionPart::down_start}, {"up", ExcursionPart::up_start}};

// Global flags followed by the inputs of every subcommand.
struct Options {
  std::string model_path;
  double a = 0.5;
  std::string out_path;
  std::uint64_t seed = 1;
  bool gnuplot_hint = false;

  double q = 1.0;
  double beta = 1.0;
  double lambda = 1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  bool derivative = false;
  bool denominator = false;
  std::string side;
  std::string part = "total";

  std::uint64_t paths = 100000;
  double dt = 1e-4;
  double horizon = 50.0;
  unsigned workers = 1;
  double small_jump_eps = 1e-3;
  bool fixed_steps = false;
  std::vector<double> edges;
};

struct Loaded {
  ModelSpec model;
  InversionParams params;
};

Loaded load_model(const Options& o) {
  if (o.model_path.empty()) return {ModelSpec::brownian(1.0, 0.0), {}};
  KeyValueConfig cfg;
  try {
    cfg = KeyValueConfig::load(o.model_path);
  } catch (const std::exception& e) {
    throw ArgumentError(e.what());
  }
  return {model_from_config(cfg), inversion_params_from_config(cfg)};
}

EvalResult eval_scalar(const std::string& op, const Options& o, bool with_x, bool with_y, bool with_a,
                       double value) {
  EvalResult r;
  r.fields = {{"op", op},
              {"q", format_number(o.q)},
              {"x", with_x ? format_number(o.x) : ""},
              {"y", with_y ? format_number(o.y) : ""},
              {"a", with_a ? format_number(o.a) : ""}};
  r.value = value;
  return r;
}

EvalResult evaluate(const std::string& what, const Options& o, const ScaleEngine& e) {
  TwoPointConfig cfg(o.a);
  if (what == "w") {
    double v = o.derivative ? e.w_prime(o.q, o.x) : e.w(o.q, o.x);
    return eval_scalar(o.derivative ? "w_prime" : "w", o, true, false, false, v);
  }
  if (what == "phi") {
    double v = o.derivative ? e.phi_prime(o.q) : e.phi_nonneg(o.q);
    return eval_scalar(o.derivative ? "phi_prime" : "phi", o, false, false, false, v);
  }
  if (what == "resolvent")
    return eval_scalar("resolvent", o, true, true, true, killed_resolvent_density(e, cfg, o.q, o.x, o.y));
  if (what == "h") return eval_scalar("h", o, true, false, true, avoidance_probability(e, cfg, o.q, o.x));
  if (what == "alpha") {
    Endpoint which = kEndpointNames.at(o.side);
    return eval_scalar("alpha_" + o.side, o, false, false, true, local_time_weight(e, cfg, o.q, which));
  }
  if (what == "zlimit") {
    BoundaryApproach side = kSideNames.at(o.side);
    EvalResult r;
    r.fields = {{"side", o.side},
                {"q", format_number(o.q)},
                {"beta", o.denominator ? "" : format_number(o.beta)},
                {"y", o.denominator ? "" : format_number(o.y)},
                {"a", format_number(o.a)}};
    r.value = o.denominator ? boundary_denominator(e, cfg, o.q, side)
                            : boundary_limit_density(e, cfg, o.q, o.beta, o.y, side);
    return r;
  }
  if (what == "entrance") {
    EvalResult r;
    r.fields = {{"side", o.side},
                {"part", o.part},
                {"beta", format_number(o.beta)},
                {"y", format_number(o.y)},
                {"a", format_number(o.a)}};
    r.value = entrance_density(e, cfg, o.beta, o.y, kEndpointNames.at(o.side), kPartNames.at(o.part));
    return r;
  }
  // lastvisit
  EvalResult r;
  r.fields = {{"lambda", format_number(o.lambda)},
              {"z", format_number(o.z)},
              {"x", format_number(o.x)},
              {"y", format_number(o.y)}};
  r.value = last_visit_laplace(e, o.lambda, o.z, o.x, o.y);
  return r;
}

McConfig mc_config(const Options& o) {
  McConfig mc;
  mc.paths = o.paths;
  mc.dt = o.dt;
  mc.horizon = o.horizon;
  mc.seed = o.seed;
  mc.workers = o.workers;
  mc.small_jump_eps = o.small_jump_eps;
  mc.adaptive_steps = !o.fixed_steps;
  return mc;
}

std::vector<std::string> mc_tail(const McEstimate& est) {
  return {format_number(est.value), format_number(est.std_error),
          format_number(est.truncation_bias + est.discretization_allowance)};
}

std::string gnuplot_recipe(const std::string& file, const std::string& using_spec, const std::string& style) {
  return "# gnuplot: set datafile separator ','; plot '" + file + "' every ::1 using " + using_spec +
         " with " + style;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Two-point fluctuation identities for spectrally negative Levy processes", "twopoint"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--model", o.model_path, "Model file (key = value); default Brownian motion, sigma 1")
      ->check(CLI::ExistingFile);
  app.add_option("--a", o.a, "Half-width of the two-point set {-a, a}")->check(CLI::PositiveNumber);
  app.add_option("--out", o.out_path, "Write CSV here instead of standard output");
  app.add_option("--seed", o.seed, "Seed for Monte Carlo runs");
  app.add_flag("--gnuplot-hint", o.gnuplot_hint, "Append a plotting recipe as a comment line");

  auto* eval = app.add_subcommand("eval", "Evaluate one quantity");
  eval->require_subcommand(1);
  auto add_q = [&](CLI::App* c) { c->add_option("--q", o.q, "Killing rate")->required(); };
  auto side_check = [](const auto& names) {
    std::vector<std::string> keys;
    for (const auto& [k, v] : names) keys.push_back(k);
    return CLI::IsMember(keys);
  };

  auto* e_w = eval->add_subcommand("w", "Scale function W^(q)(x)");
  add_q(e_w);
  e_w->add_option("--x", o.x)->required();
  e_w->add_flag("--derivative", o.derivative, "Evaluate W^(q)'(x)");
  auto* e_phi = eval->add_subcommand("phi", "Right inverse of psi");
  e_phi->add_option("--q", o.q)->required();
  e_phi->add_flag("--derivative", o.derivative, "Evaluate Phi'(q)");
  auto* e_res = eval->add_subcommand("resolvent", "Killed resolvent density v_q(x, y)");
  add_q(e_res);
  e_res->add_option("--x", o.x)->required();
  e_res->add_option("--y", o.y)->required();
  auto* e_h = eval->add_subcommand("h", "Avoidance probability h_q(x)");
  add_q(e_h);
  e_h->add_option("--x", o.x)->required();
  auto* e_alpha = eval->add_subcommand("alpha", "Local time weight at one of the points");
  add_q(e_alpha);
  e_alpha->add_option("--side", o.side)->required()->check(side_check(kEndpointNames));
  auto* e_z = eval->add_subcommand("zlimit", "Boundary limit density of the conditioned resolvent");
  add_q(e_z);
  e_z->add_option("--beta", o.beta);
  e_z->add_option("--y", o.y);
  e_z->add_option("--side", o.side)->required()->check(side_check(kSideNames));
  e_z->add_flag("--denominator", o.denominator, "Print the normalizing denominator H(q) instead");
  auto* e_ent = eval->add_subcommand("entrance", "Entrance-law density of excursions from a point");
  e_ent->add_option("--beta", o.beta)->required();
  e_ent->add_option("--y", o.y)->required();
  e_ent->add_option("--side", o.side)->required()->check(side_check(kEndpointNames));
  e_ent->add_option("--part", o.part, "total, down or up")->check(side_check(kPartNames));
  auto* e_lv = eval->add_subcommand("lastvisit", "Laplace transform of T_y - S_{x,y} from z");
  e_lv->add_option("--lambda", o.lambda)->required();
  e_lv->add_option("--z", o.z)->required();
  e_lv->add_option("--x", o.x)->required();
  e_lv->add_option("--y", o.y)->required();

  auto* check = app.add_subcommand("check", "Run consistency suites");
  check->require_subcommand(1);
  auto* c_id = check->add_subcommand("identities", "Every identity suite; exit 1 if any check fails");

  auto* mc = app.add_subcommand("mc", "Monte Carlo estimates");
  mc->require_subcommand(1);
  auto add_mc = [&](CLI::App* c) {
    c->add_option("--paths", o.paths)->check(CLI::PositiveNumber);
    c->add_option("--dt", o.dt)->check(CLI::PositiveNumber);
    c->add_option("--horizon", o.horizon)->check(CLI::PositiveNumber);
    c->add_option("--workers", o.workers)->check(CLI::PositiveNumber);
    c->add_option("--small-jump-eps", o.small_jump_eps)->check(CLI::PositiveNumber);
    c->add_flag("--fixed-steps", o.fixed_steps, "Use dt everywhere instead of growing steps far from levels");
  };
  auto* m_h = mc->add_subcommand("h", "Avoidance probability");
  add_mc(m_h);
  add_q(m_h);
  m_h->add_option("--x", o.x)->required();
  auto* m_v = mc->add_subcommand("v", "Killed resolvent density, binned");
  add_mc(m_v);
  add_q(m_v);
  m_v->add_option("--x", o.x)->required();
  m_v->add_option("--edges", o.edges, "Increasing bin edges")->required()->expected(2, -1)->delimiter(',');
  auto* m_lv = mc->add_subcommand("lastvisit", "Last-visit Laplace transform");
  add_mc(m_lv);
  m_lv->add_option("--lambda", o.lambda)->required();
  m_lv->add_option("--z", o.z)->required();
  m_lv->add_option("--x", o.x)->required();
  m_lv->add_option("--y", o.y)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    std::string name = e.get_name();
    if (name == "CallForAllHelp" || name == "CallForVersion") {
      out << app.help("", CLI::AppFormatMode::All);
      return kOk;
    }
    err << "twopoint: " << e.what() << '\n';
    return kBadArguments;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!o.out_path.empty()) {
    file.open(o.out_path);
    if (!file) {
      err << "twopoint: cannot write " << o.out_path << '\n';
      return kBadArguments;
    }
    sink = &file;
  }
  const std::string plot_file = o.out_path.empty() ? "out.csv" : o.out_path;
  CsvWriter csv(*sink);

  try {
    Loaded loaded = load_model(o);
    const ModelSpec& model = loaded.model;

    if (eval->parsed()) {
      CLI::App* which = eval->get_subcommands().front();
      ScaleEngine engine(model, loaded.params);
      EvalResult r = evaluate(which->get_name(), o, engine);
      csv.header(names_of(r));
      csv.row(values_of(r));
      if (o.gnuplot_hint)
        *sink << gnuplot_recipe(plot_file, "0:" + std::to_string(r.fields.size() + 1), "points") << '\n';
      return kOk;
    }

    if (c_id->parsed()) {
      auto results = check_identities(model, TwoPointConfig(o.a), loaded.params);
      csv.header({"name", "error", "tolerance", "passed"});
      bool all = true;
      for (const auto& r : results) {
        csv.row({r.name, format_number(r.error), format_number(r.tolerance), r.passed ? "true" : "false"});
        if (!r.passed) {
          all = false;
          err << "twopoint: check failed: " << r.name << " (error " << r.error << ", tolerance " << r.tolerance
              << ")\n";
        }
      }
      if (o.gnuplot_hint)
        *sink << "# gnuplot: set datafile separator ','; set logscale y; plot '" << plot_file
              << "' every ::1 using 0:($2+1e-17):xtic(1) with points, '' every ::1 using 0:3 with steps\n";
      return all ? kOk : kCheckFailed;
    }

    McConfig cfg = mc_config(o);
    CLI::App* which = mc->get_subcommands().front();
    const std::string name = which->get_name();
    if (name == "h") {
      McEstimate est = estimate_h(model, TwoPointConfig(o.a), o.q, o.x, cfg);
      csv.header({"estimator", "q", "x", "a", "paths", "value", "std_error", "bias_bound"});
      std::vector<std::string> row{"h", format_number(o.q), format_number(o.x), format_number(o.a),
                                   std::to_string(est.paths_used)};
      for (auto& f : mc_tail(est)) row.push_back(f);
      csv.row(row);
      if (o.gnuplot_hint) *sink << gnuplot_recipe(plot_file, "0:6:7", "yerrorbars") << '\n';
    } else if (name == "v") {
      auto est = estimate_v_density(model, TwoPointConfig(o.a), o.q, o.x, o.edges, cfg);
      csv.header({"estimator", "q", "x", "a", "bin_lo", "bin_hi", "paths", "value", "std_error", "bias_bound"});
      for (std::size_t i = 0; i < est.size(); ++i) {
        std::vector<std::string> row{"v",
                                     format_number(o.q),
                                     format_number(o.x),
                                     format_number(o.a),
                                     format_number(o.edges[i]),
                                     format_number(o.edges[i + 1]),
                                     std::to_string(est[i].paths_used)};
        for (auto& f : mc_tail(est[i])) row.push_back(f);
        csv.row(row);
      }
      if (o.gnuplot_hint) *sink << gnuplot_recipe(plot_file, "(($5+$6)/2):8:9", "yerrorbars") << '\n';
    } else {
      McEstimate est = estimate_last_visit(model, o.lambda, o.z, o.x, o.y, cfg);
      csv.header({"estimator", "lambda", "z", "x", "y", "paths", "value", "std_error", "bias_bound"});
      std::vector<std::string> row{"lastvisit",      format_number(o.lambda), format_number(o.z),
                                   format_number(o.x), format_number(o.y),    std::to_string(est.paths_used)};
      for (auto& f : mc_tail(est)) row.push_back(f);
      csv.row(row);
      if (o.gnuplot_hint) *sink << gnuplot_recipe(plot_file, "0:7:8", "yerrorbars") << '\n';
    }
    return kOk;
  } catch (const ArgumentError& e) {
    err << "twopoint: " << e.what() << '\n';
    return kBadArguments;
  } catch (const DomainError& e) {
    err << "twopoint: " << e.what() << '\n';
    return kBadArguments;
  } catch (const UnsupportedCase& e) {
    err << "twopoint: unsupported case: " << e.what() << '\n';
    return kNumericalFault;
  } catch (const NumericalFault& e) {
    err << "twopoint: numerical fault: " << e.what() << '\n';
    return kNumericalFault;
  } catch (const std::invalid_argument& e) {
    err << "twopoint: " << e.what() << '\n';
    return kBadArguments;
  } catch (const std::exception& e) {
    err << "twopoint: " << e.what() << '\n';
    return kNumericalFault;
  }
}

}  // namespace twopoint::cli
