#include "rheokit/cli/commands.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "rheokit/cli/io.hpp"
#include "rheokit/formulas.hpp"
#include "rheokit/maxwell0d.hpp"
#include "rheokit/rheology.hpp"

namespace rheokit::cli {

namespace {

struct RangeOptions {
  double eps_min = 0.01;
  double eps_max = 3.4;
  int samples = 100;
};

void add_range(CLI::App* cmd, RangeOptions& r) {
  cmd->add_option("--eps-min", r.eps_min, "Smallest strain rate (>= 0)")->capture_default_str();
  cmd->add_option("--eps-max", r.eps_max, "Largest strain rate")->capture_default_str();
  cmd->add_option("--samples", r.samples, "Number of uniformly spaced rates (>= 2)")
      ->capture_default_str();
}

std::vector<double> rate_grid(const RangeOptions& r) {
  if (!(r.eps_min >= 0.0)) throw InvalidInput("--eps-min must be non-negative");
  if (!(r.eps_max > r.eps_min)) throw InvalidInput("--eps-max must exceed --eps-min");
  if (r.samples < 2) throw InvalidInput("--samples must be at least 2");
  std::vector<double> eps(static_cast<std::size_t>(r.samples));
  const double last = static_cast<double>(r.samples - 1);
  for (std::size_t k = 0; k < eps.size(); ++k)
    eps[k] = std::lerp(r.eps_min, r.eps_max, static_cast<double>(k) / last);
  return eps;
}

// Destination for CSV output: the given stream or a file named by --out.
// Output is buffered and written only on success, so a failed run leaves no
// partial CSV behind.
class Sink {
 public:
  Sink(std::string path, std::ostream& fallback) : path_(std::move(path)), fallback_(fallback) {}
  std::ostream& stream() { return buffer_; }
  void finish() {
    if (path_.empty() || path_ == "-") {
      fallback_ << buffer_.str();
      fallback_.flush();
      if (!fallback_) throw InvalidInput("failed to write output");
      return;
    }
    std::ofstream file(path_, std::ios::binary | std::ios::trunc);
    if (!file) throw InvalidInput(path_ + ": cannot open for writing");
    file << buffer_.str();
    file.flush();
    if (!file) throw InvalidInput(path_ + ": write failed");
  }

 private:
  std::string path_;
  std::ostream& fallback_;
  std::ostringstream buffer_;
};

double parse_exponent(const std::string& s) {
  if (s == "inf") return kInf;
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !(v > 0.0))
    throw InvalidInput("--n: expected positive exponents or \"inf\", got \"" + s + "\"");
  return v;
}

std::string exponent_tag(double n) {
  if (n == kInf) return "inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, n);
  return "n" + std::string(buf, res.ptr);
}

// ---- curve ----------------------------------------------------------------

struct CurveOptions {
  std::string model;
  std::string out;
  RangeOptions range;
  bool dump = false;
};

int cmd_curve(const CurveOptions& o, std::ostream& out) {
  const RheoExpr e = io::parse_model(io::read_json_file(o.model));
  Sink sink(o.out, out);
  if (o.dump) {
    sink.stream() << io::dump_model(e).dump(2) << '\n';
    sink.finish();
    return kOk;
  }
  const auto eps = rate_grid(o.range);
  io::CsvWriter csv(sink.stream(), {"eps", "mu_eff", "sigma"});
  for (double x : eps) {
    const SubdiffInterval s = stress_of_strain_rate(e, x);
    const double sigma = x == 0.0 ? s.lo : s.midpoint();
    const double mu = x == 0.0 ? zero_rate_viscosity(e) : sigma / x;
    csv.row(std::array{x, mu, sigma});
  }
  sink.finish();
  return kOk;
}

// ---- compare --------------------------------------------------------------

struct CompareOptions {
  std::string preset;
  std::string out;
  double d_dif = 1.0;
  double d_dsl = 1.0;
  std::vector<std::string> n_list{"2", "3", "inf"};
  RangeOptions range{0.017, 3.4, 200};
};

double rigorous_stress(double d_dif, double d_dsl, double n, double eps) {
  if (n == kInf) return mu_eff_formula(Formula::VpMin, {d_dsl, d_dif}, eps) * eps;
  const bool closed = n == 1.0 || n == 2.0 || n == 3.0;
  return serial_dif_dsl_stress(d_dif, d_dsl, n, eps,
                               closed ? DifDslMode::Closed : DifDslMode::Numeric);
}

double rigorous_mu_at_zero(double d_dif, double d_dsl, double n) {
  const Potential creep = n == kInf ? perfect_plastic(d_dsl) : power_law(d_dsl, n);
  return zero_rate_viscosity(RheoExpr::serial({RheoExpr::leaf(dashpot(d_dif)), RheoExpr::leaf(creep)}));
}

double empirical_mu(double d_dif, double d_dsl, double n, double eps) {
  if (eps > 0.0) return mu_eff_formula(Formula::EmpDifDsl, {d_dif, d_dsl, n}, eps);
  // continuous limit of the same expression
  return 1.0 / (1.0 / d_dif + std::pow(0.0, 1.0 - 1.0 / n) / d_dsl);
}

int cmd_compare(CompareOptions o, std::ostream& out) {
  if (!o.preset.empty()) {
    if (o.preset != "fig6") throw InvalidInput("unknown preset \"" + o.preset + "\"");
    o.d_dif = 1.0;
    o.d_dsl = 1.0;
    o.n_list = {"2", "3", "inf"};
    o.range = {3.4 / 200.0, 3.4, 200};
  }
  if (!(o.d_dif > 0.0) || !(o.d_dsl > 0.0)) throw InvalidInput("--d-dif and --d-dsl must be positive");
  std::vector<double> ns;
  for (const auto& s : o.n_list) ns.push_back(parse_exponent(s));
  if (ns.empty()) throw InvalidInput("--n: at least one exponent required");
  const auto eps = rate_grid(o.range);

  std::vector<std::string> header{"eps"};
  for (const char* prefix : {"mu_rig_", "mu_emp_", "sig_rig_", "sig_emp_"}) {
    for (double n : ns) header.push_back(prefix + exponent_tag(n));
  }
  Sink sink(o.out, out);
  io::CsvWriter csv(sink.stream(), header);
  const std::size_t m = ns.size();
  std::vector<double> row(1 + 4 * m);
  for (double x : eps) {
    row[0] = x;
    for (std::size_t i = 0; i < m; ++i) {
      const double s_rig = rigorous_stress(o.d_dif, o.d_dsl, ns[i], x);
      const double mu_emp = empirical_mu(o.d_dif, o.d_dsl, ns[i], x);
      row[1 + i] = x == 0.0 ? rigorous_mu_at_zero(o.d_dif, o.d_dsl, ns[i]) : s_rig / x;
      row[1 + m + i] = mu_emp;
      row[1 + 2 * m + i] = s_rig;
      row[1 + 3 * m + i] = mu_emp * x;
    }
    csv.row(row);
  }
  sink.finish();
  return kOk;
}

// ---- equivalence ----------------------------------------------------------

struct EquivalenceOptions {
  double sigma_a = 1.0;
  double d2 = 1.0;
  double d3 = 1.0;
  int samples = 1000;
  double tolerance = 1e-10;
  std::string out;
};

int cmd_equivalence(const EquivalenceOptions& o, std::ostream& out, std::ostream& err) {
  if (!(o.sigma_a > 0.0) || !(o.d2 > 0.0) || !(o.d3 > 0.0))
    throw InvalidInput("--sigma-a, --d2 and --d3 must be positive");
  if (o.samples < 2) throw InvalidInput("--samples must be at least 2");
  if (!(o.tolerance >= 0.0)) throw InvalidInput("--tolerance must be non-negative");
  const ThreeElementParams p{o.sigma_a, o.d2, o.d3};
  const SerialParallelParams t = map_serial_parallel_params(o.sigma_a, o.d2, o.d3);
  const RheoExpr ps = parallel_serial_model(p);
  const RheoExpr sp = serial_parallel_model(t);

  const double eps_max = 4.0 * o.sigma_a / o.d2;
  double max_dev = 0.0;
  for (int k = 0; k < o.samples; ++k) {
    const double x = eps_max * k / (o.samples - 1);
    const double a = stress_of_strain_rate(ps, x).lo;
    const double b = stress_of_strain_rate(sp, x).lo;
    max_dev = std::max(max_dev, std::abs(a - b));
  }
  const double tol = o.tolerance * (o.sigma_a + o.d2 + o.d3);

  Sink sink(o.out, out);
  auto& os = sink.stream();
  auto kv = [&os](const std::string& key, double v) { os << key << ',' << io::format_number(v) << '\n'; };
  os << "quantity,value\n";
  kv("sigma_a_tilde", t.sigma_a_tilde);
  kv("D2_tilde", t.D2_tilde);
  kv("D3_tilde", t.D3_tilde);
  kv("rigorous_max_deviation", max_dev);
  kv("rigorous_tolerance", tol);
  for (double x : {0.5, 1.0, 2.0}) {
    const double v1 = mu_eff_formula(Formula::EmpVar1, {o.sigma_a, o.d2, o.d3}, x);
    const double v2 = mu_eff_formula(Formula::EmpVar2, {t.sigma_a_tilde, t.D2_tilde, t.D3_tilde}, x);
    kv("empirical_deviation_eps_" + io::format_number(x), std::abs(v1 - v2));
  }
  kv("rigorous_equivalent", max_dev < tol ? 1.0 : 0.0);
  sink.finish();
  if (!(max_dev < tol)) {
    err << "rheokit: equivalence breach: max deviation " << io::format_number(max_dev)
        << " >= tolerance " << io::format_number(tol) << '\n';
    return kEquivalenceBreach;
  }
  return kOk;
}

// ---- simulate -------------------------------------------------------------

struct SimulateOptions {
  std::string model;
  std::string out;
  double dt = 0.0;
  double t_end = 0.0;
  bool dump = false;
};

int cmd_simulate(const SimulateOptions& o, std::ostream& out) {
  const io::SimulationDocument doc = io::parse_simulation(io::read_json_file(o.model));
  Sink sink(o.out, out);
  if (o.dump) {
    sink.stream() << io::dump_simulation(doc).dump(2) << '\n';
    sink.finish();
    return kOk;
  }
  const TimeSeries ts = simulate(doc.model, doc.drive, o.dt, o.t_end, doc.e_el0);
  io::CsvWriter csv(sink.stream(), {"t", "eps", "e_el", "sigma"});
  for (const auto& r : ts.rows) csv.row(std::array{r.t, r.eps, r.e_el, r.sigma});
  sink.finish();
  return kOk;
}

// ---- conjugate ------------------------------------------------------------

struct ConjugateOptions {
  std::string model;
  std::string out;
  double sigma_max = 10.0;
  int samples = 2048;
  bool dump = false;
};

int cmd_conjugate(const ConjugateOptions& o, std::ostream& out) {
  const RheoExpr e = io::parse_model(io::read_json_file(o.model));
  if (e.kind() != RheoExpr::Kind::Leaf)
    throw InvalidInput("conjugate: leaf model required (use `curve` for composites)");
  if (!(o.sigma_max > 0.0)) throw InvalidInput("--sigma-max must be positive");
  if (o.samples < 2) throw InvalidInput("--samples must be at least 2");
  Sink sink(o.out, out);
  if (o.dump) {
    sink.stream() << io::dump_model(e).dump(2) << '\n';
    sink.finish();
    return kOk;
  }
  const Potential conj = conjugate_analytic(e.potential());
  io::CsvWriter csv(sink.stream(), {"sigma", "zeta_star"});
  for (double s : uniform_grid({o.sigma_max, static_cast<std::size_t>(o.samples)}))
    csv.row(std::array{s, value(conj, s)});
  sink.finish();
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Constitutive modeling toolkit: convex dissipation potentials and viscoplastic rheologies",
               "rheokit"};
  app.require_subcommand(1);

  CurveOptions curve;
  auto* c = app.add_subcommand("curve", "Effective viscosity and stress of a model over a strain-rate range");
  c->add_option("--model", curve.model, "Model document (JSON)")->required();
  c->add_option("--out", curve.out, "Output file (default stdout)");
  add_range(c, curve.range);
  c->add_flag("--dump-model", curve.dump, "Print the parsed model document and exit");

  CompareOptions compare;
  auto* cmp = app.add_subcommand("compare", "Rigorous vs. empirical diffusion/dislocation creep curves");
  cmp->add_option("--preset", compare.preset, "Named parameter set (fig6)");
  cmp->add_option("--d-dif", compare.d_dif, "Diffusion-creep viscosity")->capture_default_str();
  cmp->add_option("--d-dsl", compare.d_dsl, "Dislocation-creep modulus")->capture_default_str();
  cmp->add_option("--n", compare.n_list, "Creep exponents, comma separated (\"inf\" allowed)")
      ->delimiter(',');
  cmp->add_option("--out", compare.out, "Output file (default stdout)");
  add_range(cmp, compare.range);

  EquivalenceOptions equiv;
  auto* eq = app.add_subcommand("equivalence", "Check the two three-element model variants against each other");
  eq->add_option("--sigma-a", equiv.sigma_a, "Activation stress")->capture_default_str();
  eq->add_option("--d2", equiv.d2, "Viscosity in series with the plastic element")->capture_default_str();
  eq->add_option("--d3", equiv.d3, "Parallel viscosity")->capture_default_str();
  eq->add_option("--samples", equiv.samples, "Strain-rate grid size")->capture_default_str();
  eq->add_option("--tolerance", equiv.tolerance, "Allowed deviation relative to sigma_a + d2 + d3")
      ->capture_default_str();
  eq->add_option("--out", equiv.out, "Output file (default stdout)");

  SimulateOptions sim;
  auto* s = app.add_subcommand("simulate", "Integrate a generalized Maxwell model under a strain-rate drive");
  s->add_option("--model", sim.model, "Simulation document (JSON)")->required();
  s->add_option("--dt", sim.dt, "Time step");
  s->add_option("--t-end", sim.t_end, "Final time");
  s->add_option("--out", sim.out, "Output file (default stdout)");
  s->add_flag("--dump-model", sim.dump, "Print the parsed simulation document and exit");

  ConjugateOptions conj;
  auto* cj = app.add_subcommand("conjugate", "Tabulate the convex conjugate of a leaf potential");
  cj->add_option("--model", conj.model, "Leaf model document (JSON)")->required();
  cj->add_option("--sigma-max", conj.sigma_max, "Largest stress")->capture_default_str();
  cj->add_option("--samples", conj.samples, "Number of stress samples")->capture_default_str();
  cj->add_option("--out", conj.out, "Output file (default stdout)");
  cj->add_flag("--dump-model", conj.dump, "Print the parsed model document and exit");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "rheokit: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (c->parsed()) return cmd_curve(curve, out);
    if (cmp->parsed()) return cmd_compare(compare, out);
    if (eq->parsed()) return cmd_equivalence(equiv, out, err);
    if (s->parsed()) {
      if (!sim.dump && (!s->count("--dt") || !s->count("--t-end")))
        throw InvalidInput("simulate: --dt and --t-end are required");
      return cmd_simulate(sim, out);
    }
    if (cj->parsed()) return cmd_conjugate(conj, out);
  } catch (const NoConvergence& e) {
    err << "rheokit: solver failure: " << e.what() << '\n';
    return kSolverError;
  } catch (const Error& e) {
    err << "rheokit: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace rheokit::cli
