#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vacuum/cli.hpp"
#include "vacuum/extrapolation.hpp"
#include "vacuum/extsource.hpp"
#include "vacuum/pointlike.hpp"
#include "vacuum/quadrature.hpp"

namespace vacuum::cli {

namespace {

constexpr const char* kVersion = "1.0.0";

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string subcommand;
  std::string source = "point";
  std::string alpha = "static:1";
  std::string grid;
  std::vector<double> gamma;
  std::optional<double> eta_m;
  double R = 1.0;
  std::vector<double> a;
  std::string component = "electric";
  std::string format = "csv";
  std::string out;
  QuadratureConfig quad;
  std::optional<double> check_tol;
};

double parse_number(const std::string& text, const std::string& what) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto res = std::from_chars(text.data(), end, v);
  if (text.empty() || res.ec != std::errc() || res.ptr != end) throw InputError("invalid " + what + ": '" + text + "'");
  if (!std::isfinite(v)) throw InputError(what + " must be finite");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

struct SourceSpec {
  FormFactorKind kind = FormFactorKind::point;
  std::optional<double> a;
};

SourceSpec parse_source(const std::string& text) {
  const auto parts = split(text, ':');
  SourceSpec s;
  if (parts.empty()) throw InputError("empty --source");
  if (parts[0] == "point" && parts.size() == 1) return s;
  if (parts[0] == "gaussian") {
    s.kind = FormFactorKind::gaussian;
  } else if (parts[0] == "lorentzian2") {
    s.kind = FormFactorKind::lorentzian2;
  } else {
    throw InputError("unknown source '" + text + "' (expected point, gaussian:<a> or lorentzian2:<a>)");
  }
  if (parts.size() > 2) throw InputError("invalid source '" + text + "'");
  if (parts.size() == 2) {
    s.a = parse_number(parts[1], "source size");
    if (!(*s.a > 0.0)) throw InputError("source size must be positive");
  }
  return s;
}

FormFactor make_form_factor(FormFactorKind kind, double a) {
  return kind == FormFactorKind::gaussian ? FormFactor::gaussian(a) : FormFactor::lorentzian2(a);
}

Polarizability parse_alpha(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() == 2 && parts[0] == "static") {
    const double a0 = parse_number(parts[1], "alpha0");
    if (!(a0 > 0.0)) throw InputError("alpha0 must be positive");
    return Polarizability::static_alpha(a0);
  }
  if (parts.size() == 3 && parts[0] == "rational") {
    const double a0 = parse_number(parts[1], "alpha0");
    const double k0 = parse_number(parts[2], "k0");
    if (!(a0 > 0.0)) throw InputError("alpha0 must be positive");
    if (!(k0 > 0.0)) throw InputError("k0 must be positive");
    return Polarizability::rational(a0, k0);
  }
  throw InputError("invalid alpha '" + text + "' (expected static:<a0> or rational:<a0>:<k0>)");
}

std::string alpha_text(const Polarizability& p) {
  if (p.kind == PolarizabilityKind::static_alpha) return "static:" + format_number(p.alpha0);
  return "rational:" + format_number(p.alpha0) + ":" + format_number(p.k0);
}

struct Grid {
  double lo = 0.0;
  double hi = 0.0;
  long long points = 0;
  bool log = false;

  std::vector<double> values() const {
    std::vector<double> v(static_cast<std::size_t>(points));
    for (long long i = 0; i < points; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(points - 1);
      v[i] = log ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
    }
    v.back() = hi;
    return v;
  }
};

Grid parse_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 4) throw InputError("invalid grid '" + text + "' (expected <min>:<max>:<points>:<linear|log>)");
  Grid g;
  g.lo = parse_number(parts[0], "grid minimum");
  g.hi = parse_number(parts[1], "grid maximum");
  long long n = 0;
  auto res = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), n);
  if (parts[2].empty() || res.ec != std::errc() || res.ptr != parts[2].data() + parts[2].size()) {
    throw InputError("invalid grid point count '" + parts[2] + "'");
  }
  g.points = n;
  if (parts[3] == "log") {
    g.log = true;
  } else if (parts[3] != "linear") {
    throw InputError("grid spacing must be linear or log");
  }
  if (!(g.lo < g.hi)) throw InputError("grid minimum must be below maximum");
  if (g.points < 2) throw InputError("grid needs at least 2 points");
  if (g.points > 1000000) throw InputError("grid has too many points");
  return g;
}

void require_decreasing(const std::vector<double>& v, const std::string& what) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0) || !std::isfinite(v[i])) throw InputError(what + " values must be positive");
    if (i > 0 && !(v[i] < v[i - 1])) throw InputError(what + " values must be strictly decreasing");
  }
}

int worse(int current, int status) {
  if (current == kNotConverged || status == kNotConverged) return kNotConverged;
  return std::max(current, status);
}

void common_metadata(Report& rep, const Options& o) {
  rep.meta("tool", std::string("vacuum-density ") + kVersion);
  rep.meta("command", o.subcommand);
  rep.meta("abs_tol", o.quad.abs_tol);
  rep.meta("rel_tol", o.quad.rel_tol);
  rep.meta("max_evaluations", static_cast<long long>(o.quad.max_evaluations));
}

// --- profile ---------------------------------------------------------------

int cmd_profile(const Options& o, Report& rep) {
  const SourceSpec spec = parse_source(o.source);
  const Polarizability alpha = parse_alpha(o.alpha);
  const Grid grid = parse_grid(o.grid.empty() ? "0.5:4:8:log" : o.grid);
  const bool point = spec.kind == FormFactorKind::point;
  if (!point && !spec.a) throw InputError("source size missing (use gaussian:<a> or lorentzian2:<a>)");
  const bool cutoff = !o.gamma.empty();
  if (cutoff && !point) throw InputError("--gamma applies only to point sources");
  if (cutoff && o.gamma.size() != 1) throw InputError("profile takes a single --gamma value");
  const double gamma = cutoff ? o.gamma.front() : 0.0;
  if (cutoff && !(gamma > 0.0)) throw InputError("regulator must be positive");
  if (cutoff && alpha.kind != PolarizabilityKind::static_alpha) {
    throw InputError("cutoff profile requires a static polarizability");
  }
  if (point && !cutoff && !(grid.lo > 0.0)) throw InputError("grid lower bound must be positive for point source");
  if (grid.lo < 0.0) throw InputError("grid lower bound must be non-negative");

  std::optional<ExtendedSource> src;
  if (!point) src.emplace(make_form_factor(spec.kind, *spec.a), alpha);
  if (point && !cutoff && alpha.kind != PolarizabilityKind::static_alpha) {
    src.emplace(ExtendedSource::regulated_point(alpha));
  }

  common_metadata(rep, o);
  rep.meta("source", src ? src->describe() : std::string("point"));
  rep.meta("alpha", alpha_text(alpha));
  rep.meta("grid", o.grid.empty() ? std::string("0.5:4:8:log") : o.grid);
  if (cutoff) rep.meta("gamma", gamma);
  rep.rows.name = "profile";
  rep.rows.columns = {"r",           "u_electric",     "u_magnetic",     "u_total",  "u_electric_r7",
                      "u_magnetic_r7", "error_electric", "error_magnetic", "status"};

  int status = kPass;
  for (double r : grid.values()) {
    QuadratureResult el;
    QuadratureResult mg;
    if (src) {
      auto d = extended_densities(*src, r, o.quad);
      el = d.electric;
      mg = d.magnetic;
    } else if (cutoff) {
      el.value = alpha.alpha0 * regularized_density(r, gamma, Component::electric);
      mg.value = alpha.alpha0 * regularized_density(r, gamma, Component::magnetic);
      el.converged = mg.converged = true;
    } else {
      el = eta_repr_density(r, Component::electric, o.quad);
      mg = eta_repr_density(r, Component::magnetic, o.quad);
      for (auto* q : {&el, &mg}) {
        q->value *= alpha.alpha0;
        q->abs_error_estimate *= alpha.alpha0;
      }
    }
    const double r7 = std::pow(r, 7);
    std::string row_status = "converged";
    for (const auto* q : {&el, &mg}) {
      if (!q->converged && !q->roundoff_limited) {
        row_status = "not_converged";
      } else if (!q->converged && row_status == "converged") {
        row_status = "roundoff_limited";
      }
    }
    if (row_status == "not_converged") status = kNotConverged;
    rep.rows.add({r, el.value, mg.value, el.value + mg.value, el.value * r7, mg.value * r7, el.abs_error_estimate,
                  mg.abs_error_estimate, row_status});
  }
  return status;
}

// --- check-global ----------------------------------------------------------

int cmd_check_global(const Options& o, Report& rep) {
  const SourceSpec spec = parse_source(o.source);
  const Polarizability alpha = parse_alpha(o.alpha);
  common_metadata(rep, o);
  rep.meta("alpha", alpha_text(alpha));

  if (spec.kind == FormFactorKind::point) {
    if (alpha.kind != PolarizabilityKind::static_alpha) {
      throw InputError("point-source global check requires a static polarizability");
    }
    std::vector<double> regs;
    std::string label;
    if (o.eta_m) {
      regs = {*o.eta_m};
      label = "eta_m";
    } else if (!o.gamma.empty()) {
      regs = o.gamma;
      label = "gamma";
    } else {
      throw InputError("point source needs --eta-m or --gamma");
    }
    for (double v : regs) {
      if (!(v > 0.0) || !std::isfinite(v)) throw InputError("regulator must be positive");
    }
    const double tol = o.check_tol.value_or(1e-8);
    rep.meta("source", std::string("point"));
    rep.meta("regulator", label);
    rep.meta("tolerance", tol);
    rep.rows.name = "global";
    rep.rows.columns = {"regulator",        "electric_total", "magnetic_total", "sum_total", "numeric_electric",
                        "numeric_magnetic", "numeric_total",  "numeric_error",  "result"};
    int status = kPass;
    for (double v : regs) {
      const GlobalEnergyReport g = global_energy({v, v});
      const RadialIntegral n = regularized_space_integral(v, o.quad);
      const double a0 = alpha.alpha0;
      const bool conv = n.electric.converged && n.magnetic.converged && n.total.converged;
      const bool pass = conv && g.sum_total == 0.0 && std::abs(n.total.value) <= tol &&
                        std::abs(n.electric.value - g.electric_total) <= tol * g.electric_total;
      std::string result = pass ? "PASS" : (conv ? "FAIL" : "NOT_CONVERGED");
      status = worse(status, pass ? kPass : (conv ? kCheckFailed : kNotConverged));
      rep.rows.add({v, a0 * g.electric_total, a0 * g.magnetic_total, a0 * g.sum_total, a0 * n.electric.value,
                    a0 * n.magnetic.value, a0 * n.total.value, a0 * n.total.abs_error_estimate, result});
    }
    return status;
  }

  if (!spec.a) throw InputError("source size missing (use gaussian:<a> or lorentzian2:<a>)");
  const ExtendedSource src(make_form_factor(spec.kind, *spec.a), alpha);
  const double tol = o.check_tol.value_or(1e-6);
  rep.meta("source", src.describe());
  rep.meta("tolerance", tol);
  const ExtendedGlobalReport g = extended_global_energy(src, o.quad);
  rep.meta("r_max", g.r_max.empty() ? 0.0 : g.r_max.back());
  if (!g.diagnostic.empty()) rep.meta("diagnostic", g.diagnostic);
  rep.rows.name = "global";
  rep.rows.columns = {"electric_total", "magnetic_total", "total", "relative_total", "error_estimate", "converged",
                      "result"};
  const bool pass = g.converged && g.relative_total <= tol;
  rep.rows.add({g.electric_total, g.magnetic_total, g.total, g.relative_total, g.error_estimate, g.converged,
                std::string(pass ? "PASS" : (g.converged ? "FAIL" : "NOT_CONVERGED"))});
  if (!g.converged) return kNotConverged;
  return pass ? kPass : kCheckFailed;
}

// --- check-coefficients ----------------------------------------------------

int cmd_check_coefficients(const Options& o, Report& rep) {
  const std::string grid_text = o.grid.empty() ? "0.5:4:4:log" : o.grid;
  const Grid grid = parse_grid(grid_text);
  if (!(grid.lo > 0.0)) throw InputError("grid lower bound must be positive for point source");
  const double tol = o.check_tol.value_or(1e-9);
  common_metadata(rep, o);
  rep.meta("source", std::string("point"));
  rep.meta("grid", grid_text);
  rep.meta("tolerance", tol);
  rep.rows.name = "coefficients";
  rep.rows.columns = {"r", "quantity", "u_r7", "expected", "relative_error", "error_estimate", "converged", "result"};

  const double unit = 1.0 / (16.0 * std::numbers::pi * std::numbers::pi);
  int status = kPass;
  for (double r : grid.values()) {
    const double r7 = std::pow(r, 7);
    const QuadratureResult el = eta_repr_density(r, Component::electric, o.quad);
    const QuadratureResult mg = eta_repr_density(r, Component::magnetic, o.quad);
    struct Item {
      const char* name;
      double value;
      double error;
      bool conv;
      double expected;
    };
    const Item items[] = {
        {"electric", el.value, el.abs_error_estimate, el.converged, 23.0 * unit},
        {"magnetic", mg.value, mg.abs_error_estimate, mg.converged, -7.0 * unit},
        {"sum", el.value + mg.value, el.abs_error_estimate + mg.abs_error_estimate, el.converged && mg.converged,
         16.0 * unit},
    };
    for (const Item& it : items) {
      const double rel = std::abs(it.value * r7 - it.expected) / std::abs(it.expected);
      const bool pass = it.conv && rel <= tol;
      status = worse(status, pass ? kPass : (it.conv ? kCheckFailed : kNotConverged));
      rep.rows.add({r, std::string(it.name), it.value * r7, it.expected, rel, it.error * r7, it.conv,
                    std::string(pass ? "PASS" : (it.conv ? "FAIL" : "NOT_CONVERGED"))});
    }
  }
  return status;
}

// --- singular --------------------------------------------------------------

Table coefficient_table() {
  Table t;
  t.name = "coefficients";
  t.columns = {"component", "term", "derivative_order", "inverse_power", "numerator", "denominator", "coefficient"};
  for (Component c : {Component::electric, Component::magnetic}) {
    const SingularExpansion e = singular_expansion(c);
    t.add({std::string(to_string(c)), std::string("regular"), 0LL, 7LL, static_cast<long long>(e.regular.num),
           static_cast<long long>(e.regular.den), e.regular_coeff()});
    for (const DeltaTerm& d : e.delta_terms) {
      t.add({std::string(to_string(c)), std::string("delta"), static_cast<long long>(d.derivative_order),
             static_cast<long long>(d.inverse_power), static_cast<long long>(d.coefficient.num),
             static_cast<long long>(d.coefficient.den), d.coefficient.value() * SingularExpansion::unit()});
    }
  }
  return t;
}

int cmd_singular(const Options& o, Report& rep) {
  const std::vector<double> gammas = o.gamma.empty() ? std::vector<double>{0.4, 0.2, 0.1, 0.05} : o.gamma;
  require_decreasing(gammas, "gamma");
  const double tol = o.check_tol.value_or(1e-8);

  std::vector<SingularRow> rows;
  std::optional<SingularReport> full;
  if (gammas.size() >= 3) {
    full = verify_singular_cancellation(gammas, o.quad, tol);
    rows = full->rows;
  } else {
    for (double g : gammas) rows.push_back(singular_row(g, o.quad, tol));
  }

  common_metadata(rep, o);
  rep.meta("source", std::string("point"));
  rep.meta("tolerance", tol);
  if (full && full->fit_valid) {
    rep.meta("fit_exponent", full->fit_exponent);
    rep.meta("fit_coefficient", full->fit_coefficient);
  } else {
    rep.meta("fit", std::string("unavailable (needs 3 converged gamma values)"));
  }
  rep.rows.name = "singular";
  rep.rows.columns = {"gamma",        "electric",          "magnetic",    "total", "electric_gamma4",
                      "expected_electric", "total_error", "ok",    "failure"};
  int status = kPass;
  for (const SingularRow& row : rows) {
    const auto& I = row.integrals;
    const bool conv = I.electric.converged && I.magnetic.converged && I.total.converged;
    status = worse(status, row.ok ? kPass : (conv ? kCheckFailed : kNotConverged));
    const double g4 = std::pow(row.gamma, 4);
    rep.rows.add({row.gamma, I.electric.value, I.magnetic.value, I.total.value, I.electric.value * g4,
                  row.expected_electric, I.total.abs_error_estimate, row.ok, row.failure});
  }
  rep.extra.push_back(coefficient_table());
  return status;
}

// --- limit -----------------------------------------------------------------

int cmd_limit(const Options& o, Report& rep) {
  if (o.a.size() < 3) throw InputError("need ≥ 3 sizes");
  require_decreasing(o.a, "size");
  if (!(o.R > 0.0) || !std::isfinite(o.R)) throw InputError("R must be positive");
  const std::string family_text = o.source == "point" ? std::string("gaussian") : o.source;
  const SourceSpec spec = parse_source(family_text);
  if (spec.kind == FormFactorKind::point) throw InputError("limit needs a gaussian or lorentzian2 family");
  const Polarizability alpha = parse_alpha(o.alpha);
  const bool el = o.component == "electric" || o.component == "total";
  const bool mg = o.component == "magnetic" || o.component == "total";
  const double tol = o.check_tol.value_or(1e-4);

  double expected = 0.0;
  if (alpha.kind == PolarizabilityKind::static_alpha) {
    if (el) expected += alpha.alpha0 * closed_electric_density(o.R);
    if (mg) expected += alpha.alpha0 * closed_magnetic_density(o.R);
  } else {
    const ExtendedDensities d = extended_densities(ExtendedSource::regulated_point(alpha), o.R, o.quad);
    if (el) expected += d.electric.value;
    if (mg) expected += d.magnetic.value;
  }

  common_metadata(rep, o);
  rep.meta("family", std::string(spec.kind == FormFactorKind::gaussian ? "gaussian" : "lorentzian2"));
  rep.meta("alpha", alpha_text(alpha));
  rep.meta("R", o.R);
  rep.meta("component", o.component);
  rep.meta("tolerance", tol);
  rep.rows.name = "limit";
  rep.rows.columns = {"kind", "a", "value", "error_estimate", "expected", "deviation", "converged"};

  int status = kPass;
  std::vector<Sample> samples;
  for (double a : o.a) {
    const ExtendedSource src(make_form_factor(spec.kind, a), alpha);
    const ExtendedDensities d = extended_densities(src, o.R, o.quad);
    double v = 0.0;
    double e = 0.0;
    bool conv = true;
    if (el) {
      v += d.electric.value;
      e += d.electric.abs_error_estimate;
      conv = conv && d.electric.converged;
    }
    if (mg) {
      v += d.magnetic.value;
      e += d.magnetic.abs_error_estimate;
      conv = conv && d.magnetic.converged;
    }
    if (!conv) status = kNotConverged;
    samples.push_back({a, v});
    rep.rows.add({std::string("sample"), a, v, e, expected, v - expected, conv});
  }
  // Gaussian smearing corrections are even in a; the power-law form factor is fitted with all powers.
  const ExtrapolationModel model = spec.kind == FormFactorKind::gaussian ? ExtrapolationModel{2, 2}
                                                                          : ExtrapolationModel{1, 1};
  const Extrapolated x = extrapolate_to_zero(samples, std::min<std::size_t>(samples.size() - 1, 3), model);
  const bool pass = std::abs(x.value - expected) <= tol;
  rep.rows.add({std::string("extrapolated"), 0.0, x.value, x.error_estimate, expected, x.value - expected,
                status == kPass});
  rep.meta("result", std::string(status == kNotConverged ? "NOT_CONVERGED" : (pass ? "PASS" : "FAIL")));
  if (status == kNotConverged) return status;
  return pass ? kPass : kCheckFailed;
}

// --- dispatch --------------------------------------------------------------

void add_options(CLI::App& app, Options& o) {
  app.add_option("--source", o.source, "point | gaussian:<a> | lorentzian2:<a>");
  app.add_option("--alpha", o.alpha, "static:<a0> | rational:<a0>:<k0>");
  app.add_option("--grid", o.grid, "<min>:<max>:<points>:<linear|log>");
  app.add_option("--gamma", o.gamma, "comma-separated cutoff values")->delimiter(',');
  app.add_option("--eta-m", o.eta_m, "lower eta regulator for the point-source global check");
  app.add_option("--R", o.R, "distance from the source (limit)");
  app.add_option("--a", o.a, "comma-separated decreasing source sizes (limit)")->delimiter(',');
  app.add_option("--component", o.component, "electric | magnetic | total")
      ->check(CLI::IsMember({"electric", "magnetic", "total"}));
  app.add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", o.out, "output file (default: standard output)");
  app.add_option("--abs-tol", o.quad.abs_tol, "absolute quadrature tolerance");
  app.add_option("--rel-tol", o.quad.rel_tol, "relative quadrature tolerance");
  app.add_option("--max-evals", o.quad.max_evaluations, "integrand evaluations per axis");
  app.add_option("--check-tol", o.check_tol, "pass/fail tolerance of the check");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Renormalized vacuum energy densities around polarizable sources"};
  app.set_version_flag("--version", std::string("vacuum-density ") + kVersion);
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  app.require_subcommand(1, 1);
  app.fallthrough();
  add_options(app, o);
  struct Sub {
    const char* name;
    const char* help;
    int (*fn)(const Options&, Report&);
  };
  const Sub subs[] = {
      {"profile", "densities on a radial grid", cmd_profile},
      {"check-global", "space-integrated energy cancellation", cmd_check_global},
      {"check-coefficients", "1/r^7 coefficients from the eta representation", cmd_check_coefficients},
      {"singular", "regularized space integrals and the singular coefficient tables", cmd_singular},
      {"limit", "point-like limit of shrinking extended sources", cmd_limit},
  };
  for (const Sub& s : subs) app.add_subcommand(s.name, s.help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::CallForVersion&) {
    out << "vacuum-density " << kVersion << '\n';
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }

  const Sub* chosen = nullptr;
  for (const Sub& s : subs) {
    if (app.got_subcommand(s.name)) chosen = &s;
  }
  o.subcommand = chosen->name;

  Report rep;
  int status = kPass;
  try {
    o.quad.validate();
    status = chosen->fn(o, rep);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const ConvergenceError& e) {
    err << "error: not converged: " << e.what() << '\n';
    return kNotConverged;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNotConverged;
  }

  std::ofstream file;
  std::ostream* dest = &out;
  if (!o.out.empty()) {
    file.open(o.out, std::ios::binary);
    if (!file) {
      err << "error: cannot open output file " << o.out << '\n';
      return kInvalidInput;
    }
    dest = &file;
  }
  if (o.format == "json") {
    write_json(rep, *dest);
  } else {
    write_csv(rep, *dest);
  }
  dest->flush();
  if (status == kNotConverged) err << "error: numerical non-convergence (see the report rows)\n";
  if (status == kCheckFailed) err << "error: check failed\n";
  return status;
}

}  // namespace vacuum::cli
