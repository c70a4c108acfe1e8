#include "vacuum/extsource.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "vacuum/detail/adaptive.hpp"
#include "vacuum/kernels.hpp"

namespace vacuum {

using detail::Accumulate;
using detail::Channels;
using detail::ErrorParts;
using detail::kEps;
using detail::Outcome;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi3 = kPi * kPi * kPi;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_size(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("form factor size must be positive");
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

FormFactor FormFactor::point() { return {FormFactorKind::point, 0.0}; }

FormFactor FormFactor::gaussian(double a) {
  require_size(a);
  return {FormFactorKind::gaussian, a};
}

FormFactor FormFactor::lorentzian2(double a) {
  require_size(a);
  return {FormFactorKind::lorentzian2, a};
}

double FormFactor::decay_exponent() const {
  switch (kind) {
    case FormFactorKind::point: return 0.0;
    case FormFactorKind::gaussian: return kInf;
    case FormFactorKind::lorentzian2: return 4.0;
  }
  return 0.0;
}

double form_factor_value(const FormFactor& ff, double k) {
  switch (ff.kind) {
    case FormFactorKind::point: return 1.0;
    case FormFactorKind::gaussian: return std::exp(-0.25 * k * k * ff.a * ff.a);
    case FormFactorKind::lorentzian2: {
      const double d = 1.0 + k * k * ff.a * ff.a;
      return 1.0 / (d * d);
    }
  }
  return 1.0;
}

Polarizability Polarizability::static_alpha(double alpha0) {
  if (!std::isfinite(alpha0)) throw std::invalid_argument("alpha0 must be finite");
  return {PolarizabilityKind::static_alpha, alpha0, 0.0};
}

Polarizability Polarizability::rational(double alpha0, double k0) {
  if (!std::isfinite(alpha0)) throw std::invalid_argument("alpha0 must be finite");
  if (!(k0 > 0.0) || !std::isfinite(k0)) throw std::invalid_argument("k0 must be positive");
  return {PolarizabilityKind::rational, alpha0, k0};
}

double Polarizability::value(double k) const {
  if (kind == PolarizabilityKind::static_alpha) return alpha0;
  const double k02 = k0 * k0;
  return alpha0 * k02 / (k02 + k * k);
}

double Polarizability::decay_exponent() const { return kind == PolarizabilityKind::static_alpha ? 0.0 : 2.0; }

ExtendedSource::ExtendedSource(FormFactor ff, Polarizability alpha) : ff_(ff), alpha_(alpha) {
  const double decay = ff_.decay_exponent() + alpha_.decay_exponent();
  if (!(decay > 2.0)) {
    throw InadmissibleSource("alpha(k) rho(k) decays as k^-" + fmt(decay) +
                             "; densities need a decay faster than k^-2");
  }
}

ExtendedSource::ExtendedSource(FormFactor ff, Polarizability alpha, bool) : ff_(ff), alpha_(alpha) {}

ExtendedSource ExtendedSource::regulated_point(Polarizability alpha) {
  return ExtendedSource(FormFactor::point(), alpha, true);
}

double ExtendedSource::size() const {
  double s = ff_.a;
  if (alpha_.kind == PolarizabilityKind::rational) s = std::max(s, 1.0 / alpha_.k0);
  return s;
}

std::string ExtendedSource::describe() const {
  std::string s;
  switch (ff_.kind) {
    case FormFactorKind::point: s = "point"; break;
    case FormFactorKind::gaussian: s = "gaussian:" + fmt(ff_.a); break;
    case FormFactorKind::lorentzian2: s = "lorentzian2:" + fmt(ff_.a); break;
  }
  if (alpha_.kind == PolarizabilityKind::static_alpha) {
    s += " static:" + fmt(alpha_.alpha0);
  } else {
    s += " rational:" + fmt(alpha_.alpha0) + ":" + fmt(alpha_.k0);
  }
  return s;
}

namespace {

// Source description used by the evaluators: the form factor may be replaced
// by an auxiliary e^{-gamma k} cutoff for point sources.
struct Profile {
  std::function<double(double)> rho;
  Polarizability alpha;
  double k_scale = 1.0;  // wavenumber beyond which rho has done its damping
  bool fast_decay = false;  // rho decays faster than any power
};

Profile profile_of(const ExtendedSource& s) {
  Profile p;
  p.alpha = s.polarizability();
  const FormFactor ff = s.form_factor();
  p.rho = [ff](double k) { return form_factor_value(ff, k); };
  switch (ff.kind) {
    case FormFactorKind::gaussian:
      p.k_scale = 4.0 / ff.a;
      p.fast_decay = true;
      break;
    case FormFactorKind::lorentzian2: p.k_scale = 3.0 / ff.a; break;
    case FormFactorKind::point: p.k_scale = 1.0; break;
  }
  return p;
}

Profile cutoff_profile(const Polarizability& alpha, double gamma) {
  Profile p;
  p.alpha = alpha;
  p.rho = [gamma](double k) { return std::exp(-gamma * k); };
  p.k_scale = 4.0 / gamma;
  p.fast_decay = true;
  return p;
}

// Radial factors at x = kR: j0, j1(x)/x, j1.
struct Radial {
  double j0, q, j1;
};

Radial radial(double k, double R) {
  if (R == 0.0) return {1.0, 1.0 / 3.0, 0.0};
  const double x = k * R;
  return {sph_j0(x), sph_j1_over_x(x), sph_j1(x)};
}

AxisOptions k_axis(const Profile& p, double R, double eta) {
  AxisOptions ax;
  ax.scale = p.k_scale;
  if (eta > 0.0) {
    // A power-law form factor leaves a k^-1 tail that only e^{-eta k} cuts
    // off; map the geometric middle of that range to t = 1/2.
    ax.scale = p.fast_decay ? std::min(p.k_scale, 1.0 / eta) : std::sqrt(p.k_scale * std::max(p.k_scale, 1.0 / eta));
  }
  if (R > 0.0) {
    ax.half_period = kPi / R;
    ax.accelerate = true;
  }
  return ax;
}

struct DensityPair {
  QuadratureResult electric;
  QuadratureResult magnetic;
};

QuadratureResult pack(double value, double err, std::size_t evals, bool converged, bool roundoff,
                      const std::string& diag) {
  QuadratureResult r;
  r.value = value;
  r.abs_error_estimate = std::max(err, 4.0 * kEps * std::abs(value));
  r.evaluations = std::max<std::size_t>(evals, 1);
  r.converged = converged;
  r.roundoff_limited = roundoff;
  r.diagnostic = diag;
  return r;
}

// Both densities through the eta representation
//   u_el =  1/(2 pi^3) \int d eta [T0a T0 - T0a T1 - T1a T0 + 3 T1a T1]
//   u_m  = -1/(2 pi^3) \int d eta S1a S1
// with T0 = \int k^3 rho j0(kR) e^{-eta k}, T1 the same with j1(kR)/(kR), S1
// with j1(kR), and the "a" versions carrying alpha(k).
DensityPair eta_route(const Profile& p, double R, double eta_scale, const QuadratureConfig& cfg) {
  const auto inner_ch = Channels<6>::uniform(cfg.abs_tol / 50.0, cfg.rel_tol / 50.0);
  const auto budget = detail::budget_of(cfg);

  bool failed = false;
  std::string diag;
  std::size_t inner_evals = 0;

  auto outer = [&](double eta) -> std::array<double, 6> {
    auto f = [&](double k) -> std::array<double, 6> {
      const double base = k * k * k * p.rho(k) * std::exp(-eta * k);
      const Radial z = radial(k, R);
      const double a = p.alpha.value(k);
      const double b0 = base * z.j0, b1 = base * z.q, b2 = base * z.j1;
      return {b0, b1, b2, a * b0, a * b1, a * b2};
    };
    Outcome<6> t = detail::integrate_axis<6>(f, k_axis(p, R, eta), inner_ch, budget);
    inner_evals += t.evaluations;
    if (!t.converged && !t.roundoff_limited && !failed) {
      failed = true;
      diag = "k transform did not converge at eta = " + fmt(eta) + " (" + t.diagnostic + ")";
    }
    const auto& v = t.value;
    const double T0 = v[0], T1 = v[1], S1 = v[2], T0a = v[3], T1a = v[4], S1a = v[5];
    const std::array<double, 4> terms = {T0a * T0, -T0a * T1, -T1a * T0, 3.0 * T1a * T1};
    const double pel = terms[0] + terms[1] + terms[2] + terms[3];
    const double pm = S1a * S1;

    // First-order propagation of the transform errors.
    const std::array<double, 6> del = {T0a - T1a, -T0a + 3.0 * T1a, 0.0, T0 - T1, -T0 + 3.0 * T1, 0.0};
    const std::array<double, 6> dm = {0.0, 0.0, S1a, 0.0, 0.0, S1};
    double el_tr = 0.0, el_rs = 0.0, m_tr = 0.0, m_rs = 0.0;
    for (std::size_t i = 0; i < 6; ++i) {
      el_tr += std::abs(del[i]) * t.error[i].trunc;
      el_rs += del[i] * del[i] * t.error[i].round_sq;
      m_tr += std::abs(dm[i]) * t.error[i].trunc;
      m_rs += dm[i] * dm[i] * t.error[i].round_sq;
    }
    double mag = 0.0;
    for (double x : terms) mag += std::abs(x);
    el_rs += (2.0 * kEps * mag) * (2.0 * kEps * mag);
    m_rs += (2.0 * kEps * pm) * (2.0 * kEps * pm);
    return {pel, pm, el_tr, m_tr, std::sqrt(el_rs), std::sqrt(m_rs)};
  };

  Channels<6> ch;
  ch.controlled = 2;
  ch.abs_tol = {cfg.abs_tol * 2.0 * kPi3, cfg.abs_tol * 2.0 * kPi3, 0, 0, 0, 0};
  ch.rel_tol = cfg.rel_tol;
  ch.mode = {Accumulate::linear, Accumulate::linear, Accumulate::linear,
             Accumulate::linear, Accumulate::squared, Accumulate::squared};
  Outcome<6> o = detail::semi_infinite<6>(outer, 0.0, eta_scale, ch, budget);

  const double pref = 1.0 / (2.0 * kPi3);
  DensityPair out;
  const std::size_t evals = o.evaluations + inner_evals;
  for (int c = 0; c < 2; ++c) {
    const double value = (c == 0 ? pref : -pref) * o.value[c];
    const double err = pref * (o.error[c].total() + std::abs(o.value[2 + c]) + std::sqrt(std::max(o.value[4 + c], 0.0)));
    const double target = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
    bool conv = o.converged && !failed && err <= target;
    bool rl = !conv && !failed && (o.roundoff_limited || pref * std::sqrt(std::max(o.value[4 + c], 0.0)) > 0.5 * target);
    std::string d = failed ? diag : (!o.converged ? "eta integral: " + o.diagnostic
                                                  : (conv ? "" : "propagated transform error above tolerance"));
    (c == 0 ? out.electric : out.magnetic) = pack(value, err, evals, conv, rl, d);
  }
  return out;
}

// Direct double-k evaluation of one component.
QuadratureResult direct_route(const Profile& p, double R, Component c, const QuadratureConfig& cfg) {
  const AxisOptions ax = k_axis(p, R, 0.0);
  QuadratureResult r;
  double pref = 0.0;
  if (p.fast_decay) {
    SeparableIntegrand si;
    // a_i(k) b_i(k') with alpha on either side of the product.
    if (c == Component::electric) {
      si.coefficients = {1, -1, -1, 3, 1, -1, -1, 3};
      si.outer = [&](double k, std::span<double> o) {
        const double base = k * k * k * p.rho(k);
        const double a = p.alpha.value(k);
        const Radial z = radial(k, R);
        o[0] = a * base * z.j0; o[1] = a * base * z.j0; o[2] = a * base * z.q; o[3] = a * base * z.q;
        o[4] = base * z.j0;     o[5] = base * z.j0;     o[6] = base * z.q;     o[7] = base * z.q;
      };
      si.inner = [&](double k, std::span<double> o) {
        const double base = k * k * k * p.rho(k);
        const double a = p.alpha.value(k);
        const Radial z = radial(k, R);
        o[0] = base * z.j0;     o[1] = base * z.q;     o[2] = base * z.j0;     o[3] = base * z.q;
        o[4] = a * base * z.j0; o[5] = a * base * z.q; o[6] = a * base * z.j0; o[7] = a * base * z.q;
      };
      pref = 1.0 / (4.0 * kPi3);
    } else {
      si.coefficients = {2, 2};
      si.outer = [&](double k, std::span<double> o) {
        const double base = k * k * k * p.rho(k) * radial(k, R).j1;
        o[0] = p.alpha.value(k) * base;
        o[1] = base;
      };
      si.inner = [&](double k, std::span<double> o) {
        const double base = k * k * k * p.rho(k) * radial(k, R).j1;
        o[0] = base;
        o[1] = p.alpha.value(k) * base;
      };
      pref = -1.0 / (8.0 * kPi3);
    }
    QuadratureConfig scaled = cfg;
    scaled.abs_tol = cfg.abs_tol / std::abs(pref);
    r = integrate_double_k_separable(si, scaled, ax, ax);
  } else {
    Integrand2D f;
    if (c == Component::electric) {
      f = [&](double k, double kp) {
        const double w = (p.alpha.value(k) + p.alpha.value(kp)) * p.rho(k) * p.rho(kp);
        const double q = R == 0.0 ? 2.0 / 3.0 : kernel_qe({k, kp, R});
        return w * q * k * k * k * kp * kp * kp / (k + kp);
      };
      pref = 1.0 / (4.0 * kPi3);
    } else {
      f = [&](double k, double kp) {
        const double w = (p.alpha.value(k) + p.alpha.value(kp)) * p.rho(k) * p.rho(kp);
        return w * kernel_qm({k, kp, R}) * k * k * k * kp * kp * kp / (k + kp);
      };
      pref = -1.0 / (8.0 * kPi3);
    }
    QuadratureConfig scaled = cfg;
    scaled.abs_tol = cfg.abs_tol / std::abs(pref);
    r = integrate_double_k(f, scaled, ax, ax);
  }
  r.value *= pref;
  r.abs_error_estimate *= std::abs(pref);
  return r;
}

double eta_scale_for(const ExtendedSource& s, double R) {
  const double size = s.size();
  if (size == 0.0) return R;
  return R > 0.0 ? 0.5 * std::max(size, R) : size;
}

bool usable(const QuadratureResult& q) { return q.converged || q.roundoff_limited; }

// Point sources: evaluate with rho = e^{-gamma k} for shrinking gamma and
// extrapolate to gamma = 0.
template <class Eval>
QuadratureResult regulated_limit(const ExtendedSource& s, double R, const QuadratureConfig& cfg, Eval eval) {
  if (!(R > 0.0)) throw std::domain_error("point source densities are defined only for R > 0");
  const bool is_static = s.polarizability().kind == PolarizabilityKind::static_alpha;
  // Static: the cutoff dependence is odd in gamma. Rational: all powers.
  const ExtrapolationModel model = is_static ? ExtrapolationModel{1, 2} : ExtrapolationModel{1, 1};
  const std::vector<double> fractions =
      is_static ? std::vector<double>{0.08, 0.04, 0.02, 0.01, 0.005}
                : std::vector<double>{0.16, 0.08, 0.04, 0.02, 0.01, 0.005, 0.0025, 0.00125};
  std::vector<Sample> samples;
  double quad_err = 0.0;
  std::size_t evals = 0;
  bool ok = true;
  bool rounding = false;
  std::string diag;
  for (double f : fractions) {
    const double gamma = f * R;
    QuadratureResult q = eval(cutoff_profile(s.polarizability(), gamma), gamma);
    evals += q.evaluations;
    quad_err = std::max(quad_err, q.abs_error_estimate);
    rounding = rounding || q.roundoff_limited;
    if (!usable(q)) {
      ok = false;
      if (diag.empty()) diag = "cutoff gamma = " + fmt(gamma) + ": " + q.diagnostic;
    }
    samples.push_back({gamma, q.value});
  }
  const Extrapolated e = extrapolate_to_zero(samples, samples.size() - (is_static ? 1 : 2), model);
  const double err = e.error_estimate + quad_err;
  const double target = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(e.value));
  const bool conv = ok && err <= target;
  if (ok && !conv) diag = "cutoff extrapolation error " + fmt(err) + " above tolerance";
  return pack(e.value, err, evals, conv, ok && !conv && rounding && e.error_estimate <= quad_err, diag);
}

void require_R(double R) {
  if (!(R >= 0.0) || !std::isfinite(R)) throw std::domain_error("R must be finite and non-negative");
}

}  // namespace

ExtendedDensities extended_densities(const ExtendedSource& source, double R, const QuadratureConfig& config) {
  config.validate();
  require_R(R);
  if (source.is_point()) {
    // One eta pass per gamma yields both components; extrapolate each.
    std::map<double, DensityPair> cache;
    auto pair_at = [&](const Profile& p, double gamma) -> const DensityPair& {
      auto it = cache.find(gamma);
      if (it == cache.end()) it = cache.emplace(gamma, eta_route(p, R, R, config)).first;
      return it->second;
    };
    ExtendedDensities out;
    out.electric = regulated_limit(source, R, config, [&](const Profile& p, double g) { return pair_at(p, g).electric; });
    out.magnetic = regulated_limit(source, R, config, [&](const Profile& p, double g) { return pair_at(p, g).magnetic; });
    return out;
  }
  DensityPair d = eta_route(profile_of(source), R, eta_scale_for(source, R), config);
  return {d.electric, d.magnetic};
}

QuadratureResult extended_density(const ExtendedSource& source, double R, Component c, const QuadratureConfig& config,
                                  DensityRoute route) {
  config.validate();
  require_R(R);
  if (route == DensityRoute::eta_decoupled) {
    ExtendedDensities d = extended_densities(source, R, config);
    return c == Component::electric ? d.electric : d.magnetic;
  }
  if (source.is_point()) {
    return regulated_limit(source, R, config, [&](const Profile& p, double) { return direct_route(p, R, c, config); });
  }
  return direct_route(profile_of(source), R, c, config);
}

ExtendedGlobalReport extended_global_energy(const ExtendedSource& source, const QuadratureConfig& config,
                                            const GlobalEnergyOptions& options) {
  config.validate();
  if (source.is_point()) throw std::domain_error("the global energy of a point source diverges");
  ExtendedGlobalReport rep;
  const double r_max = options.r_max > 0.0 ? options.r_max : 40.0 * source.size();
  rep.r_max = {0.25 * r_max, 0.5 * r_max, r_max};
  rep.damping = options.damping.empty() ? std::vector<double>{0.1 / r_max, 0.05 / r_max, 0.025 / r_max}
                                        : options.damping;
  if (rep.damping.size() < 3) throw std::invalid_argument("need at least 3 damping values");

  // Densities are memoized: the radial rules for different eps share nodes.
  std::map<double, std::array<double, 2>> memo;
  bool failed = false;
  auto density = [&](double R) -> std::array<double, 2> {
    auto it = memo.find(R);
    if (it != memo.end()) return it->second;
    ExtendedDensities d = extended_densities(source, R, config);
    if ((!usable(d.electric) || !usable(d.magnetic)) && !failed) {
      failed = true;
      rep.diagnostic = "density at R = " + fmt(R) + " did not converge: " +
                       (d.electric.converged ? d.magnetic.diagnostic : d.electric.diagnostic);
    }
    std::array<double, 2> v = {d.electric.value, d.magnetic.value};
    memo.emplace(R, v);
    return v;
  };

  // cumulative[e][j][c]: integral up to r_max[j] with damping e, channel c (el, mag, total).
  std::vector<std::array<std::array<double, 3>, 3>> cumulative(rep.damping.size());
  double quad_err = 0.0;
  bool conv = true;
  const std::array<double, 4> edges = {0.0, rep.r_max[0], rep.r_max[1], rep.r_max[2]};
  for (std::size_t e = 0; e < rep.damping.size(); ++e) {
    const double eps = rep.damping[e];
    auto f = [&](double R) -> std::array<double, 3> {
      const auto u = density(R);
      const double w = 4.0 * kPi * R * R * std::exp(-eps * R);
      return {w * u[0], w * u[1], w * (u[0] + u[1])};
    };
    std::array<double, 3> running{};
    for (std::size_t j = 0; j < 3; ++j) {
      auto ch = Channels<3>::uniform(config.abs_tol, config.rel_tol);
      // The total cancels; hold it to a fraction of the electric part.
      if (e > 0 || j > 0) ch.abs_tol[2] = std::max(config.abs_tol, 1e-2 * config.rel_tol * std::abs(cumulative[0][0][0]));
      Outcome<3> o = detail::adapt<3>(f, edges[j], edges[j + 1], ch, detail::budget_of(config));
      if (!o.converged) {
        conv = false;
        if (rep.diagnostic.empty()) rep.diagnostic = "radial integral on [" + fmt(edges[j]) + ", " + fmt(edges[j + 1]) + "]: " + o.diagnostic;
      }
      for (std::size_t c = 0; c < 3; ++c) {
        running[c] += o.value[c];
        cumulative[e][j][c] = running[c];
      }
      quad_err += o.error[2].total();
    }
  }

  // eps -> 0 at each cutoff, then R_max -> infinity in powers 1/R_max^4, 1/R_max^6.
  std::array<double, 3> limit{};
  std::array<double, 3> err{};
  for (std::size_t c = 0; c < 3; ++c) {
    std::vector<Sample> by_r;
    double eps_err = 0.0;
    for (std::size_t j = 0; j < 3; ++j) {
      std::vector<Sample> by_eps;
      for (std::size_t e = 0; e < rep.damping.size(); ++e) by_eps.push_back({rep.damping[e], cumulative[e][j][c]});
      const Extrapolated x = extrapolate_to_zero(by_eps, by_eps.size() - 1);
      eps_err = std::max(eps_err, x.error_estimate);
      by_r.push_back({1.0 / rep.r_max[j], x.value});
    }
    const Extrapolated x = extrapolate_to_zero(by_r, 2, ExtrapolationModel{4, 2});
    limit[c] = x.value;
    err[c] = x.error_estimate + eps_err;
  }
  rep.electric_total = limit[0];
  rep.magnetic_total = limit[1];
  rep.total = limit[2];
  rep.error_estimate = err[2] + quad_err;
  rep.relative_total = std::abs(rep.total) / std::abs(rep.electric_total);
  rep.converged = conv && !failed;
  return rep;
}

CancellationResult kernel_radial_cancellation(double k, double k_prime, const QuadratureConfig& config,
                                              std::span<const double> eps_sequence) {
  config.validate();
  if (!(k > 0.0) || !(k_prime > 0.0) || !std::isfinite(k) || !std::isfinite(k_prime)) {
    throw std::domain_error("kernel_radial_cancellation: requires k > 0 and k' > 0");
  }
  static constexpr std::array<double, 4> kDefaultEps = {0.008, 0.004, 0.002, 0.001};
  if (eps_sequence.empty()) eps_sequence = kDefaultEps;
  if (eps_sequence.size() < 3) throw std::invalid_argument("need at least 3 damping values");

  CancellationResult out;
  out.converged = true;
  double quad_err = 0.0;
  for (double eps : eps_sequence) {
    if (!(eps > 0.0)) throw std::invalid_argument("damping values must be positive");
    // The diagonal k = k' has a non-oscillating 1/r^2 tail, so the panel sums
    // are not purely alternating and are summed without acceleration.
    AxisOptions ax;
    ax.half_period = kPi / (k + k_prime);
    ax.scale = 1.0 / eps;
    ax.accelerate = false;
    const QuadratureResult q = integrate_semi_infinite(
        [&](double r) {
          const KernelArgs args{k, k_prime, r};
          return 4.0 * kPi * r * r * std::exp(-eps * r) *
                 (electric_kernel_weight * kernel_qe(args) - kernel_qm(args));
        },
        config, ax);
    if (!usable(q)) {
      out.converged = false;
      if (out.diagnostic.empty()) out.diagnostic = "eps = " + fmt(eps) + ": " + q.diagnostic;
    }
    quad_err = std::max(quad_err, q.abs_error_estimate);
    out.samples.push_back({eps, q.value});
  }
  const Extrapolated e = extrapolate_to_zero(out.samples, out.samples.size() - 1);
  out.value = e.value;
  out.error_estimate = e.error_estimate + quad_err;
  return out;
}

}  // namespace vacuum
