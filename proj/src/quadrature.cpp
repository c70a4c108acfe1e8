#include "vacuum/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "vacuum/detail/adaptive.hpp"

namespace vacuum {

using detail::Accumulate;
using detail::Budget;
using detail::Channels;
using detail::ErrorParts;
using detail::kEps;
using detail::Outcome;

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0) || !std::isfinite(abs_tol)) throw std::invalid_argument("abs_tol must be positive");
  if (!(rel_tol > 0.0) || !std::isfinite(rel_tol)) throw std::invalid_argument("rel_tol must be positive");
  if (max_evaluations < 21) throw std::invalid_argument("max_evaluations must be at least 21");
  if (subdivision_limit < 1) throw std::invalid_argument("subdivision_limit must be positive");
}

QuadratureConfig QuadratureConfig::tightened(double factor) const {
  QuadratureConfig c = *this;
  c.abs_tol /= factor;
  c.rel_tol /= factor;
  return c;
}

const QuadratureResult& require_converged(const QuadratureResult& result, std::string_view context) {
  if (!result.converged) {
    std::string msg(context);
    msg += ": quadrature did not converge";
    if (!result.diagnostic.empty()) msg += " (" + result.diagnostic + ")";
    throw ConvergenceError(msg, result);
  }
  return result;
}

namespace detail {

double wynn_tail(const std::vector<double>& s) { return wynn_epsilon(s); }

}  // namespace detail

double wynn_epsilon(std::span<const double> s) {
  const std::size_t n = s.size();
  if (n == 0) return 0.0;
  if (n < 3) return s.back();
  std::vector<double> prev(n + 1, 0.0);
  std::vector<double> cur(s.begin(), s.end());
  double best = s.back();
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<double> next(n - k);
    for (std::size_t i = 0; i + k < n; ++i) {
      const double d = cur[i + 1] - cur[i];
      if (d == 0.0) return (k % 2 == 1) ? cur[i + 1] : best;
      next[i] = prev[i + 1] + 1.0 / d;
      if (!std::isfinite(next[i])) return best;
    }
    prev = std::move(cur);
    cur = std::move(next);
    if (k % 2 == 0) best = cur.back();
  }
  return best;
}

namespace {

void check_axis(const AxisOptions& axis) {
  if (!(axis.scale > 0.0) || !std::isfinite(axis.scale)) throw std::invalid_argument("axis scale must be positive");
  if (!(axis.half_period >= 0.0) || !std::isfinite(axis.half_period)) {
    throw std::invalid_argument("axis half period must be non-negative");
  }
}

struct Scalar {
  const Integrand1D* f;
  double shift = 0.0;
  std::array<double, 1> operator()(double x) const { return {(*f)(x + shift)}; }
};

}  // namespace

QuadratureResult integrate_interval(const Integrand1D& f, double a, double b, const QuadratureConfig& config) {
  config.validate();
  if (!std::isfinite(a) || !std::isfinite(b)) throw std::invalid_argument("interval bounds must be finite");
  Scalar g{&f};
  auto ch = Channels<1>::uniform(config.abs_tol, config.rel_tol);
  return detail::to_result(detail::adapt<1>(g, a, b, ch, detail::budget_of(config)));
}

QuadratureResult integrate_semi_infinite(const Integrand1D& f, const QuadratureConfig& config,
                                         const AxisOptions& axis) {
  return integrate_from(f, 0.0, config, axis);
}

QuadratureResult integrate_from(const Integrand1D& f, double lower, const QuadratureConfig& config,
                                const AxisOptions& axis) {
  config.validate();
  check_axis(axis);
  if (!std::isfinite(lower)) throw std::invalid_argument("lower bound must be finite");
  Scalar g{&f, lower};
  auto ch = Channels<1>::uniform(config.abs_tol, config.rel_tol);
  return detail::to_result(detail::integrate_axis<1>(g, axis, ch, detail::budget_of(config)));
}

namespace {

constexpr double kInnerShare = 50.0;

// Outer channel layout for nested integrals: value, propagated inner
// truncation error (linear), propagated inner rounding error (squared).
Channels<3> outer_channels(const QuadratureConfig& config) {
  Channels<3> ch;
  ch.controlled = 1;
  ch.abs_tol = {config.abs_tol, 0.0, 0.0};
  ch.rel_tol = config.rel_tol;
  ch.mode = {Accumulate::linear, Accumulate::linear, Accumulate::squared};
  return ch;
}

QuadratureResult finish_nested(const Outcome<3>& o, const QuadratureConfig& config, bool inner_failed,
                               const std::string& inner_diag) {
  QuadratureResult r;
  r.value = o.value[0];
  const double inner_err = std::abs(o.value[1]) + std::sqrt(std::max(o.value[2], 0.0));
  r.abs_error_estimate = std::max(o.error[0].total() + inner_err, 4.0 * kEps * std::abs(r.value));
  r.evaluations = std::max<std::size_t>(o.evaluations, 1);
  const double target = std::max(config.abs_tol, config.rel_tol * std::abs(r.value));
  r.converged = o.converged && !inner_failed && r.abs_error_estimate <= target;
  r.roundoff_limited = !r.converged && !inner_failed &&
                       (o.roundoff_limited || std::sqrt(std::max(o.value[2], 0.0)) > 0.5 * target);
  if (inner_failed) {
    r.diagnostic = inner_diag;
  } else if (!o.converged) {
    r.diagnostic = "outer integral: " + o.diagnostic;
  } else if (!r.converged) {
    r.diagnostic = "propagated inner error above tolerance";
  }
  return r;
}

struct NestedPass {
  Outcome<3> outer;
  bool inner_failed = false;
  std::string inner_diag;
  std::size_t inner_evaluations = 0;
};

// Runs `pass(inner_config)` with the inner tolerance at 1/50 of the outer one
// and tightens it when the inner errors accumulated over the outer range still
// exceed the target.
template <class Pass>
QuadratureResult nested(const QuadratureConfig& config, Pass pass) {
  constexpr int kAttempts = 4;
  double share = kInnerShare;
  std::size_t evaluations = 0;
  QuadratureResult r;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    const NestedPass p = pass(config.tightened(share));
    r = finish_nested(p.outer, config, p.inner_failed, p.inner_diag);
    evaluations += r.evaluations + p.inner_evaluations;
    if (r.converged || r.roundoff_limited || p.inner_failed || !p.outer.converged) break;
    const double target = std::max(config.abs_tol, config.rel_tol * std::abs(r.value));
    const double inner_err = std::abs(p.outer.value[1]) + std::sqrt(std::max(p.outer.value[2], 0.0));
    const double room = target - p.outer.error[0].total();
    if (!(room > 0.0)) break;
    share *= std::clamp(4.0 * inner_err / room, 4.0, 1e4);
  }
  r.evaluations = evaluations;
  return r;
}

}  // namespace

QuadratureResult integrate_double_k(const Integrand2D& f, const QuadratureConfig& config,
                                    const AxisOptions& outer, const AxisOptions& inner) {
  config.validate();
  check_axis(outer);
  check_axis(inner);
  const Budget inner_budget = detail::budget_of(config);
  return nested(config, [&](const QuadratureConfig& inner_cfg) {
    const auto inner_ch = Channels<1>::uniform(inner_cfg.abs_tol, inner_cfg.rel_tol);
    NestedPass p;
    auto g = [&](double k) -> std::array<double, 3> {
      auto h = [&](double kp) -> std::array<double, 1> { return {f(k, kp)}; };
      Outcome<1> in = detail::integrate_axis<1>(h, inner, inner_ch, inner_budget);
      p.inner_evaluations += in.evaluations;
      if (!in.converged && !in.roundoff_limited && !p.inner_failed) {
        p.inner_failed = true;
        std::ostringstream os;
        os << "inner integral did not converge at k = " << k << " (" << in.diagnostic << ")";
        p.inner_diag = os.str();
      }
      return {in.value[0], in.error[0].trunc, std::sqrt(std::max(in.error[0].round_sq, 0.0))};
    };
    p.outer = detail::integrate_axis<3>(g, outer, outer_channels(config), detail::budget_of(config));
    return p;
  });
}

namespace {

// Tabulation of c_i b_i(k') on Gauss-Kronrod panels covering (0, inf), shared
// across all outer nodes and refined in place when some k needs it.
class InnerCache {
 public:
  InnerCache(const SeparableIntegrand& in, const AxisOptions& axis, const QuadratureConfig& cfg)
      : in_(in),
        terms_(in.coefficients.size()),
        cfg_(cfg),
        max_panels_(cfg.max_evaluations / 21),
        phase_rate_(axis.half_period > 0.0 ? 3.141592653589793 / axis.half_period : 0.0) {
    double width = axis.scale;
    if (axis.half_period > 0.0) width = std::min(width, axis.half_period);
    build(width);
  }

  bool ok() const { return ok_; }
  const std::string& diagnostic() const { return diag_; }
  std::size_t evaluations() const { return evaluations_; }

  // Values and error parts of G_i(k) = \int c_i b_i(k') / (k + k') dk'. The
  // tabulation is refined until the combination sum_i w_i G_i meets the
  // tolerance, or its rounding floor does.
  bool evaluate(double k, std::span<const double> w, std::vector<double>& value, std::vector<ErrorParts>& error) {
    std::vector<double> pv(panels_.size() * terms_);
    std::vector<ErrorParts> pe(panels_.size() * terms_);
    for (std::size_t p = 0; p < panels_.size(); ++p) rule(panels_[p], k, &pv[p * terms_], &pe[p * terms_]);

    for (;;) {
      value.assign(terms_, 0.0);
      error.assign(terms_, ErrorParts{});
      for (std::size_t p = 0; p < panels_.size(); ++p) {
        for (std::size_t i = 0; i < terms_; ++i) {
          value[i] += pv[p * terms_ + i];
          error[i].add(pe[p * terms_ + i]);
        }
      }
      double combined = 0.0, trunc = 0.0, round_sq = 0.0;
      for (std::size_t i = 0; i < terms_; ++i) {
        error[i].trunc += tail_[i];
        combined += w[i] * value[i];
        trunc += std::abs(w[i]) * error[i].trunc;
        round_sq += w[i] * w[i] * error[i].round_sq;
      }
      const double target = std::max(cfg_.abs_tol, cfg_.rel_tol * std::abs(combined));
      if (trunc + std::sqrt(round_sq) <= target || std::sqrt(round_sq) > target) return true;

      double worst = 0.0;
      std::size_t worst_p = panels_.size();
      for (std::size_t p = 0; p < panels_.size(); ++p) {
        double q = 0.0;
        for (std::size_t i = 0; i < terms_; ++i) q += std::abs(w[i]) * pe[p * terms_ + i].trunc;
        if (q > worst) {
          worst = q;
          worst_p = p;
        }
      }
      if (worst_p == panels_.size()) return true;  // only the tail estimate is left
      if (panels_.size() + 1 > max_panels_) {
        std::ostringstream os;
        os << "inner panel cache exceeded its budget at k = " << k;
        diag_ = os.str();
        return false;
      }
      const Panel parent = panels_[worst_p];
      const double mid = 0.5 * (parent.lo + parent.hi);
      if (!(mid > parent.lo && mid < parent.hi)) return true;
      Panel left = make_panel(parent.lo, mid);
      Panel right = make_panel(mid, parent.hi);
      std::vector<double> lv(terms_), rv(terms_);
      std::vector<ErrorParts> le(terms_), re(terms_);
      rule(left, k, lv.data(), le.data());
      rule(right, k, rv.data(), re.data());
      panels_[worst_p] = std::move(left);
      panels_.insert(panels_.begin() + static_cast<std::ptrdiff_t>(worst_p) + 1, std::move(right));
      const auto at = static_cast<std::ptrdiff_t>(worst_p * terms_);
      std::copy(lv.begin(), lv.end(), pv.begin() + at);
      std::copy(le.begin(), le.end(), pe.begin() + at);
      pv.insert(pv.begin() + at + static_cast<std::ptrdiff_t>(terms_), rv.begin(), rv.end());
      pe.insert(pe.begin() + at + static_cast<std::ptrdiff_t>(terms_), re.begin(), re.end());
    }
  }

 private:
  struct Panel {
    double lo = 0.0;
    double hi = 0.0;
    std::array<double, 21> x{};
    std::vector<double> cb;  // 21 x terms, c_i b_i(x_n)
  };

  Panel make_panel(double lo, double hi) {
    Panel p;
    p.lo = lo;
    p.hi = hi;
    const double centre = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    for (std::size_t j = 0; j < 10; ++j) {
      p.x[2 * j] = centre - half * detail::kXgk[j];
      p.x[2 * j + 1] = centre + half * detail::kXgk[j];
    }
    p.x[20] = centre;
    p.cb.resize(21 * terms_);
    for (std::size_t n = 0; n < 21; ++n) {
      in_.inner(p.x[n], std::span<double>(&p.cb[n * terms_], terms_));
      for (std::size_t i = 0; i < terms_; ++i) {
        p.cb[n * terms_ + i] *= in_.coefficients[i];
        if (!std::isfinite(p.cb[n * terms_ + i])) {
          ok_ = false;
          diag_ = "non-finite inner factor at k' = " + std::to_string(p.x[n]);
          p.cb[n * terms_ + i] = 0.0;
        }
      }
    }
    evaluations_ += 21;
    return p;
  }

  void rule(const Panel& p, double k, double* value, ErrorParts* error) const {
    const double half = 0.5 * (p.hi - p.lo);
    std::array<double, 21> inv;
    for (std::size_t n = 0; n < 21; ++n) inv[n] = 1.0 / (k + p.x[n]);
    for (std::size_t i = 0; i < terms_; ++i) {
      auto fv = [&](std::size_t n) { return p.cb[n * terms_ + i] * inv[n]; };
      const double fc = fv(20);
      double resk = detail::kWgk[10] * fc;
      double resg = 0.0;
      double resabs = std::abs(resk);
      for (std::size_t j = 0; j < 10; ++j) {
        const double f1 = fv(2 * j);
        const double f2 = fv(2 * j + 1);
        resk += detail::kWgk[j] * (f1 + f2);
        resabs += detail::kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) resg += detail::kWg[j / 2] * (f1 + f2);
      }
      const double mean = 0.5 * resk;
      double resasc = detail::kWgk[10] * std::abs(fc - mean);
      for (std::size_t j = 0; j < 10; ++j) {
        resasc += detail::kWgk[j] * (std::abs(fv(2 * j) - mean) + std::abs(fv(2 * j + 1) - mean));
      }
      value[i] = resk * half;
      error[i] = detail::rule_error((resk - resg) * half, resabs * half, resasc * half, 1.0 + phase_rate_ * p.hi);
    }
  }

  // Upper bound on sum_i |c_i b_i| / k' over a panel: the k-independent
  // magnitude used to decide where the tabulation may stop.
  std::vector<double> magnitude(const Panel& p) const {
    std::vector<double> m(terms_, 0.0);
    const double half = 0.5 * (p.hi - p.lo);
    for (std::size_t n = 0; n < 21; ++n) {
      const double w = (n == 20 ? detail::kWgk[10] : detail::kWgk[n / 2]) * half / p.x[n];
      for (std::size_t i = 0; i < terms_; ++i) m[i] += w * std::abs(p.cb[n * terms_ + i]);
    }
    return m;
  }

  void build(double width) {
    constexpr double kTailFraction = 1e-18;
    std::vector<double> total(terms_, 0.0);
    std::vector<std::array<double, 3>> last(terms_, {1.0, 1.0, 1.0});
    for (std::size_t n = 0;; ++n) {
      if (panels_.size() >= max_panels_) {
        ok_ = false;
        diag_ = "inner factors not negligible within the evaluation budget";
        return;
      }
      const double lo = width * static_cast<double>(n);
      panels_.push_back(make_panel(lo, lo + width));
      const auto m = magnitude(panels_.back());
      bool small = n >= 3;
      for (std::size_t i = 0; i < terms_; ++i) {
        total[i] += m[i];
        last[i] = {last[i][1], last[i][2], m[i]};
        if (last[i][0] + last[i][1] + last[i][2] > kTailFraction * total[i]) small = false;
      }
      if (small) break;
    }
    tail_.assign(terms_, 0.0);
    for (std::size_t i = 0; i < terms_; ++i) tail_[i] = last[i][0] + last[i][1] + last[i][2];
  }

  const SeparableIntegrand& in_;
  std::size_t terms_;
  QuadratureConfig cfg_;
  std::size_t max_panels_;
  double phase_rate_;
  std::vector<Panel> panels_;
  std::vector<double> tail_;
  std::size_t evaluations_ = 0;
  bool ok_ = true;
  std::string diag_;
};

}  // namespace

QuadratureResult integrate_double_k_separable(const SeparableIntegrand& integrand, const QuadratureConfig& config,
                                              const AxisOptions& outer, const AxisOptions& inner) {
  config.validate();
  check_axis(outer);
  check_axis(inner);
  const std::size_t terms = integrand.coefficients.size();
  if (terms == 0 || !integrand.outer || !integrand.inner) {
    throw std::invalid_argument("separable integrand needs at least one term and both factor functions");
  }
  return nested(config, [&](const QuadratureConfig& inner_cfg) {
    NestedPass p;
    InnerCache cache(integrand, inner, inner_cfg);
    if (!cache.ok()) {
      p.inner_failed = true;
      p.inner_diag = cache.diagnostic();
      p.inner_evaluations = cache.evaluations();
      p.outer.converged = true;
      return p;
    }
    std::vector<double> a(terms), gv;
    std::vector<ErrorParts> ge;
    auto g = [&](double k) -> std::array<double, 3> {
      integrand.outer(k, std::span<double>(a));
      if (!cache.evaluate(k, a, gv, ge) && !p.inner_failed) {
        p.inner_failed = true;
        p.inner_diag = cache.diagnostic();
      }
      double v = 0.0, trunc = 0.0, round_sq = 0.0;
      for (std::size_t i = 0; i < terms; ++i) {
        v += a[i] * gv[i];
        trunc += std::abs(a[i]) * ge[i].trunc;
        round_sq += a[i] * a[i] * ge[i].round_sq;
      }
      return {v, trunc, std::sqrt(round_sq)};
    };
    p.outer = detail::integrate_axis<3>(g, outer, outer_channels(config), detail::budget_of(config));
    p.inner_evaluations = cache.evaluations();
    return p;
  });
}

}  // namespace vacuum
