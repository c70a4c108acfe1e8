#pragma once

// Vector-valued adaptive Gauss-Kronrod engine.
//
// An integrand returns std::array<double, N>. The first `controlled` channels
// drive subdivision and convergence; the rest are carried along on the same
// nodes. A carried channel in `squared` mode accumulates sum_i (w_i f_i)^2
// instead of sum_i w_i f_i, which is how rounding errors of an inner integral
// are propagated in quadrature through an outer one.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "vacuum/quadrature.hpp"

namespace vacuum::detail {

inline constexpr double kEps = std::numeric_limits<double>::epsilon();
inline constexpr double kRoundFactor = 2.0;

// 21-point Kronrod abscissae (descending; the last is the centre) and weights,
// and the embedded 10-point Gauss weights for abscissae 1, 3, 5, 7, 9.
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208626811203, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct ErrorParts {
  double trunc = 0.0;
  double round_sq = 0.0;

  double total() const { return trunc + std::sqrt(round_sq); }
  void add(const ErrorParts& o) {
    trunc += o.trunc;
    round_sq += o.round_sq;
  }
  void sub(const ErrorParts& o) {
    trunc -= o.trunc;
    round_sq -= o.round_sq;
  }
};

// QUADPACK-style error of one rule application, with the rounding floor kept
// separate from the truncation part. For an integrand oscillating at angular
// rate w, rounding of the argument w x shifts the phase by about eps w x, so
// the floor grows by the factor (1 + w x) passed as `phase_factor`.
inline ErrorParts rule_error(double diff, double resabs, double resasc, double phase_factor = 1.0) {
  double err = std::abs(diff);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double floor = kRoundFactor * kEps * resabs * phase_factor;
  return {std::max(err - floor, 0.0), floor * floor};
}

enum class Accumulate { linear, squared };

template <std::size_t N>
struct Channels {
  std::size_t controlled = N;
  std::array<Accumulate, N> mode{};
  std::array<double, N> abs_tol{};
  double rel_tol = 0.0;
  double phase_rate = 0.0;  // angular rate of oscillation in x, when known

  double target(std::size_t c, double value) const {
    return std::max(abs_tol[c], rel_tol * std::abs(value));
  }

  static Channels uniform(double abs_tol, double rel_tol, std::size_t controlled = N) {
    Channels ch;
    ch.controlled = controlled;
    ch.abs_tol.fill(abs_tol);
    ch.rel_tol = rel_tol;
    return ch;
  }
};

struct Budget {
  std::size_t max_evaluations = 2'000'000;
  std::size_t max_segments = 4000;
};

template <std::size_t N>
struct Outcome {
  std::array<double, N> value{};
  std::array<ErrorParts, N> error{};
  std::size_t evaluations = 0;
  bool converged = false;
  bool roundoff_limited = false;
  std::string diagnostic;
};

template <std::size_t N>
struct Segment {
  double a = 0.0;
  double b = 0.0;
  std::array<double, N> value{};
  std::array<ErrorParts, N> error{};
  double priority = 0.0;
  bool finite = true;
};

template <std::size_t N, class F>
Segment<N> gk21(F& f, double a, double b, const Channels<N>& ch) {
  Segment<N> seg;
  seg.a = a;
  seg.b = b;
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::array<std::array<double, N>, 21> fv;
  fv[20] = f(centre);
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    fv[2 * j] = f(centre - dx);
    fv[2 * j + 1] = f(centre + dx);
  }

  for (std::size_t c = 0; c < N; ++c) {
    const double fc = fv[20][c];
    if (ch.mode[c] == Accumulate::squared) {
      double sq = (kWgk[10] * half * fc) * (kWgk[10] * half * fc);
      for (std::size_t j = 0; j < 10; ++j) {
        const double w = kWgk[j] * half;
        sq += w * w * (fv[2 * j][c] * fv[2 * j][c] + fv[2 * j + 1][c] * fv[2 * j + 1][c]);
      }
      seg.value[c] = sq;
      if (!std::isfinite(sq)) seg.finite = false;
      continue;
    }
    double resk = kWgk[10] * fc;
    double resg = 0.0;
    double resabs = std::abs(resk);
    for (std::size_t j = 0; j < 10; ++j) {
      const double f1 = fv[2 * j][c];
      const double f2 = fv[2 * j + 1][c];
      resk += kWgk[j] * (f1 + f2);
      resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
      if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    const double mean = 0.5 * resk;
    double resasc = kWgk[10] * std::abs(fc - mean);
    for (std::size_t j = 0; j < 10; ++j) {
      resasc += kWgk[j] * (std::abs(fv[2 * j][c] - mean) + std::abs(fv[2 * j + 1][c] - mean));
    }
    const double h = std::abs(half);
    seg.value[c] = resk * half;
    seg.error[c] = rule_error((resk - resg) * half, resabs * h, resasc * h,
                              1.0 + ch.phase_rate * std::max(std::abs(a), std::abs(b)));
    if (!std::isfinite(seg.value[c]) || !std::isfinite(seg.error[c].trunc)) seg.finite = false;
  }
  return seg;
}

template <std::size_t N>
struct Totals {
  std::array<double, N> value{};
  std::array<ErrorParts, N> error{};

  void add(const Segment<N>& s) {
    for (std::size_t c = 0; c < N; ++c) {
      value[c] += s.value[c];
      error[c].add(s.error[c]);
    }
  }
  void sub(const Segment<N>& s) {
    for (std::size_t c = 0; c < N; ++c) {
      value[c] -= s.value[c];
      error[c].sub(s.error[c]);
    }
  }
};

// Converged when every controlled channel meets its target. Otherwise sets
// `rounding` when every failing channel has a rounding floor above
// `round_share` times its target and a truncation error already below that
// floor, so that refinement cannot help.
template <std::size_t N>
bool meets_targets(const std::array<double, N>& value, const std::array<ErrorParts, N>& error,
                   const Channels<N>& ch, bool* rounding, double round_share = 1.0) {
  bool ok = true;
  bool round = true;
  for (std::size_t c = 0; c < ch.controlled; ++c) {
    const double target = ch.target(c, value[c]);
    if (error[c].total() > target) {
      ok = false;
      const double floor = std::sqrt(std::max(error[c].round_sq, 0.0));
      if (!(floor > round_share * target && error[c].trunc <= floor)) round = false;
    }
  }
  if (rounding != nullptr) *rounding = !ok && round;
  return ok;
}

// For drivers that cannot refine further: every failing channel has a
// rounding floor of at least half its target.
template <std::size_t N>
bool rounding_dominated(const std::array<double, N>& value, const std::array<ErrorParts, N>& error,
                        const Channels<N>& ch) {
  bool rounding = false;
  meets_targets(value, error, ch, &rounding, 0.5);
  return rounding;
}

template <std::size_t N>
double segment_priority(const Segment<N>& s, const Totals<N>& totals, const Channels<N>& ch) {
  double p = 0.0;
  for (std::size_t c = 0; c < ch.controlled; ++c) {
    const double target = std::max(ch.target(c, totals.value[c]), std::numeric_limits<double>::min());
    p = std::max(p, s.error[c].trunc / target);
  }
  return p;
}

template <std::size_t N>
Totals<N> sorted_totals(std::vector<Segment<N>>& segs) {
  std::sort(segs.begin(), segs.end(), [](const Segment<N>& x, const Segment<N>& y) { return x.a < y.a; });
  Totals<N> t;
  for (std::size_t c = 0; c < N; ++c) {
    double sum = 0.0;
    double comp = 0.0;
    ErrorParts err;
    for (const auto& s : segs) {
      const double y = s.value[c] - comp;
      const double z = sum + y;
      comp = (z - sum) - y;
      sum = z;
      err.add(s.error[c]);
    }
    t.value[c] = sum;
    t.error[c] = err;
  }
  return t;
}

// Adaptive bisection on [a, b].
template <std::size_t N, class F>
Outcome<N> adapt(F& f, double a, double b, const Channels<N>& ch, const Budget& budget,
                 std::span<const double> breaks = {}) {
  Outcome<N> out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  auto cmp = [](const Segment<N>& x, const Segment<N>& y) { return x.priority < y.priority; };
  std::vector<Segment<N>> heap;
  std::vector<Segment<N>> retired;  // segments too narrow to split further

  // Initial partition: [a, b] cut at the interior breakpoints, which must be increasing.
  Totals<N> totals;
  double lo = a;
  for (std::size_t i = 0; i <= breaks.size(); ++i) {
    const double hi = i < breaks.size() ? breaks[i] : b;
    if (!(hi > lo && hi <= b)) continue;
    Segment<N> seg = gk21<N>(f, lo, hi, ch);
    out.evaluations += 21;
    if (!seg.finite) {
      out.diagnostic = "non-finite integrand value on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
      out.value = seg.value;
      return out;
    }
    totals.add(seg);
    heap.push_back(seg);
    lo = hi;
  }
  for (Segment<N>& seg : heap) seg.priority = segment_priority(seg, totals, ch);
  std::make_heap(heap.begin(), heap.end(), cmp);

  // Incremental totals drift when large early errors are subtracted again;
  // any stopping decision is confirmed on freshly summed totals.
  auto resum = [&] {
    std::vector<Segment<N>> all = retired;
    all.insert(all.end(), heap.begin(), heap.end());
    totals = sorted_totals(all);
  };

  std::string stop;
  for (;;) {
    bool rounding = false;
    if (meets_targets(totals.value, totals.error, ch, &rounding) || rounding) {
      resum();
      if (meets_targets(totals.value, totals.error, ch, &rounding)) {
        out.converged = true;
        break;
      }
      if (rounding) {
        out.roundoff_limited = true;
        stop = "rounding floor exceeds tolerance";
        break;
      }
    }
    if (heap.empty() || heap.front().priority == 0.0) {
      out.roundoff_limited = true;
      stop = "no subinterval left with reducible truncation error";
      break;
    }
    if (out.evaluations + 42 > budget.max_evaluations) {
      stop = "evaluation budget exhausted";
      break;
    }
    if (heap.size() + retired.size() >= budget.max_segments) {
      stop = "subdivision limit reached";
      break;
    }
    std::pop_heap(heap.begin(), heap.end(), cmp);
    Segment<N> worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    const double width = worst.b - worst.a;
    if (!(mid > worst.a && mid < worst.b) ||
        std::abs(width) <= 1e3 * kEps * std::max(std::abs(worst.a), std::abs(worst.b))) {
      worst.priority = 0.0;
      retired.push_back(worst);
      continue;
    }
    Segment<N> left = gk21<N>(f, worst.a, mid, ch);
    Segment<N> right = gk21<N>(f, mid, worst.b, ch);
    out.evaluations += 42;
    if (!left.finite || !right.finite) {
      stop = "non-finite integrand value near x = " + std::to_string(mid);
      retired.push_back(worst);
      break;
    }
    totals.sub(worst);
    totals.add(left);
    totals.add(right);
    left.priority = segment_priority(left, totals, ch);
    right.priority = segment_priority(right, totals, ch);
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), cmp);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), cmp);
  }

  // Fixed summation order so the result does not depend on the refinement history.
  std::vector<Segment<N>> all = std::move(retired);
  all.insert(all.end(), heap.begin(), heap.end());
  const Totals<N> final_totals = sorted_totals(all);
  out.value = final_totals.value;
  out.error = final_totals.error;
  if (!out.converged && out.diagnostic.empty()) out.diagnostic = stop;
  return out;
}

// Wraps f so that (lower, inf) maps to t in (0, 1) through x = lower + scale t/(1-t).
// Squared channels pick up jac^2 inside the rule, as they should.
template <std::size_t N, class F>
struct MappedIntegrand {
  F* f;
  double lower;
  double scale;
  std::array<double, N> operator()(double t) {
    const double u = 1.0 - t;
    if (!(u > 0.0)) return std::array<double, N>{};
    const double x = lower + scale * t / u;
    const double jac = scale / (u * u);
    std::array<double, N> v = (*f)(x);
    for (std::size_t c = 0; c < N; ++c) v[c] *= jac;
    return v;
  }
};

template <std::size_t N>
void accumulate(Outcome<N>& acc, const Outcome<N>& part) {
  for (std::size_t c = 0; c < N; ++c) {
    acc.value[c] += part.value[c];
    acc.error[c].add(part.error[c]);
  }
  acc.evaluations += part.evaluations;
}

// Semi-infinite integral over (lower, inf) through the rational map; falls
// back to geometrically growing panels when the map does not converge.
template <std::size_t N, class F>
Outcome<N> semi_infinite(F& f, double lower, double scale, const Channels<N>& ch, const Budget& budget) {
  MappedIntegrand<N, F> g{&f, lower, scale};
  Outcome<N> mapped = adapt<N>(g, 0.0, 1.0, ch, budget);
  if (mapped.converged || mapped.roundoff_limited) return mapped;
  if (mapped.evaluations >= budget.max_evaluations) return mapped;

  Outcome<N> acc;
  acc.evaluations = mapped.evaluations;
  double lo = lower;
  double width = scale;
  int quiet = 0;
  bool ok = true;
  for (int panel = 0; panel < 200; ++panel) {
    Channels<N> pch = ch;
    for (std::size_t c = 0; c < ch.controlled; ++c) pch.abs_tol[c] = 0.01 * ch.target(c, acc.value[c]);
    pch.rel_tol = 0.0;
    Budget pb = budget;
    pb.max_evaluations = budget.max_evaluations > acc.evaluations ? budget.max_evaluations - acc.evaluations : 0;
    if (pb.max_evaluations < 21) {
      ok = false;
      acc.diagnostic = "evaluation budget exhausted in panel fallback at x = " + std::to_string(lo);
      break;
    }
    Outcome<N> part = adapt<N>(f, lo, lo + width, pch, pb);
    if (!part.converged && !part.roundoff_limited) {
      ok = false;
      acc.diagnostic = part.diagnostic + " (panel fallback at x = " + std::to_string(lo) + ")";
      accumulate(acc, part);
      break;
    }
    accumulate(acc, part);
    bool small = true;
    for (std::size_t c = 0; c < ch.controlled; ++c) {
      if (std::abs(part.value[c]) > 0.01 * ch.target(c, acc.value[c])) small = false;
    }
    quiet = small ? quiet + 1 : 0;
    lo += width;
    width *= 2.0;
    if (quiet >= 3) break;
  }
  if (ok && quiet < 3) {
    ok = false;
    acc.diagnostic = "panel fallback did not reach a negligible tail";
  }
  if (ok) {
    acc.converged = meets_targets(acc.value, acc.error, ch, nullptr);
    acc.roundoff_limited = !acc.converged && rounding_dominated(acc.value, acc.error, ch);
    if (!acc.converged && acc.diagnostic.empty()) acc.diagnostic = "panel fallback error above tolerance";
    if (acc.converged || acc.roundoff_limited) return acc;
  }
  // Neither route converged; report the one with the smaller error.
  double em = 0.0;
  double ep = 0.0;
  for (std::size_t c = 0; c < ch.controlled; ++c) {
    em += mapped.error[c].total();
    ep += acc.error[c].total();
  }
  Outcome<N> best = (ep < em) ? acc : mapped;
  best.evaluations = acc.evaluations;
  if (best.diagnostic.empty()) best.diagnostic = "semi-infinite integral did not converge";
  return best;
}

// Wynn epsilon on the last entries of `s` (defined in quadrature.cpp).
double wynn_tail(const std::vector<double>& s);

// Oscillatory semi-infinite integral over (0, inf): panels of width
// `half_period`, summed with optional Wynn acceleration of the partial sums.
template <std::size_t N, class F>
Outcome<N> oscillatory(F& f, double half_period, double scale, bool accelerate,
                       const Channels<N>& ch, const Budget& budget) {
  constexpr std::size_t kMinPanels = 6;
  constexpr std::size_t kHistory = 13;

  Outcome<N> acc;
  std::array<std::vector<double>, N> partial;
  std::array<std::array<double, 3>, N> recent{};  // last three Wynn estimates
  std::array<double, N> last_panel{};
  std::size_t estimates = 0;
  int quiet = 0;

  for (std::size_t n = 0;; ++n) {
    const double lo = half_period * static_cast<double>(n);
    const double hi = lo + half_period;
    Channels<N> pch = ch;
    for (std::size_t c = 0; c < ch.controlled; ++c) pch.abs_tol[c] = 0.01 * ch.target(c, acc.value[c]);
    pch.rel_tol = 0.0;
    pch.phase_rate = 3.141592653589793 / half_period;
    if (acc.evaluations + 21 > budget.max_evaluations) {
      acc.diagnostic = "evaluation budget exhausted after " + std::to_string(n) +
                       " oscillation panels (x = " + std::to_string(lo) + ")";
      return acc;
    }
    Budget pb = budget;
    pb.max_evaluations = budget.max_evaluations - acc.evaluations;
    // Panels much wider than the envelope scale start from a geometric partition
    // so the rule cannot step over features near the origin.
    std::vector<double> breaks;
    for (double x = scale; x < hi; x *= 2.0) {
      if (x > lo) breaks.push_back(x);
    }
    Outcome<N> part = adapt<N>(f, lo, hi, pch, pb, breaks);
    if (!part.converged && !part.roundoff_limited) {
      accumulate(acc, part);
      acc.diagnostic = part.diagnostic + " (oscillation panel at x = " + std::to_string(lo) + ")";
      return acc;
    }
    accumulate(acc, part);

    // Geometric tail from the ratio of the last two panels, capped at 0.9.
    bool small = true;
    std::array<double, N> tail{};
    for (std::size_t c = 0; c < ch.controlled; ++c) {
      const double cur = std::abs(part.value[c]);
      const double q = last_panel[c] > 0.0 ? std::min(cur / last_panel[c], 0.9) : 0.9;
      tail[c] = cur * q / (1.0 - q);
      last_panel[c] = cur;
      const double t = ch.target(c, acc.value[c]);
      if (cur > 0.25 * t || tail[c] > 0.25 * t) small = false;
    }
    quiet = small ? quiet + 1 : 0;
    const bool past_envelope = hi >= scale && n + 1 >= kMinPanels;
    if (quiet >= 3 && past_envelope) {
      for (std::size_t c = 0; c < ch.controlled; ++c) acc.error[c].trunc += tail[c];
      break;
    }

    if (!accelerate) continue;
    for (std::size_t c = 0; c < ch.controlled; ++c) {
      partial[c].push_back(acc.value[c]);
      if (partial[c].size() > kHistory) partial[c].erase(partial[c].begin());
    }
    if (partial[0].size() < 5) continue;
    for (std::size_t c = 0; c < ch.controlled; ++c) {
      recent[c][0] = recent[c][1];
      recent[c][1] = recent[c][2];
      recent[c][2] = wynn_tail(partial[c]);
    }
    ++estimates;
    if (estimates < 3 || !past_envelope) continue;
    bool stable = true;
    std::array<double, N> est{};
    std::array<double, N> spread{};
    for (std::size_t c = 0; c < ch.controlled; ++c) {
      est[c] = recent[c][2];
      spread[c] = std::abs(recent[c][2] - recent[c][1]) + std::abs(recent[c][2] - recent[c][0]);
      if (!std::isfinite(est[c]) || spread[c] > 0.25 * ch.target(c, est[c])) stable = false;
    }
    if (stable) {
      for (std::size_t c = 0; c < ch.controlled; ++c) {
        acc.value[c] = est[c];
        acc.error[c].trunc += spread[c];
      }
      break;
    }
  }
  acc.converged = meets_targets(acc.value, acc.error, ch, nullptr);
  acc.roundoff_limited = !acc.converged && rounding_dominated(acc.value, acc.error, ch);
  if (!acc.converged) acc.diagnostic = "oscillatory panel sum error above tolerance";
  return acc;
}

// Dispatch on the axis hints: oscillatory panels or the rational map.
template <std::size_t N, class F>
Outcome<N> integrate_axis(F& f, const AxisOptions& axis, const Channels<N>& ch, const Budget& budget) {
  if (axis.half_period > 0.0) return oscillatory<N>(f, axis.half_period, axis.scale, axis.accelerate, ch, budget);
  return semi_infinite<N>(f, 0.0, axis.scale, ch, budget);
}

template <std::size_t N>
QuadratureResult to_result(const Outcome<N>& o, std::size_t channel = 0) {
  QuadratureResult r;
  r.value = o.value[channel];
  r.abs_error_estimate = std::max(o.error[channel].total(), 4.0 * kEps * std::abs(r.value));
  r.evaluations = std::max<std::size_t>(o.evaluations, 1);
  r.converged = o.converged;
  r.roundoff_limited = o.roundoff_limited;
  r.diagnostic = o.diagnostic;
  return r;
}

inline Budget budget_of(const QuadratureConfig& cfg) {
  return Budget{cfg.max_evaluations, cfg.subdivision_limit};
}

}  // namespace vacuum::detail
