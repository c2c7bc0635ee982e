#include "weingarten/odekit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "weingarten/error.hpp"

namespace weingarten::ode {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;
// Continuous extension of order 4.
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 5.0;
constexpr double kBeta = 0.04;

enum class StageStatus { Ok, OutsideGuard, NonFinite };

bool crossed(double g_prev, double g_new, Crossing c) {
  if (g_prev == 0.0) return false;
  const bool rising = g_prev < 0.0 && g_new >= 0.0;
  const bool falling = g_prev > 0.0 && g_new <= 0.0;
  switch (c) {
    case Crossing::Rising: return rising;
    case Crossing::Falling: return falling;
    case Crossing::Either: return rising || falling;
  }
  return false;
}

void validate(const IvpSpec& spec, double s_end) {
  auto fail = [](const std::string& m) { throw Error(ErrorKind::InvalidParams, m); };
  if (spec.dimension == 0) fail("state dimension must be positive");
  if (spec.y0.size() != spec.dimension) fail("initial state size does not match dimension");
  if (!spec.rhs) fail("right-hand side is not set");
  if (!(spec.rtol > 0.0) || !(spec.atol > 0.0)) fail("tolerances must be positive");
  if (!(spec.max_step > 0.0)) fail("max_step must be positive");
  if (!std::isfinite(spec.s0) || !std::isfinite(s_end)) fail("integration bounds must be finite");
  for (double v : spec.y0)
    if (!std::isfinite(v)) fail("initial state must be finite");
  for (const auto& ev : spec.events)
    if (!ev.fn) fail("event '" + ev.name + "' has no function");
}

}  // namespace

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::ReachedEnd: return "ReachedEnd";
    case Termination::EventStop: return "EventStop";
    case Termination::GuardViolation: return "GuardViolation";
    case Termination::StepUnderflow: return "StepUnderflow";
  }
  return "Unknown";
}

std::size_t Trajectory::segment(double s) const {
  const double lo = std::min(s_.front(), s_.back());
  const double hi = std::max(s_.front(), s_.back());
  const double slack = 1e-12 * std::max(1.0, std::abs(hi - lo));
  if (s < lo - slack || s > hi + slack) {
    std::ostringstream msg;
    msg << "dense output requested at s=" << s << " outside [" << lo << ", " << hi << "]";
    throw Error(ErrorKind::InvalidParams, msg.str());
  }
  // First grid point strictly beyond s, in the direction of integration.
  auto it = direction_ > 0 ? std::upper_bound(s_.begin(), s_.end(), s)
                           : std::upper_bound(s_.begin(), s_.end(), s, std::greater<>());
  std::size_t i = static_cast<std::size_t>(it - s_.begin());
  if (i == 0) return 0;
  return std::min(i - 1, step_start_.size() - 1);
}

State Trajectory::at(double s) const {
  if (step_start_.empty()) return State(y_.begin(), y_.begin() + static_cast<std::ptrdiff_t>(dim_));
  const std::size_t k = segment(s);
  const double th = (s - step_start_[k]) / step_len_[k];
  const double th1 = 1.0 - th;
  const double* r = coeff_.data() + 5 * dim_ * k;
  State out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    out[i] = r[i] + th * (r[dim_ + i] + th1 * (r[2 * dim_ + i] + th * (r[3 * dim_ + i] + th1 * r[4 * dim_ + i])));
  }
  return out;
}

double Trajectory::at(double s, std::size_t c) const {
  if (step_start_.empty()) return y_[c];
  const std::size_t k = segment(s);
  const double th = (s - step_start_[k]) / step_len_[k];
  const double th1 = 1.0 - th;
  const double* r = coeff_.data() + 5 * dim_ * k;
  return r[c] + th * (r[dim_ + c] + th1 * (r[2 * dim_ + c] + th * (r[3 * dim_ + c] + th1 * r[4 * dim_ + c])));
}

Trajectory integrate(const IvpSpec& spec, double s_end, const Guard& guard) {
  validate(spec, s_end);
  const std::size_t n = spec.dimension;
  if (guard && !guard(spec.s0, spec.y0)) {
    throw Error(ErrorKind::GuardViolation, "initial state lies outside the admissible region");
  }

  Trajectory traj;
  traj.dim_ = n;
  traj.direction_ = s_end >= spec.s0 ? 1.0 : -1.0;
  const double dir = traj.direction_;
  traj.s_.push_back(spec.s0);
  traj.y_.insert(traj.y_.end(), spec.y0.begin(), spec.y0.end());
  if (s_end == spec.s0) return traj;

  auto eval = [&](double s, const State& y, State& dy) {
    if (guard && !guard(s, y)) return StageStatus::OutsideGuard;
    spec.rhs(s, y, dy);
    for (double v : dy)
      if (!std::isfinite(v)) return StageStatus::NonFinite;
    return StageStatus::Ok;
  };

  State y = spec.y0, y1(n), yt(n), k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
  double s = spec.s0;
  if (eval(s, y, k1) != StageStatus::Ok) {
    throw Error(ErrorKind::InvalidParams, "right-hand side is not finite at the initial state");
  }

  const double span = std::abs(s_end - s);
  const double hmax = std::min(spec.max_step, span);

  auto scale = [&](double a, double b) {
    return spec.atol + spec.rtol * std::max(std::abs(a), std::abs(b));
  };

  // Initial step after Hairer, Norsett and Wanner.
  double h;
  {
    double dnf = 0, dny = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sk = scale(y[i], y[i]);
      dnf += (k1[i] / sk) * (k1[i] / sk);
      dny += (y[i] / sk) * (y[i] / sk);
    }
    h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : std::sqrt(dny / dnf) * 0.01;
    h = std::min(h, hmax);
    double der2 = 0.0;
    for (int attempt = 0; attempt < 60; ++attempt) {
      for (std::size_t i = 0; i < n; ++i) yt[i] = y[i] + dir * h * k1[i];
      if (eval(s + dir * h, yt, k2) == StageStatus::Ok) {
        for (std::size_t i = 0; i < n; ++i) {
          const double sk = scale(y[i], y[i]);
          der2 += ((k2[i] - k1[i]) / sk) * ((k2[i] - k1[i]) / sk);
        }
        der2 = std::sqrt(der2) / h;
        break;
      }
      h *= 0.1;
    }
    const double der12 = std::max(std::abs(der2), std::sqrt(dnf));
    const double h1 = der12 <= 1e-15 ? std::max(1e-6, h * 1e-3) : std::pow(0.01 / der12, 0.2);
    h = std::min({100.0 * h, h1, hmax});
  }

  bool reject_last = false;
  double err_old = 1e-4;
  std::size_t steps = 0;
  std::vector<double> g_prev(spec.events.size());
  for (std::size_t e = 0; e < spec.events.size(); ++e) g_prev[e] = spec.events[e].fn(s, y);

  auto underflow = [&](const std::string& why) {
    if (spec.stop_on_underflow) {
      traj.termination_ = Termination::StepUnderflow;
      return;
    }
    std::ostringstream msg;
    msg << why << " at s=" << s;
    throw Error(ErrorKind::StepUnderflow, msg.str());
  };

  for (;;) {
    if (++steps > spec.max_steps) {
      throw Error(ErrorKind::StepUnderflow, "maximum number of steps exceeded");
    }
    if (h < spec.min_step) {
      underflow("required step below minimum");
      break;
    }
    bool last = false;
    if (h >= std::abs(s_end - s)) {
      h = std::abs(s_end - s);
      last = true;
    }
    const double hs = dir * h;

    StageStatus st = StageStatus::Ok;
    auto stage = [&](double c, State& k, auto&& combine) {
      if (st != StageStatus::Ok) return;
      for (std::size_t i = 0; i < n; ++i) yt[i] = y[i] + hs * combine(i);
      st = eval(s + c * hs, yt, k);
    };
    stage(c2, k2, [&](std::size_t i) { return a21 * k1[i]; });
    stage(c3, k3, [&](std::size_t i) { return a31 * k1[i] + a32 * k2[i]; });
    stage(c4, k4, [&](std::size_t i) { return a41 * k1[i] + a42 * k2[i] + a43 * k3[i]; });
    stage(c5, k5, [&](std::size_t i) { return a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]; });
    stage(1.0, k6,
          [&](std::size_t i) { return a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]; });
    if (st == StageStatus::Ok) {
      for (std::size_t i = 0; i < n; ++i)
        y1[i] = y[i] + hs * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
      const double s_new = last ? s_end : s + hs;
      st = eval(s_new, y1, k7);
    }

    if (st == StageStatus::OutsideGuard) {
      h *= 0.5;
      reject_last = true;
      if (h < spec.guard_resolution) {
        traj.termination_ = Termination::GuardViolation;
        break;
      }
      continue;
    }

    double err = std::numeric_limits<double>::infinity();
    if (st == StageStatus::Ok) {
      err = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double ei = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double sk = scale(y[i], y1[i]);
        err += (ei / sk) * (ei / sk);
      }
      err = std::sqrt(err / static_cast<double>(n));
    }

    if (!(err <= 1.0)) {
      const double fac = std::isfinite(err) ? std::max(kMinFactor, kSafety * std::pow(err, -0.2)) : kMinFactor;
      h *= fac;
      reject_last = true;
      continue;
    }

    // Accept.
    const double s_new = last ? s_end : s + hs;
    traj.step_start_.push_back(s);
    traj.step_len_.push_back(hs);
    const std::size_t base = traj.coeff_.size();
    traj.coeff_.resize(base + 5 * n);
    double* r = traj.coeff_.data() + base;
    for (std::size_t i = 0; i < n; ++i) {
      const double ydiff = y1[i] - y[i];
      const double bspl = hs * k1[i] - ydiff;
      r[i] = y[i];
      r[n + i] = ydiff;
      r[2 * n + i] = bspl;
      r[3 * n + i] = ydiff - hs * k7[i] - bspl;
      r[4 * n + i] = hs * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
    }
    traj.s_.push_back(s_new);
    traj.y_.insert(traj.y_.end(), y1.begin(), y1.end());

    // Events on the dense output of this step.
    std::vector<EventHit> hits;
    std::vector<double> g_new(spec.events.size());
    for (std::size_t e = 0; e < spec.events.size(); ++e) {
      const auto& ev = spec.events[e];
      g_new[e] = ev.fn(s_new, y1);
      if (!crossed(g_prev[e], g_new[e], ev.crossing)) continue;
      double s_star = s_new;
      if (g_new[e] != 0.0) {
        auto g = [&](double t) { return ev.fn(t, traj.at(t)); };
        s_star = find_root(g, std::min(s, s_new), std::max(s, s_new), 1e-13);
      }
      hits.push_back({e, s_star, traj.at(s_star)});
    }
    std::sort(hits.begin(), hits.end(), [dir](const EventHit& l, const EventHit& r2) {
      return dir * l.s < dir * r2.s || (l.s == r2.s && l.id < r2.id);
    });
    bool stop = false;
    for (const auto& hit : hits) {
      traj.events_.push_back(hit);
      if (spec.events[hit.id].terminal) {
        stop = true;
        traj.stop_event_ = hit.id;
        traj.s_.back() = hit.s;
        std::copy(hit.y.begin(), hit.y.end(), traj.y_.end() - static_cast<std::ptrdiff_t>(n));
        break;
      }
    }
    if (stop) {
      traj.termination_ = Termination::EventStop;
      break;
    }
    g_prev = std::move(g_new);

    s = s_new;
    y = y1;
    k1 = k7;
    if (last) {
      traj.termination_ = Termination::ReachedEnd;
      break;
    }
    // PI control (Gustafsson), as in Hairer's DOPRI5 with beta = 0.04.
    const double e_now = std::max(err, 1e-10);
    double fac = kSafety * std::pow(e_now, -(0.2 - 0.75 * kBeta)) * std::pow(err_old, kBeta);
    fac = std::min(kMaxFactor, std::max(kMinFactor, fac));
    err_old = std::max(err, 1e-4);
    if (reject_last) fac = std::min(fac, 1.0);
    reject_last = false;
    h = std::min(h * fac, hmax);
  }
  return traj;
}

double find_root(const std::function<double(double)>& f, double lo, double hi, double tol, int max_iter) {
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (!std::isfinite(fa) || !std::isfinite(fb)) {
    throw Error(ErrorKind::NoSignChange, "function is not finite at the bracket ends");
  }
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) {
    std::ostringstream msg;
    msg << "f(" << lo << ")=" << fa << " and f(" << hi << ")=" << fb << " have the same sign";
    throw Error(ErrorKind::NoSignChange, msg.str());
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double c = a, fc = fa, d = b - a, e = d;
  for (int iter = 0; iter < max_iter; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc, r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
      const double min2 = std::abs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol1 ? d : std::copysign(tol1, xm);
    fb = f(b);
  }
  return b;
}

}  // namespace weingarten::ode
