#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace weingarten::ode {

using State = std::vector<double>;
using Rhs = std::function<void(double s, std::span<const double> y, std::span<double> dy)>;
using ScalarFn = std::function<double(double s, std::span<const double> y)>;
/// Admissible region. The right-hand side is never evaluated where this
/// returns false.
using Guard = std::function<bool(double s, std::span<const double> y)>;

enum class Crossing { Rising, Falling, Either };

struct EventSpec {
  std::string name;
  ScalarFn fn;
  Crossing crossing = Crossing::Either;
  bool terminal = false;
};

struct IvpSpec {
  std::size_t dimension = 0;
  Rhs rhs;
  double s0 = 0.0;
  State y0;
  double rtol = 1e-10;
  double atol = 1e-12;
  double max_step = std::numeric_limits<double>::infinity();
  std::vector<EventSpec> events;
  /// Steps below this size raise StepUnderflow (or stop, see below).
  double min_step = 1e-14;
  /// Guard rejections shrink the step; once it falls below this the run
  /// ends with Termination::GuardViolation.
  double guard_resolution = 1e-12;
  /// Record StepUnderflow as a termination reason instead of throwing.
  bool stop_on_underflow = false;
  std::size_t max_steps = 5'000'000;
};

enum class Termination { ReachedEnd, EventStop, GuardViolation, StepUnderflow };

std::string_view to_string(Termination t);

struct EventHit {
  std::size_t id = 0;
  double s = 0.0;
  State y;
};

/// Accepted step points plus the Dormand-Prince continuous extension on each
/// step. The grid is strictly monotone in the direction of integration.
class Trajectory {
 public:
  std::size_t dimension() const { return dim_; }
  std::size_t size() const { return s_.size(); }
  const std::vector<double>& grid() const { return s_; }
  double s_begin() const { return s_.front(); }
  double s_end() const { return s_.back(); }
  std::span<const double> state(std::size_t i) const { return {y_.data() + i * dim_, dim_}; }
  double value(std::size_t i, std::size_t component) const { return y_[i * dim_ + component]; }

  /// Dense output; `s` must lie within the integrated range.
  State at(double s) const;
  double at(double s, std::size_t component) const;

  const std::vector<EventHit>& events() const { return events_; }
  Termination termination() const { return termination_; }
  /// Event id that stopped the run, when termination() == EventStop.
  std::size_t stop_event() const { return stop_event_; }

 private:
  friend Trajectory integrate(const IvpSpec&, double, const Guard&);

  std::size_t segment(double s) const;

  std::size_t dim_ = 0;
  double direction_ = 1.0;
  std::vector<double> s_;
  std::vector<double> y_;
  // Per step: step start, full step length, and 5*dim interpolation coefficients.
  std::vector<double> step_start_;
  std::vector<double> step_len_;
  std::vector<double> coeff_;
  std::vector<EventHit> events_;
  Termination termination_ = Termination::ReachedEnd;
  std::size_t stop_event_ = 0;
};

/// Adaptive Dormand-Prince 5(4) integration from spec.s0 to s_end (either
/// direction). `guard` may be empty.
Trajectory integrate(const IvpSpec& spec, double s_end, const Guard& guard = {});

/// Brent's bracketing method. Throws NoSignChange unless f(lo) and f(hi)
/// differ in sign (an endpoint that is exactly zero is returned as is).
double find_root(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-14,
                 int max_iter = 200);

}  // namespace weingarten::ode
