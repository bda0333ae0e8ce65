#include "blastsim/rockdyn.hpp"

#include <algorithm>
#include <cmath>

namespace blastsim::rockdyn {

namespace {

constexpr double kHalfPi = 1.5707963267948966;

// waveform is in MPa/ms, simulation time in seconds
double pressure_si(const blastload::BlastWaveform& w, double t_s) {
  return blastload::pressure_at(w, t_s * 1e3) * 1e6;
}

double load_end_si(const blastload::BlastWaveform& w) {
  return w.positive_duration * 1e-3;
}

void append_state(ResponseHistory& h, double t, double theta, double theta_dot,
                  double x, double x_dot) {
  if (!h.time.empty() && t <= h.time.back()) return;
  h.time.push_back(t);
  h.theta.push_back(theta);
  h.theta_dot.push_back(theta_dot);
  h.x.push_back(x);
  h.x_dot.push_back(x_dot);
}

}  // namespace

RigidBlock::RigidBlock(double half_width_, double half_height_, double half_depth_,
                       double density_, double friction_angle_, double gravity_)
    : half_width(half_width_),
      half_height(half_height_),
      half_depth(half_depth_),
      density(density_),
      friction_angle(friction_angle_),
      gravity(gravity_) {
  if (!(half_width > 0.0) || !(half_height > 0.0) || !(half_depth > 0.0))
    throw std::domain_error("block dimensions must be positive");
  if (!(density > 0.0)) throw std::domain_error("density must be positive");
  if (!(friction_angle > 0.0) || !(friction_angle < kHalfPi))
    throw std::domain_error("friction angle must lie in (0, pi/2)");
  if (!(gravity > 0.0)) throw std::domain_error("gravity must be positive");
}

RigidBlock RigidBlock::scaled(double lambda, double gamma) const {
  if (!(lambda > 0.0) || !(gamma > 0.0))
    throw std::domain_error("scale factors must be positive");
  return RigidBlock(half_width * lambda, half_height * lambda, half_depth * lambda,
                    density * gamma, friction_angle, gravity);
}

std::string to_string(EventKind kind) {
  switch (kind) {
    case EventKind::RockingStart: return "rocking_start";
    case EventKind::Impact: return "impact";
    case EventKind::StickToSlip: return "stick_to_slip";
    case EventKind::SlipToStick: return "slip_to_stick";
    case EventKind::Overturn: return "overturn";
    case EventKind::Rest: return "rest";
  }
  return "unknown";
}

std::string to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Rest: return "rest";
    case Outcome::RockingDecayed: return "rocking_decayed";
    case Outcome::Overturned: return "overturned";
  }
  return "unknown";
}

double ResponseHistory::peak_theta() const {
  double p = 0.0;
  for (double v : theta) p = std::max(p, std::fabs(v));
  return p;
}

double ResponseHistory::peak_x() const {
  double p = 0.0;
  for (double v : x) p = std::max(p, std::fabs(v));
  return p;
}

std::optional<double> ResponseHistory::first_event_time(EventKind kind) const {
  for (const Event& e : events)
    if (e.kind == kind) return e.time;
  return std::nullopt;
}

double rocking_rhs(double theta, double theta_dot, double t_s, const RigidBlock& block,
                   const blastload::BlastWaveform& waveform, int corner) {
  (void)theta_dot;
  const double p = pressure_si(waveform, t_s);
  double s = corner != 0 ? static_cast<double>(corner)
                         : (theta != 0.0 ? (theta > 0.0 ? 1.0 : -1.0)
                                         : (p > 0.0 ? 1.0 : 1.0));
  const double a = block.slenderness();
  const double r = block.pivot_radius();
  const double arg = a * s - theta;
  return (block.incident_surface() * r * p * std::cos(arg) -
          block.mass() * block.gravity * r * std::sin(arg)) /
         block.pivot_inertia();
}

double default_restitution(const RigidBlock& block) {
  const double sa = std::sin(block.slenderness());
  return 1.0 - 1.5 * sa * sa;
}

double impact_map(double theta_dot_minus, const RigidBlock& block, double e) {
  if (e < 0.0) e = default_restitution(block);
  if (!(e > 0.0) || e > 1.0)
    throw std::domain_error("restitution must lie in (0, 1]");
  return e * theta_dot_minus;
}

ResponseHistory simulate_rocking(const RigidBlock& block,
                                 const blastload::BlastWaveform& waveform,
                                 double t_end, const SimOptions& options) {
  ResponseHistory hist;
  const double g = block.gravity;
  const double l = block.characteristic_length();
  const double omega_rest = options.rest_theta_dot_factor * std::sqrt(g / l);
  const double e = options.restitution < 0.0 ? default_restitution(block)
                                             : options.restitution;
  const double t_load = load_end_si(waveform);
  const double uplift_pressure =
      (block.mass() / block.incident_surface()) * g * std::tan(block.slenderness());

  append_state(hist, 0.0, 0.0, 0.0, 0.0, 0.0);

  // pressure histories are non-increasing, so rocking either starts at the
  // arrival instant or never
  if (pressure_si(waveform, 0.0) <= uplift_pressure) {
    append_state(hist, t_end, 0.0, 0.0, 0.0, 0.0);
    hist.outcome = Outcome::Rest;
    return hist;
  }

  hist.events.push_back({0.0, EventKind::RockingStart});
  int corner = 1;
  ode::State<2> y{0.0, 0.0};
  double t = 0.0;
  const double swing_cap = 0.05 * std::sqrt(l / g);
  // gravity-only angular deceleration at theta = 0, used to bound the step
  // size after an impact so a whole half-cycle cannot fit inside one step
  // (the impact detector needs the step to start strictly inside the swing)
  const double decel0 =
      0.75 * g * std::sin(block.slenderness()) / block.pivot_radius();
  double free_cap = swing_cap;
  bool done = false;

  auto rhs = [&](double tt, const ode::State<2>& s, ode::State<2>& dy) {
    dy[0] = s[1];
    dy[1] = rocking_rhs(s[0], s[1], tt, block, waveform, corner);
  };

  while (!done && t < t_end) {
    const bool in_load = t < t_load;
    const double seg_end = in_load ? std::min(t_load, t_end) : t_end;
    double max_step = in_load ? (t_load / 50.0) : free_cap;
    if (options.sample_interval > 0.0)
      max_step = std::min(max_step, options.sample_interval);

    bool event_hit = false;
    ode::Step<2> event_step{};
    bool overturn_hit = false;

    ode::integrate<2>(
        rhs, y, t, seg_end, options.tolerances,
        [&](const ode::Step<2>& step) {
          if (std::fabs(step.y1[0]) >= kHalfPi) {
            event_step = step;
            overturn_hit = true;
            event_hit = true;
            return false;
          }
          if (step.y0[0] * corner > 0.0 && step.y1[0] * corner <= 0.0) {
            event_step = step;
            event_hit = true;
            return false;
          }
          append_state(hist, step.t1, step.y1[0], step.y1[1], 0.0, 0.0);
          return true;
        },
        max_step);

    if (!event_hit) {
      t = seg_end;
      if (t >= t_end) break;
      continue;
    }

    if (overturn_hit) {
      auto [te, ye] = ode::locate_event<2>(
          rhs, event_step,
          [](double, const ode::State<2>& s) { return std::fabs(s[0]) - kHalfPi; },
          options.tolerances, options.event_time_tol);
      append_state(hist, te, ye[0], ye[1], 0.0, 0.0);
      hist.events.push_back({te, EventKind::Overturn});
      hist.outcome = Outcome::Overturned;
      return hist;
    }

    // impact: theta returned to zero against the active corner
    auto [te, ye] = ode::locate_event<2>(
        rhs, event_step,
        [&](double, const ode::State<2>& s) { return s[0] * corner; },
        options.tolerances, options.event_time_tol);
    const double omega_after = impact_map(ye[1], block, e);
    append_state(hist, te, 0.0, omega_after, 0.0, 0.0);
    hist.events.push_back({te, EventKind::Impact});
    t = te;
    y = {0.0, omega_after};
    corner = -corner;
    free_cap = std::min(swing_cap, 0.5 * std::fabs(omega_after) / decel0);

    if (options.stop_at_first_impact && t >= t_load) {
      hist.outcome = Outcome::RockingDecayed;
      return hist;
    }
    if (t >= t_load && std::fabs(omega_after) < omega_rest) {
      hist.events.push_back({t, EventKind::Rest});
      hist.outcome = Outcome::RockingDecayed;
      return hist;
    }
  }

  hist.outcome = classify_outcome(hist);
  return hist;
}

ResponseHistory simulate_sliding(const RigidBlock& block,
                                 const blastload::BlastWaveform& waveform,
                                 double t_end, const SimOptions& options) {
  ResponseHistory hist;
  const double m = block.mass();
  const double s_area = block.incident_surface();
  const double friction_force = block.friction_coefficient() * m * block.gravity;
  const double t_load = load_end_si(waveform);

  append_state(hist, 0.0, 0.0, 0.0, 0.0, 0.0);

  // drive is non-increasing: slip starts at arrival or never
  if (s_area * pressure_si(waveform, 0.0) <= friction_force) {
    append_state(hist, t_end, 0.0, 0.0, 0.0, 0.0);
    hist.outcome = Outcome::Rest;
    return hist;
  }

  hist.events.push_back({0.0, EventKind::StickToSlip});
  ode::State<2> y{0.0, 0.0};
  double t = 0.0;

  auto rhs = [&](double tt, const ode::State<2>& s, ode::State<2>& dy) {
    const double drive = s_area * pressure_si(waveform, tt);
    // forward slip only: the drive never reverses
    dy[0] = s[1];
    dy[1] = (drive - friction_force) / m;
  };

  while (t < t_end) {
    const bool in_load = t < t_load;
    const double seg_end = in_load ? std::min(t_load, t_end) : t_end;
    double max_step = in_load ? (t_load / 50.0) : 0.0;
    if (options.sample_interval > 0.0)
      max_step = max_step > 0.0 ? std::min(max_step, options.sample_interval)
                                : options.sample_interval;

    bool stop_hit = false;
    ode::Step<2> stop_step{};
    ode::integrate<2>(
        rhs, y, t, seg_end, options.tolerances,
        [&](const ode::Step<2>& step) {
          if (step.y0[1] > 0.0 && step.y1[1] <= 0.0) {
            stop_step = step;
            stop_hit = true;
            return false;
          }
          append_state(hist, step.t1, 0.0, 0.0, step.y1[0], step.y1[1]);
          return true;
        },
        max_step);

    if (!stop_hit) {
      t = seg_end;
      if (t >= t_end) break;
      continue;
    }

    auto [te, ye] = ode::locate_event<2>(
        rhs, stop_step, [](double, const ode::State<2>& s) { return s[1]; },
        options.tolerances, options.event_time_tol);
    t = te;
    if (s_area * pressure_si(waveform, t) > friction_force) {
      // drive still beats friction: velocity only grazed zero, keep slipping
      y = {ye[0], 0.0};
      continue;
    }
    append_state(hist, te, 0.0, 0.0, ye[0], 0.0);
    hist.events.push_back({te, EventKind::SlipToStick});
    hist.events.push_back({te, EventKind::Rest});
    hist.outcome = Outcome::Rest;
    return hist;
  }

  hist.outcome = Outcome::Rest;
  return hist;
}

Outcome classify_outcome(const ResponseHistory& history) {
  bool started = false, rested = false;
  for (const Event& e : history.events) {
    if (e.kind == EventKind::Overturn) return Outcome::Overturned;
    if (e.kind == EventKind::RockingStart) started = true;
    if (e.kind == EventKind::Rest) rested = true;
  }
  if (started && rested) return Outcome::RockingDecayed;
  // a truncated run that rocked but never met the rest thresholds still
  // counts as decayed rocking once impacts have occurred
  if (started && history.first_event_time(EventKind::Impact)) return Outcome::RockingDecayed;
  return Outcome::Rest;
}

CriticalChargeResult critical_charge(const RigidBlock& block, double standoff,
                                     double w_lo, double w_hi, double rel_tol,
                                     const SimOptions& options,
                                     const blastload::ZWindow& window) {
  if (!(w_lo > 0.0) || !(w_hi > w_lo)) throw BracketError("invalid charge bracket");

  SimOptions fast = options;
  fast.stop_at_first_impact = true;
  const double t_end = 100.0 * std::sqrt(block.characteristic_length() / block.gravity);

  CriticalChargeResult result{};
  auto overturns = [&](double w) {
    blastload::BlastScenario scenario(w, standoff);
    auto waveform = blastload::waveform_from_scenario(
        scenario, blastload::WaveformKind::Friedlander, window);
    ++result.simulations;
    return simulate_rocking(block, waveform, t_end, fast).outcome == Outcome::Overturned;
  };

  if (overturns(w_lo))
    throw BracketError("lower bracket charge already overturns the block");
  if (!overturns(w_hi))
    throw BracketError("upper bracket charge does not overturn the block");

  double lo = w_lo, hi = w_hi;
  while ((hi - lo) > rel_tol * 0.5 * (hi + lo)) {
    const double mid = 0.5 * (lo + hi);
    result.bracket_history.push_back(mid);
    if (overturns(mid))
      hi = mid;
    else
      lo = mid;
  }
  result.bracket_lo = lo;
  result.bracket_hi = hi;
  result.critical_mass = 0.5 * (lo + hi);
  return result;
}

}  // namespace blastsim::rockdyn
