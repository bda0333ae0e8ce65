#include "blastsim/blastload.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace blastsim::blastload {

namespace {

std::string range_message(double z, const ZWindow& w) {
  std::ostringstream os;
  os << "scaled distance Z = " << z << " m/kg^(1/3) outside fit validity window ["
     << w.lo << ", " << w.hi << "]";
  return os.str();
}

void check_window(double z, const ZWindow& w) {
  if (!(z > 0.0) || !w.contains(z)) throw ZRangeError(z, w);
}

// (e^-d + d - 1)/d², evaluated without cancellation near d = 0.
double decay_shape(double d) {
  if (d < 1e-4) return 0.5 - d / 6.0 + d * d / 24.0;
  return (std::expm1(-d) + d) / (d * d);
}

}  // namespace

ZRangeError::ZRangeError(double z_, const ZWindow& window_)
    : std::out_of_range(range_message(z_, window_)), z(z_), window(window_) {}

NoDecaySolutionError::NoDecaySolutionError(double peak_pressure,
                                           double positive_duration,
                                           double impulse)
    : std::domain_error([&] {
        std::ostringstream os;
        os << "no positive decay coefficient exists: impulse " << impulse
           << " must lie in (0, " << 0.5 * peak_pressure * positive_duration
           << ") for P_ro = " << peak_pressure << ", t_o = " << positive_duration;
        return os.str();
      }()) {}

BlastScenario::BlastScenario(double charge_mass_kg, double standoff_m)
    : charge_mass(charge_mass_kg), standoff(standoff_m) {
  if (!(charge_mass > 0.0)) throw std::domain_error("charge mass must be positive");
  if (!(standoff > 0.0)) throw std::domain_error("stand-off distance must be positive");
}

double BlastScenario::scaled_distance() const {
  return blastload::scaled_distance(charge_mass, standoff);
}

double scaled_distance(double charge_mass, double standoff) {
  if (!(charge_mass > 0.0)) throw std::domain_error("charge mass must be positive");
  if (!(standoff > 0.0)) throw std::domain_error("stand-off distance must be positive");
  return standoff / std::cbrt(charge_mass);
}

double reflected_pressure_peak(double z, const ZWindow& window) {
  check_window(z, window);
  const double u = std::log(z);
  const double s = std::sin(u);
  return (1.0 + 0.5 * std::exp(-10.0 * z)) *
         std::exp(2.0304 - 1.8036 * u - 0.09293 * u * u - 0.8779 * s -
                  0.3603 * s * s);
}

double scaled_reflected_impulse(double z, const ZWindow& window) {
  check_window(z, window);
  const double u = std::log(z);
  return std::exp(-0.110157 - 1.40609 * u + 0.0847358 * u * u);
}

double reflected_impulse(const BlastScenario& scenario, const ZWindow& window) {
  return std::cbrt(scenario.charge_mass) *
         scaled_reflected_impulse(scenario.scaled_distance(), window);
}

double scaled_arrival_time(double z, const ZWindow& window) {
  check_window(z, window);
  if (z < 0.18) return 0.0315495;
  const double u = std::log(z);
  return std::exp(-0.6847 + 1.4288 * u + 0.0290 * u * u + 0.4108 * std::sin(u));
}

double arrival_time(const BlastScenario& scenario, const ZWindow& window) {
  return std::cbrt(scenario.charge_mass) *
         scaled_arrival_time(scenario.scaled_distance(), window);
}

double scaled_positive_duration(double z, const ZWindow& window) {
  check_window(z, window);
  if (z < 0.18) return 0.251703;
  const double u = std::log(z);
  double p = -0.0004;
  for (double c : {-0.004, 0.090, -0.383, 0.325, 1.151, -1.788, -1.287, 2.913, 0.592})
    p = p * u + c;
  const double c7 = std::pow(std::cos(1.032 * (u - 0.859)), 7);
  return std::exp(p + 0.537 * c7 * std::sinh(1.088 * (u - 2.023)));
}

double positive_duration(const BlastScenario& scenario, const ZWindow& window) {
  return std::cbrt(scenario.charge_mass) *
         scaled_positive_duration(scenario.scaled_distance(), window);
}

double friedlander_decay(double peak_pressure, double positive_duration,
                         double impulse) {
  if (!(peak_pressure > 0.0) || !(positive_duration > 0.0))
    throw std::domain_error("peak pressure and positive duration must be positive");
  if (!(impulse > 0.0) || !(impulse < 0.5 * peak_pressure * positive_duration))
    throw NoDecaySolutionError(peak_pressure, positive_duration, impulse);

  // decay_shape is strictly decreasing on (0, inf); bracket and bisect
  const double target = impulse / (peak_pressure * positive_duration);
  double lo = 1e-9, hi = 60.0;
  if (decay_shape(hi) > target) {
    // extremely peaked waveform; decay_shape ~ 1/d here, so the root can be
    // as large as P_ro t_o / i_ro
    while (decay_shape(hi) > target && hi < 1e15) hi *= 2.0;
  }
  if (decay_shape(lo) < target || decay_shape(hi) > target)
    throw NoDecaySolutionError(peak_pressure, positive_duration, impulse);

  double d = 0.5 * (lo + hi);
  for (int it = 0; it < 200 && hi - lo > 1e-13 * d; ++it) {
    if (decay_shape(d) > target)
      lo = d;
    else
      hi = d;
    d = 0.5 * (lo + hi);
  }
  return d;
}

double pressure_at(const BlastWaveform& w, double t) {
  if (t < 0.0 || t >= w.positive_duration) return 0.0;
  if (w.kind == WaveformKind::Friedlander) {
    return w.peak_pressure * (1.0 - t / w.positive_duration) *
           std::exp(-w.decay * t / w.positive_duration);
  }
  const double p = w.peak_pressure * (1.0 - t / w.linear_duration);
  return p > 0.0 ? p : 0.0;
}

BlastWaveform BlastWaveform::friedlander(double peak_pressure,
                                         double positive_duration, double impulse,
                                         double arrival_time) {
  BlastWaveform w{};
  w.peak_pressure = peak_pressure;
  w.positive_duration = positive_duration;
  w.impulse = impulse;
  w.arrival_time = arrival_time;
  w.kind = WaveformKind::Friedlander;
  w.decay = friedlander_decay(peak_pressure, positive_duration, impulse);
  w.linear_duration = std::numeric_limits<double>::quiet_NaN();
  return w;
}

BlastWaveform BlastWaveform::triangular(double peak_pressure, double impulse,
                                        double positive_duration,
                                        double arrival_time) {
  if (!(peak_pressure > 0.0) || !(impulse > 0.0))
    throw std::domain_error("peak pressure and impulse must be positive");
  BlastWaveform w{};
  w.peak_pressure = peak_pressure;
  w.impulse = impulse;
  w.arrival_time = arrival_time;
  w.kind = WaveformKind::Triangular;
  w.linear_duration = 2.0 * impulse / peak_pressure;
  w.positive_duration = positive_duration > 0.0 ? positive_duration : w.linear_duration;
  w.decay = std::numeric_limits<double>::quiet_NaN();
  return w;
}

BlastWaveform waveform_from_scenario(const BlastScenario& scenario,
                                     WaveformKind kind, const ZWindow& window) {
  const double z = scenario.scaled_distance();
  const double w13 = std::cbrt(scenario.charge_mass);
  const double p = reflected_pressure_peak(z, window);
  const double to = w13 * scaled_positive_duration(z, window);
  const double iro = w13 * scaled_reflected_impulse(z, window);
  const double ta = w13 * scaled_arrival_time(z, window);
  if (kind == WaveformKind::Friedlander)
    return BlastWaveform::friedlander(p, to, iro, ta);
  return BlastWaveform::triangular(p, iro, to, ta);
}

}  // namespace blastsim::blastload
