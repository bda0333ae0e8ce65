#ifndef BLASTSIM_BLASTLOAD_HPP
#define BLASTSIM_BLASTLOAD_HPP

/**
 * @file blastload.hpp
 * @brief Empirical air-blast parameters for a surface burst and reflected
 *        pressure time histories.
 *
 * Units: pressure [MPa], time [ms], impulse [MPa·ms], distance [m], mass [kg].
 * The waveform time axis starts at the shock arrival (t = 0).
 */

#include <stdexcept>
#include <string>

namespace blastsim::blastload {

/// Scaled-distance interval [m·kg^(-1/3)] inside which the empirical fits
/// are trusted. Outside of it they extrapolate meaninglessly.
struct ZWindow {
  double lo = 0.05;
  double hi = 40.0;

  bool contains(double z) const { return z >= lo && z <= hi; }
};

/// Thrown when a scaled distance falls outside the fit validity window.
class ZRangeError : public std::out_of_range {
 public:
  ZRangeError(double z, const ZWindow& window);
  double z;
  ZWindow window;
};

/// Thrown when no positive decay coefficient reproduces the requested impulse.
class NoDecaySolutionError : public std::domain_error {
 public:
  NoDecaySolutionError(double peak_pressure, double positive_duration,
                       double impulse);
};

/// Charge/stand-off pair. The scaled distance Z = R/W^(1/3) is always
/// recomputed from the stored fields.
struct BlastScenario {
  double charge_mass;  ///< TNT-equivalent mass W [kg]
  double standoff;     ///< stand-off distance R [m]

  BlastScenario(double charge_mass_kg, double standoff_m);

  double scaled_distance() const;
};

enum class WaveformKind { Friedlander, Triangular };

/// Positive-phase reflected pressure history. For the Friedlander kind the
/// decay coefficient reproduces the impulse through the closed-form
/// positive-phase integral; for the Triangular kind the linear duration is
/// set so the triangle area equals the impulse.
struct BlastWaveform {
  double peak_pressure;      ///< P_ro [MPa]
  double positive_duration;  ///< t_o [ms]
  double impulse;            ///< i_ro [MPa·ms]
  double arrival_time;       ///< t_A [ms]
  double decay;              ///< d, Friedlander only
  WaveformKind kind;
  double linear_duration;    ///< 2·i_ro/P_ro [ms], Triangular only

  static BlastWaveform friedlander(double peak_pressure, double positive_duration,
                                   double impulse, double arrival_time = 0.0);
  static BlastWaveform triangular(double peak_pressure, double impulse,
                                  double positive_duration,
                                  double arrival_time = 0.0);
};

/// Z = R / W^(1/3)
double scaled_distance(double charge_mass, double standoff);

/// Normal reflected pressure peak P_ro(Z) [MPa].
double reflected_pressure_peak(double z, const ZWindow& window = {});

/// Scaled positive reflected impulse i_rw(Z) [MPa·ms·kg^(-1/3)].
double scaled_reflected_impulse(double z, const ZWindow& window = {});

/// Effective positive reflected impulse i_r = W^(1/3)·i_rw(Z) [MPa·ms].
double reflected_impulse(const BlastScenario& scenario, const ZWindow& window = {});

/// Scaled arrival time t_Aw(Z) [ms·kg^(-1/3)]; constant below Z = 0.18.
double scaled_arrival_time(double z, const ZWindow& window = {});

/// Effective arrival time t_A = W^(1/3)·t_Aw(Z) [ms].
double arrival_time(const BlastScenario& scenario, const ZWindow& window = {});

/// Scaled positive duration t_ow(Z) [ms·kg^(-1/3)]; constant below Z = 0.18.
double scaled_positive_duration(double z, const ZWindow& window = {});

/// Effective positive duration t_o = W^(1/3)·t_ow(Z) [ms].
double positive_duration(const BlastScenario& scenario, const ZWindow& window = {});

/**
 * Solve [e^(-d) + d - 1]·P_ro·t_o/d² = i_ro for the unique d > 0.
 *
 * Requires 0 < i_ro < P_ro·t_o/2 (the d → 0 limit of the left-hand side is
 * the triangular half-area). Converges to relative tolerance 1e-10.
 */
double friedlander_decay(double peak_pressure, double positive_duration,
                         double impulse);

/// Reflected overpressure at time t [ms] past arrival. Zero after the
/// positive phase; never negative.
double pressure_at(const BlastWaveform& waveform, double t);

/// Assemble a waveform from the empirical fits for the given scenario.
BlastWaveform waveform_from_scenario(const BlastScenario& scenario,
                                     WaveformKind kind = WaveformKind::Friedlander,
                                     const ZWindow& window = {});

}  // namespace blastsim::blastload

#endif
