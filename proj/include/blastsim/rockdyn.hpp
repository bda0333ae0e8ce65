#ifndef BLASTSIM_ROCKDYN_HPP
#define BLASTSIM_ROCKDYN_HPP

/**
 * @file rockdyn.hpp
 * @brief Rigid-block response to blast loading: rocking with impacts,
 *        Coulomb stick-slip sliding, outcome classification and the
 *        critical-charge search.
 *
 * Simulations run in SI units (s, m, rad); waveforms keep their MPa/ms
 * convention and are converted at evaluation time.
 */

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "blastsim/blastload.hpp"
#include "blastsim/ode.hpp"

namespace blastsim::rockdyn {

/// Homogeneous rectangular block, 2b x 2h x 2w, rocking about its base corners.
struct RigidBlock {
  double half_width;      ///< b [m]
  double half_height;     ///< h [m]
  double half_depth;      ///< w [m]
  double density;         ///< rho [kg/m^3]
  double friction_angle;  ///< phi [rad]
  double gravity = 9.81;  ///< g [m/s^2]

  RigidBlock(double half_width, double half_height, double half_depth,
             double density, double friction_angle, double gravity = 9.81);

  double slenderness() const { return std::atan2(half_width, half_height); }
  double pivot_radius() const { return std::hypot(half_width, half_height); }
  double mass() const { return density * 8.0 * half_width * half_height * half_depth; }
  double pivot_inertia() const {
    const double r = pivot_radius();
    return (4.0 / 3.0) * mass() * r * r;
  }
  /// Front surface exposed to the blast, 2h x 2w.
  double incident_surface() const { return 4.0 * half_height * half_depth; }
  /// Characteristic length, the total height 2h.
  double characteristic_length() const { return 2.0 * half_height; }
  double friction_coefficient() const { return std::tan(friction_angle); }

  /// Block geometrically scaled by `lambda` with density scaled by `gamma`.
  RigidBlock scaled(double lambda, double gamma) const;
};

enum class EventKind { RockingStart, Impact, StickToSlip, SlipToStick, Overturn, Rest };

struct Event {
  double time;  ///< [s]
  EventKind kind;
};

std::string to_string(EventKind kind);

enum class Outcome { Rest, RockingDecayed, Overturned };

std::string to_string(Outcome outcome);

/// Sampled trajectory with event markers.
struct ResponseHistory {
  std::vector<double> time;       ///< [s]
  std::vector<double> theta;      ///< rocking angle [rad]
  std::vector<double> theta_dot;  ///< [rad/s]
  std::vector<double> x;          ///< sliding distance [m]
  std::vector<double> x_dot;      ///< [m/s]
  std::vector<Event> events;
  Outcome outcome = Outcome::Rest;

  double peak_theta() const;
  double peak_x() const;
  std::optional<double> first_event_time(EventKind kind) const;
};

struct SimOptions {
  ode::Tolerances tolerances{};
  double sample_interval = 0.0;  ///< output grid spacing [s]; 0 = auto
  double event_time_tol = 1e-12; ///< event localization resolution [s]
  double restitution = -1.0;     ///< <0 selects 1 - (3/2) sin^2(alpha)
  double rest_theta_tol = 1e-6;          ///< [rad]
  double rest_theta_dot_factor = 1e-6;   ///< x sqrt(g/l) [rad/s]
  bool stop_at_first_impact = false;     ///< classification-only fast path
};

/// Angular acceleration from the rocking equation of motion. `corner` is the
/// active-corner sign (+1/-1); pass 0 to pick it from the applied moment.
double rocking_rhs(double theta, double theta_dot, double t_s,
                   const RigidBlock& block, const blastload::BlastWaveform& waveform,
                   int corner = 0);

/// Post-impact angular velocity; e < 0 selects the slender-block default
/// restitution 1 - (3/2) sin^2(alpha).
double impact_map(double theta_dot_minus, const RigidBlock& block, double e = -1.0);

/// Default restitution coefficient for the block.
double default_restitution(const RigidBlock& block);

/// Rocking response from rest, waveform arriving at t = 0.
ResponseHistory simulate_rocking(const RigidBlock& block,
                                 const blastload::BlastWaveform& waveform,
                                 double t_end, const SimOptions& options = {});

/// Pure-translation Coulomb stick-slip response from rest.
ResponseHistory simulate_sliding(const RigidBlock& block,
                                 const blastload::BlastWaveform& waveform,
                                 double t_end, const SimOptions& options = {});

Outcome classify_outcome(const ResponseHistory& history);

class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CriticalChargeResult {
  double critical_mass;  ///< W_c [kg]
  double bracket_lo;
  double bracket_hi;
  std::vector<double> bracket_history;  ///< midpoints visited
  std::size_t simulations = 0;
};

/**
 * Bisection on the charge mass for the largest non-overturning charge at the
 * given stand-off. Requires W_lo not to overturn and W_hi to overturn.
 */
CriticalChargeResult critical_charge(const RigidBlock& block, double standoff,
                                     double w_lo, double w_hi, double rel_tol = 1e-3,
                                     const SimOptions& options = {},
                                     const blastload::ZWindow& window = {});

}  // namespace blastsim::rockdyn

#endif
