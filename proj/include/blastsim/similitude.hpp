#ifndef BLASTSIM_SIMILITUDE_HPP
#define BLASTSIM_SIMILITUDE_HPP

/**
 * @file similitude.hpp
 * @brief Dimensionless groups, scaling-factor sets, the scaled-distance
 *        similarity solve and reduced-scale model design.
 *
 * All scale factors are model/prototype ratios.
 */

#include <optional>
#include <stdexcept>

#include "blastsim/blastload.hpp"
#include "blastsim/rockdyn.hpp"

namespace blastsim::similitude {

class InfeasibleScalingError : public std::runtime_error {
 public:
  InfeasibleScalingError(const std::string& what, double target, double lo, double hi)
      : std::runtime_error(what), target(target), achievable_lo(lo), achievable_hi(hi) {}
  double target;         ///< requested impulse-similarity ratio
  double achievable_lo;  ///< smallest ratio reachable inside the Z window
  double achievable_hi;  ///< largest ratio reachable inside the Z window
};

/// The three independent scale factors and every derived factor.
struct ScaleSet {
  double length;           ///< lambda
  double density;          ///< gamma
  double gravity;          ///< varsigma
  double displacement;
  double angle;
  double angular_velocity;
  double angular_acceleration;
  double linear_velocity;
  double linear_acceleration;
  double time;
  double mass;
  double inertia;
  double pressure;
  double impulse;
  double friction;
  double scaled_distance = 1.0;  ///< lambda_Z, once solved
  double charge = 1.0;           ///< lambda_W = (lambda/lambda_Z)^3

  /// Copy of this set with lambda_Z (and the implied lambda_W) filled in.
  ScaleSet with_scaled_distance(double lambda_z) const;
};

/// General three-parameter scaling; lambda_Z is left at its default until
/// solved. All factors must be positive.
ScaleSet scale_set_general(double lambda, double gamma, double varsigma = 1.0);

/// Hopkinson-Cranz similarity: gamma forced to lambda^(-1/2), lambda_Z = 1,
/// lambda_W = lambda^3.
ScaleSet scale_set_hopkinson(double lambda);

/**
 * Solves for the scaled-distance factor so the model blast impulse satisfies
 * impulse similarity: i_rw(Z·lambda_Z) / (i_rw(Z)·lambda_Z) = gamma·sqrt(lambda).
 *
 * The root is bracketed on a log grid over the fit validity window and
 * bisected to relative tolerance 1e-8.
 */
double solve_lambda_z(double z_prototype, double lambda, double gamma,
                      const blastload::ZWindow& window = {});

/// A structure/load pair, either full scale or reduced scale.
struct BenchCase {
  rockdyn::RigidBlock block;
  blastload::BlastScenario scenario;
};

struct ModelDesign {
  rockdyn::RigidBlock block;
  blastload::BlastScenario scenario;
  ScaleSet scale;
  double pressure_ratio;  ///< model/prototype peak overpressure from the fits
  double impulse_ratio;   ///< model/prototype reflected impulse from the fits
};

/// Designs the reduced-scale model for a prototype: geometry and stand-off
/// scaled by lambda, density by gamma, charge by (lambda/lambda_Z)^3.
ModelDesign design_model(const BenchCase& prototype, double lambda, double gamma,
                         const blastload::ZWindow& window = {});

/// Hopkinson-Cranz counterpart of design_model (lambda_Z = 1, density
/// forced to lambda^(-1/2) times the prototype's).
ModelDesign design_model_hopkinson(const BenchCase& prototype, double lambda,
                                   const blastload::ZWindow& window = {});

/// Maps a model-scale history back to prototype scale (divides each quantity
/// by its scale factor).
rockdyn::ResponseHistory upscale_response(const rockdyn::ResponseHistory& model,
                                          const ScaleSet& scale);

/// Maps a prototype-scale history to model scale (multiplies by the factors).
rockdyn::ResponseHistory downscale_response(const rockdyn::ResponseHistory& prototype,
                                            const ScaleSet& scale);

/// The dimensionless groups of the rigid-body problem.
struct PiTerms {
  double inertia_ratio;          ///< pi01, J_i
  double displacement;           ///< pi02, x/l
  double angle;                  ///< pi03, theta
  double angular_acceleration;   ///< pi11
  double angular_velocity;       ///< pi12
  double linear_acceleration;    ///< pi13
  double linear_velocity;        ///< pi14
  double time;                   ///< pi15
  double friction;               ///< pi21, mu
  double inertia;                ///< pi22, J/(m l^2)
  double thrust;                 ///< pi23, P l^2/(m g)
  double impulse;                ///< pi24, (I/m) sqrt(l^3/g)
};

/// Kinematic snapshot for evaluating the state-dependent groups.
struct KinematicState {
  double time = 0.0;                  ///< [s]
  double sliding = 0.0;               ///< x [m]
  double sliding_velocity = 0.0;      ///< [m/s]
  double sliding_acceleration = 0.0;  ///< [m/s^2]
  double angle = 0.0;                 ///< theta [rad]
  double angular_velocity = 0.0;      ///< [rad/s]
  double angular_acceleration = 0.0;  ///< [rad/s^2]
};

/// All twelve groups for a block/load/state triple. The characteristic
/// length is the block's total height; thrust and impulse use the waveform
/// peak pressure and impulse converted to SI.
PiTerms pi_terms(const rockdyn::RigidBlock& block,
                 const blastload::BlastWaveform& load,
                 const KinematicState& state = {});

struct ImpulsivenessReport {
  double thrust_number;   ///< pi23
  double duration_ratio;  ///< t_o / sqrt(l/g)
  bool impulsive;
};

/// A-posteriori check of the impulsive-load assumption behind the
/// scaled-distance solve.
ImpulsivenessReport impulsiveness_report(const rockdyn::RigidBlock& block,
                                         const blastload::BlastWaveform& waveform,
                                         double threshold = 0.1);

}  // namespace blastsim::similitude

#endif
