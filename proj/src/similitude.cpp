#include "blastsim/similitude.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace blastsim::similitude {

using blastload::scaled_reflected_impulse;

ScaleSet ScaleSet::with_scaled_distance(double lambda_z) const {
  if (!(lambda_z > 0.0)) throw std::domain_error("lambda_Z must be positive");
  ScaleSet out = *this;
  out.scaled_distance = lambda_z;
  out.charge = std::pow(length / lambda_z, 3);
  return out;
}

ScaleSet scale_set_general(double lambda, double gamma, double varsigma) {
  if (!(lambda > 0.0) || !(gamma > 0.0) || !(varsigma > 0.0))
    throw std::domain_error("scale factors must be positive");
  ScaleSet s{};
  s.length = lambda;
  s.density = gamma;
  s.gravity = varsigma;
  s.displacement = lambda;
  s.angle = 1.0;
  s.angular_acceleration = varsigma / lambda;
  s.angular_velocity = std::sqrt(varsigma / lambda);
  s.linear_acceleration = varsigma;
  s.linear_velocity = std::sqrt(varsigma * lambda);
  // lambda_theta_dot * lambda_t must equal lambda_theta = 1
  s.time = std::sqrt(lambda / varsigma);
  s.mass = gamma * std::pow(lambda, 3);
  s.inertia = gamma * std::pow(lambda, 5);
  s.pressure = gamma * varsigma * lambda;
  s.impulse = gamma * std::sqrt(varsigma * std::pow(lambda, 3));
  s.friction = 1.0;
  return s;
}

ScaleSet scale_set_hopkinson(double lambda) {
  if (!(lambda > 0.0)) throw std::domain_error("scale factor must be positive");
  ScaleSet s = scale_set_general(lambda, 1.0 / std::sqrt(lambda), 1.0);
  return s.with_scaled_distance(1.0);
}

double solve_lambda_z(double z_prototype, double lambda, double gamma,
                      const blastload::ZWindow& window) {
  if (!(lambda > 0.0) || !(gamma > 0.0))
    throw std::domain_error("scale factors must be positive");
  const double i_ref = scaled_reflected_impulse(z_prototype, window);
  const double target = gamma * std::sqrt(lambda);
  // the ratio at lambda_Z = 1 is identically 1; keep that case exact so an
  // undistorted design reproduces the prototype bit-for-bit
  if (std::fabs(target - 1.0) < 4e-16) return 1.0;

  // residual in log form; i_rw(Z lz)/(i_rw(Z) lz) is strictly decreasing in lz
  auto ratio = [&](double lz) {
    return scaled_reflected_impulse(z_prototype * lz, window) / (i_ref * lz);
  };

  const double lz_min = window.lo / z_prototype;
  const double lz_max = window.hi / z_prototype;
  const int grid = 400;
  double lo = lz_min, hi = lz_max;
  double r_lo = ratio(lo), r_hi = ratio(hi);
  if ((r_lo - target) * (r_hi - target) > 0.0) {
    std::ostringstream os;
    os << "no scaled-distance factor inside the fit window reaches the "
          "impulse-similarity ratio "
       << target << " (achievable range [" << std::min(r_lo, r_hi) << ", "
       << std::max(r_lo, r_hi) << "])";
    throw InfeasibleScalingError(os.str(), target, std::min(r_lo, r_hi),
                                 std::max(r_lo, r_hi));
  }

  // log-grid scan to a tight bracket, then bisection
  double prev = lo, r_prev = r_lo;
  const double step = std::log(hi / lo) / grid;
  for (int i = 1; i <= grid; ++i) {
    const double cur = lo * std::exp(step * i);
    const double r_cur = ratio(cur);
    if ((r_prev - target) * (r_cur - target) <= 0.0) {
      lo = prev;
      hi = cur;
      break;
    }
    prev = cur;
    r_prev = r_cur;
  }

  while ((hi - lo) > 1e-12 * hi) {
    const double mid = 0.5 * (lo + hi);
    if ((ratio(lo) - target) * (ratio(mid) - target) <= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

ModelDesign design_model(const BenchCase& prototype, double lambda, double gamma,
                         const blastload::ZWindow& window) {
  const double z_p = prototype.scenario.scaled_distance();
  const double lambda_z = solve_lambda_z(z_p, lambda, gamma, window);
  ScaleSet scale = scale_set_general(lambda, gamma).with_scaled_distance(lambda_z);

  rockdyn::RigidBlock model_block = prototype.block.scaled(lambda, gamma);
  blastload::BlastScenario model_scenario(
      prototype.scenario.charge_mass * scale.charge,
      prototype.scenario.standoff * lambda);

  const double z_m = model_scenario.scaled_distance();
  ModelDesign design{model_block, model_scenario, scale,
                     blastload::reflected_pressure_peak(z_m, window) /
                         blastload::reflected_pressure_peak(z_p, window),
                     blastload::reflected_impulse(model_scenario, window) /
                         blastload::reflected_impulse(prototype.scenario, window)};
  return design;
}

ModelDesign design_model_hopkinson(const BenchCase& prototype, double lambda,
                                   const blastload::ZWindow& window) {
  const ScaleSet scale = scale_set_hopkinson(lambda);
  rockdyn::RigidBlock model_block = prototype.block.scaled(lambda, scale.density);
  blastload::BlastScenario model_scenario(
      prototype.scenario.charge_mass * scale.charge,
      prototype.scenario.standoff * lambda);
  // equal scaled distance: the fits give identical peak pressure and
  // impulse reduced only by the cube-root mass factor
  const double z = prototype.scenario.scaled_distance();
  (void)z;
  return {model_block, model_scenario, scale, 1.0,
          blastload::reflected_impulse(model_scenario, window) /
              blastload::reflected_impulse(prototype.scenario, window)};
}

rockdyn::ResponseHistory upscale_response(const rockdyn::ResponseHistory& model,
                                          const ScaleSet& scale) {
  rockdyn::ResponseHistory out = model;
  for (auto& v : out.time) v /= scale.time;
  for (auto& v : out.theta) v /= scale.angle;
  for (auto& v : out.theta_dot) v /= scale.angular_velocity;
  for (auto& v : out.x) v /= scale.displacement;
  for (auto& v : out.x_dot) v /= scale.linear_velocity;
  for (auto& e : out.events) e.time /= scale.time;
  return out;
}

rockdyn::ResponseHistory downscale_response(const rockdyn::ResponseHistory& prototype,
                                            const ScaleSet& scale) {
  rockdyn::ResponseHistory out = prototype;
  for (auto& v : out.time) v *= scale.time;
  for (auto& v : out.theta) v *= scale.angle;
  for (auto& v : out.theta_dot) v *= scale.angular_velocity;
  for (auto& v : out.x) v *= scale.displacement;
  for (auto& v : out.x_dot) v *= scale.linear_velocity;
  for (auto& e : out.events) e.time *= scale.time;
  return out;
}

PiTerms pi_terms(const rockdyn::RigidBlock& block,
                 const blastload::BlastWaveform& load, const KinematicState& state) {
  const double l = block.characteristic_length();
  const double g = block.gravity;
  const double m = block.mass();
  const double thrust_si = load.peak_pressure * 1e6;  // MPa -> Pa
  const double impulse_si = load.impulse * 1e3;  // MPa·ms -> Pa·s

  PiTerms pi{};
  pi.inertia_ratio = 1.0;  // single uniform block
  pi.displacement = state.sliding / l;
  pi.angle = state.angle;
  pi.angular_acceleration = state.angular_acceleration * l / g;
  pi.angular_velocity = state.angular_velocity * std::sqrt(l / g);
  pi.linear_acceleration = state.sliding_acceleration / g;
  pi.linear_velocity = state.sliding_velocity / std::sqrt(l * g);
  pi.time = state.time * std::sqrt(g / l);
  pi.friction = block.friction_coefficient();
  pi.inertia = block.pivot_inertia() / (m * l * l);
  pi.thrust = thrust_si * l * l / (m * g);
  pi.impulse = impulse_si / m * std::sqrt(l * l * l / g);
  return pi;
}

ImpulsivenessReport impulsiveness_report(const rockdyn::RigidBlock& block,
                                         const blastload::BlastWaveform& waveform,
                                         double threshold) {
  const double l = block.characteristic_length();
  const double t_char = std::sqrt(l / block.gravity);
  const double ratio = waveform.positive_duration * 1e-3 / t_char;
  const PiTerms pi = pi_terms(block, waveform);
  return {pi.thrust, ratio, ratio < threshold};
}

}  // namespace blastsim::similitude
