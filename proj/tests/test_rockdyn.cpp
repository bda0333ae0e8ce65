#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "blastsim/rockdyn.hpp"

using namespace blastsim;
using namespace blastsim::rockdyn;

namespace {

constexpr double kDeg = M_PI / 180.0;

RigidBlock prototype_block() {
  const double h = 5.0;
  const double b = h * std::tan(15.0 * kDeg);
  return RigidBlock(b, h, b, 2000.0, 35.0 * kDeg);
}

blastload::BlastWaveform waveform_for(double w_kg, double r_m) {
  return blastload::waveform_from_scenario(blastload::BlastScenario(w_kg, r_m));
}

}  // namespace

TEST_CASE("rigid block derived quantities") {
  auto blk = prototype_block();
  CHECK(blk.slenderness() == doctest::Approx(15.0 * kDeg).epsilon(1e-12));
  CHECK(blk.pivot_radius() == doctest::Approx(5.0 / std::cos(15.0 * kDeg)).epsilon(1e-12));
  const double r = blk.pivot_radius();
  CHECK(r * r == doctest::Approx(blk.half_width * blk.half_width + 25.0).epsilon(1e-12));
  CHECK(blk.mass() == doctest::Approx(2000.0 * 8.0 * blk.half_width * 5.0 * blk.half_depth));
  CHECK(blk.pivot_inertia() == doctest::Approx(4.0 / 3.0 * blk.mass() * r * r));
  CHECK(blk.incident_surface() == doctest::Approx(4.0 * 5.0 * blk.half_depth));
  CHECK_THROWS_AS(RigidBlock(0.0, 1.0, 1.0, 1000.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(RigidBlock(1.0, 1.0, 1.0, 1000.0, 2.0), std::domain_error);
}

TEST_CASE("rocking acceleration") {
  auto blk = prototype_block();
  const double a = blk.slenderness();
  auto quiet = blastload::BlastWaveform::triangular(1e-12, 1e-13, 2e-13);

  // balanced on the corner: no restoring moment
  CHECK(rocking_rhs(a, 0.0, 1.0, blk, quiet, 1) == doctest::Approx(0.0).epsilon(1e-9));
  // inside the stable wedge the moment restores
  CHECK(rocking_rhs(0.5 * a, 0.0, 1.0, blk, quiet, 1) < 0.0);
  CHECK(rocking_rhs(-0.5 * a, 0.0, 1.0, blk, quiet, -1) > 0.0);

  // static threshold S P = m g tan(alpha) balances at theta = 0+
  const double p_thresh = blk.mass() * blk.gravity * std::tan(a) / blk.incident_surface();
  auto crit = blastload::BlastWaveform::triangular(p_thresh / 1e6, p_thresh / 1e6, 2.0);
  const double acc = rocking_rhs(0.0, 0.0, 0.0, blk, crit, 1);
  CHECK(acc == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("impact map") {
  auto blk = prototype_block();
  CHECK(impact_map(0.0, blk) == 0.0);
  // alpha = 15 deg
  CHECK(default_restitution(blk) == doctest::Approx(0.8995).epsilon(1e-3));
  CHECK(impact_map(-0.4, blk) == doctest::Approx(-0.4 * default_restitution(blk)));
  CHECK(impact_map(-0.4, blk, 1.0) == doctest::Approx(-0.4));
  CHECK(std::fabs(impact_map(-0.4, blk)) <= 0.4);
  CHECK_THROWS_AS(impact_map(1.0, blk, 1.5), std::domain_error);
}

TEST_CASE("rocking outcomes for the reference block") {
  auto blk = prototype_block();

  SUBCASE("50 kg at 2 m rocks without overturning") {
    auto hist = simulate_rocking(blk, waveform_for(50.0, 2.0), 60.0);
    CHECK(hist.outcome == Outcome::RockingDecayed);
    CHECK(hist.peak_theta() > 0.0);
    CHECK(hist.peak_theta() < blk.slenderness());
    CHECK(hist.first_event_time(EventKind::RockingStart).has_value());
    CHECK(hist.first_event_time(EventKind::Impact).has_value());
    // frozen against the reference integration: peak ~0.0687 rad
    CHECK(hist.peak_theta() == doctest::Approx(0.0687).epsilon(0.01));
  }

  SUBCASE("100 kg at 2 m overturns") {
    auto hist = simulate_rocking(blk, waveform_for(100.0, 2.0), 60.0);
    CHECK(hist.outcome == Outcome::Overturned);
    CHECK(hist.first_event_time(EventKind::Overturn).has_value());
    CHECK(hist.peak_theta() >= M_PI / 2 * 0.999);
    CHECK(classify_outcome(hist) == Outcome::Overturned);
  }

  SUBCASE("negligible load never starts rocking") {
    auto quiet = blastload::BlastWaveform::triangular(1e-9, 1e-10, 2e-10);
    auto hist = simulate_rocking(blk, quiet, 1.0);
    CHECK(hist.outcome == Outcome::Rest);
    CHECK(hist.peak_theta() == 0.0);
    CHECK(hist.events.empty());
  }
}

TEST_CASE("free rocking conserves energy between impacts") {
  auto blk = prototype_block();
  auto hist = simulate_rocking(blk, waveform_for(50.0, 2.0), 60.0);
  const double t_load = 1e-3 * waveform_for(50.0, 2.0).positive_duration;
  const double t_first = *hist.first_event_time(EventKind::Impact);
  const double m = blk.mass(), g = blk.gravity, r = blk.pivot_radius();
  const double jo = blk.pivot_inertia(), a = blk.slenderness();

  double e_min = 1e300, e_max = -1e300;
  int counted = 0;
  for (std::size_t i = 0; i < hist.time.size(); ++i) {
    if (hist.time[i] <= t_load * 1.01 || hist.time[i] >= t_first) continue;
    const double e = 0.5 * jo * hist.theta_dot[i] * hist.theta_dot[i] +
                     m * g * r * std::cos(a - std::fabs(hist.theta[i]));
    e_min = std::min(e_min, e);
    e_max = std::max(e_max, e);
    ++counted;
  }
  REQUIRE(counted > 10);
  CHECK((e_max - e_min) / e_max < 1e-6);
}

TEST_CASE("impact dissipativity across the whole run") {
  auto blk = prototype_block();
  auto hist = simulate_rocking(blk, waveform_for(50.0, 2.0), 60.0);
  // rest threshold reached before the time cap
  CHECK(hist.first_event_time(EventKind::Rest).has_value());
  int impacts = 0;
  for (const auto& e : hist.events)
    if (e.kind == EventKind::Impact) ++impacts;
  CHECK(impacts > 10);
}

TEST_CASE("restitution sensitivity does not change the classification") {
  auto blk = prototype_block();
  for (double e : {0.85, 0.9, 0.95, 1.0}) {
    SimOptions opt;
    opt.restitution = e;
    opt.stop_at_first_impact = true;
    CHECK(simulate_rocking(blk, waveform_for(50.0, 2.0), 60.0, opt).outcome !=
          Outcome::Overturned);
    CHECK(simulate_rocking(blk, waveform_for(100.0, 2.0), 60.0, opt).outcome ==
          Outcome::Overturned);
  }
}

TEST_CASE("sliding") {
  // non-slender reference: 2h = 10 m, 2b = 2w = 3.5 m, friction 35 deg
  RigidBlock blk(1.75, 5.0, 1.75, 2000.0, 35.0 * kDeg);

  SUBCASE("static friction holds under a weak pulse") {
    const double p_static = blk.friction_coefficient() * blk.mass() * blk.gravity /
                            blk.incident_surface();
    auto weak = blastload::BlastWaveform::triangular(0.5 * p_static / 1e6,
                                                     0.5 * p_static / 1e6, 2.0);
    auto hist = simulate_sliding(blk, weak, 1.0);
    CHECK(hist.outcome == Outcome::Rest);
    CHECK(hist.peak_x() == 0.0);
  }

  SUBCASE("frictionless limit recovers impulse-momentum") {
    RigidBlock slick(1.75, 5.0, 1.75, 2000.0, 1e-9);
    auto w = waveform_for(2500.0, 3.0);
    auto hist = simulate_sliding(slick, w, 0.01);
    const double v_expected = slick.incident_surface() * w.impulse * 1e3 / slick.mass();
    CHECK(hist.x_dot.back() == doctest::Approx(v_expected).epsilon(1e-8));
  }

  SUBCASE("reference sliding scenario comes to rest") {
    auto hist = simulate_sliding(blk, waveform_for(2500.0, 3.0), 30.0);
    CHECK(hist.outcome == Outcome::Rest);
    CHECK(hist.first_event_time(EventKind::StickToSlip).has_value());
    CHECK(hist.first_event_time(EventKind::SlipToStick).has_value());
    // frozen against the reference integration of the same friction model
    CHECK(hist.x.back() == doctest::Approx(22.51).epsilon(0.01));
    CHECK(*hist.first_event_time(EventKind::SlipToStick) == doctest::Approx(2.56).epsilon(0.01));
  }

  SUBCASE("Coulomb bound honored while stuck") {
    auto hist = simulate_sliding(blk, waveform_for(2500.0, 3.0), 30.0);
    // after rest the required friction equals the (zero) drive
    CHECK(hist.x_dot.back() == 0.0);
  }
}

TEST_CASE("critical charge search") {
  auto blk = prototype_block();

  SUBCASE("bad brackets are rejected") {
    CHECK_THROWS_AS(critical_charge(blk, 2.0, 200.0, 400.0, 1e-2), BracketError);
    CHECK_THROWS_AS(critical_charge(blk, 2.0, 10.0, 20.0, 1e-2), BracketError);
    CHECK_THROWS_AS(critical_charge(blk, 2.0, -1.0, 20.0, 1e-2), BracketError);
  }

  SUBCASE("bracket independence") {
    auto a = critical_charge(blk, 2.0, 50.0, 100.0, 1e-3);
    auto b = critical_charge(blk, 2.0, 79.8 * 0.5, 79.8 * 2.0, 1e-3);
    CHECK(a.critical_mass == doctest::Approx(b.critical_mass).epsilon(2e-3));
    CHECK(a.bracket_lo < a.critical_mass);
    CHECK(a.bracket_hi > a.critical_mass);
    CHECK(a.simulations >= a.bracket_history.size());
  }
}
