#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "blastsim/blastload.hpp"

using namespace blastsim::blastload;

namespace {

// composite Simpson quadrature, test-side oracle for the impulse identity
double simpson(const BlastWaveform& w, double a, double b, int n = 4096) {
  const double h = (b - a) / n;
  double s = pressure_at(w, a) + pressure_at(w, b);
  for (int i = 1; i < n; ++i)
    s += pressure_at(w, a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("scaled distance") {
  CHECK(scaled_distance(50.0, 2.0) == doctest::Approx(0.543).epsilon(1e-3));
  CHECK(scaled_distance(1.0, 1.0) == doctest::Approx(1.0));
  CHECK(scaled_distance(100.0, 2.0) == doctest::Approx(0.431).epsilon(1e-3));
  CHECK_THROWS_AS(scaled_distance(-1.0, 2.0), std::domain_error);
  CHECK_THROWS_AS(scaled_distance(1.0, 0.0), std::domain_error);
  BlastScenario s(50.0, 2.0);
  CHECK(s.scaled_distance() == doctest::Approx(2.0 / std::cbrt(50.0)).epsilon(1e-15));
}

TEST_CASE("reflected pressure peak fit") {
  // frozen against an independent high-precision evaluation of the fit
  CHECK(reflected_pressure_peak(0.543) == doctest::Approx(32.597053).epsilon(1e-6));
  CHECK(reflected_pressure_peak(1.63) == doctest::Approx(1.888105).epsilon(1e-6));
  CHECK(reflected_pressure_peak(0.5) > reflected_pressure_peak(1.0));
  CHECK(reflected_pressure_peak(1.0) > reflected_pressure_peak(5.0));
}

TEST_CASE("pressure fit monotone decreasing over the window") {
  double prev = reflected_pressure_peak(0.05);
  for (int i = 1; i < 1000; ++i) {
    const double z = 0.05 * std::pow(40.0 / 0.05, i / 999.0);
    const double p = reflected_pressure_peak(z);
    CHECK(p < prev);
    CHECK(p > 0.0);
    prev = p;
  }
}

TEST_CASE("validity window") {
  CHECK_THROWS_AS(reflected_pressure_peak(0.01), ZRangeError);
  CHECK_THROWS_AS(scaled_reflected_impulse(41.0), ZRangeError);
  try {
    scaled_positive_duration(0.001);
    FAIL("expected ZRangeError");
  } catch (const ZRangeError& e) {
    CHECK(e.z == doctest::Approx(0.001));
    CHECK(e.window.lo == doctest::Approx(0.05));
    CHECK(e.window.hi == doctest::Approx(40.0));
  }
  ZWindow wide{0.001, 100.0};
  CHECK_NOTHROW(reflected_pressure_peak(0.01, wide));
}

TEST_CASE("scaled impulse fit") {
  // ln Z = 0 reduces the fit to a single exponential
  CHECK(scaled_reflected_impulse(1.0) ==
        doctest::Approx(std::exp(-0.110157)).epsilon(1e-12));
  CHECK(scaled_reflected_impulse(0.543) == doctest::Approx(2.181610).epsilon(1e-6));
  BlastScenario s(8.0, 2.0);  // Z = 1, W^(1/3) = 2
  CHECK(reflected_impulse(s) ==
        doctest::Approx(2.0 * scaled_reflected_impulse(1.0)).epsilon(1e-12));
}

TEST_CASE("arrival and duration fits") {
  CHECK(scaled_positive_duration(0.1) == doctest::Approx(0.251703).epsilon(1e-12));
  CHECK(scaled_arrival_time(0.1) == doctest::Approx(0.0315495).epsilon(1e-12));
  BlastScenario unit(1.0, 1.0);  // Z = 1
  CHECK(arrival_time(unit) == doctest::Approx(std::exp(-0.6847)).epsilon(1e-12));
  // frozen oracle value
  CHECK(scaled_positive_duration(0.543) == doctest::Approx(0.316662).epsilon(1e-5));

  // cube-root scaling at fixed Z
  BlastScenario a(1.0, 0.7), b(27.0, 0.7 * 3.0);  // same Z = 0.7
  CHECK(a.scaled_distance() == doctest::Approx(b.scaled_distance()).epsilon(1e-15));
  CHECK(arrival_time(b) == doctest::Approx(3.0 * arrival_time(a)).epsilon(1e-12));
  CHECK(positive_duration(b) == doctest::Approx(3.0 * positive_duration(a)).epsilon(1e-12));
  CHECK(reflected_impulse(b) == doctest::Approx(3.0 * reflected_impulse(a)).epsilon(1e-12));
}

TEST_CASE("friedlander decay") {
  // closed form: impulse = e^(-1) P t_o gives d = 1
  CHECK(friedlander_decay(2.0, 3.0, std::exp(-1.0) * 6.0) ==
        doctest::Approx(1.0).epsilon(1e-9));

  SUBCASE("round trip over d in [0.01, 20]") {
    for (double d = 0.01; d <= 20.0; d *= 1.7) {
      const double p = 5.0, to = 2.0;
      const double iro = (std::expm1(-d) + d) * p * to / (d * d);
      CHECK(friedlander_decay(p, to, iro) == doctest::Approx(d).epsilon(1e-8));
    }
  }

  SUBCASE("limits and errors") {
    // approaching the triangular half-area from below drives d to zero
    CHECK(friedlander_decay(1.0, 1.0, 0.4999) < 1e-2 * 10);
    CHECK(friedlander_decay(1.0, 1.0, 0.4999) > 0.0);
    CHECK_THROWS_AS(friedlander_decay(1.0, 1.0, 0.5), NoDecaySolutionError);
    CHECK_THROWS_AS(friedlander_decay(1.0, 1.0, 0.6), NoDecaySolutionError);
    CHECK_THROWS_AS(friedlander_decay(1.0, 1.0, -0.1), NoDecaySolutionError);
    CHECK_THROWS_AS(friedlander_decay(-1.0, 1.0, 0.1), std::domain_error);
  }
}

TEST_CASE("pressure history") {
  auto w = BlastWaveform::friedlander(10.0, 2.0, 7.0);
  CHECK(pressure_at(w, 0.0) == doctest::Approx(10.0));
  CHECK(pressure_at(w, 2.0) == 0.0);
  CHECK(pressure_at(w, 4.0) == 0.0);
  CHECK(simpson(w, 0.0, 2.0) == doctest::Approx(7.0).epsilon(1e-6));

  auto tri = BlastWaveform::triangular(10.0, 7.0, 2.0);
  CHECK(tri.linear_duration == doctest::Approx(1.4));
  CHECK(0.5 * tri.peak_pressure * tri.linear_duration == doctest::Approx(7.0).epsilon(1e-15));
  CHECK(pressure_at(tri, 0.0) == doctest::Approx(10.0));
  CHECK(pressure_at(tri, 1.4) == 0.0);
  CHECK(pressure_at(tri, 1.7) == 0.0);

  SUBCASE("non-negative everywhere") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ts(0.0, 5.0);
    for (int i = 0; i < 2000; ++i) {
      CHECK(pressure_at(w, ts(rng)) >= 0.0);
      CHECK(pressure_at(tri, ts(rng)) >= 0.0);
    }
  }
}

TEST_CASE("waveform from scenario") {
  BlastScenario s(50.0, 2.0);
  auto w = waveform_from_scenario(s);
  CHECK(w.kind == WaveformKind::Friedlander);
  // internal consistency with the closed-form positive-phase integral
  const double lhs = (std::expm1(-w.decay) + w.decay) * w.peak_pressure *
                     w.positive_duration / (w.decay * w.decay);
  CHECK(lhs == doctest::Approx(w.impulse).epsilon(1e-10));
  CHECK(simpson(w, 0.0, w.positive_duration) == doctest::Approx(w.impulse).epsilon(1e-6));

  auto tri = waveform_from_scenario(s, WaveformKind::Triangular);
  CHECK(tri.linear_duration == doctest::Approx(2.0 * tri.impulse / tri.peak_pressure));

  // equal Z, different W: pressure invariant, times/impulse scale with W^(1/3)
  BlastScenario s2(50.0 * 8.0, 2.0 * 2.0);
  auto w2 = waveform_from_scenario(s2);
  CHECK(s2.scaled_distance() == doctest::Approx(s.scaled_distance()).epsilon(1e-15));
  CHECK(w2.peak_pressure == doctest::Approx(w.peak_pressure).epsilon(1e-12));
  CHECK(w2.positive_duration == doctest::Approx(2.0 * w.positive_duration).epsilon(1e-12));
  CHECK(w2.impulse == doctest::Approx(2.0 * w.impulse).epsilon(1e-12));
  CHECK(w2.arrival_time == doctest::Approx(2.0 * w.arrival_time).epsilon(1e-12));
}
