#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "blastsim/blastload.hpp"
#include "blastsim/rockdyn.hpp"
#include "blastsim/similitude.hpp"

namespace py = pybind11;
using namespace blastsim;

PYBIND11_MODULE(_blastsim, m) {
  m.doc() = "blast loading, similitude scaling and rigid-block response";

  // --- blastload -----------------------------------------------------------
  py::register_exception<blastload::ZRangeError>(m, "ZRangeError", PyExc_ValueError);
  py::register_exception<blastload::NoDecaySolutionError>(m, "NoDecaySolutionError",
                                                          PyExc_ValueError);

  py::class_<blastload::ZWindow>(m, "ZWindow")
      .def(py::init<>())
      .def(py::init([](double lo, double hi) {
             return blastload::ZWindow{lo, hi};
           }),
           py::arg("lo"), py::arg("hi"))
      .def_readwrite("lo", &blastload::ZWindow::lo)
      .def_readwrite("hi", &blastload::ZWindow::hi)
      .def("contains", &blastload::ZWindow::contains);

  py::class_<blastload::BlastScenario>(m, "BlastScenario")
      .def(py::init<double, double>(), py::arg("charge_kg"), py::arg("standoff_m"))
      .def_readonly("charge_mass", &blastload::BlastScenario::charge_mass)
      .def_readonly("standoff", &blastload::BlastScenario::standoff)
      .def("scaled_distance", &blastload::BlastScenario::scaled_distance);

  py::enum_<blastload::WaveformKind>(m, "WaveformKind")
      .value("Friedlander", blastload::WaveformKind::Friedlander)
      .value("Triangular", blastload::WaveformKind::Triangular);

  py::class_<blastload::BlastWaveform>(m, "BlastWaveform")
      .def_static("friedlander", &blastload::BlastWaveform::friedlander,
                  py::arg("peak_pressure"), py::arg("positive_duration"),
                  py::arg("impulse"), py::arg("arrival_time") = 0.0)
      .def_static("triangular", &blastload::BlastWaveform::triangular,
                  py::arg("peak_pressure"), py::arg("impulse"),
                  py::arg("positive_duration"), py::arg("arrival_time") = 0.0)
      .def_readonly("peak_pressure", &blastload::BlastWaveform::peak_pressure)
      .def_readonly("positive_duration", &blastload::BlastWaveform::positive_duration)
      .def_readonly("impulse", &blastload::BlastWaveform::impulse)
      .def_readonly("arrival_time", &blastload::BlastWaveform::arrival_time)
      .def_readonly("decay", &blastload::BlastWaveform::decay)
      .def_readonly("kind", &blastload::BlastWaveform::kind)
      .def_readonly("linear_duration", &blastload::BlastWaveform::linear_duration);

  m.def("scaled_distance", &blastload::scaled_distance, py::arg("charge_mass"),
        py::arg("standoff"));
  m.def("reflected_pressure_peak", &blastload::reflected_pressure_peak, py::arg("z"),
        py::arg("window") = blastload::ZWindow{});
  m.def("scaled_reflected_impulse", &blastload::scaled_reflected_impulse, py::arg("z"),
        py::arg("window") = blastload::ZWindow{});
  m.def("scaled_arrival_time", &blastload::scaled_arrival_time, py::arg("z"),
        py::arg("window") = blastload::ZWindow{});
  m.def("scaled_positive_duration", &blastload::scaled_positive_duration, py::arg("z"),
        py::arg("window") = blastload::ZWindow{});
  m.def("friedlander_decay", &blastload::friedlander_decay, py::arg("peak_pressure"),
        py::arg("positive_duration"), py::arg("impulse"));
  m.def("pressure_at", &blastload::pressure_at, py::arg("waveform"), py::arg("t_ms"));
  m.def("waveform_from_scenario", &blastload::waveform_from_scenario,
        py::arg("scenario"), py::arg("kind") = blastload::WaveformKind::Friedlander,
        py::arg("window") = blastload::ZWindow{});

  // --- rockdyn -------------------------------------------------------------
  py::class_<rockdyn::RigidBlock>(m, "RigidBlock")
      .def(py::init<double, double, double, double, double, double>(),
           py::arg("half_width"), py::arg("half_height"), py::arg("half_depth"),
           py::arg("density"), py::arg("friction_angle"), py::arg("gravity") = 9.81)
      .def_readonly("half_width", &rockdyn::RigidBlock::half_width)
      .def_readonly("half_height", &rockdyn::RigidBlock::half_height)
      .def_readonly("half_depth", &rockdyn::RigidBlock::half_depth)
      .def_readonly("density", &rockdyn::RigidBlock::density)
      .def_readonly("friction_angle", &rockdyn::RigidBlock::friction_angle)
      .def_readonly("gravity", &rockdyn::RigidBlock::gravity)
      .def("slenderness", &rockdyn::RigidBlock::slenderness)
      .def("pivot_radius", &rockdyn::RigidBlock::pivot_radius)
      .def("mass", &rockdyn::RigidBlock::mass)
      .def("pivot_inertia", &rockdyn::RigidBlock::pivot_inertia)
      .def("incident_surface", &rockdyn::RigidBlock::incident_surface)
      .def("characteristic_length", &rockdyn::RigidBlock::characteristic_length)
      .def("friction_coefficient", &rockdyn::RigidBlock::friction_coefficient)
      .def("scaled", &rockdyn::RigidBlock::scaled, py::arg("lambda_"),
           py::arg("gamma"));

  py::enum_<rockdyn::EventKind>(m, "EventKind")
      .value("RockingStart", rockdyn::EventKind::RockingStart)
      .value("Impact", rockdyn::EventKind::Impact)
      .value("StickToSlip", rockdyn::EventKind::StickToSlip)
      .value("SlipToStick", rockdyn::EventKind::SlipToStick)
      .value("Overturn", rockdyn::EventKind::Overturn)
      .value("Rest", rockdyn::EventKind::Rest);

  py::class_<rockdyn::Event>(m, "Event")
      .def_readonly("time", &rockdyn::Event::time)
      .def_readonly("kind", &rockdyn::Event::kind);

  py::enum_<rockdyn::Outcome>(m, "Outcome")
      .value("Rest", rockdyn::Outcome::Rest)
      .value("RockingDecayed", rockdyn::Outcome::RockingDecayed)
      .value("Overturned", rockdyn::Outcome::Overturned);

  py::class_<rockdyn::ResponseHistory>(m, "ResponseHistory")
      .def_readonly("time", &rockdyn::ResponseHistory::time)
      .def_readonly("theta", &rockdyn::ResponseHistory::theta)
      .def_readonly("theta_dot", &rockdyn::ResponseHistory::theta_dot)
      .def_readonly("x", &rockdyn::ResponseHistory::x)
      .def_readonly("x_dot", &rockdyn::ResponseHistory::x_dot)
      .def_readonly("events", &rockdyn::ResponseHistory::events)
      .def_readonly("outcome", &rockdyn::ResponseHistory::outcome)
      .def("peak_theta", &rockdyn::ResponseHistory::peak_theta)
      .def("peak_x", &rockdyn::ResponseHistory::peak_x)
      .def("first_event_time", &rockdyn::ResponseHistory::first_event_time);

  py::class_<rockdyn::SimOptions>(m, "SimOptions")
      .def(py::init<>())
      .def_readwrite("sample_interval", &rockdyn::SimOptions::sample_interval)
      .def_readwrite("restitution", &rockdyn::SimOptions::restitution)
      .def_readwrite("stop_at_first_impact",
                     &rockdyn::SimOptions::stop_at_first_impact);

  py::register_exception<rockdyn::BracketError>(m, "BracketError", PyExc_ValueError);

  py::class_<rockdyn::CriticalChargeResult>(m, "CriticalChargeResult")
      .def_readonly("critical_mass", &rockdyn::CriticalChargeResult::critical_mass)
      .def_readonly("bracket_lo", &rockdyn::CriticalChargeResult::bracket_lo)
      .def_readonly("bracket_hi", &rockdyn::CriticalChargeResult::bracket_hi)
      .def_readonly("bracket_history",
                    &rockdyn::CriticalChargeResult::bracket_history)
      .def_readonly("simulations", &rockdyn::CriticalChargeResult::simulations);

  m.def("default_restitution", &rockdyn::default_restitution, py::arg("block"));
  m.def("simulate_rocking", &rockdyn::simulate_rocking, py::arg("block"),
        py::arg("waveform"), py::arg("t_end"),
        py::arg("options") = rockdyn::SimOptions{},
        py::call_guard<py::gil_scoped_release>());
  m.def("simulate_sliding", &rockdyn::simulate_sliding, py::arg("block"),
        py::arg("waveform"), py::arg("t_end"),
        py::arg("options") = rockdyn::SimOptions{},
        py::call_guard<py::gil_scoped_release>());
  m.def("critical_charge", &rockdyn::critical_charge, py::arg("block"),
        py::arg("standoff"), py::arg("w_lo"), py::arg("w_hi"),
        py::arg("rel_tol") = 1e-3, py::arg("options") = rockdyn::SimOptions{},
        py::arg("window") = blastload::ZWindow{},
        py::call_guard<py::gil_scoped_release>());

  // --- similitude ----------------------------------------------------------
  py::register_exception<similitude::InfeasibleScalingError>(
      m, "InfeasibleScalingError", PyExc_ValueError);

  py::class_<similitude::ScaleSet>(m, "ScaleSet")
      .def_readonly("length", &similitude::ScaleSet::length)
      .def_readonly("density", &similitude::ScaleSet::density)
      .def_readonly("gravity", &similitude::ScaleSet::gravity)
      .def_readonly("displacement", &similitude::ScaleSet::displacement)
      .def_readonly("angle", &similitude::ScaleSet::angle)
      .def_readonly("angular_velocity", &similitude::ScaleSet::angular_velocity)
      .def_readonly("angular_acceleration",
                    &similitude::ScaleSet::angular_acceleration)
      .def_readonly("linear_velocity", &similitude::ScaleSet::linear_velocity)
      .def_readonly("linear_acceleration", &similitude::ScaleSet::linear_acceleration)
      .def_readonly("time", &similitude::ScaleSet::time)
      .def_readonly("mass", &similitude::ScaleSet::mass)
      .def_readonly("inertia", &similitude::ScaleSet::inertia)
      .def_readonly("pressure", &similitude::ScaleSet::pressure)
      .def_readonly("impulse", &similitude::ScaleSet::impulse)
      .def_readonly("friction", &similitude::ScaleSet::friction)
      .def_readonly("scaled_distance", &similitude::ScaleSet::scaled_distance)
      .def_readonly("charge", &similitude::ScaleSet::charge)
      .def("with_scaled_distance", &similitude::ScaleSet::with_scaled_distance);

  py::class_<similitude::BenchCase>(m, "BenchCase")
      .def(py::init<rockdyn::RigidBlock, blastload::BlastScenario>(),
           py::arg("block"), py::arg("scenario"))
      .def_readonly("block", &similitude::BenchCase::block)
      .def_readonly("scenario", &similitude::BenchCase::scenario);

  py::class_<similitude::ModelDesign>(m, "ModelDesign")
      .def_readonly("block", &similitude::ModelDesign::block)
      .def_readonly("scenario", &similitude::ModelDesign::scenario)
      .def_readonly("scale", &similitude::ModelDesign::scale)
      .def_readonly("pressure_ratio", &similitude::ModelDesign::pressure_ratio)
      .def_readonly("impulse_ratio", &similitude::ModelDesign::impulse_ratio);

  m.def("scale_set_general", &similitude::scale_set_general, py::arg("lambda_"),
        py::arg("gamma"), py::arg("varsigma") = 1.0);
  m.def("scale_set_hopkinson", &similitude::scale_set_hopkinson, py::arg("lambda_"));
  m.def("solve_lambda_z", &similitude::solve_lambda_z, py::arg("z_prototype"),
        py::arg("lambda_"), py::arg("gamma"),
        py::arg("window") = blastload::ZWindow{});
  m.def("design_model", &similitude::design_model, py::arg("prototype"),
        py::arg("lambda_"), py::arg("gamma"),
        py::arg("window") = blastload::ZWindow{});
  m.def("design_model_hopkinson", &similitude::design_model_hopkinson,
        py::arg("prototype"), py::arg("lambda_"),
        py::arg("window") = blastload::ZWindow{});
  m.def("upscale_response", &similitude::upscale_response, py::arg("model"),
        py::arg("scale"));
  m.def("downscale_response", &similitude::downscale_response, py::arg("prototype"),
        py::arg("scale"));

  py::class_<similitude::PiTerms>(m, "PiTerms")
      .def_readonly("inertia_ratio", &similitude::PiTerms::inertia_ratio)
      .def_readonly("displacement", &similitude::PiTerms::displacement)
      .def_readonly("angle", &similitude::PiTerms::angle)
      .def_readonly("angular_acceleration", &similitude::PiTerms::angular_acceleration)
      .def_readonly("angular_velocity", &similitude::PiTerms::angular_velocity)
      .def_readonly("linear_acceleration", &similitude::PiTerms::linear_acceleration)
      .def_readonly("linear_velocity", &similitude::PiTerms::linear_velocity)
      .def_readonly("time", &similitude::PiTerms::time)
      .def_readonly("friction", &similitude::PiTerms::friction)
      .def_readonly("inertia", &similitude::PiTerms::inertia)
      .def_readonly("thrust", &similitude::PiTerms::thrust)
      .def_readonly("impulse", &similitude::PiTerms::impulse);

  py::class_<similitude::KinematicState>(m, "KinematicState")
      .def(py::init<>())
      .def_readwrite("time", &similitude::KinematicState::time)
      .def_readwrite("sliding", &similitude::KinematicState::sliding)
      .def_readwrite("sliding_velocity", &similitude::KinematicState::sliding_velocity)
      .def_readwrite("sliding_acceleration",
                     &similitude::KinematicState::sliding_acceleration)
      .def_readwrite("angle", &similitude::KinematicState::angle)
      .def_readwrite("angular_velocity", &similitude::KinematicState::angular_velocity)
      .def_readwrite("angular_acceleration",
                     &similitude::KinematicState::angular_acceleration);

  m.def("pi_terms", &similitude::pi_terms, py::arg("block"), py::arg("load"),
        py::arg("state") = similitude::KinematicState{});

  py::class_<similitude::ImpulsivenessReport>(m, "ImpulsivenessReport")
      .def_readonly("thrust_number", &similitude::ImpulsivenessReport::thrust_number)
      .def_readonly("duration_ratio", &similitude::ImpulsivenessReport::duration_ratio)
      .def_readonly("impulsive", &similitude::ImpulsivenessReport::impulsive);

  m.def("impulsiveness_report", &similitude::impulsiveness_report, py::arg("block"),
        py::arg("waveform"), py::arg("threshold") = 0.1);
}
