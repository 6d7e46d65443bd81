//---------------------------------------------------------------------------//
// Copyright 2026 the qbayes developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
// Command-line front end: spin-predict, laser-posterior, laser-predict,
// simulate, verify. Exit codes: 0 success, 1 usage/input error,
// 2 impossible conditioning event, 3 verification failure.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qbayes/errors.hpp"
#include "qbayes/io.hpp"
#include "qbayes/laser.hpp"
#include "qbayes/montecarlo.hpp"
#include "qbayes/numerics.hpp"
#include "qbayes/spin.hpp"
#include "qbayes/verify.hpp"

namespace {

using qbayes::io::Format;

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_impossible = 2;
constexpr int exit_verification = 3;

struct OutputTarget {
  std::string path;  // empty = stdout

  template <class Writer>
  void write(Writer&& writer) const {
    if (path.empty()) {
      writer(std::cout);
      return;
    }
    std::ofstream out(path);
    if (!out) {
      throw std::invalid_argument("cannot open output file: " + path);
    }
    writer(out);
  }
};

qbayes::BlochPrior make_prior(const std::string& name) {
  if (name == "sphere") {
    return qbayes::BlochPrior::uniform_sphere_surface();
  }
  if (name == "ball") {
    return qbayes::BlochPrior::uniform_ball();
  }
  throw std::invalid_argument("unknown prior: " + name);
}

struct SpinPredictOptions {
  std::string record_path;
  std::string query_path;
  std::string prior = "sphere";
  std::string posterior_path;
  std::string format = "csv";
};

int run_spin_predict(const SpinPredictOptions& opt) {
  const auto prior = make_prior(opt.prior);
  const auto past = qbayes::io::read_spin_record_file(opt.record_path);
  const auto future = qbayes::io::read_spin_record_file(opt.query_path);
  const double p = qbayes::spin::conditional_record(future, past, prior);
  std::cout << qbayes::io::format_double(p) << '\n';
  if (!opt.posterior_path.empty()) {
    const auto posterior = qbayes::spin::posterior_bloch_density(past, prior);
    OutputTarget{opt.posterior_path}.write([&](std::ostream& out) {
      qbayes::io::write_bloch_posterior(out, posterior,
                                        qbayes::io::parse_format(opt.format));
    });
  }
  return exit_ok;
}

struct LaserOptions {
  std::string history_path;
  double a = 1.0;
  double b = 1.0;
  double eta = 1.0;
  double delta_omega = 0.0;
  std::size_t nodes = 0;
  std::string format = "csv";
  std::string out_path;
  // laser-predict only:
  std::string detector = "c";
  double time = 0.0;
  std::uint64_t n_max = 0;
  std::vector<std::uint64_t> joint;
};

qbayes::laser::BeamParams beam_params(const LaserOptions& opt) {
  qbayes::laser::BeamParams params{opt.a, opt.b, opt.eta, opt.delta_omega};
  params.validate();
  return params;
}

int run_laser_posterior(const LaserOptions& opt) {
  const auto history = qbayes::io::read_history_file(opt.history_path);
  const auto posterior =
      qbayes::laser::phase_posterior(history, beam_params(opt), opt.nodes);
  OutputTarget{opt.out_path}.write([&](std::ostream& out) {
    qbayes::io::write_phase_posterior(out, posterior,
                                      qbayes::io::parse_format(opt.format));
  });
  return exit_ok;
}

int run_laser_predict(const LaserOptions& opt) {
  const auto history = opt.history_path.empty()
                           ? qbayes::laser::DetectionHistory{}
                           : qbayes::io::read_history_file(opt.history_path);
  const auto params = beam_params(opt);
  if (!opt.joint.empty()) {
    if (opt.joint.size() != 2) {
      throw std::invalid_argument("--joint expects two counts: n_c n_d");
    }
    const double p = qbayes::laser::predict_joint(opt.joint[0], opt.joint[1],
                                                  opt.time, history, params);
    std::cout << qbayes::io::format_double(p) << '\n';
    return exit_ok;
  }
  const auto detector = [&] {
    if (opt.detector == "c") {
      return qbayes::laser::Detector::C;
    }
    if (opt.detector == "d") {
      return qbayes::laser::Detector::D;
    }
    throw std::invalid_argument("detector must be c or d");
  }();
  const auto dist = qbayes::laser::predict_counts(detector, opt.time, history,
                                                  params, opt.n_max);
  OutputTarget{opt.out_path}.write([&](std::ostream& out) {
    qbayes::io::write_count_distribution(out, dist,
                                         qbayes::io::parse_format(opt.format));
  });
  return exit_ok;
}

struct SimulateOptions {
  std::string kind = "spin";
  std::string prior = "sphere";
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  // spin:
  std::vector<std::uint64_t> plan;  // x y z counts
  // laser:
  double a = 1.0, b = 1.0, eta = 1.0, delta_omega = 0.0;
  std::optional<double> phi;
  std::vector<double> times;
  std::string out_path;
};

int run_simulate(const SimulateOptions& opt) {
  qbayes::mc::SeededStream stream(opt.seed, opt.stream);
  nlohmann::json result;
  result["seed"] = opt.seed;
  result["stream"] = opt.stream;
  if (opt.kind == "spin") {
    qbayes::mc::MeasurementPlan plan{};
    for (std::size_t i = 0; i < opt.plan.size() && i < 3; ++i) {
      plan[i] = opt.plan[i];
    }
    const auto prior = make_prior(opt.prior);
    const auto v = qbayes::mc::sample_bloch(prior, stream);
    const auto record = qbayes::mc::simulate_spin_record(v, plan, stream);
    result["kind"] = "spin";
    result["bloch"] = {{"x", v.x}, {"y", v.y}, {"z", v.z}};
    result["record"] = qbayes::io::spin_record_to_json(record);
  } else if (opt.kind == "laser") {
    qbayes::laser::BeamParams params{opt.a, opt.b, opt.eta, opt.delta_omega};
    params.validate();
    const double phi = opt.phi ? *opt.phi
                               : qbayes::numerics::two_pi * stream.next_unit();
    const auto history =
        qbayes::mc::simulate_detections(phi, params, opt.times, stream);
    result["kind"] = "laser";
    result["phi"] = phi;
    result["history"] = qbayes::io::history_to_json(history);
  } else {
    throw std::invalid_argument("simulate kind must be spin or laser");
  }
  OutputTarget{opt.out_path}.write(
      [&](std::ostream& out) { out << result.dump(2) << '\n'; });
  return exit_ok;
}

struct VerifyOptions {
  std::string suite = "all";
  std::uint64_t replicas = 1'000'000;
  std::uint64_t seed = 20260824;
  std::string report_path;
};

int run_verify(const VerifyOptions& opt) {
  std::vector<qbayes::verify::CaseResult> results;
  auto append = [&](std::vector<qbayes::verify::CaseResult> more) {
    results.insert(results.end(), more.begin(), more.end());
  };
  if (opt.suite == "spin" || opt.suite == "all") {
    append(qbayes::verify::run_spin_suite(opt.replicas, opt.seed));
  }
  if (opt.suite == "laser" || opt.suite == "all") {
    append(qbayes::verify::run_laser_suite(opt.replicas, opt.seed));
  }
  if (opt.suite == "oracle" || opt.suite == "all") {
    append(qbayes::verify::run_oracle_suite());
  }
  if (results.empty()) {
    throw std::invalid_argument("unknown suite: " + opt.suite);
  }
  for (const auto& r : results) {
    std::cout << (r.pass ? "PASS" : "FAIL") << ' ' << r.name << " analytic="
              << qbayes::io::format_double(r.analytic)
              << " empirical=" << qbayes::io::format_double(r.empirical)
              << " stderr=" << qbayes::io::format_double(r.std_error) << '\n';
  }
  if (!opt.report_path.empty()) {
    OutputTarget{opt.report_path}.write([&](std::ostream& out) {
      out << qbayes::verify::to_json(results).dump(2) << '\n';
    });
  }
  return qbayes::verify::all_pass(results) ? exit_ok : exit_verification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequential quantum Bayesian inference for repeated spin "
               "measurements and photon counting on mixed coherent beams"};
  app.require_subcommand(1);

  SpinPredictOptions spin_opt;
  auto* spin_cmd = app.add_subcommand(
      "spin-predict", "Conditional probability of a future spin record");
  spin_cmd->add_option("--record", spin_opt.record_path, "Past record (JSON)")
      ->required();
  spin_cmd->add_option("--query", spin_opt.query_path, "Future record (JSON)")
      ->required();
  spin_cmd->add_option("--prior", spin_opt.prior, "sphere|ball");
  spin_cmd->add_option("--posterior", spin_opt.posterior_path,
                       "Also write the Bloch posterior here");
  spin_cmd->add_option("--format", spin_opt.format, "csv|json");

  LaserOptions posterior_opt;
  auto* posterior_cmd = app.add_subcommand(
      "laser-posterior", "Phase-difference posterior from a detection history");
  posterior_cmd
      ->add_option("--history", posterior_opt.history_path, "JSON or CSV")
      ->required();
  posterior_cmd->add_option("--a", posterior_opt.a, "Amplitude of beam a");
  posterior_cmd->add_option("--b", posterior_opt.b, "Amplitude of beam b");
  posterior_cmd->add_option("--eta", posterior_opt.eta, "Detector constant");
  posterior_cmd->add_option("--delta-omega", posterior_opt.delta_omega,
                            "Frequency difference");
  posterior_cmd->add_option("--nodes", posterior_opt.nodes,
                            "Grid node count override (power of two)");
  posterior_cmd->add_option("--format", posterior_opt.format, "csv|json");
  posterior_cmd->add_option("--out", posterior_opt.out_path, "Output path");

  LaserOptions predict_opt;
  auto* predict_cmd = app.add_subcommand(
      "laser-predict", "Predictive photon-count distribution");
  predict_cmd->add_option("--history", predict_opt.history_path,
                          "JSON or CSV (omit for the uniform prior)");
  predict_cmd->add_option("--a", predict_opt.a, "Amplitude of beam a");
  predict_cmd->add_option("--b", predict_opt.b, "Amplitude of beam b");
  predict_cmd->add_option("--eta", predict_opt.eta, "Detector constant");
  predict_cmd->add_option("--delta-omega", predict_opt.delta_omega,
                          "Frequency difference");
  predict_cmd->add_option("--detector", predict_opt.detector, "c|d");
  predict_cmd->add_option("--time", predict_opt.time, "Prediction time");
  predict_cmd->add_option("--n-max", predict_opt.n_max, "Truncation count");
  predict_cmd->add_option("--joint", predict_opt.joint,
                          "Joint query: n_c n_d (prints one probability)")
      ->expected(2);
  predict_cmd->add_option("--format", predict_opt.format, "csv|json");
  predict_cmd->add_option("--out", predict_opt.out_path, "Output path");

  SimulateOptions sim_opt;
  auto* sim_cmd =
      app.add_subcommand("simulate", "Forward-simulate a measurement record");
  sim_cmd->add_option("--kind", sim_opt.kind, "spin|laser");
  sim_cmd->add_option("--prior", sim_opt.prior, "sphere|ball (spin)");
  sim_cmd->add_option("--plan", sim_opt.plan,
                      "Measurement counts per axis: x y z (spin)")
      ->expected(3);
  sim_cmd->add_option("--a", sim_opt.a, "Amplitude of beam a (laser)");
  sim_cmd->add_option("--b", sim_opt.b, "Amplitude of beam b (laser)");
  sim_cmd->add_option("--eta", sim_opt.eta, "Detector constant (laser)");
  sim_cmd->add_option("--delta-omega", sim_opt.delta_omega,
                      "Frequency difference (laser)");
  sim_cmd->add_option("--phi", sim_opt.phi,
                      "True phase difference (default: drawn uniformly)");
  sim_cmd->add_option("--times", sim_opt.times, "Detection times (laser)");
  sim_cmd->add_option("--seed", sim_opt.seed, "RNG seed");
  sim_cmd->add_option("--stream", sim_opt.stream, "RNG stream id");
  sim_cmd->add_option("--out", sim_opt.out_path, "Output path");

  VerifyOptions verify_opt;
  auto* verify_cmd = app.add_subcommand(
      "verify", "Run the oracle-equivalence and Monte Carlo suites");
  verify_cmd->add_option("--suite", verify_opt.suite,
                         "spin|laser|oracle|all");
  verify_cmd->add_option("--replicas", verify_opt.replicas,
                         "Monte Carlo replicas per case");
  verify_cmd->add_option("--seed", verify_opt.seed, "RNG seed");
  verify_cmd->add_option("--report", verify_opt.report_path,
                         "Write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (spin_cmd->parsed()) {
      return run_spin_predict(spin_opt);
    }
    if (posterior_cmd->parsed()) {
      return run_laser_posterior(posterior_opt);
    }
    if (predict_cmd->parsed()) {
      return run_laser_predict(predict_opt);
    }
    if (sim_cmd->parsed()) {
      return run_simulate(sim_opt);
    }
    if (verify_cmd->parsed()) {
      return run_verify(verify_opt);
    }
  } catch (const qbayes::ImpossibleConditioningEvent& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_impossible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}
