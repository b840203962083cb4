#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ehmi/game.hpp"
#include "ehmi/payoff.hpp"
#include "ehmi/types.hpp"

namespace ehmi {

struct DegenerateData : std::runtime_error {
  explicit DegenerateData(const std::string& what) : std::runtime_error(what) {}
};

// Constants of the intention-labeling rule. A vehicle is labeled yielding
// when its mean acceleration over the first window_s seconds of the
// interaction (both vehicles within detection_radius of the conflict point)
// falls below yield_decel.
struct LabelingOptions {
  double detection_radius = 30.0;  // [m]
  double window_s = 1.0;           // [s]
  double yield_decel = -0.3;       // [m/s^2]
};

Outcome label_intention(double mean_accel_turn, double mean_accel_straight,
                        const LabelingOptions& opt = {});

struct Observation {
  Encounter enc;
  Outcome label = Outcome::O11;
};

// Sum over observations of ln P(label | encounter), probabilities floored
// at prob_floor. Observations with an undefined utility matrix are skipped;
// *dropped (when given) receives their count.
double log_likelihood(std::span<const Observation> data, const PayoffParams& p,
                      GameForm form, double delta, double prob_floor = 1e-12,
                      int* dropped = nullptr);

struct FitOptions {
  int restarts = 10;           // random simplex restarts around the incumbent
  double restart_radius = 1.0; // coordinate perturbation scale
  double initial_step = 0.5;
  double tol = 1e-8;
  int max_iter = 20000;
  std::uint64_t seed = 1;
  double prob_floor = 1e-12;
};

struct FitResult {
  PayoffParams params;
  double log_likelihood = 0.0;
  int iterations = 0;
  int dropped = 0;  // observations excluded for undefined kinematics
};

// Maximum-likelihood calibration of the 20 coefficients under one game
// form. Throws DegenerateData when the labels contain a single outcome.
FitResult fit_mle(std::span<const Observation> data, GameForm form, double delta,
                  const PayoffParams& init, const FitOptions& opt = {});

// Prediction quality under the binary error encoding (hit/miss per
// encounter). error_rate + accuracy == 1.0 bit-exactly and
// rmse == sqrt(error_rate) by construction.
struct PredictionStats {
  int n = 0;
  int correct = 0;
  int dropped = 0;
  double accuracy = 0.0;
  double error_rate = 0.0;
  double rmse = 0.0;
  double mean_winning_prob = 0.0;  // mean predicted probability of the chosen outcome
};

PredictionStats evaluate_predictions(std::span<const Observation> data,
                                     const PayoffParams& p, GameForm form, double delta);

// Share of o11 among o11/o22 labels; fallback when neither occurs.
double estimate_delta(std::span<const Outcome> labels, double fallback = 0.5);

struct CalibrationResult {
  GameForm fitted_form = GameForm::SequentialBFirst;
  PayoffParams params;
  double delta = 0.5;
  double log_likelihood = 0.0;
  int n_observations = 0;
  int dropped = 0;
  std::map<std::string, PredictionStats> stats_per_form;
};

std::string calibration_result_to_json(const CalibrationResult& r);

}  // namespace ehmi
