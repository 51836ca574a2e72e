#include "uclsim/goal_model.hpp"

#include <cmath>
#include <stdexcept>

namespace uclsim {

double lambda_home(const GoalModelParams& params, PotRating home, PotRating away) noexcept {
  return std::exp(params.alpha_home + params.beta_home * (home.value() - away.value()));
}

double lambda_away(const GoalModelParams& params, PotRating home, PotRating away) noexcept {
  return std::exp(params.alpha_away + params.beta_away * (away.value() - home.value()));
}

double score_pmf(double lambda, int goals) {
  if (lambda <= 0) throw std::invalid_argument("score_pmf: lambda must be positive");
  if (goals < 0) throw std::invalid_argument("score_pmf: goal count must be non-negative");
  double mass = std::exp(-lambda);
  for (int m = 1; m <= goals; ++m) mass *= lambda / m;
  return mass;
}

PoissonSampler::PoissonSampler(double lambda)
    : lambda_(lambda), exp_neg_lambda_(std::exp(-lambda)), cap_(-1) {
  if (lambda <= 0) throw std::invalid_argument("PoissonSampler: lambda must be positive");
}

PoissonSampler::PoissonSampler(double lambda, int goal_cap)
    : lambda_(lambda), exp_neg_lambda_(std::exp(-lambda)), cap_(goal_cap) {
  if (lambda <= 0) throw std::invalid_argument("PoissonSampler: lambda must be positive");
  if (goal_cap < 0) throw std::invalid_argument("PoissonSampler: goal cap must be non-negative");
  double total = 0;
  double term = exp_neg_lambda_;
  cdf_.reserve(static_cast<std::size_t>(goal_cap) + 1);
  for (int m = 0; m <= goal_cap; ++m) {
    if (m > 0) term *= lambda_ / m;
    total += term;
    cdf_.push_back(total);
  }
  for (double& c : cdf_) c /= total;
  cdf_.back() = 1.0;
}

double PoissonSampler::pmf(int goals) const {
  if (cap_ < 0) return score_pmf(lambda_, goals);
  if (goals < 0 || goals > cap_) return 0.0;
  const auto m = static_cast<std::size_t>(goals);
  return goals == 0 ? cdf_[0] : cdf_[m] - cdf_[m - 1];
}

Scoreline sample_scoreline(const GoalModelParams& params, PotRating home, PotRating away,
                           Xoshiro256pp& rng) {
  const PoissonSampler home_sampler(lambda_home(params, home, away));
  const PoissonSampler away_sampler(lambda_away(params, home, away));
  const int home_goals = home_sampler.sample(rng);
  const int away_goals = away_sampler.sample(rng);
  return Scoreline{home_goals, away_goals};
}

}  // namespace uclsim
