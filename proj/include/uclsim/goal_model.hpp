#pragma once

#include <vector>

#include "uclsim/rng.hpp"
#include "uclsim/types.hpp"

namespace uclsim {

// Log-linear Poisson intensities driven by the seeding gap between the two
// sides. Note the model is extrapolated to same-pot matches (the league
// phase schedules them even though the historical fit only saw cross-pot
// group games).
struct GoalModelParams {
  double alpha_home;
  double beta_home;
  double alpha_away;
  double beta_away;

  // Seeding-based 4-parameter independent Poisson fit.
  static GoalModelParams fitted() noexcept { return {0.4242, -0.1693, 0.1080, -0.1746}; }
};

// exp(alpha_home + beta_home * (R_home - R_away))
double lambda_home(const GoalModelParams& params, PotRating home, PotRating away) noexcept;

// exp(alpha_away + beta_away * (R_away - R_home))
double lambda_away(const GoalModelParams& params, PotRating home, PotRating away) noexcept;

// Poisson mass lambda^m e^(-lambda) / m!.
double score_pmf(double lambda, int goals);

// Sequential-search inversion sampler, one uniform per draw. Intensities
// stay below exp(0.9321) for every rating pair, so the search loop is short.
// With a goal cap the distribution is truncated and renormalised; that mode
// exists for the exact-enumeration cross-checks.
class PoissonSampler {
 public:
  explicit PoissonSampler(double lambda);
  PoissonSampler(double lambda, int goal_cap);

  int sample(Xoshiro256pp& rng) const noexcept {
    const double u = rng.next_unit();
    if (cap_ >= 0) {
      for (int m = 0; m < cap_; ++m)
        if (u < cdf_[static_cast<std::size_t>(m)]) return m;
      return cap_;
    }
    int m = 0;
    double term = exp_neg_lambda_;
    double cum = term;
    while (u > cum && m < 4096) {
      ++m;
      term *= lambda_ / m;
      cum += term;
    }
    return m;
  }

  // Mass at `goals`; renormalised over 0..cap when truncated.
  double pmf(int goals) const;

  double lambda() const noexcept { return lambda_; }
  int goal_cap() const noexcept { return cap_; }  // -1 when untruncated

 private:
  double lambda_;
  double exp_neg_lambda_;
  int cap_;
  std::vector<double> cdf_;
};

// Independent Poisson draws for the two sides.
Scoreline sample_scoreline(const GoalModelParams& params, PotRating home, PotRating away,
                           Xoshiro256pp& rng);

}  // namespace uclsim
