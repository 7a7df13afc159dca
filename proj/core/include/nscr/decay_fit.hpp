#pragma once

#include <span>

namespace nscr {

enum class DecayModel { powerlaw, cubic_exponential };

// powerlaw:          log v = log(amplitude) + exponent * log t
// cubic_exponential: log v = log(amplitude) - exponent * t^3   (exponent is the rate b)
struct DecayFit {
  DecayModel model = DecayModel::powerlaw;
  double exponent = 0.0;
  double amplitude = 0.0;
  double residual = 0.0;  // RMS of the log-space fit
  double t_min = 0.0;
  double t_max = 0.0;
};

// Least squares in log space. Needs >= 5 rows, positive values (and positive t for powerlaw).
DecayFit fit_decay(std::span<const double> t, std::span<const double> v, DecayModel model);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
};

// Ordinary least squares y = intercept + slope * x; needs at least two distinct x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace nscr
