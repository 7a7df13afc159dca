#include "nscr/decay_fit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace nscr {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 2) throw std::invalid_argument("fit_line: need matching inputs with >= 2 rows");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_line: abscissae are all equal");
  LineFit out;
  out.slope = sxy / sxx;
  out.intercept = my - out.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (out.intercept + out.slope * x[i]);
    ss += r * r;
  }
  out.residual = std::sqrt(ss / n);
  return out;
}

DecayFit fit_decay(std::span<const double> t, std::span<const double> v, DecayModel model) {
  if (t.size() != v.size()) throw std::invalid_argument("fit_decay: t and value lengths differ");
  if (t.size() < 5) throw std::invalid_argument("fit_decay: need at least 5 rows");
  std::vector<double> x(t.size()), y(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(v[i] > 0.0) || !std::isfinite(v[i])) throw std::invalid_argument("fit_decay: values must be positive");
    if (model == DecayModel::powerlaw) {
      if (!(t[i] > 0.0)) throw std::invalid_argument("fit_decay: power-law fit needs t > 0");
      x[i] = std::log(t[i]);
    } else {
      x[i] = t[i] * t[i] * t[i];
    }
    y[i] = std::log(v[i]);
  }
  const LineFit line = fit_line(x, y);
  DecayFit out;
  out.model = model;
  out.exponent = model == DecayModel::powerlaw ? line.slope : -line.slope;
  out.amplitude = std::exp(line.intercept);
  out.residual = line.residual;
  const auto [lo, hi] = std::minmax_element(t.begin(), t.end());
  out.t_min = *lo;
  out.t_max = *hi;
  return out;
}

}  // namespace nscr
