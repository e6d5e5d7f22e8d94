#include "fpp/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>

namespace fpp {

Moments moments(std::span<const double> xs) {
  Moments m;
  m.n = xs.size();
  if (xs.empty()) {
    m.mean = m.sd = m.se = std::numeric_limits<double>::quiet_NaN();
    return m;
  }
  // Two-pass for accuracy.
  double s = 0;
  for (double x : xs) s += x;
  m.mean = s / static_cast<double>(m.n);
  if (m.n < 2) {
    m.sd = m.se = std::numeric_limits<double>::quiet_NaN();
    return m;
  }
  double ss = 0;
  for (double x : xs) ss += (x - m.mean) * (x - m.mean);
  m.sd = std::sqrt(ss / static_cast<double>(m.n - 1));
  m.se = m.sd / std::sqrt(static_cast<double>(m.n));
  return m;
}

std::string to_string(FitModel m) {
  switch (m) {
    case FitModel::kLog:
      return "log";
    case FitModel::kPower:
      return "power";
    case FitModel::kLinear:
      return "linear";
  }
  return "unknown";
}

FitModel fit_model_from_string(const std::string& s) {
  if (s == "log") return FitModel::kLog;
  if (s == "power") return FitModel::kPower;
  if (s == "linear") return FitModel::kLinear;
  throw InvalidArgument("unknown fit model '" + s + "' (expected log, power or linear)");
}

ScalingFit fit_scaling(const Series& series, FitModel model, double confidence) {
  const std::size_t n = series.t.size();
  if (series.mean.size() != n || series.se.size() != n) throw InvalidArgument("fit: series columns differ in length");
  if (n < 3) throw DegenerateFit("fit: need at least 3 points");

  std::vector<double> x(n), y(n), w(n, 1.0);
  bool weighted = true;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = series.t[i], m = series.mean[i], se = series.se[i];
    if (!std::isfinite(t) || !std::isfinite(m)) throw DegenerateFit("fit: non-finite input");
    if (!(se > 0) || !std::isfinite(se)) weighted = false;
    switch (model) {
      case FitModel::kLog:
        if (!(t > 0)) throw DegenerateFit("fit: log model needs t > 0");
        x[i] = std::log(t);
        y[i] = m;
        w[i] = 1.0 / (se * se);
        break;
      case FitModel::kPower:
        if (!(t > 0) || !(m > 0)) throw DegenerateFit("fit: power model needs t > 0 and mean > 0");
        x[i] = std::log(t);
        y[i] = std::log(m);
        w[i] = (m * m) / (se * se);
        break;
      case FitModel::kLinear:
        x[i] = t;
        y[i] = m;
        w[i] = 1.0 / (se * se);
        break;
    }
  }
  if (!weighted) std::fill(w.begin(), w.end(), 1.0);

  double sw = 0, sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sw += w[i];
    sx += w[i] * x[i];
    sy += w[i] * y[i];
  }
  const double xbar = sx / sw, ybar = sy / sw;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += w[i] * (x[i] - xbar) * (x[i] - xbar);
    sxy += w[i] * (x[i] - xbar) * (y[i] - ybar);
    syy += w[i] * (y[i] - ybar) * (y[i] - ybar);
  }
  if (!(sxx > 0)) throw DegenerateFit("fit: zero variance in t");

  ScalingFit f;
  f.series = series.name;
  f.model = model;
  f.n = n;
  f.confidence = confidence;
  f.weighted = weighted;
  f.slope = sxy / sxx;
  f.intercept = ybar - f.slope * xbar;
  double chi2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    chi2 += w[i] * r * r;
  }
  f.chi2 = chi2;
  const double dof = static_cast<double>(n - 2);
  const double s2 = chi2 / dof;
  // Inverse of X'WX for the centered parametrization.
  f.slope_se = std::sqrt(s2 / sxx);
  f.intercept_se = std::sqrt(s2 * (1.0 / sw + xbar * xbar / sxx));
  f.r2 = syy > 0 ? 1.0 - chi2 / syy : 1.0;

  const boost::math::students_t dist(dof);
  const double q = boost::math::quantile(dist, 0.5 + confidence / 2);
  f.slope_ci_low = f.slope - q * f.slope_se;
  f.slope_ci_high = f.slope + q * f.slope_se;
  f.intercept_ci_low = f.intercept - q * f.intercept_se;
  f.intercept_ci_high = f.intercept + q * f.intercept_se;
  return f;
}

}  // namespace fpp
