#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fpp/lattice.hpp"

namespace fpp {

class DegenerateFit : public Error {
 public:
  using Error::Error;
};

/// Sample mean and standard error of the mean (NaN below two samples).
struct Moments {
  std::size_t n = 0;
  double mean = 0;
  double sd = 0;
  double se = 0;
};

Moments moments(std::span<const double> xs);

enum class FitModel {
  /// y = a + c log t
  kLog,
  /// y = A t^chi, fitted as log y = log A + chi log t
  kPower,
  /// y = a + c t
  kLinear,
};

std::string to_string(FitModel m);
FitModel fit_model_from_string(const std::string& s);

struct Series {
  std::string name;
  std::vector<double> t;
  std::vector<double> mean;
  std::vector<double> se;
};

/// Weighted least squares in the transformed coordinates. Weights are the
/// inverse variances of the transformed means (se^-2, or mean^2 / se^2 on a
/// log scale); if any se is zero the fit is unweighted. Parameter
/// covariance is s^2 (X'WX)^-1 with s^2 = chi^2 / (n - 2), and intervals use
/// Student t with n - 2 degrees of freedom.
struct ScalingFit {
  std::string series;
  FitModel model = FitModel::kLinear;
  std::size_t n = 0;
  bool weighted = true;
  double intercept = 0;
  double slope = 0;  // c, or chi for the power model
  double intercept_se = 0;
  double slope_se = 0;
  double slope_ci_low = 0;
  double slope_ci_high = 0;
  double intercept_ci_low = 0;
  double intercept_ci_high = 0;
  double confidence = 0.95;
  double chi2 = 0;
  double r2 = 0;
};

ScalingFit fit_scaling(const Series& series, FitModel model, double confidence = 0.95);

}  // namespace fpp
