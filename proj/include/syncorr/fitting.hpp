#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace syncorr {

struct Point {
  double r = 0.0;
  double y = 0.0;

  bool operator==(const Point&) const = default;
};

struct Series {
  std::string id;
  std::vector<Point> points;
  // Log mode fits ln y (decay curves); linear mode fits y (growth curves).
  bool log_scaled = true;
};

enum class DecayModel { exponential, power_law };

std::string_view to_string(DecayModel model);

// Log mode:    exponential A exp(-lambda r), power law B r^-alpha;
//              amplitude = A or B, exponent = lambda or alpha.
// Linear mode: exponential C exp(mu r),      power law D r^beta;
//              amplitude = C or D, exponent = mu or beta.
struct FitResult {
  std::string series;
  DecayModel model = DecayModel::exponential;
  bool log_scaled = true;
  double amplitude = 0.0;
  double exponent = 0.0;
  // RSS / (n_points - n_params), unit weights, in the fitted coordinates.
  double chi2_nu = 0.0;
  std::size_t n_points = 0;
  std::size_t n_params = 2;
  std::vector<double> r_values;
  // Points dropped before fitting (non-positive values in log mode).
  std::vector<Point> excluded;
  // Linear mode only.
  std::size_t iterations = 0;
  bool converged = true;
};

// Both throw for fewer than 3 points, a non-positive r, all r equal, or
// (log mode) any y <= 0, listing the offending points.
FitResult fit_exponential(const Series& s);
FitResult fit_power_law(const Series& s);

struct ModelSelection {
  // Empty when the two chi2_nu agree to a relative 1e-9.
  std::optional<DecayModel> winner;
  double chi2_exponential = 0.0;
  double chi2_power_law = 0.0;

  // Loser's chi2_nu over the winner's; infinite if the winner's is 0.
  double ratio() const;
};

// Throws if the two fits were made on different point sets.
ModelSelection select_model(const FitResult& exponential, const FitResult& power_law);

struct SplitSeries {
  Series kept;
  std::vector<Point> excluded;
};

// Drops points with y <= 0 (or non-finite y).
SplitSeries positive_points(const Series& s);
// Keeps points with r in [r_min, r_max].
Series restrict_range(const Series& s, double r_min, double r_max);

}  // namespace syncorr
