#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "syncorr/estimators.hpp"
#include "syncorr/fitting.hpp"
#include "syncorr/information.hpp"

namespace syncorr::pipeline {

// One estimate cell. `value` is empty when no pairs exist at the distance.
// `flag` joins shortfall:<available>, no_pairs and unreliable with ';'.
struct EstimateRow {
  std::size_t distance = 0;
  DistanceKind kind = DistanceKind::sequential;
  Estimator estimator = Estimator::grassberger;
  std::size_t n_data = 0;
  std::optional<double> value;
  std::string source;
  std::string flag;

  bool operator==(const EstimateRow&) const = default;
};

// distance,distance_kind,estimator,n_data,value_nats,source,flag
void write_estimates_csv(std::ostream& out, const std::vector<EstimateRow>& rows);

struct SeriesFit {
  FitResult exponential;
  FitResult power_law;
  ModelSelection selection;
  std::pair<double, double> range;
};

struct FitReport {
  std::vector<SeriesFit> fits;
  // Series that could not be fitted, with the reason.
  std::vector<std::pair<std::string, std::string>> skipped;
};

std::string fit_report_json(const FitReport& report);

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

// Writes bytes exactly, creating parent directories.
void write_file(const std::filesystem::path& path, std::string_view content);

// Plain-text "key = value" lines in insertion order.
class Manifest {
 public:
  void add(std::string key, std::string value);
  std::string text() const;

 private:
  std::vector<std::pair<std::string, std::string>> lines_;
};

}  // namespace syncorr::pipeline
