#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace glee {

/// One x-position of an experiment series with per-trial raw values.
/// normalized is filled only by experiments that define a normalization.
struct SeriesPoint {
  double x = 0.0;
  double mean = 0.0;
  double stddev = 0.0;
  std::vector<double> raw;
  bool has_normalized = false;
  double normalized = 0.0;
};

/// Experiment result: a tagged series plus the parameters that produced it.
/// params is an ordered list so emitted reports are byte-stable.
struct EvalReport {
  std::string experiment;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<SeriesPoint> series;
};

double mean_of(std::span<const double> values);

/// Sample standard deviation (n-1 denominator); 0 for fewer than 2 values.
double sample_stddev(std::span<const double> values);

/// Builds a series point whose mean is exactly the arithmetic mean of raw.
SeriesPoint make_series_point(double x, std::vector<double> raw);

nlohmann::ordered_json report_to_json(const EvalReport& report);

}  // namespace glee
