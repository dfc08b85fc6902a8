#include "glee/report.hpp"

#include <cmath>

namespace glee {

double mean_of(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (const double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double sample_stddev(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const double m = mean_of(values);
  double acc = 0.0;
  for (const double v : values) acc += (v - m) * (v - m);
  return std::sqrt(acc / static_cast<double>(values.size() - 1));
}

SeriesPoint make_series_point(double x, std::vector<double> raw) {
  SeriesPoint p;
  p.x = x;
  p.mean = mean_of(raw);
  p.stddev = sample_stddev(raw);
  p.raw = std::move(raw);
  return p;
}

nlohmann::ordered_json report_to_json(const EvalReport& report) {
  nlohmann::ordered_json j;
  j["experiment"] = report.experiment;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [key, value] : report.params) params[key] = value;
  j["params"] = std::move(params);
  nlohmann::ordered_json series = nlohmann::ordered_json::array();
  for (const auto& p : report.series) {
    nlohmann::ordered_json pt;
    pt["x"] = p.x;
    pt["mean"] = p.mean;
    pt["stddev"] = p.stddev;
    if (p.has_normalized) pt["normalized"] = p.normalized;
    pt["raw"] = p.raw;
    series.push_back(std::move(pt));
  }
  j["series"] = std::move(series);
  return j;
}

}  // namespace glee
