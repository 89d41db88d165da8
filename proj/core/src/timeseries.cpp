#include "bhd/timeseries.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace bhd {

std::vector<EnvelopePeak> extract_envelope_peaks(const TimeSeries& series) {
  std::vector<EnvelopePeak> peaks;
  const auto& t = series.times;
  const auto& v = series.values;
  if (t.size() != v.size()) throw std::invalid_argument("TimeSeries: length mismatch");
  if (t.size() < 3) return peaks;

  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    double ym = std::abs(v[i - 1]);
    double y0 = std::abs(v[i]);
    double yp = std::abs(v[i + 1]);
    if (!(y0 >= ym && y0 > yp)) continue;
    // quadratic refinement through the three samples
    double denom = ym - 2.0 * y0 + yp;
    double shift = 0.0;
    if (denom < 0.0) shift = 0.5 * (ym - yp) / denom;
    shift = std::clamp(shift, -0.5, 0.5);
    double dt = 0.5 * (t[i + 1] - t[i - 1]);
    peaks.push_back({t[i] + shift * dt, y0 - 0.25 * (ym - yp) * shift});
  }
  return peaks;
}

SeriesMetrics compare_series(const TimeSeries& exact, const TimeSeries& approx,
                             double revival_period) {
  if (exact.times.size() != approx.times.size())
    throw std::invalid_argument("compare_series: time grids differ in length");
  for (std::size_t i = 0; i < exact.times.size(); ++i)
    if (exact.times[i] != approx.times[i])
      throw std::invalid_argument("compare_series: time grids differ");

  SeriesMetrics m;
  double sq = 0.0;
  for (std::size_t i = 0; i < exact.values.size(); ++i) {
    double err = exact.values[i] - approx.values[i];
    sq += err * err;
    m.max_abs_error = std::max(m.max_abs_error, std::abs(err));
  }
  if (!exact.values.empty()) m.rmse = std::sqrt(sq / static_cast<double>(exact.values.size()));

  m.exact_peaks = extract_envelope_peaks(exact);

  if (revival_period > 0.0) {
    // strongest peak near each multiple of the period
    std::map<int, EnvelopePeak> best;
    for (const auto& pk : m.exact_peaks) {
      int idx = static_cast<int>(std::lround(pk.time / revival_period));
      if (idx < 1) continue;
      auto it = best.find(idx);
      if (it == best.end() || pk.height > it->second.height) best[idx] = pk;
    }
    for (const auto& [idx, pk] : best) {
      m.revival_index.push_back(idx);
      m.revival_peak_offsets.push_back(pk.time - idx * revival_period);
    }
  }
  return m;
}

}  // namespace bhd
