#pragma once

#include <string>
#include <vector>

namespace bhd {

/// Sampled real observable on a strictly increasing time grid (units 1/J).
struct TimeSeries {
  std::vector<double> times;
  std::vector<double> values;
  std::string label;
};

struct EnvelopePeak {
  double time = 0.0;
  double height = 0.0;
};

/// Local maxima of |values| with quadratic refinement through the three
/// samples around each maximum. The grid must resolve the rapid oscillation
/// (>= 40 samples per Rabi period for Bose-Hubbard signals).
std::vector<EnvelopePeak> extract_envelope_peaks(const TimeSeries& series);

struct SeriesMetrics {
  double rmse = 0.0;
  double max_abs_error = 0.0;
  std::vector<EnvelopePeak> exact_peaks;        // peaks of |exact|
  std::vector<int> revival_index;               // m per offset entry
  std::vector<double> revival_peak_offsets;     // strongest peak time - m*T_R
};

/// Pointwise error metrics plus the envelope-peak structure of the first
/// series. revival_period > 0 additionally groups peaks by the nearest
/// multiple of the period and reports per-revival peak-time offsets.
/// Throws std::invalid_argument on mismatched time grids.
SeriesMetrics compare_series(const TimeSeries& exact, const TimeSeries& approx,
                             double revival_period = 0.0);

}  // namespace bhd
