#pragma once

#include <vector>

namespace cptloc {

// Uniformly sampled real-valued time series.
struct SampledSeries {
  std::vector<double> times;
  std::vector<double> values;
};

}  // namespace cptloc
