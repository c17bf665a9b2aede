#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace covkit {

// Strictly increasing list of positive k values.
class KGrid {
 public:
  explicit KGrid(std::vector<std::int64_t> ks);

  const std::vector<std::int64_t>& values() const { return ks_; }
  std::int64_t max() const { return ks_.back(); }
  std::size_t size() const { return ks_.size(); }

 private:
  std::vector<std::int64_t> ks_;
};

enum class Strategy {
  ModelSampling,
  TrainCounts,
  Mixture,
  PositiveIntegers,
  Normalized,
  RecoveredGain,
};

std::string_view strategy_name(Strategy strategy);

struct CurvePoint {
  std::int64_t k = 0;
  double value = 0.0;
};

// Ordered (k, value) pairs for one strategy over a k-grid. Values lie in
// [0, 1] for coverage strategies; Normalized may be negative and
// RecoveredGain may exceed 1 when the mixture beats pure sampling.
struct CoverageCurve {
  Strategy strategy = Strategy::ModelSampling;
  std::optional<std::int64_t> mixture_m;  // set for Mixture / RecoveredGain
  std::vector<CurvePoint> points;

  // "ModelSampling", "Mixture(M=10)", ...
  std::string label() const;
};

}  // namespace covkit
