#include "covkit/curve.hpp"

#include <utility>

#include "covkit/errors.hpp"

namespace covkit {

KGrid::KGrid(std::vector<std::int64_t> ks) : ks_(std::move(ks)) {
  if (ks_.empty()) throw Error("k grid is empty");
  std::int64_t previous = 0;
  for (const std::int64_t k : ks_) {
    if (k < 1) throw Error("k grid values must be positive");
    if (k <= previous) throw Error("k grid must be strictly increasing");
    previous = k;
  }
}

std::string_view strategy_name(Strategy strategy) {
  switch (strategy) {
    case Strategy::ModelSampling: return "ModelSampling";
    case Strategy::TrainCounts: return "TrainCounts";
    case Strategy::Mixture: return "Mixture";
    case Strategy::PositiveIntegers: return "PositiveIntegers";
    case Strategy::Normalized: return "Normalized";
    case Strategy::RecoveredGain: return "RecoveredGain";
  }
  return "Unknown";
}

std::string CoverageCurve::label() const {
  std::string name{strategy_name(strategy)};
  if (mixture_m && (strategy == Strategy::Mixture || strategy == Strategy::RecoveredGain))
    name += "(M=" + std::to_string(*mixture_m) + ")";
  return name;
}

}  // namespace covkit
