#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "lisa/ipbwt.hpp"

namespace lisa {

inline double to_double(EncodedKey v) noexcept {
  return static_cast<double>(static_cast<std::uint64_t>(v >> 64)) * 0x1p64 +
         static_cast<double>(static_cast<std::uint64_t>(v));
}

/// key - base as a real. Models see keys relative to their partition's first
/// key so that neighbouring 74-bit keys stay distinguishable in a double.
inline double key_offset(EncodedKey key, EncodedKey base) noexcept {
  return key >= base ? to_double(key - base) : -to_double(base - key);
}

struct LinearModel {
  double slope = 0.0;
  double intercept = 0.0;
  double avg_error = 0.0;  // mean |prediction - index| over the fit data

  /// clamp(round-half-up(slope * x + intercept), 0, max_index)
  std::size_t predict(double x, std::size_t max_index) const noexcept {
    const double p = std::floor(slope * x + intercept + 0.5);
    if (!(p > 0.0)) return 0;
    if (p >= static_cast<double>(max_index)) return max_index;
    return static_cast<std::size_t>(p);
  }

  bool operator==(const LinearModel&) const = default;
};

/// Least-squares fit of index ~ key over [begin, end), keys taken relative to
/// key_at(begin). Indices are the absolute positions begin..end-1, and
/// avg_error is measured with the clamped integer prediction.
template <class KeyAt>
LinearModel fit_linear(KeyAt&& key_at, std::size_t begin, std::size_t end, std::size_t max_index) {
  LinearModel model;
  const std::size_t count = end - begin;
  if (count == 0) return model;
  const EncodedKey base = key_at(begin);
  double mean_x = 0.0;
  for (std::size_t i = begin; i < end; ++i) mean_x += key_offset(key_at(i), base);
  mean_x /= static_cast<double>(count);
  const double mean_y = static_cast<double>(begin) + static_cast<double>(count - 1) / 2.0;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    const double dx = key_offset(key_at(i), base) - mean_x;
    sxx += dx * dx;
    sxy += dx * (static_cast<double>(i) - mean_y);
  }
  model.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  model.intercept = mean_y - model.slope * mean_x;

  double total = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    const std::size_t p = model.predict(key_offset(key_at(i), base), max_index);
    total += static_cast<double>(p > i ? p - i : i - p);
  }
  model.avg_error = total / static_cast<double>(count);
  return model;
}

struct Partition {
  std::size_t begin = 0;
  std::size_t end = 0;
  LinearModel model;
};

/// Splits [0, count) in halves (the left half takes the odd element) until
/// each part's fitted model has avg_error <= alpha or the part has at most two
/// elements. A split never separates equal keys: if the midpoint falls inside
/// a run of equal keys it moves to the nearest strict step, and a part with no
/// strict step is kept whole. Keys must be nondecreasing.
template <class KeyAt>
std::vector<Partition> partition_by_error(std::size_t count, KeyAt&& key_at, double alpha,
                                          std::size_t max_index) {
  std::vector<Partition> out;
  if (count == 0) return out;
  struct Span {
    std::size_t begin, end;
  };
  std::vector<Span> stack{{0, count}};
  while (!stack.empty()) {
    const Span s = stack.back();
    stack.pop_back();
    LinearModel model = fit_linear(key_at, s.begin, s.end, max_index);
    const std::size_t size = s.end - s.begin;
    std::size_t mid = 0;
    if (size > 2 && model.avg_error > alpha) {
      const std::size_t half = s.begin + (size + 1) / 2;
      for (std::size_t d = 0; mid == 0; ++d) {
        const bool left_ok = half >= s.begin + 1 + d;
        const bool right_ok = half + d < s.end;
        if (!left_ok && !right_ok) break;
        if (left_ok && key_at(half - d) != key_at(half - d - 1)) {
          mid = half - d;
        } else if (right_ok && key_at(half + d) != key_at(half + d - 1)) {
          mid = half + d;
        }
      }
    }
    if (mid == 0) {
      out.push_back({s.begin, s.end, model});
    } else {
      stack.push_back({mid, s.end});
      stack.push_back({s.begin, mid});
    }
  }
  return out;
}

std::vector<Partition> partition_by_error(std::span<const EncodedKey> keys, double alpha);

struct RmiLayer {
  std::vector<LinearModel> models;
  std::vector<EncodedKey> boundaries;  // first key of each model's partition, ascending
  std::uint64_t target_size = 0;       // entries in the array this layer predicts into

  bool operator==(const RmiLayer&) const = default;
};

/// Recursive model index built bottom-up over the IP-BWT route keys.
class Rmi {
 public:
  static constexpr double kDefaultAlphaMid = 14.0;
  static constexpr double kDefaultAlphaLeaf = 6.0;

  Rmi() = default;
  Rmi(const IpBwt& ipbwt, double alpha_mid = kDefaultAlphaMid, double alpha_leaf = kDefaultAlphaLeaf);
  /// Reassembles persisted layers (root first); validates shape.
  Rmi(std::vector<RmiLayer> layers, double alpha_mid, double alpha_leaf);

  std::span<const RmiLayer> layers() const noexcept { return layers_; }
  const RmiLayer& leaf_layer() const noexcept { return layers_.back(); }
  double alpha_mid() const noexcept { return alpha_mid_; }
  double alpha_leaf() const noexcept { return alpha_leaf_; }

  /// Leaf model responsible for `plain_key`, by descending from the root.
  std::size_t leaf_for(EncodedKey plain_key) const noexcept;
  std::size_t predict_in_leaf(std::size_t leaf, EncodedKey plain_key) const noexcept {
    const auto& layer = layers_.back();
    return layer.models[leaf].predict(key_offset(plain_key, layer.boundaries[leaf]),
                                      layer.target_size - 1);
  }
  /// IP-BWT index the model hierarchy predicts for `plain_key`, before correction.
  std::size_t predict(EncodedKey plain_key) const noexcept;

  /// f_K through the model hierarchy; always equals ipbwt.lower_bound.
  std::size_t lower_bound(const IpBwt& ipbwt, EncodedKey tagged_probe) const noexcept;
  std::size_t lower_bound(const IpBwt& ipbwt, const KmerLoc& probe) const noexcept;

  std::size_t bytes() const noexcept;

  bool operator==(const Rmi&) const = default;

 private:
  std::vector<RmiLayer> layers_;  // root first, leaf last
  double alpha_mid_ = kDefaultAlphaMid;
  double alpha_leaf_ = kDefaultAlphaLeaf;
};

}  // namespace lisa
