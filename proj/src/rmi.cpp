#include "lisa/rmi.hpp"

#include <algorithm>
#include <string>

#include "lisa/detail/partition_point.hpp"
#include "lisa/error.hpp"

namespace lisa {

std::vector<Partition> partition_by_error(std::span<const EncodedKey> keys, double alpha) {
  return partition_by_error(
      keys.size(), [&](std::size_t i) { return keys[i]; }, alpha,
      keys.empty() ? 0 : keys.size() - 1);
}

namespace {

RmiLayer make_layer(const std::vector<Partition>& parts, std::uint64_t target_size,
                    const auto& key_at) {
  RmiLayer layer;
  layer.target_size = target_size;
  layer.models.reserve(parts.size());
  layer.boundaries.reserve(parts.size());
  for (const auto& p : parts) {
    layer.models.push_back(p.model);
    layer.boundaries.push_back(key_at(p.begin));
  }
  return layer;
}

}  // namespace

Rmi::Rmi(const IpBwt& ipbwt, double alpha_mid, double alpha_leaf)
    : alpha_mid_(alpha_mid), alpha_leaf_(alpha_leaf) {
  if (!(alpha_mid > 0.0) || !(alpha_leaf > 0.0)) throw ParameterError("alpha must be positive");
  if (ipbwt.size() == 0) throw ParameterError("cannot build an RMI over an empty IP-BWT");

  auto route = [&](std::size_t i) { return ipbwt.route_key(i); };
  std::vector<RmiLayer> bottom_up;
  bottom_up.push_back(make_layer(partition_by_error(ipbwt.size(), route, alpha_leaf, ipbwt.size() - 1),
                                 ipbwt.size(), route));

  while (bottom_up.back().models.size() > 1) {
    const std::vector<EncodedKey> keys = bottom_up.back().boundaries;
    auto at = [&](std::size_t i) { return keys[i]; };
    bottom_up.push_back(
        make_layer(partition_by_error(keys.size(), at, alpha_mid, keys.size() - 1), keys.size(), at));
  }
  layers_.assign(std::make_move_iterator(bottom_up.rbegin()), std::make_move_iterator(bottom_up.rend()));
}

Rmi::Rmi(std::vector<RmiLayer> layers, double alpha_mid, double alpha_leaf)
    : layers_(std::move(layers)), alpha_mid_(alpha_mid), alpha_leaf_(alpha_leaf) {
  if (layers_.empty()) throw CorruptIndexError("rmi", "no layers");
  if (layers_.front().models.size() != 1) throw CorruptIndexError("rmi", "root layer must hold one model");
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const auto& layer = layers_[l];
    if (layer.models.empty() || layer.models.size() != layer.boundaries.size()) {
      throw CorruptIndexError("rmi", "layer " + std::to_string(l) + " model/boundary count mismatch");
    }
    if (layer.target_size == 0) throw CorruptIndexError("rmi", "empty target in layer " + std::to_string(l));
    if (l + 1 < layers_.size() && layer.target_size != layers_[l + 1].models.size()) {
      throw CorruptIndexError("rmi", "layer " + std::to_string(l) + " target size mismatch");
    }
    for (std::size_t j = 1; j < layer.boundaries.size(); ++j) {
      if (layer.boundaries[j] <= layer.boundaries[j - 1]) {
        throw CorruptIndexError("rmi", "boundaries not increasing in layer " + std::to_string(l));
      }
    }
  }
}

std::size_t Rmi::leaf_for(EncodedKey plain_key) const noexcept {
  std::size_t model = 0;
  for (std::size_t l = 0; l + 1 < layers_.size(); ++l) {
    const auto& layer = layers_[l];
    const auto& below = layers_[l + 1].boundaries;
    const std::size_t guess =
        layer.models[model].predict(key_offset(plain_key, layer.boundaries[model]), layer.target_size - 1);
    // first boundary above the key; the owning partition is the one before it
    auto above = [&](std::size_t j) { return below[j] <= plain_key; };
    const std::size_t pp = l == 0 ? detail::exponential_partition_point(guess, below.size(), above)
                                  : detail::linear_partition_point(guess, below.size(), above);
    model = pp == 0 ? 0 : pp - 1;
  }
  return model;
}

std::size_t Rmi::predict(EncodedKey plain_key) const noexcept {
  return predict_in_leaf(leaf_for(plain_key), plain_key);
}

std::size_t Rmi::lower_bound(const IpBwt& ipbwt, EncodedKey tagged_probe) const noexcept {
  const EncodedKey plain = tagged::plain(tagged_probe);
  if (layers_.size() == 1) return ipbwt.exponential_lower_bound(predict_in_leaf(0, plain), tagged_probe);
  return ipbwt.linear_lower_bound(predict(plain), tagged_probe);
}

std::size_t Rmi::lower_bound(const IpBwt& ipbwt, const KmerLoc& probe) const noexcept {
  return lower_bound(ipbwt, tagged::make(encode_key(probe.kmer, probe.loc, ipbwt.k()), probe.kmer.sentinel));
}

std::size_t Rmi::bytes() const noexcept {
  std::size_t total = 0;
  for (const auto& l : layers_) {
    total += l.models.size() * sizeof(LinearModel) + l.boundaries.size() * sizeof(EncodedKey);
  }
  return total;
}

}  // namespace lisa
