#include "sgc/keyspace.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "sgc/error.hpp"

namespace sgc {

Relabeling Relabeling::identity(int receivers) {
  std::vector<int> image(static_cast<std::size_t>(receivers));
  std::iota(image.begin(), image.end(), 1);
  return Relabeling(std::move(image));
}

Relabeling::Relabeling(std::vector<int> image) : image_(std::move(image)) {
  std::vector<int> sorted = image_;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != static_cast<int>(i) + 1) throw InvalidConfig("relabeling is not a permutation of 1..K");
  }
}

ReceiverSet Relabeling::operator()(ReceiverSet s) const {
  ReceiverSet out;
  for (int k : s.members()) out = out.with((*this)(k));
  return out;
}

Relabeling Relabeling::inverse() const {
  std::vector<int> inv(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) inv[static_cast<std::size_t>(image_[i] - 1)] = static_cast<int>(i) + 1;
  return Relabeling(std::move(inv));
}

bool Relabeling::is_identity() const {
  for (std::size_t i = 0; i < image_.size(); ++i)
    if (image_[i] != static_cast<int>(i) + 1) return false;
  return true;
}

KeyConfig::KeyConfig(int receivers, ReceiverSet qualified, const std::map<ReceiverSet, Symbols>& keys)
    : receivers_(receivers), qualified_(qualified) {
  if (receivers < 2 || receivers > kMaxReceivers) {
    throw InvalidConfig("K = " + std::to_string(receivers) + " outside [2, " + std::to_string(kMaxReceivers) + "]");
  }
  const ReceiverSet all = ReceiverSet::range(receivers);
  if (!qualified.subset_of(all)) throw InvalidConfig("qualified set " + qualified.to_string() + " outside [1..K]");
  if (qualified.empty() || qualified == all) {
    throw InvalidConfig("need 1 <= |qualified| <= K-1, got " + std::to_string(qualified.size()));
  }
  for (const auto& [key, size] : keys) {
    if (key.empty()) throw InvalidConfig("empty key subset");
    if (!key.subset_of(all)) throw InvalidConfig("key subset " + key.to_string() + " outside [1..K]");
    if (size < 0) throw InvalidConfig("negative size for key " + key.to_string());
    if (size > 0) keys_.emplace(key, size);
  }
}

Symbols KeyConfig::size_of(ReceiverSet key) const {
  auto it = keys_.find(key);
  return it == keys_.end() ? 0 : it->second;
}

Symbols KeyConfig::total_symbols() const {
  Symbols total = 0;
  for (const auto& [key, size] : keys_) total += size;
  return total;
}

std::vector<ReceiverSet> KeyConfig::keys_of(int k) const {
  std::vector<ReceiverSet> out;
  for (const auto& [key, size] : keys_)
    if (key.contains(k)) out.push_back(key);
  return out;
}

KeyConfig KeyConfig::scaled(Symbols factor) const {
  std::map<ReceiverSet, Symbols> keys;
  for (const auto& [key, size] : keys_) keys.emplace(key, size * factor);
  return KeyConfig(receivers_, qualified_, keys);
}

KeyConfig KeyConfig::relabeled(const Relabeling& r) const {
  if (r.receivers() != receivers_) throw InvalidConfig("relabeling size differs from K");
  std::map<ReceiverSet, Symbols> keys;
  for (const auto& [key, size] : keys_) keys.emplace(r(key), size);
  return KeyConfig(receivers_, r(qualified_), keys);
}

KeyConfig KeyConfig::without_useless_keys() const {
  const ReceiverSet eves = eavesdroppers();
  std::map<ReceiverSet, Symbols> keys;
  for (const auto& [key, size] : keys_) {
    if (!key.intersects(qualified_) || eves.subset_of(key)) continue;
    keys.emplace(key, size);
  }
  return KeyConfig(receivers_, qualified_, keys);
}

KeyCollection KeyCollection::whole(std::span<const ReceiverSet> keys) {
  KeyCollection c;
  for (auto k : keys) c.add_whole(k);
  return c;
}

KeyCollection KeyCollection::held_by(const KeyConfig& config, int k) {
  const auto keys = config.keys_of(k);
  return whole(keys);
}

KeyCollection& KeyCollection::add_whole(ReceiverSet key) {
  if (std::find(whole_.begin(), whole_.end(), key) == whole_.end()) whole_.push_back(key);
  return *this;
}

KeyCollection& KeyCollection::add(ReceiverSet key, SymbolRange range) {
  if (range.begin < 0 || range.end <= range.begin) {
    throw InvalidConfig("invalid symbol range [" + std::to_string(range.begin) + ", " + std::to_string(range.end) +
                        ") of key " + key.to_string());
  }
  ranges_[key].push_back(range);
  return *this;
}

Symbols KeyCollection::covered(ReceiverSet key, Symbols size) const {
  if (std::find(whole_.begin(), whole_.end(), key) != whole_.end()) return size;
  auto it = ranges_.find(key);
  if (it == ranges_.end()) return 0;
  std::vector<SymbolRange> rs = it->second;
  for (const auto& r : rs) {
    if (r.end > size) {
      throw InvalidConfig("range end " + std::to_string(r.end) + " exceeds size " + std::to_string(size) + " of key " +
                          key.to_string());
    }
  }
  std::sort(rs.begin(), rs.end(), [](const SymbolRange& a, const SymbolRange& b) { return a.begin < b.begin; });
  Symbols total = 0, reach = 0;
  for (const auto& r : rs) {
    const Symbols from = std::max(r.begin, reach);
    if (r.end > from) total += r.end - from;
    reach = std::max(reach, r.end);
  }
  return total;
}

Symbols entropy_of(const KeyConfig& config, ReceiverSet receivers, const KeyCollection& given) {
  Symbols h = 0;
  for (const auto& [key, size] : config.keys())
    if (key.intersects(receivers)) h += size - given.covered(key, size);
  return h;
}

Symbols mutual_info(const KeyConfig& config, ReceiverSet a, ReceiverSet b, const KeyCollection& given) {
  Symbols i = 0;
  for (const auto& [key, size] : config.keys())
    if (key.intersects(a) && key.intersects(b)) i += size - given.covered(key, size);
  return i;
}

std::optional<std::vector<Symbols>> symmetric_profile(const KeyConfig& config) {
  const int k = config.receivers();
  std::vector<Symbols> profile(static_cast<std::size_t>(k) + 1, -1);
  profile[0] = 0;
  for (auto u : nonempty_subsets(config.all_receivers())) {
    const Symbols size = config.size_of(u);
    auto& slot = profile[static_cast<std::size_t>(u.size())];
    if (slot < 0) {
      slot = size;
    } else if (slot != size) {
      return std::nullopt;
    }
  }
  return profile;
}

bool is_symmetric(const KeyConfig& config) { return symmetric_profile(config).has_value(); }

namespace {

Normalized normalize_multicast_k4(const KeyConfig& config) {
  const int eve = config.eavesdroppers().members().front();
  const KeyCollection eve_keys = KeyCollection::held_by(config, eve);
  std::vector<int> q = config.qualified().members();
  // Stable: ties keep the smaller label first.
  const auto first = *std::min_element(q.begin(), q.end(), [&](int a, int b) {
    return entropy_of(config, ReceiverSet::single(a), eve_keys) < entropy_of(config, ReceiverSet::single(b), eve_keys);
  });
  std::erase(q, first);
  int second = q[0], third = q[1];
  if (config.size_of(ReceiverSet{first, third}) < config.size_of(ReceiverSet{first, second})) std::swap(second, third);

  std::vector<int> image(4);
  image[static_cast<std::size_t>(first - 1)] = 1;
  image[static_cast<std::size_t>(second - 1)] = 2;
  image[static_cast<std::size_t>(third - 1)] = 3;
  image[static_cast<std::size_t>(eve - 1)] = 4;
  Relabeling r(std::move(image));
  return {config.relabeled(r), r};
}

Normalized normalize_groupcast_2of4(const KeyConfig& config) {
  const auto q = config.qualified().members();
  const auto e = config.eavesdroppers().members();
  int q1 = q[0], q2 = q[1];
  if (config.size_of(ReceiverSet::single(q2)) < config.size_of(ReceiverSet::single(q1))) std::swap(q1, q2);
  // Eavesdropper relabeled 4 shares the smaller triple key with {q1, q2}.
  int e3 = e[0], e4 = e[1];
  if (config.size_of(config.qualified().with(e3)) < config.size_of(config.qualified().with(e4))) std::swap(e3, e4);

  std::vector<int> image(4);
  image[static_cast<std::size_t>(q1 - 1)] = 1;
  image[static_cast<std::size_t>(q2 - 1)] = 2;
  image[static_cast<std::size_t>(e3 - 1)] = 3;
  image[static_cast<std::size_t>(e4 - 1)] = 4;
  Relabeling r(std::move(image));
  return {config.relabeled(r), r};
}

}  // namespace

Normalized normalize_labels(const KeyConfig& config, NormalForm form) {
  const int k = config.receivers();
  const int n = config.qualified().size();
  switch (form) {
    case NormalForm::multicast_k4:
      if (k != 4 || n != 3) {
        throw WrongShape("multicast K=4 form needs K=4, N=3; got K=" + std::to_string(k) + ", N=" + std::to_string(n));
      }
      return normalize_multicast_k4(config);
    case NormalForm::groupcast_2of4:
      if (k != 4 || n != 2) {
        throw WrongShape("2-of-4 form needs K=4, N=2; got K=" + std::to_string(k) + ", N=" + std::to_string(n));
      }
      return normalize_groupcast_2of4(config);
  }
  throw WrongShape("unknown normal form");
}

}  // namespace sgc
