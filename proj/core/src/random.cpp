#include "sentinel/random.hpp"

#include <string>
#include <utility>

#include "sentinel/errors.hpp"

namespace sentinel {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

RandomStream::RandomStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

std::uint64_t RandomStream::next_u64() { return engine_(); }

double RandomStream::next_uniform() {
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  const auto bits = engine_() >> 11;
  return (static_cast<double>(bits) + 0.5) * kScale;
}

RandomStream RandomStream::split(std::uint64_t index) const {
  return RandomStream(derive_seed(seed_, index));
}

ScriptedSource::ScriptedSource(std::vector<double> values) : values_(std::move(values)) {}

double ScriptedSource::next_uniform() {
  if (position_ >= values_.size()) {
    throw DomainError("scripted uniform source exhausted after " +
                      std::to_string(values_.size()) + " draws");
  }
  const double u = values_[position_++];
  if (!(u > 0.0 && u < 1.0)) {
    throw DomainError("scripted uniform " + std::to_string(u) + " is outside (0,1)");
  }
  return u;
}

}  // namespace sentinel
