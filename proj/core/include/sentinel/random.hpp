#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace sentinel {

// Source of uniforms on the open interval (0,1).
//
// Streams are single-owner: do not share one instance between threads.
// Parallel work derives one stream per task with derive_seed().
class UniformSource {
 public:
  virtual ~UniformSource() = default;
  virtual double next_uniform() = 0;
};

// splitmix64 finalizer over (seed, index); used to derive independent
// per-task seeds from one user seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

// Deterministic 64-bit stream (mt19937_64). The same seed yields the same
// sequence on every platform.
class RandomStream final : public UniformSource {
 public:
  explicit RandomStream(std::uint64_t seed);

  // 53 random bits mapped to (k + 0.5) / 2^53, never 0 or 1.
  double next_uniform() override;
  std::uint64_t next_u64();

  std::uint64_t seed() const noexcept { return seed_; }

  // Fresh stream seeded with derive_seed(seed(), index). Does not advance *this.
  RandomStream split(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// Replays a fixed list of uniforms, e.g. the randomizers recorded in an
// ExtremenessVector. Throws DomainError when exhausted or when a value is
// outside (0,1).
class ScriptedSource final : public UniformSource {
 public:
  explicit ScriptedSource(std::vector<double> values);

  double next_uniform() override;
  std::size_t consumed() const noexcept { return position_; }

 private:
  std::vector<double> values_;
  std::size_t position_ = 0;
};

}  // namespace sentinel
