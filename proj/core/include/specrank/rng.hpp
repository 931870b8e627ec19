#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace specrank {

// Independent stream families carved out of one master seed. The numeric
// values are part of the reproducibility contract; do not renumber.
enum class StreamPurpose : std::uint32_t {
  kGroundTruth = 1,
  kSampling = 2,
  kStartVector = 3,
  kSeedDerivation = 4,
  kTestVector = 5,
};

// Philox4x32-10 counter-based generator. A (key, counter) pair fully
// determines the output, so any stream can be positioned without replaying
// earlier draws. Satisfies UniformRandomBitGenerator.
class Philox4x32 {
 public:
  using result_type = std::uint64_t;
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  Philox4x32(std::uint64_t key, std::uint64_t stream) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

  // Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;

  // The raw bijection, exposed for known-answer tests.
  static Block encrypt(Block counter, Key key) noexcept;

 private:
  void refill() noexcept;

  Key key_;
  std::uint64_t stream_;
  std::uint64_t position_ = 0;
  Block buffer_{};
  int buffered_ = 0;
};

Philox4x32 make_stream(std::uint64_t master_seed, StreamPurpose purpose,
                       std::uint64_t index = 0) noexcept;

// Deterministic child seed, e.g. one per Monte-Carlo trial.
std::uint64_t derive_seed(std::uint64_t master_seed,
                          std::uint64_t index) noexcept;

}  // namespace specrank
