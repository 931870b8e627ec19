#include "specrank/rng.hpp"

namespace specrank {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
constexpr int kRounds = 10;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) noexcept {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

}  // namespace

Philox4x32::Philox4x32(std::uint64_t key, std::uint64_t stream) noexcept
    : key_{static_cast<std::uint32_t>(key),
           static_cast<std::uint32_t>(key >> 32)},
      stream_(stream) {}

Philox4x32::Block Philox4x32::encrypt(Block ctr, Key key) noexcept {
  for (int round = 0; round < kRounds; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

void Philox4x32::refill() noexcept {
  const Block counter = {static_cast<std::uint32_t>(position_),
                         static_cast<std::uint32_t>(position_ >> 32),
                         static_cast<std::uint32_t>(stream_),
                         static_cast<std::uint32_t>(stream_ >> 32)};
  buffer_ = encrypt(counter, key_);
  ++position_;
  buffered_ = 2;
}

Philox4x32::result_type Philox4x32::operator()() noexcept {
  if (buffered_ == 0) refill();
  const int slot = 2 - buffered_;
  --buffered_;
  return (static_cast<std::uint64_t>(buffer_[2 * slot]) << 32) |
         buffer_[2 * slot + 1];
}

double Philox4x32::uniform() noexcept {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

Philox4x32 make_stream(std::uint64_t master_seed, StreamPurpose purpose,
                       std::uint64_t index) noexcept {
  // Top byte of the stream word carries the purpose; 56 bits for the index.
  const std::uint64_t stream =
      (static_cast<std::uint64_t>(purpose) << 56) |
      (index & ((std::uint64_t{1} << 56) - 1));
  return Philox4x32(master_seed, stream);
}

std::uint64_t derive_seed(std::uint64_t master_seed,
                          std::uint64_t index) noexcept {
  auto stream = make_stream(master_seed, StreamPurpose::kSeedDerivation, index);
  return stream();
}

}  // namespace specrank
