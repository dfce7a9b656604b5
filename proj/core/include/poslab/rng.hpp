#pragma once

#include <array>
#include <cstdint>

namespace poslab {

std::uint64_t splitmix64(std::uint64_t& state);

// Seed of the stream (seed, stream_id); used to fill the xoshiro state.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream_id);

// xoshiro256** keyed by (seed, stream_id). Single owner, never shared across threads.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();
  double uniform();   // in (0,1)
  double normal();    // Box-Muller, pairs cached

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }
  std::uint64_t draws() const { return draws_; }

 private:
  std::array<std::uint64_t, 4> s_{};
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t draws_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace poslab
