#pragma once

#include <cstdint>
#include <random>

namespace trustsim {

/// mt19937_64 behind a fixed draw discipline. std::uniform_* distributions
/// are not bit-portable across standard libraries, so the mappings from raw
/// 64-bit draws to doubles and indices are spelled out here; trajectories
/// stay byte-identical for a given seed on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform in [0, 1), 53 significant bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [0, n), n >= 1. Fixed-point multiply keeps it portable.
  std::size_t next_index(std::size_t n) {
    return static_cast<std::size_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

 private:
  std::mt19937_64 gen_;
};

/// The one generator identity configs may name.
inline constexpr const char* kSupportedRng = "mt19937_64";

}  // namespace trustsim
