#pragma once

#include <cstdint>

namespace filldist {

/// One step of the splitmix64 output function.  Used both to seed
/// substreams and as the mixing primitive for child-seed derivation.
std::uint64_t splitmix64(std::uint64_t& state);

/// Derives a child seed from (parent, index) so that distinct indices
/// give statistically independent streams and the derivation is a pure
/// function of its arguments.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index);

/// Deterministic uniform generator.  All distribution transforms are
/// spelled out here rather than taken from <random>, whose
/// distribution objects are implementation-defined; output must be
/// byte-identical across standard libraries.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return splitmix64(state_); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; draws are consumed in pairs and
  /// the spare is cached.
  double normal();

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace filldist
