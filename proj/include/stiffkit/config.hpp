#pragma once

#include <cstdint>

namespace stiffkit {

/// Caps guarding against combinatorial blowups.
struct Limits {
  std::uint64_t size_cap = std::uint64_t{1} << 22;         // points in a constructed code
  std::uint64_t enumeration_cap = std::uint64_t{1} << 24;  // right-hand sides in a dual search

  /// Defaults, with STIFFKIT_SIZE_CAP (a positive integer) overriding both caps.
  static Limits from_env();
};

/// Process-wide limits, initialised from the environment on first use.
const Limits& default_limits();

}  // namespace stiffkit
