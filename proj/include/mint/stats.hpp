#pragma once

#include <atomic>
#include <cstdint>

namespace mint::stats {

// Global counters for the always-on theorem checks. Violations throw, so the
// counters only ever record how many checks ran; a suite that finishes with
// nonzero counts has exercised the corresponding assertions.

inline std::atomic<std::uint64_t> augmentations_checked{0};
inline std::atomic<std::uint64_t> arc_preservation_arcs_checked{0};
inline std::atomic<std::uint64_t> span_equalities_checked{0};
inline std::atomic<std::uint64_t> nice_extension_checks{0};
inline std::atomic<std::uint64_t> aug_nice_checks{0};
inline std::atomic<std::uint64_t> wave_oracle_fallbacks{0};

struct Snapshot {
  std::uint64_t augmentations_checked;
  std::uint64_t arc_preservation_arcs_checked;
  std::uint64_t span_equalities_checked;
  std::uint64_t nice_extension_checks;
  std::uint64_t aug_nice_checks;
  std::uint64_t wave_oracle_fallbacks;
};

inline Snapshot snapshot() {
  return Snapshot{
      augmentations_checked.load(),      arc_preservation_arcs_checked.load(),
      span_equalities_checked.load(),    nice_extension_checks.load(),
      aug_nice_checks.load(),            wave_oracle_fallbacks.load(),
  };
}

inline void reset() {
  augmentations_checked = 0;
  arc_preservation_arcs_checked = 0;
  span_equalities_checked = 0;
  nice_extension_checks = 0;
  aug_nice_checks = 0;
  wave_oracle_fallbacks = 0;
}

}  // namespace mint::stats
