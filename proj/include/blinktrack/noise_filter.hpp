#pragma once

#include "blinktrack/types.hpp"

#include <cstdint>
#include <vector>

namespace blinktrack {

struct FilterConfig {
    int radius_px = 2;                  // Chebyshev neighborhood radius
    std::uint64_t window_us = 10000;    // max age of a supporting event
    bool enabled = true;
    bool update_on_drop = true;         // dropped events still stamp the map
};

enum class FilterDecision { Keep, Drop };

/// Drops events that lack a second event within `radius_px` pixels
/// (Chebyshev) and `window_us` microseconds. Support is polarity-agnostic.
class NoiseFilter {
public:
    NoiseFilter(SensorGeometry geometry, FilterConfig config);

    /// Decides KEEP/DROP for `ev` and stamps the per-pixel timestamp map.
    /// Events must arrive in non-decreasing time order.
    FilterDecision filter_event(const Event& ev);

    const FilterConfig& config() const { return config_; }

private:
    SensorGeometry geometry_;
    FilterConfig config_;
    std::vector<std::uint64_t> last_t_; // row-major, kNever = no event yet

    static constexpr std::uint64_t kNever = ~0ull;
};

} // namespace blinktrack
