#include "blinktrack/noise_filter.hpp"

#include <algorithm>
#include <string>

namespace blinktrack {

NoiseFilter::NoiseFilter(SensorGeometry geometry, FilterConfig config)
    : geometry_(geometry), config_(config),
      last_t_(static_cast<std::size_t>(geometry.width) * geometry.height, kNever) {
    check_geometry(geometry_);
    if (config_.radius_px < 1) {
        throw ConfigError("filter.radius_px must be >= 1");
    }
    if (config_.window_us == 0) {
        throw ConfigError("filter.window_us must be > 0");
    }
}

FilterDecision NoiseFilter::filter_event(const Event& ev) {
    if (!geometry_.contains(ev.x, ev.y)) {
        throw RangeError("filter_event: pixel (" + std::to_string(ev.x) + "," + std::to_string(ev.y)
                         + ") out of bounds");
    }
    if (!config_.enabled) {
        last_t_[static_cast<std::size_t>(ev.y) * geometry_.width + ev.x] = ev.t;
        return FilterDecision::Keep;
    }

    const int r = config_.radius_px;
    const int x0 = std::max(0, ev.x - r);
    const int x1 = std::min<int>(geometry_.width - 1, ev.x + r);
    const int y0 = std::max(0, ev.y - r);
    const int y1 = std::min<int>(geometry_.height - 1, ev.y + r);

    bool supported = false;
    for (int y = y0; y <= y1 && !supported; ++y) {
        const std::uint64_t* row = last_t_.data() + static_cast<std::size_t>(y) * geometry_.width;
        for (int x = x0; x <= x1; ++x) {
            const std::uint64_t last = row[x];
            // map entries were all written at t <= ev.t, so any set entry is
            // an earlier event, including the self pixel's
            if (last != kNever && ev.t - last <= config_.window_us) {
                supported = true;
                break;
            }
        }
    }

    if (supported || config_.update_on_drop) {
        last_t_[static_cast<std::size_t>(ev.y) * geometry_.width + ev.x] = ev.t;
    }
    return supported ? FilterDecision::Keep : FilterDecision::Drop;
}

} // namespace blinktrack
