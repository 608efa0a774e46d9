#include "blinktrack/activity.hpp"

#include <cmath>
#include <string>

namespace blinktrack {

GridLayout::GridLayout(SensorGeometry g) : geometry(g) {
    check_geometry(g);
    tile_w = (g.width + kG0Tiles - 1) / kG0Tiles;
    tile_h = (g.height + kG0Tiles - 1) / kG0Tiles;
    offset_x = tile_w / 2;
    offset_y = tile_h / 2;
}

TileRef GridLayout::g0_tile(std::uint16_t x, std::uint16_t y) const {
    if (!geometry.contains(x, y)) {
        throw RangeError("tiles_of: pixel (" + std::to_string(x) + "," + std::to_string(y) + ") out of bounds");
    }
    return TileRef{GridId::G0, static_cast<std::uint16_t>(y / tile_h), static_cast<std::uint16_t>(x / tile_w)};
}

std::optional<TileRef> GridLayout::g1_tile(std::uint16_t x, std::uint16_t y) const {
    if (!geometry.contains(x, y)) {
        throw RangeError("tiles_of: pixel (" + std::to_string(x) + "," + std::to_string(y) + ") out of bounds");
    }
    const int sx = static_cast<int>(x) - offset_x;
    const int sy = static_cast<int>(y) - offset_y;
    if (sx < 0 || sy < 0 || sx >= kG1Tiles * tile_w || sy >= kG1Tiles * tile_h) {
        return std::nullopt;
    }
    return TileRef{GridId::G1, static_cast<std::uint16_t>(sy / tile_h), static_cast<std::uint16_t>(sx / tile_w)};
}

void GridLayout::tile_center(const TileRef& tile, double& cx, double& cy) const {
    const double ox = tile.grid == GridId::G1 ? offset_x : 0.0;
    const double oy = tile.grid == GridId::G1 ? offset_y : 0.0;
    cx = ox + tile.col * tile_w + tile_w / 2.0;
    cy = oy + tile.row * tile_h + tile_h / 2.0;
}

double TileActivity::update(const Event& ev, const ActivityConfig& cfg, double scale) {
    double& value = ev.p == Polarity::On ? a_on_ : a_off_;
    std::uint64_t& last = ev.p == Polarity::On ? t_on_ : t_off_;
    bool& has = ev.p == Polarity::On ? has_on_ : has_off_;

    if (has) {
        if (ev.t < last) {
            throw OrderError("activity update at t=" + std::to_string(ev.t)
                             + " behind last event t=" + std::to_string(last));
        }
        value *= std::exp(-static_cast<double>(ev.t - last) / cfg.tau_us);
    }
    value += 1.0 / scale;
    last = ev.t;
    has = true;

    ring_.push_back(RingEntry{ev.t, ev.p, value});
    const std::uint64_t horizon = ev.t >= cfg.window_us ? ev.t - cfg.window_us : 0;
    while (!ring_.empty() && ring_.front().t < horizon) {
        ring_.pop_front();
    }
    return value;
}

double TileActivity::sample(std::uint64_t t, Polarity p, const ActivityConfig& cfg) const {
    if (!has_events(p)) {
        return 0.0;
    }
    const std::uint64_t last = last_t(p);
    const double value = p == Polarity::On ? a_on_ : a_off_;
    if (t == last) {
        return value;
    }
    return value * std::exp(-static_cast<double>(t - last) / cfg.tau_us);
}

ActivityGrid::ActivityGrid(SensorGeometry geometry, ActivityConfig config)
    : layout_(geometry), config_(config),
      g0_(GridLayout::kG0Tiles * GridLayout::kG0Tiles),
      g1_(GridLayout::kG1Tiles * GridLayout::kG1Tiles) {
    if (config_.tau_us <= 0.0) {
        throw ConfigError("activity.tau_us must be > 0");
    }
    if (config_.window_us == 0) {
        throw ConfigError("activity.window_us must be > 0");
    }
}

ActivityGrid::Touched ActivityGrid::update(const Event& ev, double scale) {
    Touched touched;
    const TileRef t0 = layout_.g0_tile(ev.x, ev.y);
    tile(t0).update(ev, config_, scale);
    touched.refs[touched.count++] = t0;
    if (const auto t1 = layout_.g1_tile(ev.x, ev.y)) {
        tile(*t1).update(ev, config_, scale);
        touched.refs[touched.count++] = *t1;
    }
    return touched;
}

TileActivity& ActivityGrid::tile(const TileRef& ref) {
    if (ref.grid == GridId::G0) {
        return g0_[ref.row * GridLayout::kG0Tiles + ref.col];
    }
    return g1_[ref.row * GridLayout::kG1Tiles + ref.col];
}

const TileActivity& ActivityGrid::tile(const TileRef& ref) const {
    return const_cast<ActivityGrid*>(this)->tile(ref);
}

} // namespace blinktrack
