#pragma once

#include "blinktrack/types.hpp"

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

namespace blinktrack {

enum class GridId : std::uint8_t { G0 = 0, G1 = 1 };

struct TileRef {
    GridId grid = GridId::G0;
    std::uint16_t row = 0;
    std::uint16_t col = 0;

    friend bool operator==(const TileRef& a, const TileRef& b) {
        return a.grid == b.grid && a.row == b.row && a.col == b.col;
    }
};

/// Dual overlapping tile grids: G0 tiles the sensor with 16x16 patches of
/// ceil(width/16) x ceil(height/16) pixels; G1 is a 15x15 grid shifted by
/// half a tile in both directions, leaving a half-tile frame uncovered.
struct GridLayout {
    static constexpr int kG0Tiles = 16;
    static constexpr int kG1Tiles = 15;

    SensorGeometry geometry;
    int tile_w = 0; // ceil(width / 16)
    int tile_h = 0; // ceil(height / 16)
    int offset_x = 0;
    int offset_y = 0;

    explicit GridLayout(SensorGeometry g);

    TileRef g0_tile(std::uint16_t x, std::uint16_t y) const;
    std::optional<TileRef> g1_tile(std::uint16_t x, std::uint16_t y) const;

    /// Pixel-space center of a tile, used for candidate pairing distances.
    void tile_center(const TileRef& tile, double& cx, double& cy) const;
};

struct ActivityConfig {
    double tau_us = 50000.0;         // exponential decay constant
    std::uint64_t window_us = 250000; // correlation window T
};

/// One ring entry: event time, polarity, and the activity value right after
/// the event's increment was applied.
struct RingEntry {
    std::uint64_t t = 0;
    Polarity p = Polarity::Off;
    double activity = 0.0;
};

/// Per-tile, per-polarity exponentially decaying activity. The value is
/// stored lazily with its timestamp; decay is applied on access.
class TileActivity {
public:
    /// Applies one event: A_p <- A_p * exp(-(t - t_prev)/tau) + 1/scale.
    /// Returns the new activity for the event's polarity. The ring is pruned
    /// to [ev.t - window, ev.t].
    double update(const Event& ev, const ActivityConfig& cfg, double scale);

    /// Activity of polarity p decayed to time t; no state change.
    double sample(std::uint64_t t, Polarity p, const ActivityConfig& cfg) const;

    const std::deque<RingEntry>& ring() const { return ring_; }
    std::size_t ring_size() const { return ring_.size(); }

    double value_on() const { return a_on_; }
    double value_off() const { return a_off_; }
    std::uint64_t last_t(Polarity p) const { return p == Polarity::On ? t_on_ : t_off_; }
    bool has_events(Polarity p) const { return p == Polarity::On ? has_on_ : has_off_; }

private:
    double a_on_ = 0.0;
    double a_off_ = 0.0;
    std::uint64_t t_on_ = 0;
    std::uint64_t t_off_ = 0;
    bool has_on_ = false;
    bool has_off_ = false;
    std::deque<RingEntry> ring_;
};

/// Owns the TileActivity state for both grids of one pipeline instance.
class ActivityGrid {
public:
    ActivityGrid(SensorGeometry geometry, ActivityConfig config);

    const GridLayout& layout() const { return layout_; }
    const ActivityConfig& config() const { return config_; }

    /// Routes the event to its G0 tile and, when covered, its G1 tile.
    /// Returns the touched tiles (1 or 2).
    struct Touched {
        TileRef refs[2];
        int count = 0;
    };
    Touched update(const Event& ev, double scale);

    TileActivity& tile(const TileRef& ref);
    const TileActivity& tile(const TileRef& ref) const;

private:
    GridLayout layout_;
    ActivityConfig config_;
    std::vector<TileActivity> g0_;
    std::vector<TileActivity> g1_;
};

} // namespace blinktrack
