#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace blinktrack {

/// Change-event polarity: ON = luminance increase, OFF = decrease.
enum class Polarity : std::uint8_t { Off = 0, On = 1 };

inline const char* to_string(Polarity p) { return p == Polarity::On ? "ON" : "OFF"; }

/// One camera event: pixel coordinates, microsecond timestamp, polarity.
struct Event {
    std::uint16_t x = 0;
    std::uint16_t y = 0;
    std::uint64_t t = 0; // microseconds
    Polarity p = Polarity::Off;

    friend bool operator==(const Event& a, const Event& b) {
        return a.x == b.x && a.y == b.y && a.t == b.t && a.p == b.p;
    }
};

struct SensorGeometry {
    std::uint16_t width = 304;
    std::uint16_t height = 240;

    bool contains(std::uint16_t x, std::uint16_t y) const { return x < width && y < height; }

    friend bool operator==(const SensorGeometry& a, const SensorGeometry& b) {
        return a.width == b.width && a.height == b.height;
    }
};

// Minimum sensor size that still yields non-empty tiles on a 16x16 grid.
inline constexpr std::uint16_t kMinSensorSide = 32;

inline void check_geometry(const SensorGeometry& g) {
    if (g.width < kMinSensorSide || g.height < kMinSensorSide) {
        throw std::invalid_argument("sensor geometry must be at least 32x32, got "
                                    + std::to_string(g.width) + "x" + std::to_string(g.height));
    }
}

struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RangeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OrderError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SceneError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace blinktrack
