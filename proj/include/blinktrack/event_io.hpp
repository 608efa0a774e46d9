#pragma once

#include "blinktrack/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace blinktrack {

enum class StreamFormat { Csv, Evb1 };

/// Stream health counters. Violations are counted, never thrown, so dirty
/// recordings can be triaged before running the pipeline.
struct ValidationReport {
    std::uint64_t event_count = 0;
    std::uint64_t first_t = 0;
    std::uint64_t last_t = 0;
    std::uint64_t on_count = 0;
    std::uint64_t off_count = 0;
    std::uint64_t out_of_range = 0;
    std::uint64_t order_violations = 0;
};

/// Sequential event source. next() yields events in file order until empty.
class EventReader {
public:
    virtual ~EventReader() = default;
    virtual std::optional<Event> next() = 0;
    virtual SensorGeometry geometry() const = 0;
};

// CSV: header-optional lines "t,x,y,p" with t in decimal microseconds and
// p in {0,1}, 1 = ON. Geometry comes from the caller.
//
// EVB1 binary: magic "EVB1", width:u16 LE, height:u16 LE, then 13-byte
// records t:u64 LE, x:u16 LE, y:u16 LE, p:u8 (1 = ON). Total length must be
// exactly 8 + 13*n bytes.

std::unique_ptr<EventReader> make_csv_reader(std::unique_ptr<std::istream> in, SensorGeometry geometry);
std::unique_ptr<EventReader> make_evb1_reader(std::unique_ptr<std::istream> in);

/// Opens a reader for a file path. When `format` is empty, detects EVB1 by
/// magic and falls back to CSV. `csv_geometry` applies to CSV sources only.
std::unique_ptr<EventReader> open_events(const std::string& path,
                                         std::optional<StreamFormat> format,
                                         SensorGeometry csv_geometry);

std::vector<Event> read_all(EventReader& reader);

void write_csv(std::ostream& out, const std::vector<Event>& events, SensorGeometry geometry);
void write_evb1(std::ostream& out, const std::vector<Event>& events, SensorGeometry geometry);
void write_events(const std::string& path, StreamFormat format, const std::vector<Event>& events,
                  SensorGeometry geometry);

ValidationReport validate_stream(EventReader& reader);

inline constexpr std::size_t kEvb1HeaderBytes = 8;
inline constexpr std::size_t kEvb1RecordBytes = 13;

} // namespace blinktrack
