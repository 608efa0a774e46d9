#include "blinktrack/event_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace blinktrack {

namespace {

std::uint16_t load_u16le(const unsigned char* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint64_t load_u64le(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) {
        v = (v << 8) | p[i];
    }
    return v;
}

void store_u16le(unsigned char* p, std::uint16_t v) {
    p[0] = static_cast<unsigned char>(v & 0xff);
    p[1] = static_cast<unsigned char>(v >> 8);
}

void store_u64le(unsigned char* p, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        p[i] = static_cast<unsigned char>(v & 0xff);
        v >>= 8;
    }
}

// Locale-independent unsigned integer field parser.
template <typename T>
T parse_field(const std::string& line, std::size_t begin, std::size_t end, std::size_t line_no,
              const char* what) {
    T value{};
    auto [ptr, ec] = std::from_chars(line.data() + begin, line.data() + end, value);
    if (ec != std::errc{} || ptr != line.data() + end) {
        throw ParseError("line " + std::to_string(line_no) + ": bad " + what + " field '"
                         + line.substr(begin, end - begin) + "'");
    }
    return value;
}

class CsvReader final : public EventReader {
public:
    CsvReader(std::unique_ptr<std::istream> in, SensorGeometry geometry)
        : in_(std::move(in)), geometry_(geometry) {
        check_geometry(geometry_);
    }

    std::optional<Event> next() override {
        std::string line;
        while (std::getline(*in_, line)) {
            ++line_no_;
            if (!line.empty() && line.back() == '\r') {
                line.pop_back();
            }
            if (line.empty()) {
                continue;
            }
            if (line_no_ == 1 && (line[0] < '0' || line[0] > '9')) {
                continue; // header line
            }
            return parse_line(line);
        }
        return std::nullopt;
    }

    SensorGeometry geometry() const override { return geometry_; }

private:
    Event parse_line(const std::string& line) {
        std::array<std::size_t, 3> commas{};
        std::size_t n = 0;
        for (std::size_t i = 0; i < line.size() && n < 3; ++i) {
            if (line[i] == ',') {
                commas[n++] = i;
            }
        }
        if (n != 3) {
            throw ParseError("line " + std::to_string(line_no_) + ": expected 't,x,y,p', got '" + line + "'");
        }
        Event ev;
        ev.t = parse_field<std::uint64_t>(line, 0, commas[0], line_no_, "t");
        ev.x = parse_field<std::uint16_t>(line, commas[0] + 1, commas[1], line_no_, "x");
        ev.y = parse_field<std::uint16_t>(line, commas[1] + 1, commas[2], line_no_, "y");
        const auto p = parse_field<unsigned>(line, commas[2] + 1, line.size(), line_no_, "p");
        if (p > 1) {
            throw ParseError("line " + std::to_string(line_no_) + ": polarity must be 0 or 1, got "
                             + std::to_string(p));
        }
        ev.p = p == 1 ? Polarity::On : Polarity::Off;
        return ev;
    }

    std::unique_ptr<std::istream> in_;
    SensorGeometry geometry_;
    std::size_t line_no_ = 0;
};

class Evb1Reader final : public EventReader {
public:
    explicit Evb1Reader(std::unique_ptr<std::istream> in) : in_(std::move(in)) {
        unsigned char header[kEvb1HeaderBytes];
        in_->read(reinterpret_cast<char*>(header), sizeof(header));
        if (in_->gcount() != static_cast<std::streamsize>(sizeof(header))
            || std::memcmp(header, "EVB1", 4) != 0) {
            throw FormatError("not an EVB1 stream (bad magic or truncated header)");
        }
        geometry_.width = load_u16le(header + 4);
        geometry_.height = load_u16le(header + 6);
        check_geometry(geometry_);
    }

    std::optional<Event> next() override {
        unsigned char rec[kEvb1RecordBytes];
        in_->read(reinterpret_cast<char*>(rec), sizeof(rec));
        const auto got = in_->gcount();
        if (got == 0) {
            return std::nullopt;
        }
        if (got != static_cast<std::streamsize>(sizeof(rec))) {
            throw FormatError("truncated EVB1 record at byte offset "
                              + std::to_string(kEvb1HeaderBytes + record_index_ * kEvb1RecordBytes)
                              + " (stream length must be 8 + 13*n)");
        }
        ++record_index_;
        Event ev;
        ev.t = load_u64le(rec);
        ev.x = load_u16le(rec + 8);
        ev.y = load_u16le(rec + 10);
        if (rec[12] > 1) {
            throw ParseError("record " + std::to_string(record_index_ - 1) + ": polarity byte must be 0 or 1");
        }
        ev.p = rec[12] == 1 ? Polarity::On : Polarity::Off;
        return ev;
    }

    SensorGeometry geometry() const override { return geometry_; }

private:
    std::unique_ptr<std::istream> in_;
    SensorGeometry geometry_;
    std::uint64_t record_index_ = 0;
};

} // namespace

std::unique_ptr<EventReader> make_csv_reader(std::unique_ptr<std::istream> in, SensorGeometry geometry) {
    return std::make_unique<CsvReader>(std::move(in), geometry);
}

std::unique_ptr<EventReader> make_evb1_reader(std::unique_ptr<std::istream> in) {
    return std::make_unique<Evb1Reader>(std::move(in));
}

std::unique_ptr<EventReader> open_events(const std::string& path,
                                         std::optional<StreamFormat> format,
                                         SensorGeometry csv_geometry) {
    auto file = std::make_unique<std::ifstream>(path, std::ios::binary);
    if (!file->is_open()) {
        throw FormatError("cannot open '" + path + "'");
    }
    if (!format) {
        char magic[4] = {};
        file->read(magic, 4);
        const bool evb1 = file->gcount() == 4 && std::memcmp(magic, "EVB1", 4) == 0;
        file->clear();
        file->seekg(0);
        format = evb1 ? StreamFormat::Evb1 : StreamFormat::Csv;
    }
    if (*format == StreamFormat::Evb1) {
        return make_evb1_reader(std::move(file));
    }
    return make_csv_reader(std::move(file), csv_geometry);
}

std::vector<Event> read_all(EventReader& reader) {
    std::vector<Event> events;
    while (auto ev = reader.next()) {
        events.push_back(*ev);
    }
    return events;
}

namespace {

void check_in_bounds(const Event& ev, const SensorGeometry& g) {
    if (!g.contains(ev.x, ev.y)) {
        throw RangeError("event (" + std::to_string(ev.x) + "," + std::to_string(ev.y)
                         + ") outside sensor " + std::to_string(g.width) + "x" + std::to_string(g.height));
    }
}

} // namespace

void write_csv(std::ostream& out, const std::vector<Event>& events, SensorGeometry geometry) {
    check_geometry(geometry);
    out << "t,x,y,p\n";
    char buf[64];
    for (const auto& ev : events) {
        check_in_bounds(ev, geometry);
        const int n = std::snprintf(buf, sizeof(buf), "%llu,%u,%u,%u\n",
                                    static_cast<unsigned long long>(ev.t), ev.x, ev.y,
                                    ev.p == Polarity::On ? 1u : 0u);
        out.write(buf, n);
    }
}

void write_evb1(std::ostream& out, const std::vector<Event>& events, SensorGeometry geometry) {
    check_geometry(geometry);
    unsigned char header[kEvb1HeaderBytes] = {'E', 'V', 'B', '1'};
    store_u16le(header + 4, geometry.width);
    store_u16le(header + 6, geometry.height);
    out.write(reinterpret_cast<const char*>(header), sizeof(header));
    unsigned char rec[kEvb1RecordBytes];
    for (const auto& ev : events) {
        check_in_bounds(ev, geometry);
        store_u64le(rec, ev.t);
        store_u16le(rec + 8, ev.x);
        store_u16le(rec + 10, ev.y);
        rec[12] = ev.p == Polarity::On ? 1 : 0;
        out.write(reinterpret_cast<const char*>(rec), sizeof(rec));
    }
}

void write_events(const std::string& path, StreamFormat format, const std::vector<Event>& events,
                  SensorGeometry geometry) {
    std::ofstream out(path, std::ios::binary);
    if (!out.is_open()) {
        throw FormatError("cannot open '" + path + "' for writing");
    }
    if (format == StreamFormat::Evb1) {
        write_evb1(out, events, geometry);
    } else {
        write_csv(out, events, geometry);
    }
    if (!out) {
        throw FormatError("write to '" + path + "' failed");
    }
}

ValidationReport validate_stream(EventReader& reader) {
    ValidationReport report;
    const auto geometry = reader.geometry();
    std::uint64_t prev_t = 0;
    bool first = true;
    while (auto ev = reader.next()) {
        ++report.event_count;
        if (first) {
            report.first_t = ev->t;
            first = false;
        } else if (ev->t < prev_t) {
            ++report.order_violations;
        }
        prev_t = ev->t;
        report.last_t = ev->t;
        if (ev->p == Polarity::On) {
            ++report.on_count;
        } else {
            ++report.off_count;
        }
        if (!geometry.contains(ev->x, ev->y)) {
            ++report.out_of_range;
        }
    }
    return report;
}

} // namespace blinktrack
