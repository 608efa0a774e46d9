#pragma once

#include "blinktrack/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace blinktrack {

/// One manually annotated blink: center time and eye-center pixel.
struct BlinkAnnotation {
    std::uint64_t t = 0;
    std::uint16_t x = 0;
    std::uint16_t y = 0;
};

struct AnnotatedStream {
    std::vector<Event> events; // time-ordered
    std::vector<BlinkAnnotation> annotations;
};

struct ModelBuildConfig {
    std::uint64_t rt_us = 100;        // lattice sample period
    std::uint64_t window_us = 250000; // model duration T
    double tau_us = 50000.0;
    int smooth_half_width = 25;       // centered moving average, samples
    double alpha = 0.5;               // ON weight in the combined score
};

/// Canonical blink signature: per-polarity activity curves sampled on a
/// uniform lattice, plus the typical per-window event count and ON/OFF
/// weight used by the correlator.
struct BlinkModel {
    std::uint64_t rt_us = 100;
    std::uint64_t duration_us = 250000;
    double tau_us = 50000.0;
    double alpha = 0.5;
    double events_per_us = 0.0; // N: mean window event count / T, at scale 1
    std::vector<double> samples_on;
    std::vector<double> samples_off;

    // derived, recomputed by finalize()
    double energy_on = 0.0;
    double energy_off = 0.0;

    std::size_t lattice_size() const { return (duration_us + rt_us - 1) / rt_us; }

    /// Nearest-lattice-sample lookup; 0 outside [0, duration).
    double evaluate(std::int64_t lag_us, Polarity p) const;

    /// Recomputes energies and validates invariants.
    void finalize();
};

/// Averages per-annotation activity windows into a model. Windows are
/// centered on the annotation time and span one tile size spatially.
BlinkModel build_model(const std::vector<AnnotatedStream>& streams, const ModelBuildConfig& cfg,
                       SensorGeometry geometry);

// Model files are versioned JSON ("BLKM" v1) with full-precision floats.
void save_model(const BlinkModel& model, std::ostream& out);
BlinkModel load_model(std::istream& in);
void save_model_file(const BlinkModel& model, const std::string& path);
BlinkModel load_model_file(const std::string& path);

/// Annotation CSV: header-optional lines "t_us,x,y".
std::vector<BlinkAnnotation> read_annotations(std::istream& in);
std::vector<BlinkAnnotation> read_annotations_file(const std::string& path);

inline constexpr int kModelVersion = 1;

} // namespace blinktrack
