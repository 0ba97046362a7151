#pragma once

// Failure/restore event logs -> ReliabilityStats.
//
// CSV layout:
//   # start=0
//   # end=300
//   timestamp,kind
//   100,failure
//   110,restore
//
// Timestamps are opaque decimal hours. The system is taken to be up at the
// start of the observation window.

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "fuzzavail/availability.hpp"
#include "fuzzavail/diagnostic.hpp"

namespace fuzzavail {

enum class EventKind { failure, restore };

struct EventRecord {
    double timestamp = 0.0;
    EventKind kind = EventKind::failure;

    friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

class Timeline {
public:
    // Throws Error("invalid-timeline") when the invariants do not hold:
    // start <= end, timestamps strictly increasing inside the window, and
    // kinds alternating from failure.
    Timeline(double observation_start, double observation_end, std::vector<EventRecord> events);

    double observation_start() const { return start_; }
    double observation_end() const { return end_; }
    const std::vector<EventRecord>& events() const { return events_; }

private:
    double start_;
    double end_;
    std::vector<EventRecord> events_;
};

struct WindowOverride {
    std::optional<double> start;
    std::optional<double> end;
};

struct EventParseResult {
    std::optional<Timeline> timeline;
    Diagnostics diagnostics;
};

// Window bounds in `window` take precedence over "# start=" / "# end="
// comment lines. Every problem is reported as a located diagnostic.
EventParseResult parse_events(std::string_view csv, const WindowOverride& window = {});

// Segment bookkeeping behind the stats; uptime + downtime spans the window.
struct UptimeBreakdown {
    double uptime = 0.0;
    double completed_repair_time = 0.0;
    double open_downtime = 0.0;  // trailing failure without a restore
    std::size_t completed_repairs = 0;
};

UptimeBreakdown breakdown(const Timeline& timeline);

// MTBF = uptime / failures; MTR = mean completed repair. A trailing
// unrestored failure counts as a failure and raises "incomplete-repair".
ReliabilityStats compute_stats(const Timeline& timeline, Diagnostics* notes = nullptr);

}  // namespace fuzzavail
