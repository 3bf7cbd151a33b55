#pragma once

// Instance and trace files, instance generation, report lines.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "apfgrid/sim.hpp"

namespace apfgrid {

/// Input that does not follow a file format; carries the 1-based line.
class ParseError : public InvalidInstance {
public:
    ParseError(int line, const std::string& message)
        : InvalidInstance("line " + std::to_string(line) + ": " + message), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Parses and validates. Validation failures name "multiplicity",
/// "cardinality" or "symmetric initial configuration".
Instance parse_instance(std::string_view text);
std::string write_instance(const Instance& instance);

/// FNV-1a over the canonical instance text, as 16 hex digits.
std::string instance_hash(const Instance& instance);

struct GenParams {
    int k = 3;
    int max_init_w = 3;
    int max_init_h = 3;
    int max_tgt_w = 3;
    int max_tgt_h = 3;
};

/// Robots are rejection-sampled until asymmetric; targets are unconstrained.
/// Throws InvalidInstance for k = 2, k < 1, or boxes too small.
Instance generate_instance(std::uint64_t seed, const GenParams& params);

/// Draws k in [k_min, k_max] and box sides in [1, max_box] from `seed`, then
/// generates an instance, redrawing the sides when no asymmetric placement fits.
Instance generate_random_instance(std::uint64_t seed, int k_min, int k_max, int max_box);

struct TraceHeader {
    std::uint64_t seed = 0;
    std::string policy;
    std::string instance;
};

struct Trace {
    TraceHeader header;
    std::vector<SimEvent> events;
};

std::string write_trace(const Trace& trace);
/// Throws ParseError on malformed input.
Trace read_trace(std::string_view text);

std::string format_event(const SimEvent& e);
SimEvent parse_event(std::string_view line, int line_no);

/// One TAB-separated key=value line summarising a run (no trailing newline).
std::string report_line(const Instance& instance, const SchedulerPolicy& policy,
                        const RunResult& result);

/// Plain-text picture of the world, top row first: '.' empty, 'o' off,
/// 'H' head, 'T' tail, '-'/'|' a robot on an edge.
std::string ascii_dump(const Configuration& world);

}  // namespace apfgrid
