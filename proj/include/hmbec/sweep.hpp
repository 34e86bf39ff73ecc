#ifndef HMBEC_SWEEP_HPP
#define HMBEC_SWEEP_HPP

#include <map>
#include <string>
#include <vector>

namespace hmbec {

// Linear inclusive axis: count values from start to stop.
struct Axis {
    std::string name;
    double start = 0.0;
    double stop = 0.0;
    long count = 1;
};

struct SweepSpec {
    std::string target;
    std::map<std::string, double> fixed;
    std::vector<Axis> axes;  // one or two
    std::string out_path;
};

// Rows hold formatted cells; numeric cells use 17 significant digits so the
// round trip through CSV is exact for 64-bit floats. Failed cells carry a
// message in the trailing "error" column instead of being dropped.
struct SweepResult {
    std::vector<std::string> meta;     // '#'-prefixed lines above the header
    std::vector<std::string> columns;  // axis names, outputs, then "error"
    std::vector<std::vector<std::string>> rows;

    bool any_failed() const;
    bool operator==(const SweepResult&) const = default;
};

// Known targets: region, classical-energy, fidelity, expectation, threshold.
// Output is deterministic and independent of the worker count.
SweepResult run_sweep(const SweepSpec& spec, int workers);

void persist(const SweepResult& result, const std::string& path);
SweepResult load(const std::string& path);

// %.17g formatting used for every numeric cell.
std::string format_double(double x);

double axis_value(const Axis& axis, long index);

// Parse "start:stop:count" (or a bare number as a 1-point axis).
Axis parse_range(const std::string& name, const std::string& text);

}  // namespace hmbec

#endif
