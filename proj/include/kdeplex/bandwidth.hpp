#pragma once

#include <string_view>
#include <vector>

#include "kdeplex/errors.hpp"

namespace kdeplex {

enum class BandwidthMethod { amise, lik, pit, complexity };

std::string_view to_string(BandwidthMethod method);
// Accepts "amise", "lik", "pit", and "c" or "complexity".
BandwidthMethod parse_bandwidth_method(std::string_view name);

// Outcome of a bandwidth selector. trace holds every (h, objective) pair the
// selector evaluated; its last entry is the selected bandwidth.
struct BandwidthResult {
    BandwidthMethod method;
    double bandwidth;
    double objective;
    std::vector<TracePoint> trace;
};

} // namespace kdeplex
