#include "kdeplex/bandwidth.hpp"

#include <string>

namespace kdeplex {

std::string_view to_string(BandwidthMethod method) {
    switch (method) {
    case BandwidthMethod::amise: return "amise";
    case BandwidthMethod::lik: return "lik";
    case BandwidthMethod::pit: return "pit";
    case BandwidthMethod::complexity: return "c";
    }
    return "unknown";
}

BandwidthMethod parse_bandwidth_method(std::string_view name) {
    if (name == "amise") return BandwidthMethod::amise;
    if (name == "lik") return BandwidthMethod::lik;
    if (name == "pit") return BandwidthMethod::pit;
    if (name == "c" || name == "complexity") return BandwidthMethod::complexity;
    throw InvalidInput("unknown bandwidth method '" + std::string(name) + "'");
}

} // namespace kdeplex
