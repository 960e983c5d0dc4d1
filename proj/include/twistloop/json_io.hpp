#ifndef TWISTLOOP_JSON_IO_HPP
#define TWISTLOOP_JSON_IO_HPP

#include <string>

#include "twistloop/invariants.hpp"
#include "twistloop/presentation.hpp"
#include "twistloop/ring.hpp"

namespace twistloop {

// Deterministic serializations: fixed key order, shortest round-trip
// number formatting, no whitespace variation between runs.
std::string lambda0_to_json(const Lambda0Element& e);
std::string report_to_json(const InvariantReport& rep, double eps);
std::string snf_to_json(const SNFResult& s);

} // namespace twistloop

#endif
