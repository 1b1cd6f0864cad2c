#pragma once

#include <cstdint>
#include <iosfwd>

namespace bellcorr {

struct OracleCheckOptions {
    uint64_t seed = 1;
    int cases = 50;
    int max_n = 8;
};

/// Runs the cross-path battery (closed forms vs. statevector, butterfly vs.
/// naive transform, LHV vertices). Prints one line per check; returns true
/// when all pass.
bool run_oracle_check(const OracleCheckOptions &options, std::ostream &out);

}  // namespace bellcorr
