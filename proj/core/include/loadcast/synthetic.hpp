#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "loadcast/datetime.hpp"

namespace loadcast {

/// Minute-level multi-meter load with explicit daily, weekly and seasonal
/// structure.  Per meter and minute:
///
///   base + seasonal*sin(2*pi*doy/365) + weekly*[weekday]
///        + daily*sin(2*pi*minute/1440) + N(0, noise_sd), clipped at 0,
///
/// then nulled with probability null_rate.
struct SyntheticSpec {
    CivilDate start{2015, 1, 1};
    int days = 365;
    int meters = 6;
    double base_kw = 50.0;
    double daily_amplitude = 20.0;
    double weekly_amplitude = 15.0;
    double seasonal_amplitude = 30.0;
    double noise_sd = 5.0;
    double null_rate = 0.001;
    std::uint64_t seed = 42;

    /// Throws ConfigError.
    void validate() const;
};

/// Noise-free, clip-free value of the structural formula.
double synthetic_mean(const SyntheticSpec& spec, DateTime t);

void generate_synthetic(const SyntheticSpec& spec, std::ostream& out);
std::string generate_synthetic(const SyntheticSpec& spec);

}  // namespace loadcast
