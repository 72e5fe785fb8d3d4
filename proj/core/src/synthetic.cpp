#include "loadcast/synthetic.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "loadcast/error.hpp"
#include "loadcast/random.hpp"

namespace loadcast {

void SyntheticSpec::validate() const {
    if (days < 1) throw ConfigError("synthetic: days must be >= 1");
    if (meters < 1) throw ConfigError("synthetic: meters must be >= 1");
    if (start.month < 1 || start.month > 12 || start.day < 1 || start.day > days_in_month(start.year, start.month)) {
        throw ConfigError("synthetic: invalid start date");
    }
    for (double a : {base_kw, daily_amplitude, weekly_amplitude, seasonal_amplitude, noise_sd}) {
        if (!(a >= 0.0) || !std::isfinite(a)) throw ConfigError("synthetic: amplitudes must be finite and >= 0");
    }
    if (!(null_rate >= 0.0 && null_rate < 1.0)) throw ConfigError("synthetic: null rate must lie in [0,1)");
}

double synthetic_mean(const SyntheticSpec& spec, DateTime t) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const int doy = day_of_year(t.date());
    const bool weekday_flag = weekday(t.days_since_epoch()) < 5;
    return spec.base_kw + spec.seasonal_amplitude * std::sin(two_pi * doy / 365.0) +
           (weekday_flag ? spec.weekly_amplitude : 0.0) +
           spec.daily_amplitude * std::sin(two_pi * t.minute_of_day() / static_cast<double>(kMinutesPerDay));
}

void generate_synthetic(const SyntheticSpec& spec, std::ostream& out) {
    spec.validate();
    auto rng = keyed_stream(spec.seed, 0);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    out << "timestamp";
    for (int m = 1; m <= spec.meters; ++m) out << ",meter_" << m;
    out << '\n';

    const DateTime start = DateTime::from_civil(spec.start);
    const std::int64_t minutes = static_cast<std::int64_t>(spec.days) * kMinutesPerDay;
    std::string line;
    char buf[64];
    for (std::int64_t i = 0; i < minutes; ++i) {
        const DateTime t = start.plus_minutes(i);
        const double mean = synthetic_mean(spec, t);
        line = t.to_string();
        for (int m = 0; m < spec.meters; ++m) {
            // Always draw both variates so the stream layout is fixed.
            const double z = noise(rng);
            const bool drop = coin(rng) < spec.null_rate;
            line.push_back(',');
            if (drop) continue;
            const double v = std::max(0.0, mean + spec.noise_sd * z);
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 3);
            if (ec != std::errc{}) throw InvariantError("synthetic: formatting failed");
            line.append(buf, ptr);
        }
        line.push_back('\n');
        out << line;
    }
}

std::string generate_synthetic(const SyntheticSpec& spec) {
    std::ostringstream out;
    generate_synthetic(spec, out);
    return out.str();
}

}  // namespace loadcast
