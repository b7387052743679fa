#include "mcsa/signal_model.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace mcsa {
namespace {

// Gaussian deviates via Box-Muller on top of mt19937_64. normal_distribution
// would be simpler but its output differs between standard library
// implementations; synthesized signals must be reproducible everywhere.
class GaussianRng {
public:
    explicit GaussianRng(std::uint64_t seed) : gen_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // u1 in (0, 1], u2 in [0, 1)
        const double u1 = (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

void validate(const FaultSignalConfig& c) {
    const MotorParams& m = c.motor;
    if (!(m.supply_freq_hz > 0.0))
        throw InvalidParameter("supply frequency must be positive");
    if (!(m.slip >= 0.0 && m.slip < 1.0))
        throw InvalidParameter("slip must lie in [0, 1)");
    if (m.k_max < 1)
        throw InvalidParameter("k_max must be at least 1");
    if (!(c.sample_rate_hz > 2.0 * m.supply_freq_hz))
        throw InvalidParameter("sample rate must exceed twice the supply frequency");
    if (!(c.duration_s > 0.0))
        throw InvalidParameter("duration must be positive");
    if (!(c.carrier_amplitude >= 0.0))
        throw InvalidParameter("carrier amplitude must be non-negative");
    if (!(c.noise_std >= 0.0))
        throw InvalidParameter("noise level must be non-negative");
    const auto orders = static_cast<std::size_t>(m.k_max);
    if (c.modulation_depths.size() != orders)
        throw InvalidParameter("one modulation depth required per sideband order");
    if (c.modulation_phases.size() != orders)
        throw InvalidParameter("one modulation phase required per sideband order");
    for (double d : c.modulation_depths)
        if (!(d >= 0.0))
            throw InvalidParameter("modulation depths must be non-negative");
}

} // namespace

double slip_from_speed(double rotor_rpm, double sync_rpm) {
    if (!(sync_rpm > 0.0))
        throw InvalidParameter("synchronous speed must be positive");
    if (!(rotor_rpm >= 0.0))
        throw InvalidParameter("rotor speed must be non-negative");
    if (rotor_rpm > sync_rpm)
        throw InvalidParameter("rotor speed cannot exceed synchronous speed");
    return (sync_rpm - rotor_rpm) / sync_rpm;
}

TimeSeries synthesize_fault_current(const FaultSignalConfig& config) {
    validate(config);

    const double n_real = std::round(config.sample_rate_hz * config.duration_s);
    if (!(n_real >= 1.0))
        throw InvalidParameter("duration too short for one sample");
    const auto n = static_cast<std::size_t>(n_real);

    const double f = config.motor.supply_freq_hz;
    const double s = config.motor.slip;
    const int k_max = config.motor.k_max;
    const double two_pi = 2.0 * std::numbers::pi;

    GaussianRng noise(config.rng_seed);

    TimeSeries out;
    out.sample_rate_hz = config.sample_rate_hz;
    out.label = "synthetic fault current";
    out.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / config.sample_rate_hz;
        double envelope = 1.0;
        for (int k = 1; k <= k_max; ++k) {
            const double fm = 2.0 * k * s * f;
            envelope += config.modulation_depths[static_cast<std::size_t>(k - 1)] *
                        std::cos(two_pi * fm * t +
                                 config.modulation_phases[static_cast<std::size_t>(k - 1)]);
        }
        double x = config.carrier_amplitude * envelope * std::cos(two_pi * f * t);
        if (config.noise_std > 0.0)
            x += config.noise_std * noise.next();
        out.samples[i] = x;
    }
    return out;
}

} // namespace mcsa
