#ifndef MCSA_SIGNAL_MODEL_HPP
#define MCSA_SIGNAL_MODEL_HPP

#include <cstdint>
#include <vector>

#include "mcsa/types.hpp"

namespace mcsa {

/// Electrical operating point of the machine under test.
/// k_max is the highest sideband order considered (k = 1 .. k_max).
struct MotorParams {
    double supply_freq_hz = 60.0;
    double slip = 0.0;
    int k_max = 1;
};

/// Parameters for the synthetic stator-current model
///
///   x(t) = A * (1 + sum_k m_k cos(2*pi*2*k*s*f*t + phi_k)) * cos(2*pi*f*t) + n(t)
///
/// where n(t) is white Gaussian noise with standard deviation noise_std.
/// modulation_depths and modulation_phases hold one entry per sideband
/// order, k = 1 .. motor.k_max.
struct FaultSignalConfig {
    MotorParams motor;
    double carrier_amplitude = 1.0;
    std::vector<double> modulation_depths;
    std::vector<double> modulation_phases;
    double noise_std = 0.0;
    double sample_rate_hz = 5120.0;
    double duration_s = 102.4;
    std::uint64_t rng_seed = 1;
};

/// slip = (sync_rpm - rotor_rpm) / sync_rpm.
/// Requires sync_rpm > 0 and 0 <= rotor_rpm <= sync_rpm.
double slip_from_speed(double rotor_rpm, double sync_rpm);

/// Generates round(sample_rate_hz * duration_s) samples of the model above.
/// Deterministic: the same config (including rng_seed) always produces the
/// same samples, independent of platform.
TimeSeries synthesize_fault_current(const FaultSignalConfig& config);

} // namespace mcsa

#endif
