#ifndef MCSA_ANALYSIS_HPP
#define MCSA_ANALYSIS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "mcsa/dsp.hpp"
#include "mcsa/signal_model.hpp"
#include "mcsa/types.hpp"

namespace mcsa {

/// Broken-bar signature of order k: the stator sidebands (1 -/+ 2ks)f and
/// the line 2ksf that the same asymmetry puts into the current envelope.
struct FaultSignature {
    int order = 0;
    double lower_sideband_hz = 0.0;
    double upper_sideband_hz = 0.0;
    double envelope_hz = 0.0;
};

struct PeakReading {
    double target_hz = 0.0;
    double found_hz = 0.0;
    double magnitude = 0.0;
};

/// Spectral fingerprint for orders k = 1 .. motor.k_max.
/// Requires supply_freq_hz > 0, slip in [0, 1), k_max >= 1, and
/// 2 * k_max * slip < 1 so the lower sideband stays at positive frequency.
std::vector<FaultSignature> fault_frequencies(const MotorParams& motor);

/// Largest magnitude bin with centre frequency in
/// [target - window, target + window], ties resolved to the lower frequency.
/// Requires window >= bin width and target + window within the spectrum's
/// Nyquist range.
PeakReading extract_peak(const Spectrum& spectrum, double target_hz,
                         double window_hz);

/// Mean over targets of the percentage magnitude deviation
/// 100 * |test - ref| / ref, each magnitude read with extract_peak.
/// Both spectra must share a bin width; every reference peak must be
/// non-zero.
double spectrum_error(const Spectrum& reference, const Spectrum& test,
                      std::span<const double> targets_hz, double window_hz);

struct PipelineConfig {
    double band_low_hz = 40.0;
    double band_high_hz = 70.0;
    int num_taps = 513;
    int decimation_factor = 1;
    DecimationMode decimation_mode = DecimationMode::block_mean;
    /// Equalize the block-mean passband droop after decimation. Without it
    /// the decimation itself attenuates the band of interest and magnitudes
    /// are not comparable across factors.
    bool droop_compensation = true;
};

struct PipelineResult {
    Spectrum spectrum;
    OpCount final_fft_ops;
};

/// Envelope-spectrum pipeline: band-pass, decimate, truncate to a power of
/// two, (optionally) equalize droop, Hilbert envelope, remove DC, amplitude
/// spectrum. decimation_factor must be a power of two.
PipelineResult run_pipeline(const TimeSeries& signal,
                            const PipelineConfig& config);

struct SweepConfig {
    double tolerance_pct = 1.0;
    int max_exponent = 6;
    double band_low_hz = 40.0;
    double band_high_hz = 70.0;
    int num_taps = 513;
    double peak_window_hz = 0.5;
    DecimationMode decimation_mode = DecimationMode::block_mean;
    bool droop_compensation = true;
};

struct SweepRow {
    int factor = 0;
    /// Mean percentage deviation from the reference peaks; NaN when the row
    /// failed before the comparison could run.
    double mean_error_pct = 0.0;
    bool passed = false;
    bool peak_displaced = false;
    bool target_beyond_nyquist = false;
    std::vector<PeakReading> peaks;
    Spectrum spectrum;
};

struct SweepReport {
    double tolerance_pct = 0.0;
    int max_exponent = 0;
    double peak_window_hz = 0.0;
    std::vector<double> targets_hz;
    Spectrum reference;
    std::vector<PeakReading> reference_peaks;
    std::vector<SweepRow> rows;
    int max_safe_factor = 1;
};

/// Runs the pipeline at factor 1 as the reference, then at factors
/// 2, 4, ..., 2^max_exponent, stopping at the first factor that fails.
/// A factor fails when the mean peak error exceeds tolerance_pct, when a
/// peak lands more than one reference bin away from its target, or when a
/// target plus the search window no longer fits under the decimated Nyquist
/// frequency. max_safe_factor is the last passing factor (1 if none pass).
/// The targets are the envelope lines of fault_frequencies(motor); every
/// reference peak must be non-zero.
SweepReport decimation_sweep(const TimeSeries& signal,
                             const MotorParams& motor,
                             const SweepConfig& config);

} // namespace mcsa

#endif
