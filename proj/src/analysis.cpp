#include "mcsa/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace mcsa {
namespace {

TimeSeries truncate_to_power_of_two(TimeSeries t) {
    const std::size_t n = std::bit_floor(t.size());
    if (n < 2)
        throw EmptyOutput("pipeline: decimated record too short to transform");
    t.samples.resize(n);
    return t;
}

void validate_motor(const MotorParams& motor) {
    if (!(motor.supply_freq_hz > 0.0))
        throw InvalidParameter("supply frequency must be positive");
    if (!(motor.slip >= 0.0 && motor.slip < 1.0))
        throw InvalidParameter("slip must lie in [0, 1)");
    if (motor.k_max < 1)
        throw InvalidParameter("k_max must be at least 1");
    if (!(2.0 * motor.k_max * motor.slip < 1.0))
        throw InvalidParameter("2 * k_max * slip must stay below 1 so the lower "
                               "sideband keeps a positive frequency");
}

} // namespace

std::vector<FaultSignature> fault_frequencies(const MotorParams& motor) {
    validate_motor(motor);
    std::vector<FaultSignature> out;
    out.reserve(static_cast<std::size_t>(motor.k_max));
    for (int k = 1; k <= motor.k_max; ++k) {
        const double shift = 2.0 * k * motor.slip;
        FaultSignature sig;
        sig.order = k;
        sig.lower_sideband_hz = (1.0 - shift) * motor.supply_freq_hz;
        sig.upper_sideband_hz = (1.0 + shift) * motor.supply_freq_hz;
        sig.envelope_hz = shift * motor.supply_freq_hz;
        out.push_back(sig);
    }
    return out;
}

PeakReading extract_peak(const Spectrum& spectrum, double target_hz,
                         double window_hz) {
    if (spectrum.magnitudes.empty())
        throw InvalidParameter("extract_peak: empty spectrum");
    const double bw = spectrum.bin_width_hz;
    if (!(bw > 0.0))
        throw InvalidParameter("extract_peak: bin width must be positive");
    if (!(window_hz >= bw))
        throw InvalidParameter("extract_peak: window narrower than one bin");
    if (!(target_hz >= 0.0))
        throw InvalidParameter("extract_peak: target frequency must be non-negative");
    const double nyquist = spectrum.source_rate_hz / 2.0;
    if (target_hz + window_hz > nyquist)
        throw InvalidParameter("extract_peak: search window extends past the "
                               "Nyquist frequency");

    // Inclusive bin range covering [target - window, target + window]; the
    // small slack keeps boundary bins inside under rounding.
    const double lo_f = (target_hz - window_hz) / bw;
    const double hi_f = (target_hz + window_hz) / bw;
    const auto last = static_cast<double>(spectrum.magnitudes.size() - 1);
    const std::size_t lo =
        static_cast<std::size_t>(std::max(0.0, std::ceil(lo_f - 1e-9)));
    const std::size_t hi =
        static_cast<std::size_t>(std::min(last, std::floor(hi_f + 1e-9)));

    std::size_t best = lo;
    for (std::size_t k = lo + 1; k <= hi; ++k)
        if (spectrum.magnitudes[k] > spectrum.magnitudes[best])
            best = k;

    PeakReading peak;
    peak.target_hz = target_hz;
    peak.found_hz = static_cast<double>(best) * bw;
    peak.magnitude = spectrum.magnitudes[best];
    return peak;
}

double spectrum_error(const Spectrum& reference, const Spectrum& test,
                      std::span<const double> targets_hz, double window_hz) {
    if (targets_hz.empty())
        throw InvalidParameter("spectrum_error: no target frequencies");
    const double bw = reference.bin_width_hz;
    if (std::abs(test.bin_width_hz - bw) > 1e-9 * std::max(bw, test.bin_width_hz))
        throw InvalidParameter("spectrum_error: spectra have different bin widths");

    double sum = 0.0;
    for (double target : targets_hz) {
        const PeakReading ref = extract_peak(reference, target, window_hz);
        const PeakReading got = extract_peak(test, target, window_hz);
        if (ref.magnitude == 0.0)
            throw UndefinedReference("spectrum_error: reference magnitude is zero at " +
                                     std::to_string(target) + " Hz");
        sum += 100.0 * std::abs(got.magnitude - ref.magnitude) / ref.magnitude;
    }
    return sum / static_cast<double>(targets_hz.size());
}

PipelineResult run_pipeline(const TimeSeries& signal,
                            const PipelineConfig& config) {
    if (config.decimation_factor < 1 ||
        !is_power_of_two(static_cast<std::uint64_t>(config.decimation_factor)))
        throw InvalidParameter("pipeline: decimation factor must be a power of two");

    const FilterKernel kernel =
        design_bandpass(config.band_low_hz, config.band_high_hz,
                        signal.sample_rate_hz, config.num_taps);
    TimeSeries stage = apply_filter(signal, kernel);
    stage = decimate(stage, config.decimation_factor, config.decimation_mode);
    stage = truncate_to_power_of_two(std::move(stage));
    if (config.droop_compensation &&
        config.decimation_mode == DecimationMode::block_mean &&
        config.decimation_factor > 1)
        stage = equalize_block_mean_droop(stage, config.decimation_factor);
    stage = hilbert_envelope(stage);
    stage = remove_dc(stage);

    PipelineResult result;
    result.spectrum = amplitude_spectrum(stage, &result.final_fft_ops);
    return result;
}

SweepReport decimation_sweep(const TimeSeries& signal, const MotorParams& motor,
                             const SweepConfig& config) {
    if (!(config.tolerance_pct > 0.0))
        throw InvalidParameter("sweep: tolerance must be positive");
    if (config.max_exponent < 1 || config.max_exponent > 30)
        throw InvalidParameter("sweep: max exponent must lie in [1, 30]");
    if (!(config.peak_window_hz > 0.0))
        throw InvalidParameter("sweep: peak window must be positive");

    SweepReport report;
    report.tolerance_pct = config.tolerance_pct;
    report.max_exponent = config.max_exponent;
    report.peak_window_hz = config.peak_window_hz;
    for (const FaultSignature& sig : fault_frequencies(motor))
        report.targets_hz.push_back(sig.envelope_hz);

    // The band-pass runs once at the original rate; every factor shares it.
    const FilterKernel kernel =
        design_bandpass(config.band_low_hz, config.band_high_hz,
                        signal.sample_rate_hz, config.num_taps);
    const TimeSeries filtered = apply_filter(signal, kernel);

    const auto stage_spectrum = [&](int factor) {
        TimeSeries stage = decimate(filtered, factor, config.decimation_mode);
        stage = truncate_to_power_of_two(std::move(stage));
        if (config.droop_compensation &&
            config.decimation_mode == DecimationMode::block_mean && factor > 1)
            stage = equalize_block_mean_droop(stage, factor);
        stage = hilbert_envelope(stage);
        stage = remove_dc(stage);
        return amplitude_spectrum(stage);
    };

    report.reference = stage_spectrum(1);
    for (double target : report.targets_hz) {
        const PeakReading peak =
            extract_peak(report.reference, target, config.peak_window_hz);
        if (peak.magnitude == 0.0)
            throw UndefinedReference("sweep: reference peak magnitude is zero at " +
                                     std::to_string(target) + " Hz");
        report.reference_peaks.push_back(peak);
    }
    const double ref_bw = report.reference.bin_width_hz;

    report.max_safe_factor = 1;
    for (int e = 1; e <= config.max_exponent; ++e) {
        const int factor = 1 << e;

        SweepRow row;
        row.factor = factor;
        row.mean_error_pct = std::numeric_limits<double>::quiet_NaN();
        row.spectrum = stage_spectrum(factor);

        const double nyquist = row.spectrum.source_rate_hz / 2.0;
        for (double target : report.targets_hz)
            if (target + config.peak_window_hz > nyquist)
                row.target_beyond_nyquist = true;

        if (!row.target_beyond_nyquist) {
            double sum = 0.0;
            for (std::size_t i = 0; i < report.targets_hz.size(); ++i) {
                const PeakReading peak = extract_peak(
                    row.spectrum, report.targets_hz[i], config.peak_window_hz);
                row.peaks.push_back(peak);
                sum += 100.0 *
                       std::abs(peak.magnitude - report.reference_peaks[i].magnitude) /
                       report.reference_peaks[i].magnitude;
                if (std::abs(peak.found_hz - peak.target_hz) >
                    ref_bw * (1.0 + 1e-9))
                    row.peak_displaced = true;
            }
            row.mean_error_pct = sum / static_cast<double>(report.targets_hz.size());
            row.passed = !row.peak_displaced &&
                         row.mean_error_pct <= config.tolerance_pct;
        }

        const bool passed = row.passed;
        if (passed)
            report.max_safe_factor = factor;
        report.rows.push_back(std::move(row));
        if (!passed)
            break;
    }
    return report;
}

} // namespace mcsa
