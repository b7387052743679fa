#include "mcsa.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <string>
#include <utility>
#include <vector>

#include "mcsa/analysis.hpp"
#include "mcsa/bench.hpp"
#include "mcsa/dsp.hpp"
#include "mcsa/signal_model.hpp"
#include "mcsa/types.hpp"

struct mcsa_series {
    mcsa::TimeSeries ts;
};

struct mcsa_filter {
    mcsa::FilterKernel kernel;
};

struct mcsa_spectrum {
    mcsa::Spectrum spectrum;
};

struct mcsa_sweep_report {
    mcsa::SweepReport report;
};

struct mcsa_cost_table {
    std::vector<mcsa::CostRow> rows;
};

namespace {

thread_local std::string g_last_error;

void set_error(std::string message) { g_last_error = std::move(message); }

mcsa_status map_code(mcsa::ErrorCode code) {
    switch (code) {
    case mcsa::ErrorCode::invalid_parameter: return MCSA_ERROR_INVALID_PARAMETER;
    case mcsa::ErrorCode::invalid_length: return MCSA_ERROR_INVALID_LENGTH;
    case mcsa::ErrorCode::empty_output: return MCSA_ERROR_EMPTY_OUTPUT;
    case mcsa::ErrorCode::undefined_reference: return MCSA_ERROR_UNDEFINED_REFERENCE;
    }
    return MCSA_ERROR_INTERNAL;
}

template <typename Fn>
mcsa_status guarded(Fn&& fn) noexcept {
    try {
        fn();
        g_last_error.clear();
        return MCSA_OK;
    } catch (const mcsa::Error& e) {
        set_error(e.what());
        return map_code(e.code());
    } catch (const std::exception& e) {
        set_error(e.what());
        return MCSA_ERROR_INTERNAL;
    } catch (...) {
        set_error("unknown failure");
        return MCSA_ERROR_INTERNAL;
    }
}

mcsa_status null_pointer(const char* what) {
    set_error(std::string(what) + ": null pointer argument");
    return MCSA_ERROR_NULL_POINTER;
}

mcsa_op_count to_c(const mcsa::OpCount& ops) {
    return mcsa_op_count{ops.complex_multiplications, ops.complex_additions,
                         ops.total()};
}

mcsa::MotorParams to_motor(const mcsa_motor_params& m) {
    return mcsa::MotorParams{m.supply_freq_hz, m.slip, m.k_max};
}

mcsa::DecimationMode to_mode(int32_t mode) {
    switch (mode) {
    case MCSA_DECIMATE_BLOCK_MEAN: return mcsa::DecimationMode::block_mean;
    case MCSA_DECIMATE_KEEP_FIRST: return mcsa::DecimationMode::keep_first;
    default:
        throw mcsa::InvalidParameter("unknown decimation mode " + std::to_string(mode));
    }
}

} // namespace

extern "C" {

const char* mcsa_version(void) { return "0.1.0"; }

const char* mcsa_status_name(mcsa_status status) {
    switch (status) {
    case MCSA_OK: return "ok";
    case MCSA_ERROR_NULL_POINTER: return "null pointer";
    case MCSA_ERROR_INVALID_PARAMETER: return "invalid parameter";
    case MCSA_ERROR_INVALID_LENGTH: return "invalid length";
    case MCSA_ERROR_EMPTY_OUTPUT: return "empty output";
    case MCSA_ERROR_UNDEFINED_REFERENCE: return "undefined reference";
    case MCSA_ERROR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* mcsa_last_error_message(void) { return g_last_error.c_str(); }

/* ---- time series ---- */

mcsa_status mcsa_series_create(const double* samples, size_t n,
                               double sample_rate_hz, mcsa_series** out) {
    if (!samples || !out)
        return null_pointer("mcsa_series_create");
    return guarded([&] {
        if (n == 0)
            throw mcsa::InvalidParameter("series needs at least one sample");
        if (!(sample_rate_hz > 0.0))
            throw mcsa::InvalidParameter("sample rate must be positive");
        auto* handle = new mcsa_series;
        handle->ts.samples.assign(samples, samples + n);
        handle->ts.sample_rate_hz = sample_rate_hz;
        *out = handle;
    });
}

void mcsa_series_free(mcsa_series* series) { delete series; }

size_t mcsa_series_length(const mcsa_series* series) {
    return series ? series->ts.size() : 0;
}

double mcsa_series_sample_rate_hz(const mcsa_series* series) {
    return series ? series->ts.sample_rate_hz : 0.0;
}

const double* mcsa_series_data(const mcsa_series* series) {
    return series ? series->ts.samples.data() : nullptr;
}

/* ---- signal model ---- */

mcsa_status mcsa_slip_from_speed(double rotor_rpm, double sync_rpm,
                                 double* out_slip) {
    if (!out_slip)
        return null_pointer("mcsa_slip_from_speed");
    return guarded([&] { *out_slip = mcsa::slip_from_speed(rotor_rpm, sync_rpm); });
}

void mcsa_synth_config_init(mcsa_synth_config* config) {
    if (!config)
        return;
    std::memset(config, 0, sizeof(*config));
    config->motor.supply_freq_hz = 60.0;
    config->motor.slip = 0.036111;
    config->motor.k_max = 1;
    config->carrier_amplitude = 1.0;
    config->noise_std = 0.005;
    config->sample_rate_hz = 5120.0;
    config->duration_s = 102.4;
    config->rng_seed = 1;
}

mcsa_status mcsa_synthesize(const mcsa_synth_config* config, mcsa_series** out) {
    if (!config || !out)
        return null_pointer("mcsa_synthesize");
    return guarded([&] {
        if (config->motor.k_max >= 1 &&
            (!config->modulation_depths || !config->modulation_phases))
            throw mcsa::InvalidParameter(
                "modulation depth and phase arrays are required");
        const auto orders = static_cast<std::size_t>(config->motor.k_max);
        mcsa::FaultSignalConfig cfg;
        cfg.motor = to_motor(config->motor);
        cfg.carrier_amplitude = config->carrier_amplitude;
        cfg.modulation_depths.assign(config->modulation_depths,
                                     config->modulation_depths + orders);
        cfg.modulation_phases.assign(config->modulation_phases,
                                     config->modulation_phases + orders);
        cfg.noise_std = config->noise_std;
        cfg.sample_rate_hz = config->sample_rate_hz;
        cfg.duration_s = config->duration_s;
        cfg.rng_seed = config->rng_seed;
        auto* handle = new mcsa_series{mcsa::synthesize_fault_current(cfg)};
        *out = handle;
    });
}

/* ---- dsp ---- */

mcsa_status mcsa_design_bandpass(double low_cutoff_hz, double high_cutoff_hz,
                                 double sample_rate_hz, int32_t num_taps,
                                 mcsa_filter** out) {
    if (!out)
        return null_pointer("mcsa_design_bandpass");
    return guarded([&] {
        *out = new mcsa_filter{mcsa::design_bandpass(low_cutoff_hz, high_cutoff_hz,
                                                     sample_rate_hz, num_taps)};
    });
}

void mcsa_filter_free(mcsa_filter* filter) { delete filter; }

size_t mcsa_filter_num_taps(const mcsa_filter* filter) {
    return filter ? filter->kernel.taps.size() : 0;
}

const double* mcsa_filter_taps(const mcsa_filter* filter) {
    return filter ? filter->kernel.taps.data() : nullptr;
}

mcsa_status mcsa_apply_filter(const mcsa_series* series,
                              const mcsa_filter* filter, mcsa_series** out) {
    if (!series || !filter || !out)
        return null_pointer("mcsa_apply_filter");
    return guarded([&] {
        *out = new mcsa_series{mcsa::apply_filter(series->ts, filter->kernel)};
    });
}

mcsa_status mcsa_decimate(const mcsa_series* series, int32_t factor,
                          int32_t mode, mcsa_series** out) {
    if (!series || !out)
        return null_pointer("mcsa_decimate");
    return guarded([&] {
        *out = new mcsa_series{mcsa::decimate(series->ts, factor, to_mode(mode))};
    });
}

mcsa_status mcsa_block_mean_gain(double freq_hz, int32_t factor,
                                 double output_rate_hz, double* out_gain) {
    if (!out_gain)
        return null_pointer("mcsa_block_mean_gain");
    return guarded([&] {
        *out_gain = mcsa::block_mean_gain(freq_hz, factor, output_rate_hz);
    });
}

mcsa_status mcsa_fft(const double* in_re, const double* in_im, size_t n,
                     double* out_re, double* out_im, mcsa_op_count* out_ops) {
    if (!in_re || !in_im || !out_re || !out_im)
        return null_pointer("mcsa_fft");
    return guarded([&] {
        mcsa::ComplexSeries input;
        input.values.resize(n);
        for (size_t i = 0; i < n; ++i)
            input.values[i] = {in_re[i], in_im[i]};
        auto [transformed, ops] = mcsa::fft(input);
        for (size_t i = 0; i < n; ++i) {
            out_re[i] = transformed.values[i].real();
            out_im[i] = transformed.values[i].imag();
        }
        if (out_ops)
            *out_ops = to_c(ops);
    });
}

mcsa_status mcsa_inverse_fft(const double* in_re, const double* in_im, size_t n,
                             double* out_re, double* out_im) {
    if (!in_re || !in_im || !out_re || !out_im)
        return null_pointer("mcsa_inverse_fft");
    return guarded([&] {
        mcsa::ComplexSeries input;
        input.values.resize(n);
        for (size_t i = 0; i < n; ++i)
            input.values[i] = {in_re[i], in_im[i]};
        const mcsa::ComplexSeries back = mcsa::inverse_fft(input);
        for (size_t i = 0; i < n; ++i) {
            out_re[i] = back.values[i].real();
            out_im[i] = back.values[i].imag();
        }
    });
}

mcsa_status mcsa_hilbert_envelope(const mcsa_series* series, mcsa_series** out) {
    if (!series || !out)
        return null_pointer("mcsa_hilbert_envelope");
    return guarded([&] {
        *out = new mcsa_series{mcsa::hilbert_envelope(series->ts)};
    });
}

mcsa_status mcsa_remove_dc(const mcsa_series* series, mcsa_series** out) {
    if (!series || !out)
        return null_pointer("mcsa_remove_dc");
    return guarded([&] { *out = new mcsa_series{mcsa::remove_dc(series->ts)}; });
}

mcsa_status mcsa_amplitude_spectrum(const mcsa_series* series,
                                    mcsa_spectrum** out,
                                    mcsa_op_count* out_ops) {
    if (!series || !out)
        return null_pointer("mcsa_amplitude_spectrum");
    return guarded([&] {
        mcsa::OpCount ops;
        auto* handle =
            new mcsa_spectrum{mcsa::amplitude_spectrum(series->ts, &ops)};
        *out = handle;
        if (out_ops)
            *out_ops = to_c(ops);
    });
}

void mcsa_spectrum_free(mcsa_spectrum* spectrum) { delete spectrum; }

size_t mcsa_spectrum_num_bins(const mcsa_spectrum* spectrum) {
    return spectrum ? spectrum->spectrum.magnitudes.size() : 0;
}

double mcsa_spectrum_bin_width_hz(const mcsa_spectrum* spectrum) {
    return spectrum ? spectrum->spectrum.bin_width_hz : 0.0;
}

double mcsa_spectrum_source_rate_hz(const mcsa_spectrum* spectrum) {
    return spectrum ? spectrum->spectrum.source_rate_hz : 0.0;
}

uint64_t mcsa_spectrum_source_len(const mcsa_spectrum* spectrum) {
    return spectrum ? spectrum->spectrum.source_len : 0;
}

const double* mcsa_spectrum_magnitudes(const mcsa_spectrum* spectrum) {
    return spectrum ? spectrum->spectrum.magnitudes.data() : nullptr;
}

/* ---- analysis ---- */

mcsa_status mcsa_fault_frequencies(const mcsa_motor_params* motor,
                                   mcsa_fault_signature* out, size_t capacity,
                                   size_t* out_count) {
    if (!motor || !out || !out_count)
        return null_pointer("mcsa_fault_frequencies");
    return guarded([&] {
        const auto signatures = mcsa::fault_frequencies(to_motor(*motor));
        if (capacity < signatures.size())
            throw mcsa::InvalidParameter("fault signature buffer too small: need " +
                                         std::to_string(signatures.size()));
        for (size_t i = 0; i < signatures.size(); ++i) {
            out[i].order = signatures[i].order;
            out[i].lower_sideband_hz = signatures[i].lower_sideband_hz;
            out[i].upper_sideband_hz = signatures[i].upper_sideband_hz;
            out[i].envelope_hz = signatures[i].envelope_hz;
        }
        *out_count = signatures.size();
    });
}

mcsa_status mcsa_extract_peak(const mcsa_spectrum* spectrum, double target_hz,
                              double window_hz, mcsa_peak* out) {
    if (!spectrum || !out)
        return null_pointer("mcsa_extract_peak");
    return guarded([&] {
        const mcsa::PeakReading peak =
            mcsa::extract_peak(spectrum->spectrum, target_hz, window_hz);
        *out = mcsa_peak{peak.target_hz, peak.found_hz, peak.magnitude};
    });
}

mcsa_status mcsa_spectrum_error(const mcsa_spectrum* reference,
                                const mcsa_spectrum* test,
                                const double* targets_hz, size_t n_targets,
                                double window_hz, double* out_error_pct) {
    if (!reference || !test || !targets_hz || !out_error_pct)
        return null_pointer("mcsa_spectrum_error");
    return guarded([&] {
        *out_error_pct = mcsa::spectrum_error(
            reference->spectrum, test->spectrum,
            std::span<const double>(targets_hz, n_targets), window_hz);
    });
}

void mcsa_pipeline_config_init(mcsa_pipeline_config* config) {
    if (!config)
        return;
    config->band_low_hz = 40.0;
    config->band_high_hz = 70.0;
    config->num_taps = 513;
    config->decimation_factor = 1;
    config->decimation_mode = MCSA_DECIMATE_BLOCK_MEAN;
    config->droop_compensation = 1;
}

mcsa_status mcsa_run_pipeline(const mcsa_series* series,
                              const mcsa_pipeline_config* config,
                              mcsa_spectrum** out_spectrum,
                              mcsa_op_count* out_final_fft_ops) {
    if (!series || !config || !out_spectrum)
        return null_pointer("mcsa_run_pipeline");
    return guarded([&] {
        mcsa::PipelineConfig cfg;
        cfg.band_low_hz = config->band_low_hz;
        cfg.band_high_hz = config->band_high_hz;
        cfg.num_taps = config->num_taps;
        cfg.decimation_factor = config->decimation_factor;
        cfg.decimation_mode = to_mode(config->decimation_mode);
        cfg.droop_compensation = config->droop_compensation != 0;
        mcsa::PipelineResult result = mcsa::run_pipeline(series->ts, cfg);
        *out_spectrum = new mcsa_spectrum{std::move(result.spectrum)};
        if (out_final_fft_ops)
            *out_final_fft_ops = to_c(result.final_fft_ops);
    });
}

void mcsa_sweep_config_init(mcsa_sweep_config* config) {
    if (!config)
        return;
    config->tolerance_pct = 1.0;
    config->max_exponent = 6;
    config->band_low_hz = 40.0;
    config->band_high_hz = 70.0;
    config->num_taps = 513;
    config->peak_window_hz = 0.5;
    config->decimation_mode = MCSA_DECIMATE_BLOCK_MEAN;
    config->droop_compensation = 1;
}

mcsa_status mcsa_run_sweep(const mcsa_series* series,
                           const mcsa_motor_params* motor,
                           const mcsa_sweep_config* config,
                           mcsa_sweep_report** out) {
    if (!series || !motor || !config || !out)
        return null_pointer("mcsa_run_sweep");
    return guarded([&] {
        mcsa::SweepConfig cfg;
        cfg.tolerance_pct = config->tolerance_pct;
        cfg.max_exponent = config->max_exponent;
        cfg.band_low_hz = config->band_low_hz;
        cfg.band_high_hz = config->band_high_hz;
        cfg.num_taps = config->num_taps;
        cfg.peak_window_hz = config->peak_window_hz;
        cfg.decimation_mode = to_mode(config->decimation_mode);
        cfg.droop_compensation = config->droop_compensation != 0;
        *out = new mcsa_sweep_report{
            mcsa::decimation_sweep(series->ts, to_motor(*motor), cfg)};
    });
}

void mcsa_sweep_free(mcsa_sweep_report* report) { delete report; }

int32_t mcsa_sweep_max_safe_factor(const mcsa_sweep_report* report) {
    return report ? report->report.max_safe_factor : 0;
}

double mcsa_sweep_tolerance_pct(const mcsa_sweep_report* report) {
    return report ? report->report.tolerance_pct : 0.0;
}

double mcsa_sweep_peak_window_hz(const mcsa_sweep_report* report) {
    return report ? report->report.peak_window_hz : 0.0;
}

size_t mcsa_sweep_num_targets(const mcsa_sweep_report* report) {
    return report ? report->report.targets_hz.size() : 0;
}

mcsa_status mcsa_sweep_target(const mcsa_sweep_report* report, size_t index,
                              double* out_hz) {
    if (!report || !out_hz)
        return null_pointer("mcsa_sweep_target");
    return guarded([&] {
        if (index >= report->report.targets_hz.size())
            throw mcsa::InvalidParameter("target index out of range");
        *out_hz = report->report.targets_hz[index];
    });
}

mcsa_status mcsa_sweep_reference_peak(const mcsa_sweep_report* report,
                                      size_t index, mcsa_peak* out) {
    if (!report || !out)
        return null_pointer("mcsa_sweep_reference_peak");
    return guarded([&] {
        if (index >= report->report.reference_peaks.size())
            throw mcsa::InvalidParameter("reference peak index out of range");
        const mcsa::PeakReading& peak = report->report.reference_peaks[index];
        *out = mcsa_peak{peak.target_hz, peak.found_hz, peak.magnitude};
    });
}

mcsa_status mcsa_sweep_reference_spectrum(const mcsa_sweep_report* report,
                                          mcsa_spectrum** out) {
    if (!report || !out)
        return null_pointer("mcsa_sweep_reference_spectrum");
    return guarded([&] { *out = new mcsa_spectrum{report->report.reference}; });
}

size_t mcsa_sweep_num_rows(const mcsa_sweep_report* report) {
    return report ? report->report.rows.size() : 0;
}

mcsa_status mcsa_sweep_report_row(const mcsa_sweep_report* report, size_t index,
                           mcsa_sweep_row* out) {
    if (!report || !out)
        return null_pointer("mcsa_sweep_row");
    return guarded([&] {
        if (index >= report->report.rows.size())
            throw mcsa::InvalidParameter("sweep row index out of range");
        const mcsa::SweepRow& row = report->report.rows[index];
        out->factor = row.factor;
        out->mean_error_pct = row.mean_error_pct;
        out->passed = row.passed ? 1 : 0;
        out->peak_displaced = row.peak_displaced ? 1 : 0;
        out->target_beyond_nyquist = row.target_beyond_nyquist ? 1 : 0;
        out->n_peaks = row.peaks.size();
    });
}

mcsa_status mcsa_sweep_row_peak(const mcsa_sweep_report* report, size_t row,
                                size_t peak, mcsa_peak* out) {
    if (!report || !out)
        return null_pointer("mcsa_sweep_row_peak");
    return guarded([&] {
        if (row >= report->report.rows.size())
            throw mcsa::InvalidParameter("sweep row index out of range");
        const auto& peaks = report->report.rows[row].peaks;
        if (peak >= peaks.size())
            throw mcsa::InvalidParameter("peak index out of range");
        *out = mcsa_peak{peaks[peak].target_hz, peaks[peak].found_hz,
                         peaks[peak].magnitude};
    });
}

mcsa_status mcsa_sweep_row_spectrum(const mcsa_sweep_report* report, size_t row,
                                    mcsa_spectrum** out) {
    if (!report || !out)
        return null_pointer("mcsa_sweep_row_spectrum");
    return guarded([&] {
        if (row >= report->report.rows.size())
            throw mcsa::InvalidParameter("sweep row index out of range");
        *out = new mcsa_spectrum{report->report.rows[row].spectrum};
    });
}

/* ---- bench ---- */

mcsa_status mcsa_predicted_op_counts(uint64_t n, mcsa_op_count* out) {
    if (!out)
        return null_pointer("mcsa_predicted_op_counts");
    return guarded([&] { *out = to_c(mcsa::predicted_op_counts(n)); });
}

mcsa_status mcsa_run_cost_table(uint64_t base_n, double base_rate_hz,
                                const int32_t* factors, size_t n_factors,
                                int32_t repetitions, uint64_t rng_seed,
                                mcsa_cost_table** out) {
    if (!factors || !out)
        return null_pointer("mcsa_run_cost_table");
    return guarded([&] {
        std::vector<int> fs(factors, factors + n_factors);
        *out = new mcsa_cost_table{mcsa::run_cost_table(
            base_n, base_rate_hz, fs, repetitions, rng_seed)};
    });
}

void mcsa_cost_table_free(mcsa_cost_table* table) { delete table; }

size_t mcsa_cost_table_num_rows(const mcsa_cost_table* table) {
    return table ? table->rows.size() : 0;
}

mcsa_status mcsa_cost_table_row(const mcsa_cost_table* table, size_t index,
                                mcsa_cost_row* out) {
    if (!table || !out)
        return null_pointer("mcsa_cost_table_row");
    return guarded([&] {
        if (index >= table->rows.size())
            throw mcsa::InvalidParameter("cost row index out of range");
        const mcsa::CostRow& row = table->rows[index];
        out->factor = row.factor;
        out->n_samples = row.n_samples;
        out->predicted = to_c(row.predicted);
        out->measured = to_c(row.measured);
        out->mean_time_ms = row.mean_time_ms;
        out->std_time_ms = row.std_time_ms;
        out->repetitions = row.repetitions;
    });
}

} /* extern "C" */
