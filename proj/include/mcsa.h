/*
 * C interface to the motor-current signature analysis toolkit.
 *
 * Every function that can fail returns an mcsa_status; out-parameters are
 * written only on MCSA_OK. Objects returned through handle out-parameters
 * (mcsa_series, mcsa_filter, mcsa_spectrum, mcsa_sweep_report,
 * mcsa_cost_table) are owned by the caller and released with the matching
 * _free function. Pointers returned by the *_data / *_taps / *_magnitudes
 * accessors stay valid until the owning handle is freed or mutated.
 *
 * mcsa_last_error_message() describes the most recent failure on the
 * calling thread.
 */

#ifndef MCSA_H
#define MCSA_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mcsa_status {
    MCSA_OK = 0,
    MCSA_ERROR_NULL_POINTER = 1,
    MCSA_ERROR_INVALID_PARAMETER = 2,
    MCSA_ERROR_INVALID_LENGTH = 3,   /* length not a power of two where required */
    MCSA_ERROR_EMPTY_OUTPUT = 4,     /* an operation would produce no samples */
    MCSA_ERROR_UNDEFINED_REFERENCE = 5, /* reference magnitude is zero */
    MCSA_ERROR_INTERNAL = 6
} mcsa_status;

typedef struct mcsa_series mcsa_series;
typedef struct mcsa_filter mcsa_filter;
typedef struct mcsa_spectrum mcsa_spectrum;
typedef struct mcsa_sweep_report mcsa_sweep_report;
typedef struct mcsa_cost_table mcsa_cost_table;

typedef enum mcsa_decimation_mode {
    MCSA_DECIMATE_BLOCK_MEAN = 0, /* each output sample is its block's mean */
    MCSA_DECIMATE_KEEP_FIRST = 1  /* each output sample is its block's first sample */
} mcsa_decimation_mode;

typedef struct mcsa_op_count {
    uint64_t complex_multiplications;
    uint64_t complex_additions;
    uint64_t total;
} mcsa_op_count;

typedef struct mcsa_motor_params {
    double supply_freq_hz;
    double slip;     /* per unit, in [0, 1) */
    int32_t k_max;   /* highest sideband order, >= 1 */
} mcsa_motor_params;

typedef struct mcsa_fault_signature {
    int32_t order;
    double lower_sideband_hz; /* (1 - 2ks) * supply */
    double upper_sideband_hz; /* (1 + 2ks) * supply */
    double envelope_hz;       /* 2ks * supply */
} mcsa_fault_signature;

/*
 * Synthetic stator current with broken-bar modulation:
 *   x(t) = A * (1 + sum_k m_k cos(2 pi 2 k s f t + phi_k)) * cos(2 pi f t) + noise.
 * modulation_depths / modulation_phases point at motor.k_max values each.
 */
typedef struct mcsa_synth_config {
    mcsa_motor_params motor;
    double carrier_amplitude;
    const double* modulation_depths;
    const double* modulation_phases;
    double noise_std;
    double sample_rate_hz;
    double duration_s;
    uint64_t rng_seed;
} mcsa_synth_config;

typedef struct mcsa_peak {
    double target_hz;
    double found_hz;
    double magnitude;
} mcsa_peak;

typedef struct mcsa_pipeline_config {
    double band_low_hz;
    double band_high_hz;
    int32_t num_taps;
    int32_t decimation_factor;   /* power of two, >= 1 */
    int32_t decimation_mode;     /* mcsa_decimation_mode */
    int32_t droop_compensation;  /* nonzero: equalize block-mean droop */
} mcsa_pipeline_config;

typedef struct mcsa_sweep_config {
    double tolerance_pct;
    int32_t max_exponent;        /* factors 2 .. 2^max_exponent */
    double band_low_hz;
    double band_high_hz;
    int32_t num_taps;
    double peak_window_hz;
    int32_t decimation_mode;     /* mcsa_decimation_mode */
    int32_t droop_compensation;
} mcsa_sweep_config;

typedef struct mcsa_sweep_row {
    int32_t factor;
    double mean_error_pct;       /* NaN when the row failed before comparison */
    int32_t passed;
    int32_t peak_displaced;
    int32_t target_beyond_nyquist;
    size_t n_peaks;
} mcsa_sweep_row;

typedef struct mcsa_cost_row {
    int32_t factor;
    uint64_t n_samples;
    mcsa_op_count predicted;
    mcsa_op_count measured;
    double mean_time_ms;
    double std_time_ms;
    int32_t repetitions;
} mcsa_cost_row;

/* ---- library ---- */

const char* mcsa_version(void);
const char* mcsa_status_name(mcsa_status status);

/* Message for the last failing call on this thread; empty string if none. */
const char* mcsa_last_error_message(void);

/* ---- time series ---- */

mcsa_status mcsa_series_create(const double* samples, size_t n,
                               double sample_rate_hz, mcsa_series** out);
void mcsa_series_free(mcsa_series* series);
size_t mcsa_series_length(const mcsa_series* series);
double mcsa_series_sample_rate_hz(const mcsa_series* series);
const double* mcsa_series_data(const mcsa_series* series);

/* ---- signal model ---- */

mcsa_status mcsa_slip_from_speed(double rotor_rpm, double sync_rpm,
                                 double* out_slip);

/* Fills config with the reference operating point: 60 Hz supply at slip
 * 0.036111 (k_max 1), unit carrier, 5120 Hz for 102.4 s, seed 1, noise 0.005.
 * modulation_depths / modulation_phases are left NULL; callers supply them. */
void mcsa_synth_config_init(mcsa_synth_config* config);

mcsa_status mcsa_synthesize(const mcsa_synth_config* config, mcsa_series** out);

/* ---- dsp ---- */

mcsa_status mcsa_design_bandpass(double low_cutoff_hz, double high_cutoff_hz,
                                 double sample_rate_hz, int32_t num_taps,
                                 mcsa_filter** out);
void mcsa_filter_free(mcsa_filter* filter);
size_t mcsa_filter_num_taps(const mcsa_filter* filter);
const double* mcsa_filter_taps(const mcsa_filter* filter);

mcsa_status mcsa_apply_filter(const mcsa_series* series,
                              const mcsa_filter* filter, mcsa_series** out);

mcsa_status mcsa_decimate(const mcsa_series* series, int32_t factor,
                          int32_t mode, mcsa_series** out);

mcsa_status mcsa_block_mean_gain(double freq_hz, int32_t factor,
                                 double output_rate_hz, double* out_gain);

/* In-order transform of n interleaved-as-two-arrays complex values.
 * n must be a power of two. out_ops may be NULL. Buffers may alias. */
mcsa_status mcsa_fft(const double* in_re, const double* in_im, size_t n,
                     double* out_re, double* out_im, mcsa_op_count* out_ops);
mcsa_status mcsa_inverse_fft(const double* in_re, const double* in_im, size_t n,
                             double* out_re, double* out_im);

mcsa_status mcsa_hilbert_envelope(const mcsa_series* series, mcsa_series** out);
mcsa_status mcsa_remove_dc(const mcsa_series* series, mcsa_series** out);

mcsa_status mcsa_amplitude_spectrum(const mcsa_series* series,
                                    mcsa_spectrum** out,
                                    mcsa_op_count* out_ops);

void mcsa_spectrum_free(mcsa_spectrum* spectrum);
size_t mcsa_spectrum_num_bins(const mcsa_spectrum* spectrum);
double mcsa_spectrum_bin_width_hz(const mcsa_spectrum* spectrum);
double mcsa_spectrum_source_rate_hz(const mcsa_spectrum* spectrum);
uint64_t mcsa_spectrum_source_len(const mcsa_spectrum* spectrum);
const double* mcsa_spectrum_magnitudes(const mcsa_spectrum* spectrum);

/* ---- analysis ---- */

/* Writes signatures for k = 1 .. motor->k_max; capacity must cover them. */
mcsa_status mcsa_fault_frequencies(const mcsa_motor_params* motor,
                                   mcsa_fault_signature* out, size_t capacity,
                                   size_t* out_count);

mcsa_status mcsa_extract_peak(const mcsa_spectrum* spectrum, double target_hz,
                              double window_hz, mcsa_peak* out);

mcsa_status mcsa_spectrum_error(const mcsa_spectrum* reference,
                                const mcsa_spectrum* test,
                                const double* targets_hz, size_t n_targets,
                                double window_hz, double* out_error_pct);

/* 40-70 Hz band, 513 taps, factor 1, block mean, droop compensation on. */
void mcsa_pipeline_config_init(mcsa_pipeline_config* config);

mcsa_status mcsa_run_pipeline(const mcsa_series* series,
                              const mcsa_pipeline_config* config,
                              mcsa_spectrum** out_spectrum,
                              mcsa_op_count* out_final_fft_ops);

/* Tolerance 1%, max exponent 6, 40-70 Hz / 513 taps, 0.5 Hz peak window. */
void mcsa_sweep_config_init(mcsa_sweep_config* config);

mcsa_status mcsa_run_sweep(const mcsa_series* series,
                           const mcsa_motor_params* motor,
                           const mcsa_sweep_config* config,
                           mcsa_sweep_report** out);

void mcsa_sweep_free(mcsa_sweep_report* report);
int32_t mcsa_sweep_max_safe_factor(const mcsa_sweep_report* report);
double mcsa_sweep_tolerance_pct(const mcsa_sweep_report* report);
double mcsa_sweep_peak_window_hz(const mcsa_sweep_report* report);
size_t mcsa_sweep_num_targets(const mcsa_sweep_report* report);
mcsa_status mcsa_sweep_target(const mcsa_sweep_report* report, size_t index,
                              double* out_hz);
mcsa_status mcsa_sweep_reference_peak(const mcsa_sweep_report* report,
                                      size_t index, mcsa_peak* out);
/* Copy of the factor-1 reference spectrum; caller frees. */
mcsa_status mcsa_sweep_reference_spectrum(const mcsa_sweep_report* report,
                                          mcsa_spectrum** out);
size_t mcsa_sweep_num_rows(const mcsa_sweep_report* report);
mcsa_status mcsa_sweep_report_row(const mcsa_sweep_report* report, size_t index,
                           mcsa_sweep_row* out);
mcsa_status mcsa_sweep_row_peak(const mcsa_sweep_report* report, size_t row,
                                size_t peak, mcsa_peak* out);
/* Copy of one row's spectrum; caller frees. */
mcsa_status mcsa_sweep_row_spectrum(const mcsa_sweep_report* report, size_t row,
                                    mcsa_spectrum** out);

/* ---- bench ---- */

mcsa_status mcsa_predicted_op_counts(uint64_t n, mcsa_op_count* out);

mcsa_status mcsa_run_cost_table(uint64_t base_n, double base_rate_hz,
                                const int32_t* factors, size_t n_factors,
                                int32_t repetitions, uint64_t rng_seed,
                                mcsa_cost_table** out);
void mcsa_cost_table_free(mcsa_cost_table* table);
size_t mcsa_cost_table_num_rows(const mcsa_cost_table* table);
mcsa_status mcsa_cost_table_row(const mcsa_cost_table* table, size_t index,
                                mcsa_cost_row* out);

#ifdef __cplusplus
}
#endif

#endif /* MCSA_H */
