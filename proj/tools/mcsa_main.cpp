// Command-line front end. Talks to the toolkit exclusively through the C
// interface in mcsa.h; everything else here is argument handling and file
// plumbing.
//
// Exit codes: 0 success, 2 bad usage or parameter validation, 3 file I/O or
// file format problems.

#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mcsa.h"

namespace {

using nlohmann::json;

struct CliError {
    int exit_code;
    std::string message;
};

constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

int exit_code_for(mcsa_status status) {
    switch (status) {
    case MCSA_ERROR_INVALID_PARAMETER:
    case MCSA_ERROR_INVALID_LENGTH:
    case MCSA_ERROR_EMPTY_OUTPUT:
    case MCSA_ERROR_UNDEFINED_REFERENCE:
        return kExitValidation;
    default:
        return 1;
    }
}

void call(mcsa_status status, const std::string& context) {
    if (status == MCSA_OK)
        return;
    throw CliError{exit_code_for(status),
                   context + ": " + mcsa_last_error_message()};
}

using series_ptr = std::unique_ptr<mcsa_series, decltype(&mcsa_series_free)>;
using spectrum_ptr = std::unique_ptr<mcsa_spectrum, decltype(&mcsa_spectrum_free)>;
using sweep_ptr = std::unique_ptr<mcsa_sweep_report, decltype(&mcsa_sweep_free)>;
using table_ptr = std::unique_ptr<mcsa_cost_table, decltype(&mcsa_cost_table_free)>;

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// All outputs are written via a temporary in the same directory so a partial
// file never appears under the final name.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw CliError{kExitIo, "cannot open " + tmp.string() + " for writing"};
        out.write(content.data(),
                  static_cast<std::streamsize>(content.size()));
        if (!out)
            throw CliError{kExitIo, "write failed for " + tmp.string()};
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw CliError{kExitIo, "cannot move " + tmp.string() + " into place: " +
                                    ec.message()};
}

struct LoadedSignal {
    std::vector<double> samples;
    double sample_rate_hz = 0.0;
    std::string label;
};

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string strip_suffix(const std::string& s, const std::string& suffix) {
    return ends_with(s, suffix) ? s.substr(0, s.size() - suffix.size()) : s;
}

LoadedSignal read_csv_signal(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw CliError{kExitIo, "cannot open " + path};

    std::vector<double> times;
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw CliError{kExitIo, path + ":" + std::to_string(line_no) +
                                        ": expected time_s,amplitude"};
        const std::string a = line.substr(0, comma);
        const std::string b = line.substr(comma + 1);
        char* end_a = nullptr;
        char* end_b = nullptr;
        const double t = std::strtod(a.c_str(), &end_a);
        const double v = std::strtod(b.c_str(), &end_b);
        const bool parsed = end_a && *end_a == '\0' && end_b && *end_b == '\0' &&
                            !a.empty() && !b.empty();
        if (!parsed) {
            if (times.empty() && line_no == 1)
                continue; // header row
            throw CliError{kExitIo, path + ":" + std::to_string(line_no) +
                                        ": malformed number"};
        }
        times.push_back(t);
        values.push_back(v);
    }
    if (values.size() < 2)
        throw CliError{kExitIo, path + ": need at least two samples"};
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw CliError{kExitIo, path + ": time column must increase strictly"};

    LoadedSignal sig;
    sig.samples = std::move(values);
    sig.sample_rate_hz = static_cast<double>(sig.samples.size() - 1) /
                         (times.back() - times.front());
    sig.label = std::filesystem::path(path).stem().string();
    return sig;
}

LoadedSignal read_binary_signal(const std::string& base) {
    const std::string header_path = base + ".json";
    const std::string payload_path = base + ".f64";

    std::ifstream header_in(header_path);
    if (!header_in)
        throw CliError{kExitIo, "cannot open " + header_path};
    json header;
    try {
        header = json::parse(header_in);
    } catch (const json::exception& e) {
        throw CliError{kExitIo, header_path + ": " + e.what()};
    }
    if (!header.is_object() || !header.contains("format_version") ||
        !header["format_version"].is_number_integer() ||
        header["format_version"].get<int>() != 1)
        throw CliError{kExitIo, header_path + ": unsupported format_version"};
    if (!header.contains("sample_rate_hz") || !header["sample_rate_hz"].is_number())
        throw CliError{kExitIo, header_path + ": missing sample_rate_hz"};
    if (!header.contains("n_samples") ||
        !header["n_samples"].is_number_unsigned())
        throw CliError{kExitIo, header_path + ": missing n_samples"};

    LoadedSignal sig;
    sig.sample_rate_hz = header["sample_rate_hz"].get<double>();
    if (!(sig.sample_rate_hz > 0.0))
        throw CliError{kExitIo, header_path + ": sample_rate_hz must be positive"};
    const auto n = header["n_samples"].get<std::uint64_t>();
    sig.label = header.value("label", std::string{});

    std::ifstream payload(payload_path, std::ios::binary | std::ios::ate);
    if (!payload)
        throw CliError{kExitIo, "cannot open " + payload_path};
    const auto bytes = static_cast<std::uint64_t>(payload.tellg());
    if (bytes != n * sizeof(double))
        throw CliError{kExitIo, payload_path + ": payload holds " +
                                    std::to_string(bytes / sizeof(double)) +
                                    " samples but the header declares " +
                                    std::to_string(n)};
    payload.seekg(0);
    sig.samples.resize(n);
    payload.read(reinterpret_cast<char*>(sig.samples.data()),
                 static_cast<std::streamsize>(bytes));
    if (!payload)
        throw CliError{kExitIo, "read failed for " + payload_path};
    return sig;
}

// Accepts BASE, BASE.f64 or a CSV with time_s,amplitude columns.
LoadedSignal read_signal(const std::string& path) {
    if (ends_with(path, ".csv"))
        return read_csv_signal(path);
    return read_binary_signal(strip_suffix(path, ".f64"));
}

void write_binary_signal(const std::string& base, const double* samples,
                         std::size_t n, double sample_rate_hz,
                         const std::string& label) {
    std::string payload(reinterpret_cast<const char*>(samples),
                        n * sizeof(double));
    write_file_atomic(base + ".f64", payload);

    json header;
    header["format_version"] = 1;
    header["sample_rate_hz"] = sample_rate_hz;
    header["n_samples"] = n;
    header["label"] = label;
    write_file_atomic(base + ".json", header.dump(2) + "\n");
}

void write_spectrum_csv(const std::string& path, const mcsa_spectrum* spectrum) {
    const double bw = mcsa_spectrum_bin_width_hz(spectrum);
    const double* mags = mcsa_spectrum_magnitudes(spectrum);
    const std::size_t bins = mcsa_spectrum_num_bins(spectrum);
    std::string out = "frequency_hz,magnitude\n";
    for (std::size_t k = 0; k < bins; ++k) {
        out += format_double(static_cast<double>(k) * bw);
        out += ',';
        out += format_double(mags[k]);
        out += '\n';
    }
    write_file_atomic(path, out);
}

json spectrum_meta(const mcsa_spectrum* spectrum, const std::string& csv_path) {
    json j;
    j["bin_width_hz"] = mcsa_spectrum_bin_width_hz(spectrum);
    j["n_bins"] = mcsa_spectrum_num_bins(spectrum);
    j["source_rate_hz"] = mcsa_spectrum_source_rate_hz(spectrum);
    j["source_len"] = mcsa_spectrum_source_len(spectrum);
    j["csv"] = csv_path;
    return j;
}

json finite_or_null(double v) {
    if (std::isfinite(v))
        return v;
    return nullptr;
}

/* ---- shared option groups ---- */

struct MotorOptions {
    double supply_hz = 60.0;
    double slip = 0.036111;
    double rpm = 0.0;
    double sync_rpm = 1800.0;
    int load_pct = 0;
    int k_max = 1;
    CLI::Option* slip_opt = nullptr;
    CLI::Option* rpm_opt = nullptr;
    CLI::Option* load_opt = nullptr;
};

void add_motor_options(CLI::App* cmd, MotorOptions& opts) {
    cmd->add_option("--supply-hz", opts.supply_hz, "Supply frequency in Hz")
        ->capture_default_str();
    opts.slip_opt =
        cmd->add_option("--slip", opts.slip, "Per-unit slip")->capture_default_str();
    opts.rpm_opt = cmd->add_option("--rpm", opts.rpm,
                                   "Rotor speed in rpm (used with --sync-rpm)");
    cmd->add_option("--sync-rpm", opts.sync_rpm, "Synchronous speed in rpm")
        ->capture_default_str();
    opts.load_opt = cmd->add_option("--load-pct", opts.load_pct,
                                    "Load preset: 50, 80 or 100 percent");
    cmd->add_option("--kmax", opts.k_max, "Highest sideband order")
        ->capture_default_str();
}

mcsa_motor_params resolve_motor(const MotorOptions& opts) {
    const int given = (opts.slip_opt->count() ? 1 : 0) +
                      (opts.rpm_opt->count() ? 1 : 0) +
                      (opts.load_opt->count() ? 1 : 0);
    if (given > 1)
        throw CliError{kExitValidation,
                       "choose one of --slip, --rpm or --load-pct"};

    double slip = opts.slip;
    if (opts.rpm_opt->count()) {
        call(mcsa_slip_from_speed(opts.rpm, opts.sync_rpm, &slip),
             "slip from speed");
    } else if (opts.load_opt->count()) {
        static const std::map<int, double> presets = {
            {50, 0.018056}, {80, 0.028889}, {100, 0.036111}};
        const auto it = presets.find(opts.load_pct);
        if (it == presets.end())
            throw CliError{kExitValidation,
                           "--load-pct accepts 50, 80 or 100"};
        slip = it->second;
    }

    mcsa_motor_params motor;
    motor.supply_freq_hz = opts.supply_hz;
    motor.slip = slip;
    motor.k_max = opts.k_max;
    return motor;
}

struct BandOption {
    std::string text = "40:70";
    double low = 40.0;
    double high = 70.0;

    void resolve() {
        double a = 0.0;
        double b = 0.0;
        char trailing = '\0';
        if (std::sscanf(text.c_str(), "%lf:%lf%c", &a, &b, &trailing) != 2)
            throw CliError{kExitValidation,
                           "--band expects LOW:HIGH, e.g. 40:70"};
        low = a;
        high = b;
    }
};

int32_t mode_from_name(const std::string& name) {
    if (name == "mean")
        return MCSA_DECIMATE_BLOCK_MEAN;
    if (name == "drop")
        return MCSA_DECIMATE_KEEP_FIRST;
    throw CliError{kExitValidation, "--mode accepts 'mean' or 'drop'"};
}

json motor_json(const mcsa_motor_params& motor) {
    json j;
    j["supply_freq_hz"] = motor.supply_freq_hz;
    j["slip"] = motor.slip;
    j["k_max"] = motor.k_max;
    return j;
}

json ops_json(const mcsa_op_count& ops) {
    json j;
    j["complex_multiplications"] = ops.complex_multiplications;
    j["complex_additions"] = ops.complex_additions;
    j["total"] = ops.total;
    return j;
}

std::vector<mcsa_fault_signature> signatures_for(const mcsa_motor_params& motor) {
    std::vector<mcsa_fault_signature> sigs(
        static_cast<std::size_t>(motor.k_max > 0 ? motor.k_max : 0) + 1);
    size_t count = 0;
    call(mcsa_fault_frequencies(&motor, sigs.data(), sigs.size(), &count),
         "fault frequencies");
    sigs.resize(count);
    return sigs;
}

json signatures_json(const std::vector<mcsa_fault_signature>& sigs) {
    json arr = json::array();
    for (const auto& s : sigs) {
        json j;
        j["k"] = s.order;
        j["lower_sideband_hz"] = s.lower_sideband_hz;
        j["upper_sideband_hz"] = s.upper_sideband_hz;
        j["envelope_hz"] = s.envelope_hz;
        arr.push_back(j);
    }
    return arr;
}

/* ---- synth ---- */

struct SynthOptions {
    MotorOptions motor;
    double fs = 5120.0;
    double duration = 102.4;
    std::uint64_t seed = 1;
    double amplitude = 1.0;
    std::vector<double> depths;
    std::vector<double> phases;
    double noise = 0.005;
    std::string label;
    std::string out;
};

int run_synth(const SynthOptions& opts) {
    const mcsa_motor_params motor = resolve_motor(opts.motor);

    std::vector<double> depths = opts.depths;
    if (depths.empty())
        depths.assign(1, 0.02);
    if (depths.size() == 1 && motor.k_max > 1)
        depths.assign(static_cast<std::size_t>(motor.k_max), depths[0]);
    std::vector<double> phases = opts.phases;
    if (phases.empty())
        phases.assign(depths.size(), 0.0);
    if (motor.k_max >= 1 &&
        (depths.size() != static_cast<std::size_t>(motor.k_max) ||
         phases.size() != static_cast<std::size_t>(motor.k_max)))
        throw CliError{kExitValidation,
                       "--depth and --phase need one value per sideband order"};

    mcsa_synth_config config;
    mcsa_synth_config_init(&config);
    config.motor = motor;
    config.carrier_amplitude = opts.amplitude;
    config.modulation_depths = depths.data();
    config.modulation_phases = phases.data();
    config.noise_std = opts.noise;
    config.sample_rate_hz = opts.fs;
    config.duration_s = opts.duration;
    config.rng_seed = opts.seed;

    mcsa_series* raw = nullptr;
    call(mcsa_synthesize(&config, &raw), "synthesize");
    series_ptr series(raw, &mcsa_series_free);

    const std::string base = strip_suffix(opts.out, ".f64");
    std::string label = opts.label;
    if (label.empty()) {
        std::ostringstream os;
        os << "synthetic fault current, slip " << motor.slip << ", supply "
           << motor.supply_freq_hz << " Hz";
        label = os.str();
    }
    write_binary_signal(base, mcsa_series_data(series.get()),
                        mcsa_series_length(series.get()),
                        mcsa_series_sample_rate_hz(series.get()), label);

    const auto sigs = signatures_for(motor);
    std::printf("wrote %s.f64 (%zu samples at %g Hz)\n", base.c_str(),
                mcsa_series_length(series.get()),
                mcsa_series_sample_rate_hz(series.get()));
    for (const auto& s : sigs)
        std::printf("k=%d: sidebands %.5f / %.5f Hz, envelope line %.5f Hz\n",
                    s.order, s.lower_sideband_hz, s.upper_sideband_hz,
                    s.envelope_hz);
    return 0;
}

/* ---- analyze ---- */

struct AnalyzeOptions {
    MotorOptions motor;
    std::string in;
    std::string out;
    int factor = 1;
    BandOption band;
    int taps = 513;
    double window = 0.5;
    std::string mode = "mean";
    bool no_droop_comp = false;
};

series_ptr load_series(const std::string& path) {
    const LoadedSignal sig = read_signal(path);
    mcsa_series* raw = nullptr;
    call(mcsa_series_create(sig.samples.data(), sig.samples.size(),
                            sig.sample_rate_hz, &raw),
         "load signal");
    return series_ptr(raw, &mcsa_series_free);
}

std::string default_prefix(const std::string& in, const char* suffix) {
    std::string base = strip_suffix(strip_suffix(in, ".f64"), ".csv");
    return base + suffix;
}

int run_analyze(AnalyzeOptions& opts) {
    opts.band.resolve();
    const mcsa_motor_params motor = resolve_motor(opts.motor);
    const std::string prefix =
        opts.out.empty() ? default_prefix(opts.in, ".analysis") : opts.out;

    const series_ptr series = load_series(opts.in);

    mcsa_pipeline_config config;
    mcsa_pipeline_config_init(&config);
    config.band_low_hz = opts.band.low;
    config.band_high_hz = opts.band.high;
    config.num_taps = opts.taps;
    config.decimation_factor = opts.factor;
    config.decimation_mode = mode_from_name(opts.mode);
    config.droop_compensation = opts.no_droop_comp ? 0 : 1;

    mcsa_spectrum* raw_spectrum = nullptr;
    mcsa_op_count final_ops{};
    call(mcsa_run_pipeline(series.get(), &config, &raw_spectrum, &final_ops),
         "pipeline");
    spectrum_ptr spectrum(raw_spectrum, &mcsa_spectrum_free);

    const auto sigs = signatures_for(motor);
    json peaks = json::array();
    for (const auto& s : sigs) {
        mcsa_peak peak{};
        call(mcsa_extract_peak(spectrum.get(), s.envelope_hz, opts.window, &peak),
             "extract peak");
        json j;
        j["k"] = s.order;
        j["target_hz"] = peak.target_hz;
        j["found_hz"] = peak.found_hz;
        j["magnitude"] = peak.magnitude;
        peaks.push_back(j);
        std::printf("k=%d: target %.5f Hz, found %.6f Hz, magnitude %.8g\n",
                    s.order, peak.target_hz, peak.found_hz, peak.magnitude);
    }

    const std::string csv_path = prefix + ".spectrum.csv";
    write_spectrum_csv(csv_path, spectrum.get());

    json report;
    report["signal"] = {{"path", opts.in},
                        {"sample_rate_hz", mcsa_series_sample_rate_hz(series.get())},
                        {"n_samples", mcsa_series_length(series.get())}};
    report["motor"] = motor_json(motor);
    report["pipeline"] = {{"band_low_hz", opts.band.low},
                          {"band_high_hz", opts.band.high},
                          {"num_taps", opts.taps},
                          {"decimation_factor", opts.factor},
                          {"decimation_mode", opts.mode},
                          {"droop_compensation", !opts.no_droop_comp},
                          {"peak_window_hz", opts.window}};
    report["fault_signatures"] = signatures_json(sigs);
    report["peaks"] = peaks;
    report["final_fft_ops"] = ops_json(final_ops);
    report["spectrum"] = spectrum_meta(spectrum.get(), csv_path);
    write_file_atomic(prefix + ".report.json", report.dump(2) + "\n");

    std::printf("wrote %s.report.json and %s\n", prefix.c_str(), csv_path.c_str());
    return 0;
}

/* ---- sweep ---- */

struct SweepOptions {
    MotorOptions motor;
    std::string in;
    std::string out;
    double tolerance_pct = 1.0;
    int max_exp = 6;
    BandOption band;
    int taps = 513;
    double window = 0.5;
    std::string mode = "mean";
    bool no_droop_comp = false;
};

int run_sweep(SweepOptions& opts) {
    opts.band.resolve();
    const mcsa_motor_params motor = resolve_motor(opts.motor);
    const std::string prefix =
        opts.out.empty() ? default_prefix(opts.in, ".sweep") : opts.out;

    const series_ptr series = load_series(opts.in);

    mcsa_sweep_config config;
    mcsa_sweep_config_init(&config);
    config.tolerance_pct = opts.tolerance_pct;
    config.max_exponent = opts.max_exp;
    config.band_low_hz = opts.band.low;
    config.band_high_hz = opts.band.high;
    config.num_taps = opts.taps;
    config.peak_window_hz = opts.window;
    config.decimation_mode = mode_from_name(opts.mode);
    config.droop_compensation = opts.no_droop_comp ? 0 : 1;

    mcsa_sweep_report* raw_report = nullptr;
    call(mcsa_run_sweep(series.get(), &motor, &config, &raw_report), "sweep");
    sweep_ptr report(raw_report, &mcsa_sweep_free);

    // Reference spectrum, written like any other factor's.
    {
        mcsa_spectrum* raw = nullptr;
        call(mcsa_sweep_reference_spectrum(report.get(), &raw),
             "reference spectrum");
        spectrum_ptr ref(raw, &mcsa_spectrum_free);
        write_spectrum_csv(prefix + ".factor1.spectrum.csv", ref.get());
    }

    json targets = json::array();
    json ref_peaks = json::array();
    const std::size_t n_targets = mcsa_sweep_num_targets(report.get());
    for (std::size_t i = 0; i < n_targets; ++i) {
        double hz = 0.0;
        call(mcsa_sweep_target(report.get(), i, &hz), "sweep target");
        targets.push_back(hz);
        mcsa_peak peak{};
        call(mcsa_sweep_reference_peak(report.get(), i, &peak), "reference peak");
        ref_peaks.push_back({{"target_hz", peak.target_hz},
                             {"found_hz", peak.found_hz},
                             {"magnitude", peak.magnitude}});
    }

    std::string error_csv = "factor,mean_error_pct\n";
    json rows = json::array();
    const std::size_t n_rows = mcsa_sweep_num_rows(report.get());
    for (std::size_t i = 0; i < n_rows; ++i) {
        mcsa_sweep_row row{};
        call(mcsa_sweep_report_row(report.get(), i, &row), "sweep row");

        mcsa_spectrum* raw = nullptr;
        call(mcsa_sweep_row_spectrum(report.get(), i, &raw), "row spectrum");
        spectrum_ptr row_spectrum(raw, &mcsa_spectrum_free);
        const std::string csv_path = prefix + ".factor" +
                                     std::to_string(row.factor) +
                                     ".spectrum.csv";
        write_spectrum_csv(csv_path, row_spectrum.get());

        json peaks = json::array();
        for (std::size_t p = 0; p < row.n_peaks; ++p) {
            mcsa_peak peak{};
            call(mcsa_sweep_row_peak(report.get(), i, p, &peak), "row peak");
            peaks.push_back({{"target_hz", peak.target_hz},
                             {"found_hz", peak.found_hz},
                             {"magnitude", peak.magnitude}});
        }

        json j;
        j["factor"] = row.factor;
        j["mean_error_pct"] = finite_or_null(row.mean_error_pct);
        j["passed"] = row.passed != 0;
        j["peak_displaced"] = row.peak_displaced != 0;
        j["target_beyond_nyquist"] = row.target_beyond_nyquist != 0;
        j["peaks"] = peaks;
        j["spectrum_csv"] = csv_path;
        rows.push_back(j);

        error_csv += std::to_string(row.factor);
        error_csv += ',';
        error_csv += std::isfinite(row.mean_error_pct)
                         ? format_double(row.mean_error_pct)
                         : std::string("nan");
        error_csv += '\n';

        if (row.target_beyond_nyquist)
            std::printf("factor %d: fault line beyond the decimated Nyquist "
                        "frequency [fail]\n",
                        row.factor);
        else
            std::printf("factor %d: error %.6f %% [%s]\n", row.factor,
                        row.mean_error_pct, row.passed ? "pass" : "fail");
    }
    std::printf("max safe factor: %d\n", mcsa_sweep_max_safe_factor(report.get()));

    write_file_atomic(prefix + ".error_vs_factor.csv", error_csv);

    json summary;
    summary["signal"] = {{"path", opts.in},
                         {"sample_rate_hz", mcsa_series_sample_rate_hz(series.get())},
                         {"n_samples", mcsa_series_length(series.get())}};
    summary["motor"] = motor_json(motor);
    summary["settings"] = {{"tolerance_pct", opts.tolerance_pct},
                           {"max_exponent", opts.max_exp},
                           {"band_low_hz", opts.band.low},
                           {"band_high_hz", opts.band.high},
                           {"num_taps", opts.taps},
                           {"peak_window_hz", opts.window},
                           {"decimation_mode", opts.mode},
                           {"droop_compensation", !opts.no_droop_comp}};
    summary["targets_hz"] = targets;
    summary["reference"] = {{"factor", 1},
                            {"peaks", ref_peaks},
                            {"spectrum_csv", prefix + ".factor1.spectrum.csv"}};
    summary["rows"] = rows;
    summary["max_safe_factor"] = mcsa_sweep_max_safe_factor(report.get());
    write_file_atomic(prefix + ".sweep.json", summary.dump(2) + "\n");

    std::printf("wrote %s.sweep.json\n", prefix.c_str());
    return 0;
}

/* ---- bench ---- */

struct BenchOptions {
    std::uint64_t base_n = 524288;
    double base_rate = 5120.0;
    std::vector<int> factors = {1, 2, 4, 8, 16};
    int reps = 30;
    std::uint64_t seed = 1;
    std::string out = "bench";
};

int run_bench(const BenchOptions& opts) {
    std::vector<int32_t> factors(opts.factors.begin(), opts.factors.end());
    mcsa_cost_table* raw = nullptr;
    call(mcsa_run_cost_table(opts.base_n, opts.base_rate, factors.data(),
                             factors.size(), opts.reps, opts.seed, &raw),
         "cost table");
    table_ptr table(raw, &mcsa_cost_table_free);

    std::printf("%8s %10s %16s %16s %16s %12s %12s %6s\n", "factor", "samples",
                "cmul", "cadd", "total", "mean_ms", "std_ms", "reps");
    std::string csv =
        "factor,n_samples,complex_multiplications,complex_additions,total_ops,"
        "mean_time_ms,std_time_ms,repetitions\n";
    const std::size_t rows = mcsa_cost_table_num_rows(table.get());
    for (std::size_t i = 0; i < rows; ++i) {
        mcsa_cost_row row{};
        call(mcsa_cost_table_row(table.get(), i, &row), "cost row");
        std::printf("%8d %10" PRIu64 " %16" PRIu64 " %16" PRIu64 " %16" PRIu64
                    " %12.3f %12.3f %6d\n",
                    row.factor, row.n_samples,
                    row.measured.complex_multiplications,
                    row.measured.complex_additions, row.measured.total,
                    row.mean_time_ms, row.std_time_ms, row.repetitions);
        csv += std::to_string(row.factor) + ',' + std::to_string(row.n_samples) +
               ',' + std::to_string(row.measured.complex_multiplications) + ',' +
               std::to_string(row.measured.complex_additions) + ',' +
               std::to_string(row.measured.total) + ',' +
               format_double(row.mean_time_ms) + ',' +
               format_double(row.std_time_ms) + ',' +
               std::to_string(row.repetitions) + '\n';
    }

    if (!opts.out.empty()) {
        write_file_atomic(opts.out + ".cost.csv", csv);
        std::printf("wrote %s.cost.csv\n", opts.out.c_str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Motor current signature analysis toolkit"};
    app.set_version_flag("--version", mcsa_version());
    app.require_subcommand(1);

    SynthOptions synth;
    CLI::App* synth_cmd = app.add_subcommand(
        "synth", "Synthesize a stator current with broken-bar sidebands");
    add_motor_options(synth_cmd, synth.motor);
    synth_cmd->add_option("--fs", synth.fs, "Sample rate in Hz")
        ->capture_default_str();
    synth_cmd->add_option("--duration", synth.duration, "Record length in seconds")
        ->capture_default_str();
    synth_cmd->add_option("--seed", synth.seed, "Noise generator seed")
        ->capture_default_str();
    synth_cmd->add_option("--amplitude", synth.amplitude, "Carrier amplitude")
        ->capture_default_str();
    synth_cmd
        ->add_option("--depth", synth.depths,
                     "Modulation depth per sideband order (default 0.02)")
        ->delimiter(',');
    synth_cmd
        ->add_option("--phase", synth.phases,
                     "Modulation phase per sideband order in radians (default 0)")
        ->delimiter(',');
    synth_cmd->add_option("--noise", synth.noise, "Gaussian noise level")
        ->capture_default_str();
    synth_cmd->add_option("--label", synth.label, "Label stored in the header");
    synth_cmd->add_option("--out", synth.out, "Output path (base or .f64)")
        ->required();
    synth_cmd->callback([&synth] { run_synth(synth); });

    AnalyzeOptions analyze;
    CLI::App* analyze_cmd = app.add_subcommand(
        "analyze", "Envelope spectrum and fault-line peaks of a record");
    add_motor_options(analyze_cmd, analyze.motor);
    analyze_cmd->add_option("--in", analyze.in, "Signal: BASE, BASE.f64 or CSV")
        ->required();
    analyze_cmd->add_option("--out", analyze.out,
                            "Output prefix (default: derived from --in)");
    analyze_cmd->add_option("--factor", analyze.factor, "Decimation factor")
        ->capture_default_str();
    analyze_cmd->add_option("--band", analyze.band.text, "Band-pass range LOW:HIGH")
        ->capture_default_str();
    analyze_cmd->add_option("--taps", analyze.taps, "Band-pass tap count")
        ->capture_default_str();
    analyze_cmd->add_option("--window", analyze.window, "Peak search half-width in Hz")
        ->capture_default_str();
    analyze_cmd->add_option("--mode", analyze.mode, "Decimation mode: mean or drop")
        ->capture_default_str();
    analyze_cmd->add_flag("--no-droop-comp", analyze.no_droop_comp,
                          "Skip block-mean droop equalization");
    analyze_cmd->callback([&analyze] { run_analyze(analyze); });

    SweepOptions sweep;
    CLI::App* sweep_cmd = app.add_subcommand(
        "sweep", "Find the largest decimation factor that keeps the fault "
                 "signature intact");
    add_motor_options(sweep_cmd, sweep.motor);
    sweep_cmd->add_option("--in", sweep.in, "Signal: BASE, BASE.f64 or CSV")
        ->required();
    sweep_cmd->add_option("--out", sweep.out,
                          "Output prefix (default: derived from --in)");
    sweep_cmd->add_option("--tolerance-pct", sweep.tolerance_pct,
                          "Mean peak error allowed, in percent")
        ->capture_default_str();
    sweep_cmd->add_option("--max-exp", sweep.max_exp,
                          "Highest factor tried is 2^max-exp")
        ->capture_default_str();
    sweep_cmd->add_option("--band", sweep.band.text, "Band-pass range LOW:HIGH")
        ->capture_default_str();
    sweep_cmd->add_option("--taps", sweep.taps, "Band-pass tap count")
        ->capture_default_str();
    sweep_cmd->add_option("--window", sweep.window, "Peak search half-width in Hz")
        ->capture_default_str();
    sweep_cmd->add_option("--mode", sweep.mode, "Decimation mode: mean or drop")
        ->capture_default_str();
    sweep_cmd->add_flag("--no-droop-comp", sweep.no_droop_comp,
                        "Skip block-mean droop equalization");
    sweep_cmd->callback([&sweep] { run_sweep(sweep); });

    BenchOptions bench;
    CLI::App* bench_cmd = app.add_subcommand(
        "bench", "Time the transform and compare against its closed-form cost");
    bench_cmd->add_option("--base-n", bench.base_n, "Undecimated length")
        ->capture_default_str();
    bench_cmd->add_option("--base-rate", bench.base_rate, "Undecimated rate in Hz")
        ->capture_default_str();
    bench_cmd->add_option("--factors", bench.factors, "Decimation factors")
        ->delimiter(',')
        ->capture_default_str();
    bench_cmd->add_option("--reps", bench.reps, "Timing repetitions")
        ->capture_default_str();
    bench_cmd->add_option("--seed", bench.seed, "Input generator seed")
        ->capture_default_str();
    bench_cmd->add_option("--out", bench.out,
                          "Output prefix ('' suppresses the CSV)")
        ->capture_default_str();
    bench_cmd->callback([&bench] { run_bench(bench); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitValidation;
    } catch (const CliError& e) {
        std::fprintf(stderr, "error: %s\n", e.message.c_str());
        return e.exit_code;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
