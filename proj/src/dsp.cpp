#include "mcsa/dsp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mcsa {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_power_of_two(std::size_t n, const char* where) {
    if (!is_power_of_two(n))
        throw InvalidLength(std::string(where) + ": length must be a power of two, got " +
                            std::to_string(n));
}

// In-place radix-2 decimation in time. Twiddles come from one full-size
// table indexed with a stride, so every stage uses identical factors on
// every call; the operation counts are exact, not estimates.
OpCount fft_in_place(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(a[i], a[j]);
    }

    std::vector<std::complex<double>> twiddle(n / 2);
    const double sign = inverse ? 1.0 : -1.0;
    for (std::size_t k = 0; k < n / 2; ++k)
        twiddle[k] = std::polar(1.0, sign * kTwoPi * static_cast<double>(k) /
                                          static_cast<double>(n));

    OpCount ops;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t stride = n / len;
        for (std::size_t base = 0; base < n; base += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const std::complex<double> u = a[base + k];
                const std::complex<double> t = twiddle[k * stride] * a[base + k + half];
                a[base + k] = u + t;
                a[base + k + half] = u - t;
                ops.complex_multiplications += 1;
                ops.complex_additions += 2;
            }
        }
    }
    return ops;
}

} // namespace

std::pair<ComplexSeries, OpCount> fft(const ComplexSeries& x) {
    require_power_of_two(x.size(), "fft");
    ComplexSeries out{x.values, x.sample_rate_hz};
    const OpCount ops = fft_in_place(out.values, false);
    return {std::move(out), ops};
}

ComplexSeries inverse_fft(const ComplexSeries& x) {
    require_power_of_two(x.size(), "inverse_fft");
    ComplexSeries out{x.values, x.sample_rate_hz};
    fft_in_place(out.values, true);
    const double scale = 1.0 / static_cast<double>(out.size());
    for (auto& v : out.values)
        v *= scale;
    return out;
}

TimeSeries hilbert_envelope(const TimeSeries& x) {
    const std::size_t n = x.size();
    require_power_of_two(n, "hilbert_envelope");

    ComplexSeries buf;
    buf.sample_rate_hz = x.sample_rate_hz;
    buf.values.assign(x.samples.begin(), x.samples.end());
    fft_in_place(buf.values, false);

    // Analytic-signal weights: DC and Nyquist kept, positive frequencies
    // doubled, negative frequencies removed.
    const std::size_t half = n / 2;
    for (std::size_t k = 1; k < half; ++k)
        buf.values[k] *= 2.0;
    for (std::size_t k = half + 1; k < n; ++k)
        buf.values[k] = 0.0;

    fft_in_place(buf.values, true);
    const double scale = 1.0 / static_cast<double>(n);

    TimeSeries out;
    out.sample_rate_hz = x.sample_rate_hz;
    out.label = x.label;
    out.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.samples[i] = std::abs(buf.values[i] * scale);
    return out;
}

TimeSeries remove_dc(const TimeSeries& x) {
    if (x.samples.empty())
        throw InvalidParameter("remove_dc: empty input");
    long double acc = 0.0L;
    for (double v : x.samples)
        acc += v;
    const double mean = static_cast<double>(acc / static_cast<long double>(x.size()));

    TimeSeries out;
    out.sample_rate_hz = x.sample_rate_hz;
    out.label = x.label;
    out.samples.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out.samples[i] = x.samples[i] - mean;
    return out;
}

Spectrum amplitude_spectrum(const TimeSeries& x, OpCount* ops) {
    const std::size_t n = x.size();
    require_power_of_two(n, "amplitude_spectrum");
    if (!(x.sample_rate_hz > 0.0))
        throw InvalidParameter("amplitude_spectrum: sample rate must be positive");

    ComplexSeries buf;
    buf.sample_rate_hz = x.sample_rate_hz;
    buf.values.assign(x.samples.begin(), x.samples.end());
    const OpCount cost = fft_in_place(buf.values, false);
    if (ops)
        *ops = cost;

    const std::size_t half = n / 2;
    const double scale = 1.0 / static_cast<double>(n);

    Spectrum s;
    s.source_rate_hz = x.sample_rate_hz;
    s.source_len = n;
    s.bin_width_hz = x.sample_rate_hz / static_cast<double>(n);
    s.magnitudes.resize(half + 1);
    s.magnitudes[0] = std::abs(buf.values[0]) * scale;
    for (std::size_t k = 1; k < half; ++k)
        s.magnitudes[k] = 2.0 * std::abs(buf.values[k]) * scale;
    if (n >= 2)
        s.magnitudes[half] = std::abs(buf.values[half]) * scale;
    return s;
}

TimeSeries decimate(const TimeSeries& x, int factor, DecimationMode mode) {
    if (factor < 1)
        throw InvalidParameter("decimate: factor must be at least 1");
    if (x.samples.empty() || static_cast<std::size_t>(factor) > x.size())
        throw EmptyOutput("decimate: factor exceeds the signal length");

    const auto p = static_cast<std::size_t>(factor);
    const std::size_t m = x.size() / p;

    TimeSeries out;
    out.sample_rate_hz = x.sample_rate_hz / factor;
    out.label = x.label;
    out.samples.resize(m);
    if (mode == DecimationMode::keep_first) {
        for (std::size_t i = 0; i < m; ++i)
            out.samples[i] = x.samples[i * p];
    } else {
        for (std::size_t i = 0; i < m; ++i) {
            double acc = 0.0;
            const std::size_t base = i * p;
            for (std::size_t j = 0; j < p; ++j)
                acc += x.samples[base + j];
            out.samples[i] = acc / static_cast<double>(p);
        }
    }
    return out;
}

double block_mean_gain(double freq_hz, int factor, double output_rate_hz) {
    if (factor < 1)
        throw InvalidParameter("block_mean_gain: factor must be at least 1");
    if (!(output_rate_hz > 0.0))
        throw InvalidParameter("block_mean_gain: output rate must be positive");
    if (factor == 1 || freq_hz == 0.0)
        return 1.0;
    const double num = std::sin(std::numbers::pi * freq_hz / output_rate_hz);
    const double den = static_cast<double>(factor) *
                       std::sin(std::numbers::pi * freq_hz / (output_rate_hz * factor));
    return num / den;
}

TimeSeries equalize_block_mean_droop(const TimeSeries& x, int factor) {
    if (factor < 1)
        throw InvalidParameter("equalize_block_mean_droop: factor must be at least 1");
    if (factor == 1)
        return x;
    const std::size_t n = x.size();
    require_power_of_two(n, "equalize_block_mean_droop");
    if (!(x.sample_rate_hz > 0.0))
        throw InvalidParameter("equalize_block_mean_droop: sample rate must be positive");

    ComplexSeries buf;
    buf.sample_rate_hz = x.sample_rate_hz;
    buf.values.assign(x.samples.begin(), x.samples.end());
    fft_in_place(buf.values, false);

    // Bin k sits at min(k, n-k) * rate / n; dividing by the block-mean gain
    // there restores the magnitudes the mean suppressed.
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t fold = std::min(k, n - k);
        const double f = static_cast<double>(fold) * x.sample_rate_hz /
                         static_cast<double>(n);
        buf.values[k] /= block_mean_gain(f, factor, x.sample_rate_hz);
    }

    fft_in_place(buf.values, true);
    const double scale = 1.0 / static_cast<double>(n);

    TimeSeries out;
    out.sample_rate_hz = x.sample_rate_hz;
    out.label = x.label;
    out.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.samples[i] = buf.values[i].real() * scale;
    return out;
}

FilterKernel design_bandpass(double low_cutoff_hz, double high_cutoff_hz,
                             double sample_rate_hz, int num_taps) {
    if (!(sample_rate_hz > 0.0))
        throw InvalidParameter("design_bandpass: sample rate must be positive");
    if (!(low_cutoff_hz > 0.0 && low_cutoff_hz < high_cutoff_hz &&
          high_cutoff_hz < sample_rate_hz / 2.0))
        throw InvalidParameter("design_bandpass: need 0 < low < high < rate/2");
    if (num_taps < 11 || num_taps % 2 == 0)
        throw InvalidParameter("design_bandpass: tap count must be odd and at least 11");

    const auto m = static_cast<std::size_t>(num_taps);
    const std::size_t centre = m / 2;
    std::vector<double> h(m);

    // Difference of two windowed low-pass sincs; taps are mirrored around
    // the centre so the kernel is exactly symmetric.
    auto lowpass = [&](double fc, std::ptrdiff_t offset) {
        if (offset == 0)
            return 2.0 * fc / sample_rate_hz;
        const double t = static_cast<double>(offset);
        return std::sin(kTwoPi * fc * t / sample_rate_hz) / (std::numbers::pi * t);
    };
    for (std::size_t i = 0; i <= centre; ++i) {
        const auto offset = static_cast<std::ptrdiff_t>(i) -
                            static_cast<std::ptrdiff_t>(centre);
        const double window =
            0.54 - 0.46 * std::cos(kTwoPi * static_cast<double>(i) /
                                   static_cast<double>(m - 1));
        const double tap =
            (lowpass(high_cutoff_hz, offset) - lowpass(low_cutoff_hz, offset)) * window;
        h[i] = tap;
        h[m - 1 - i] = tap;
    }

    // Force a zero tap sum so the filter cannot leak DC into the envelope
    // stage, then pin the gain at the band centre to one.
    long double sum = 0.0L;
    for (double v : h)
        sum += v;
    const double bias = static_cast<double>(sum / static_cast<long double>(m));
    for (double& v : h)
        v -= bias;

    const double f_mid = 0.5 * (low_cutoff_hz + high_cutoff_hz);
    std::complex<double> response = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        response += h[i] * std::polar(1.0, -kTwoPi * f_mid * static_cast<double>(i) /
                                               sample_rate_hz);
    const double centre_gain = std::abs(response);
    if (!(centre_gain > 0.0))
        throw InvalidParameter("design_bandpass: degenerate response at band centre");
    for (double& v : h)
        v /= centre_gain;

    return FilterKernel{std::move(h), low_cutoff_hz, high_cutoff_hz, sample_rate_hz};
}

TimeSeries apply_filter(const TimeSeries& x, const FilterKernel& kernel) {
    if (kernel.taps.empty())
        throw InvalidParameter("apply_filter: empty kernel");
    if (x.samples.empty())
        throw InvalidParameter("apply_filter: empty input");
    if (x.sample_rate_hz != kernel.design_rate_hz)
        throw InvalidParameter("apply_filter: kernel was designed for a different rate");

    const std::size_t n = x.size();
    const std::size_t m = kernel.taps.size();
    const std::size_t delay = (m - 1) / 2;

    TimeSeries out;
    out.sample_rate_hz = x.sample_rate_hz;
    out.label = x.label;
    out.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        // y[i] = sum_k h[k] x[i + delay - k], zero outside the record
        const std::size_t pos = i + delay;
        const std::size_t k_lo = pos >= n ? pos - (n - 1) : 0;
        const std::size_t k_hi = std::min(m - 1, pos);
        double acc = 0.0;
        for (std::size_t k = k_lo; k <= k_hi; ++k)
            acc += kernel.taps[k] * x.samples[pos - k];
        out.samples[i] = acc;
    }
    return out;
}

} // namespace mcsa
