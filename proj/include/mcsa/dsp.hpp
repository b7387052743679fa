#ifndef MCSA_DSP_HPP
#define MCSA_DSP_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "mcsa/types.hpp"

namespace mcsa {

/// Arithmetic cost of a transform, counted in complex operations.
struct OpCount {
    std::uint64_t complex_multiplications = 0;
    std::uint64_t complex_additions = 0;

    std::uint64_t total() const noexcept {
        return complex_multiplications + complex_additions;
    }
};

/// Linear-phase FIR kernel plus the band and rate it was designed for.
struct FilterKernel {
    std::vector<double> taps;
    double low_cutoff_hz = 0.0;
    double high_cutoff_hz = 0.0;
    double design_rate_hz = 0.0;
};

/// Single-sided amplitude spectrum. magnitudes[k] is the amplitude at
/// frequency k * bin_width_hz; bin_width_hz = source_rate_hz / source_len.
struct Spectrum {
    std::vector<double> magnitudes;
    double bin_width_hz = 0.0;
    double source_rate_hz = 0.0;
    std::uint64_t source_len = 0;
};

enum class DecimationMode {
    block_mean, ///< each output sample is the mean of its block
    keep_first, ///< each output sample is the first sample of its block
};

/// Hamming-windowed sinc band-pass with an odd tap count (>= 11).
/// The kernel is forced to a zero sum (no DC leakage) and normalised to
/// unit gain at the band centre (low + high) / 2.
/// Requires 0 < low < high < rate / 2.
FilterKernel design_bandpass(double low_cutoff_hz, double high_cutoff_hz,
                             double sample_rate_hz, int num_taps);

/// Zero-phase application: the output is delay-compensated by (taps-1)/2, so
/// y and x are the same length and aligned. The signal is treated as zero
/// outside its ends. kernel.design_rate_hz must match x.sample_rate_hz.
TimeSeries apply_filter(const TimeSeries& x, const FilterKernel& kernel);

/// Reduces the rate by an integer factor: output length floor(n / factor),
/// output rate sample_rate_hz / factor. factor in [1, n].
TimeSeries decimate(const TimeSeries& x, int factor,
                    DecimationMode mode = DecimationMode::block_mean);

/// Magnitude response of block-mean decimation by `factor` at frequency f,
/// expressed at the decimated rate output_rate_hz:
///   g(f) = sin(pi*f/r) / (factor * sin(pi*f/(r*factor))),  r = output_rate_hz.
/// g(0) = 1 and g decreases towards the decimated Nyquist frequency.
double block_mean_gain(double freq_hz, int factor, double output_rate_hz);

/// Undoes the passband droop of block-mean decimation: scales each frequency
/// bin of x by 1 / block_mean_gain and transforms back. Exact inverse of the
/// filtering effect of the block mean (not of aliased content). Power-of-two
/// length required.
TimeSeries equalize_block_mean_droop(const TimeSeries& x, int factor);

/// Radix-2 decimation-in-time FFT. Length must be a power of two.
/// The returned OpCount holds exactly (n/2)*log2(n) complex multiplications
/// and n*log2(n) complex additions, counted butterfly by butterfly.
std::pair<ComplexSeries, OpCount> fft(const ComplexSeries& x);

/// Inverse transform via the conjugation identity; same length rule.
ComplexSeries inverse_fft(const ComplexSeries& x);

/// Envelope by frequency-domain analytic signal: double the positive
/// frequencies, zero the negative ones, keep DC and Nyquist, inverse
/// transform, take the modulus. Power-of-two length required.
TimeSeries hilbert_envelope(const TimeSeries& x);

/// Subtracts the arithmetic mean.
TimeSeries remove_dc(const TimeSeries& x);

/// Single-sided amplitude spectrum of a real signal (power-of-two length).
/// Bin 0 is |X0|/n, interior bins 2|Xk|/n, the Nyquist bin |X_{n/2}|/n.
/// When ops is non-null it receives the cost of the forward transform.
Spectrum amplitude_spectrum(const TimeSeries& x, OpCount* ops = nullptr);

} // namespace mcsa

#endif
