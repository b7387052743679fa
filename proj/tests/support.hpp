#ifndef MCSA_TESTS_SUPPORT_HPP
#define MCSA_TESTS_SUPPORT_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <random>
#include <vector>

#include "mcsa/types.hpp"

// Reference implementations the tests trust instead of the library's own
// transforms: direct O(n^2) summation and pointwise closed forms.
namespace testsupport {

inline std::vector<std::complex<double>>
dft_direct(const std::vector<std::complex<double>>& in, bool inverse = false) {
    const std::size_t n = in.size();
    const double sign = inverse ? 1.0 : -1.0;
    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            const double angle = sign * 2.0 * std::numbers::pi *
                                 static_cast<double>(k) * static_cast<double>(t) /
                                 static_cast<double>(n);
            acc += in[t] * std::complex<double>(std::cos(angle), std::sin(angle));
        }
        out[k] = inverse ? acc / static_cast<double>(n) : acc;
    }
    return out;
}

// |H(f)| of an FIR kernel, evaluated by direct summation.
inline double dtft_gain(const std::vector<double>& taps, double freq_hz,
                        double sample_rate_hz) {
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < taps.size(); ++i) {
        const double angle = -2.0 * std::numbers::pi * freq_hz *
                             static_cast<double>(i) / sample_rate_hz;
        acc += taps[i] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    return std::abs(acc);
}

inline mcsa::TimeSeries tone(double amplitude, double freq_hz,
                             double sample_rate_hz, std::size_t n,
                             double phase = 0.0) {
    mcsa::TimeSeries out;
    out.sample_rate_hz = sample_rate_hz;
    out.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.samples[i] = amplitude * std::cos(2.0 * std::numbers::pi * freq_hz *
                                                  static_cast<double>(i) /
                                                  sample_rate_hz +
                                              phase);
    return out;
}

// max |a - b| scaled by the largest reference magnitude.
inline double max_rel_deviation(const std::vector<std::complex<double>>& got,
                                const std::vector<std::complex<double>>& want) {
    double worst = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < want.size(); ++i) {
        worst = std::max(worst, std::abs(got[i] - want[i]));
        scale = std::max(scale, std::abs(want[i]));
    }
    return scale > 0.0 ? worst / scale : worst;
}

inline double rms(const std::vector<double>& v, std::size_t begin,
                  std::size_t end) {
    double acc = 0.0;
    for (std::size_t i = begin; i < end; ++i)
        acc += v[i] * v[i];
    return std::sqrt(acc / static_cast<double>(end - begin));
}

inline std::vector<std::complex<double>>
random_complex(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    auto uniform = [&] {
        return static_cast<double>(gen() >> 11) * 0x1.0p-52 - 1.0;
    };
    std::vector<std::complex<double>> out(n);
    for (auto& v : out)
        v = {uniform(), uniform()};
    return out;
}

inline std::vector<double> random_real(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::vector<double> out(n);
    for (auto& v : out)
        v = static_cast<double>(gen() >> 11) * 0x1.0p-52 - 1.0;
    return out;
}

} // namespace testsupport

#endif
