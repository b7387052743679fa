#ifndef MCSA_TYPES_HPP
#define MCSA_TYPES_HPP

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcsa {

enum class ErrorCode {
    invalid_parameter,
    invalid_length,
    empty_output,
    undefined_reference,
};

/// Base class for all toolkit errors. Carries a machine-readable code so the
/// C boundary can translate exceptions into status values.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

struct InvalidParameter : Error {
    explicit InvalidParameter(const std::string& what)
        : Error(ErrorCode::invalid_parameter, what) {}
};

/// Length is not a power of two where the transform requires one.
struct InvalidLength : Error {
    explicit InvalidLength(const std::string& what)
        : Error(ErrorCode::invalid_length, what) {}
};

struct EmptyOutput : Error {
    explicit EmptyOutput(const std::string& what)
        : Error(ErrorCode::empty_output, what) {}
};

struct UndefinedReference : Error {
    explicit UndefinedReference(const std::string& what)
        : Error(ErrorCode::undefined_reference, what) {}
};

/// Uniformly sampled real-valued signal.
struct TimeSeries {
    std::vector<double> samples;
    double sample_rate_hz = 0.0;
    std::string label;

    std::size_t size() const noexcept { return samples.size(); }
    double duration_s() const noexcept {
        return sample_rate_hz > 0.0 ? static_cast<double>(samples.size()) / sample_rate_hz : 0.0;
    }
};

/// Uniformly sampled complex-valued signal (analytic signals, transform buffers).
struct ComplexSeries {
    std::vector<std::complex<double>> values;
    double sample_rate_hz = 0.0;

    std::size_t size() const noexcept { return values.size(); }
};

constexpr bool is_power_of_two(std::uint64_t n) noexcept {
    return n != 0 && (n & (n - 1)) == 0;
}

} // namespace mcsa

#endif
