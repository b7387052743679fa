#include "mcsa/bench.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

namespace mcsa {

OpCount predicted_op_counts(std::uint64_t n) {
    if (!is_power_of_two(n))
        throw InvalidLength("predicted_op_counts: length must be a power of two, got " +
                            std::to_string(n));
    const auto stages = static_cast<std::uint64_t>(std::bit_width(n) - 1);
    OpCount ops;
    ops.complex_multiplications = (n / 2) * stages;
    ops.complex_additions = n * stages;
    return ops;
}

std::vector<CostRow> run_cost_table(std::uint64_t base_n, double base_rate_hz,
                                    std::span<const int> factors,
                                    int repetitions, std::uint64_t rng_seed) {
    if (!is_power_of_two(base_n))
        throw InvalidLength("cost table: base length must be a power of two");
    if (!(base_rate_hz > 0.0))
        throw InvalidParameter("cost table: base rate must be positive");
    if (factors.empty())
        throw InvalidParameter("cost table: no factors given");
    if (repetitions < 1)
        throw InvalidParameter("cost table: need at least one repetition");
    for (int f : factors) {
        if (f < 1 || !is_power_of_two(static_cast<std::uint64_t>(f)))
            throw InvalidParameter("cost table: factors must be powers of two");
        if (static_cast<std::uint64_t>(f) > base_n)
            throw InvalidParameter("cost table: factor exceeds the base length");
    }

    std::vector<int> ordered(factors.begin(), factors.end());
    std::sort(ordered.begin(), ordered.end());

    std::mt19937_64 gen(rng_seed);
    std::vector<CostRow> rows;
    rows.reserve(ordered.size());

    for (int factor : ordered) {
        const std::uint64_t n = base_n / static_cast<std::uint64_t>(factor);

        ComplexSeries input;
        input.sample_rate_hz = base_rate_hz / factor;
        input.values.resize(n);
        for (auto& v : input.values)
            v = static_cast<double>(gen() >> 11) * 0x1.0p-52 - 1.0;

        CostRow row;
        row.factor = factor;
        row.n_samples = n;
        row.predicted = predicted_op_counts(n);
        row.repetitions = repetitions;

        // One untimed pass warms caches and pins the expected counts.
        row.measured = fft(input).second;

        std::vector<double> times_ms(static_cast<std::size_t>(repetitions));
        for (auto& t : times_ms) {
            const auto start = std::chrono::steady_clock::now();
            const auto [transformed, ops] = fft(input);
            const auto stop = std::chrono::steady_clock::now();
            if (ops.complex_multiplications != row.measured.complex_multiplications ||
                ops.complex_additions != row.measured.complex_additions)
                throw std::logic_error("cost table: operation counts varied "
                                       "between repetitions");
            t = std::chrono::duration<double, std::milli>(stop - start).count();
        }

        double mean = 0.0;
        for (double t : times_ms)
            mean += t;
        mean /= static_cast<double>(times_ms.size());
        double var = 0.0;
        for (double t : times_ms)
            var += (t - mean) * (t - mean);
        row.mean_time_ms = mean;
        row.std_time_ms = times_ms.size() > 1
                              ? std::sqrt(var / static_cast<double>(times_ms.size() - 1))
                              : 0.0;

        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace mcsa
