#ifndef MCSA_BENCH_HPP
#define MCSA_BENCH_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "mcsa/dsp.hpp"

namespace mcsa {

/// Closed-form cost of the radix-2 transform of length n (a power of two):
/// (n/2)*log2(n) complex multiplications, n*log2(n) complex additions.
OpCount predicted_op_counts(std::uint64_t n);

struct CostRow {
    int factor = 1;
    std::uint64_t n_samples = 0;
    OpCount predicted;
    OpCount measured;
    double mean_time_ms = 0.0;
    double std_time_ms = 0.0;
    int repetitions = 0;
};

/// Times the forward transform at length base_n / factor for each factor.
/// Each row transforms a fresh random signal (deterministic in rng_seed),
/// repeating `repetitions` times; measured counts come from the transform's
/// own accounting and must not vary between repetitions. base_n must be a
/// power of two and every factor a power of two dividing it. Rows are
/// returned in ascending factor order.
std::vector<CostRow> run_cost_table(std::uint64_t base_n, double base_rate_hz,
                                    std::span<const int> factors,
                                    int repetitions, std::uint64_t rng_seed);

} // namespace mcsa

#endif
