#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "mcsa/bench.hpp"

using namespace mcsa;

TEST_CASE("predicted operation counts at known sizes") {
    const OpCount tiny = predicted_op_counts(2);
    CHECK(tiny.complex_multiplications == 1);
    CHECK(tiny.complex_additions == 2);
    CHECK(tiny.total() == 3);

    const OpCount mid = predicted_op_counts(65536);
    CHECK(mid.complex_multiplications == 524288);
    CHECK(mid.complex_additions == 1048576);
    CHECK(mid.total() == 1572864);

    const OpCount full = predicted_op_counts(524288);
    CHECK(full.complex_multiplications == 4980736);
    CHECK(full.complex_additions == 9961472);
    CHECK(full.total() == 14942208);

    const OpCount small = predicted_op_counts(32768);
    CHECK(small.complex_multiplications == 245760);
    CHECK(small.complex_additions == 491520);
    CHECK(small.total() == 737280);
}

TEST_CASE("the full-to-decimated cost ratio is about twenty") {
    const double ratio = static_cast<double>(predicted_op_counts(524288).total()) /
                         static_cast<double>(predicted_op_counts(32768).total());
    CHECK(ratio == doctest::Approx(304.0 / 15.0).epsilon(1e-12));
    CHECK(std::round(ratio * 100.0) / 100.0 == 20.27);
}

TEST_CASE("predicted counts reject other lengths") {
    CHECK_THROWS_AS((void)predicted_op_counts(0), InvalidLength);
    CHECK_THROWS_AS((void)predicted_op_counts(3), InvalidLength);
    CHECK_THROWS_AS((void)predicted_op_counts(524288 - 1), InvalidLength);
}

TEST_CASE("cost table measures exactly what the closed form predicts") {
    const std::vector<int> factors = {4, 1, 2}; // deliberately unsorted
    const auto rows = run_cost_table(4096, 5120.0, factors, 3, 42);
    REQUIRE(rows.size() == 3);

    int expected_factor = 1;
    for (const auto& row : rows) {
        CHECK(row.factor == expected_factor);
        CHECK(row.n_samples == 4096u / static_cast<unsigned>(expected_factor));
        CHECK(row.measured.complex_multiplications ==
              row.predicted.complex_multiplications);
        CHECK(row.measured.complex_additions == row.predicted.complex_additions);
        CHECK(row.mean_time_ms > 0.0);
        CHECK(row.std_time_ms >= 0.0);
        CHECK(row.repetitions == 3);
        expected_factor *= 2;
    }
}

TEST_CASE("cost table with one repetition reports zero spread") {
    const std::vector<int> factors = {1};
    const auto rows = run_cost_table(1024, 1024.0, factors, 1, 7);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].std_time_ms == 0.0);
}

TEST_CASE("cost table validates its inputs") {
    const std::vector<int> ok = {1, 2};
    const std::vector<int> not_pow2 = {3};
    const std::vector<int> too_big = {8192};
    const std::vector<int> none;

    CHECK_THROWS_AS((void)run_cost_table(1000, 5120.0, ok, 2, 1), InvalidLength);
    CHECK_THROWS_AS((void)run_cost_table(1024, 0.0, ok, 2, 1), InvalidParameter);
    CHECK_THROWS_AS((void)run_cost_table(1024, 5120.0, not_pow2, 2, 1),
                    InvalidParameter);
    CHECK_THROWS_AS((void)run_cost_table(1024, 5120.0, too_big, 2, 1),
                    InvalidParameter);
    CHECK_THROWS_AS((void)run_cost_table(1024, 5120.0, none, 2, 1),
                    InvalidParameter);
    CHECK_THROWS_AS((void)run_cost_table(1024, 5120.0, ok, 0, 1),
                    InvalidParameter);
}
