#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string cli_path() {
    const char* path = std::getenv("MCSA_CLI");
    REQUIRE_MESSAGE(path != nullptr, "MCSA_CLI must point at the binary");
    return path;
}

int run(const std::string& args) {
    const std::string cmd =
        '"' + cli_path() + "\" " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

// Fresh directory per test case; removed on destruction.
struct TempDir {
    fs::path path;

    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() /
               ("mcsa_cli_" + std::to_string(rd()) + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const {
        return (path / name).string();
    }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), (path + " should exist"));
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

json slurp_json(const std::string& path) { return json::parse(slurp(path)); }

std::size_t line_count(const std::string& text) {
    std::size_t lines = 0;
    for (char c : text)
        if (c == '\n')
            ++lines;
    return lines;
}

// small but analyzable record: 16 s at 2048 Hz
std::string synth_small(const TempDir& dir, const std::string& name,
                        const std::string& extra = "") {
    const std::string base = dir.file(name);
    const int rc = run("synth --fs 2048 --duration 16 --seed 5 --out " + base +
                       (extra.empty() ? "" : " " + extra));
    REQUIRE(rc == 0);
    return base;
}

} // namespace

TEST_CASE("usage errors exit with code 2") {
    CHECK(run("") == 2);
    CHECK(run("frobnicate") == 2);
    CHECK(run("synth") == 2);                     // --out is required
    CHECK(run("synth --bogus-flag x --out y") == 2);
    CHECK(run("analyze") == 2);                   // --in is required
}

TEST_CASE("parameter validation failures exit with code 2") {
    TempDir dir;
    CHECK(run("synth --duration 0 --out " + dir.file("sig")) == 2);
    CHECK(run("synth --slip 1.5 --out " + dir.file("sig")) == 2);
    CHECK(run("synth --load-pct 30 --out " + dir.file("sig")) == 2);
    CHECK(run("synth --slip 0.02 --rpm 1700 --out " + dir.file("sig")) == 2);
    CHECK(!fs::exists(dir.file("sig.f64")));

    const std::string base = synth_small(dir, "sig");
    CHECK(run("analyze --in " + base + " --factor 3") == 2);
    CHECK(run("analyze --in " + base + " --band 70:40") == 2);
    CHECK(run("analyze --in " + base + " --band nonsense") == 2);
    CHECK(run("analyze --in " + base + " --taps 512") == 2);
    CHECK(run("analyze --in " + base + " --mode sideways") == 2);
    CHECK(run("sweep --in " + base + " --tolerance-pct 0") == 2);
    CHECK(run("bench --base-n 1000 --reps 1") == 2);
    CHECK(run("bench --factors 3 --base-n 1024 --reps 1") == 2);
}

TEST_CASE("missing or corrupt signal files exit with code 3") {
    TempDir dir;
    CHECK(run("analyze --in " + dir.file("nonexistent")) == 3);

    // header/payload mismatch: declared n_samples is wrong
    const std::string base = synth_small(dir, "sig");
    json header = slurp_json(base + ".json");
    header["n_samples"] = header["n_samples"].get<std::uint64_t>() + 1;
    std::ofstream(base + ".json") << header.dump(2);
    CHECK(run("analyze --in " + base) == 3);

    // unparseable header
    std::ofstream(base + ".json") << "{ not json";
    CHECK(run("analyze --in " + base) == 3);

    // wrong format version
    header["n_samples"] = header["n_samples"].get<std::uint64_t>() - 1;
    header["format_version"] = 2;
    std::ofstream(base + ".json") << header.dump(2);
    CHECK(run("analyze --in " + base) == 3);

    // malformed csv
    std::ofstream(dir.file("bad.csv")) << "time_s,amplitude\n0.0,1.0\nzap,2\n";
    CHECK(run("analyze --in " + dir.file("bad.csv")) == 3);
}

TEST_CASE("synth writes a coherent header and payload") {
    TempDir dir;
    const std::string base = synth_small(dir, "sig", "--label hello");

    const json header = slurp_json(base + ".json");
    CHECK(header["format_version"] == 1);
    CHECK(header["sample_rate_hz"] == 2048.0);
    CHECK(header["n_samples"] == 32768);
    CHECK(header["label"] == "hello");

    const std::string payload = slurp(base + ".f64");
    CHECK(payload.size() == 32768 * sizeof(double));
}

TEST_CASE("synth is reproducible for a fixed seed") {
    TempDir dir;
    const std::string a = synth_small(dir, "a");
    const std::string b = synth_small(dir, "b");
    CHECK(slurp(a + ".f64") == slurp(b + ".f64"));

    REQUIRE(run("synth --fs 2048 --duration 16 --seed 6 --out " +
                dir.file("c")) == 0);
    CHECK(slurp(a + ".f64") != slurp(dir.file("c.f64")));
}

TEST_CASE("analyze emits a report and a spectrum") {
    TempDir dir;
    const std::string base = synth_small(dir, "sig");
    REQUIRE(run("analyze --in " + base + " --factor 2 --out " +
                dir.file("out")) == 0);

    const json report = slurp_json(dir.file("out.report.json"));
    CHECK(report["signal"]["n_samples"] == 32768);
    CHECK(report["pipeline"]["decimation_factor"] == 2);
    CHECK(report["pipeline"]["droop_compensation"] == true);
    REQUIRE(report["peaks"].size() == 1);
    const double target = report["peaks"][0]["target_hz"].get<double>();
    const double found = report["peaks"][0]["found_hz"].get<double>();
    const double bin = report["spectrum"]["bin_width_hz"].get<double>();
    CHECK(target == doctest::Approx(4.33332).epsilon(1e-9));
    CHECK(std::abs(found - target) <= bin * 1.0001);
    CHECK(report["final_fft_ops"]["total"].get<std::uint64_t>() > 0);

    const std::string csv = slurp(dir.file("out.spectrum.csv"));
    const auto bins = report["spectrum"]["n_bins"].get<std::size_t>();
    CHECK(line_count(csv) == bins + 1); // header plus one line per bin
    CHECK(csv.rfind("frequency_hz,magnitude\n", 0) == 0);
}

TEST_CASE("analyze accepts a load preset for the slip") {
    TempDir dir;
    const std::string base = synth_small(dir, "sig", "--load-pct 80");
    REQUIRE(run("analyze --in " + base + " --load-pct 80 --out " +
                dir.file("out")) == 0);
    const json report = slurp_json(dir.file("out.report.json"));
    CHECK(report["motor"]["slip"] == doctest::Approx(0.028889).epsilon(1e-12));
    CHECK(report["peaks"][0]["target_hz"].get<double>() ==
          doctest::Approx(2.0 * 0.028889 * 60.0).epsilon(1e-9));
}

TEST_CASE("analyze ingests csv records") {
    TempDir dir;
    const double rate = 512.0;
    std::ofstream csv(dir.file("rec.csv"));
    csv << std::setprecision(17);
    csv << "time_s,amplitude\n";
    for (int i = 0; i < 4096; ++i) {
        const double t = static_cast<double>(i) / rate;
        const double v =
            (1.0 + 0.1 * std::cos(2.0 * std::numbers::pi * 4.0 * t)) *
            std::cos(2.0 * std::numbers::pi * 60.0 * t);
        csv << t << ',' << v << '\n';
    }
    csv.close();

    REQUIRE(run("analyze --in " + dir.file("rec.csv") + " --slip 0.0333333333 "
                "--out " + dir.file("out")) == 0);
    const json report = slurp_json(dir.file("out.report.json"));
    CHECK(report["signal"]["sample_rate_hz"].get<double>() ==
          doctest::Approx(rate).epsilon(1e-9));
    // modulation at 4 Hz, slip chosen to match: the peak should be right there
    const double found = report["peaks"][0]["found_hz"].get<double>();
    CHECK(found == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("sweep writes per-factor artifacts and a summary") {
    TempDir dir;
    const std::string base = synth_small(dir, "sig");
    REQUIRE(run("sweep --in " + base + " --max-exp 2 --out " + dir.file("s")) ==
            0);

    const json summary = slurp_json(dir.file("s.sweep.json"));
    CHECK(summary["max_safe_factor"] == 4);
    REQUIRE(summary["rows"].size() == 2);
    CHECK(summary["rows"][0]["factor"] == 2);
    CHECK(summary["rows"][0]["passed"] == true);
    CHECK(summary["rows"][1]["factor"] == 4);
    CHECK(summary["targets_hz"].size() == 1);

    CHECK(fs::exists(dir.file("s.factor1.spectrum.csv")));
    CHECK(fs::exists(dir.file("s.factor2.spectrum.csv")));
    CHECK(fs::exists(dir.file("s.factor4.spectrum.csv")));

    const std::string errors = slurp(dir.file("s.error_vs_factor.csv"));
    CHECK(line_count(errors) == 3); // header + factors 2 and 4
    CHECK(errors.rfind("factor,mean_error_pct\n", 0) == 0);
}

TEST_CASE("bench reports the closed-form costs") {
    TempDir dir;
    REQUIRE(run("bench --base-n 1024 --factors 1,2,4 --reps 2 --seed 9 --out " +
                dir.file("b")) == 0);
    const std::string csv = slurp(dir.file("b.cost.csv"));
    REQUIRE(line_count(csv) == 4);

    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line); // header
    const struct {
        int factor;
        unsigned n, mul, add;
    } expected[] = {
        {1, 1024, 5120, 10240},
        {2, 512, 2304, 4608},
        {4, 256, 1024, 2048},
    };
    for (const auto& want : expected) {
        REQUIRE(std::getline(lines, line));
        int factor = 0;
        unsigned n = 0, mul = 0, add = 0, total = 0;
        REQUIRE(std::sscanf(line.c_str(), "%d,%u,%u,%u,%u", &factor, &n, &mul,
                            &add, &total) == 5);
        CHECK(factor == want.factor);
        CHECK(n == want.n);
        CHECK(mul == want.mul);
        CHECK(add == want.add);
        CHECK(total == want.mul + want.add);
    }
}

TEST_CASE("repeated runs produce identical non-timing artifacts") {
    TempDir dir;
    const std::string base = synth_small(dir, "sig");

    auto strip_prefix = [&](const std::string& text, const std::string& from,
                            const std::string& to) {
        std::string out = text;
        std::size_t pos = 0;
        while ((pos = out.find(from, pos)) != std::string::npos)
            out.replace(pos, from.size(), to);
        return out;
    };

    // analyze twice; the reports embed their own output prefix
    REQUIRE(run("analyze --in " + base + " --factor 4 --out " + dir.file("a1")) == 0);
    REQUIRE(run("analyze --in " + base + " --factor 4 --out " + dir.file("a2")) == 0);
    CHECK(strip_prefix(slurp(dir.file("a1.report.json")), dir.file("a1"), "X") ==
          strip_prefix(slurp(dir.file("a2.report.json")), dir.file("a2"), "X"));
    CHECK(slurp(dir.file("a1.spectrum.csv")) == slurp(dir.file("a2.spectrum.csv")));

    // sweep twice, same normalization
    REQUIRE(run("sweep --in " + base + " --max-exp 2 --out " + dir.file("s1")) == 0);
    REQUIRE(run("sweep --in " + base + " --max-exp 2 --out " + dir.file("s2")) == 0);
    const std::string s1 =
        strip_prefix(slurp(dir.file("s1.sweep.json")), dir.file("s1"), "X");
    const std::string s2 =
        strip_prefix(slurp(dir.file("s2.sweep.json")), dir.file("s2"), "X");
    CHECK(s1 == s2);
    CHECK(slurp(dir.file("s1.error_vs_factor.csv")) ==
          slurp(dir.file("s2.error_vs_factor.csv")));
    CHECK(slurp(dir.file("s1.factor4.spectrum.csv")) ==
          slurp(dir.file("s2.factor4.spectrum.csv")));
}
