#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "hermlag/integration.hpp"

namespace hermlag::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2, kData = 3 };

enum class Format { Json, Csv, Pretty };

struct RunConfig {
    int n = 2;
    std::string nu = "6";
    int max_weight = 2;
    Format format = Format::Json;
    int quad_order = 20;
    std::uint64_t seed = 20240917;
    std::string out;  // empty: stdout
};

/// Entry point shared by the executable and the tests. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Suites: eigen, lower, raise, z, homo, ortho, gamma, intertwine. Records come back in
/// check-id order whatever the thread schedule.
std::vector<CheckRecord> run_suite(const std::string& suite, const RunConfig& cfg);
const std::vector<std::string>& suite_names();

/// Runs the tasks on a small thread pool; result k belongs to task k.
std::vector<CheckRecord> run_parallel(const std::vector<std::function<CheckRecord()>>& tasks);

/// Draws from mt19937_64 without the implementation-defined std distributions, so a
/// seed gives the same stream on every platform.
class PortableRng {
public:
    explicit PortableRng(std::uint64_t seed) : engine_(seed) {}
    /// Uniform integer in [lo, hi].
    long uniform_int(long lo, long hi);
    /// Uniform double in [0, 1).
    double uniform01();

private:
    std::mt19937_64 engine_;
};

/// e^{−tr s}·p with p a random Gaussian-rational polynomial of total degree ≤ max_degree.
ExpPoly random_exppoly(int n, int max_degree, PortableRng& rng, int terms = 6);

/// Parses "1,0", "(1,0)" or "1 0" into a partition padded to length n.
Partition parse_partition(const std::string& text, int n);

}  // namespace hermlag::cli
