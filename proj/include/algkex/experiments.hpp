#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "algkex/attack.hpp"

namespace algkex {

struct GridPoint {
    std::string id;
    GroupParams params;
    IntVector u;
    IntVector v;
    OrbitRange range = OrbitRange::Integers;
    std::size_t gen_radius = 2;
    std::size_t max_iter = 32;
    std::size_t beam = 8;
    std::size_t max_nodes = 512;
    std::uint64_t w_max_exp = 2;
    std::int64_t w_bound = 4;
    SamplePolicy policy{24, 6, 0.75, 0};
};

struct ExperimentOptions {
    std::size_t trials = 10;
    std::uint64_t seed = 0;
    std::size_t threads = 1;
    /// Off: mean_ms is written as "NA".
    bool timing = false;
    /// When set, one JSON object per trial and mode is written here.
    std::ostream* trial_log = nullptr;
};

struct MetricsRow {
    std::string grid_id;
    std::string mode;  // "rst" or "descent"
    std::size_t trials = 0;
    std::size_t successes = 0;
    double mean_iters = 0.0;
    double mean_ms = 0.0;
};

/// Seeded protocol instance for one trial of a grid point.
struct TrialInstance {
    P1Round round;
    AttackInstance instance;
};
TrialInstance make_trial(const GridPoint& point, std::uint64_t trial_seed);

/// Runs every grid point through rst_greedy and derivation_descent. Trial i
/// of point p uses derive_seed(seed, p.id, i), so the table does not depend
/// on the thread count.
std::vector<MetricsRow> run_experiments(const std::vector<GridPoint>& grid,
                                        const ExperimentOptions& options);

inline constexpr const char* kCsvHeader = "grid_id,mode,trials,successes,mean_iters,mean_ms";
std::string to_csv(const std::vector<MetricsRow>& rows, bool timing);

/// Small built-in grid: abelian control, BS(1,2) and a 2x2 triangular case.
std::vector<GridPoint> default_grid();

}  // namespace algkex
