#include "algkex/experiments.hpp"

#include <cstdio>
#include <future>
#include <sstream>

#include "algkex/generate.hpp"
#include "algkex/json_io.hpp"

namespace algkex {

namespace {

struct TrialOutcome {
    AttackResult rst;
    AttackResult descent;
};

TrialOutcome run_trial(const GridPoint& point, std::uint64_t trial_seed) {
    const TrialInstance t = make_trial(point, trial_seed);
    return {rst_greedy(t.instance, length, orbit_distance, point.max_iter),
            derivation_descent(t.instance, length, point.beam, point.max_nodes)};
}

std::string fixed3(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    return buf;
}

}  // namespace

TrialInstance make_trial(const GridPoint& point, std::uint64_t trial_seed) {
    Rng rng(derive_seed(trial_seed, "w"));
    const GroupElement w = random_element(point.params, rng, point.w_max_exp, point.w_bound);
    const PublicParams1 pub = p1_setup(point.params, point.u, point.v, w, point.range);
    P1Round round = p1_round(pub, point.policy.with_seed(derive_seed(trial_seed, "alice")),
                             point.policy.with_seed(derive_seed(trial_seed, "bob")));
    AttackInstance instance = make_attack_instance(pub, round, point.gen_radius);
    return TrialInstance{std::move(round), std::move(instance)};
}

std::vector<MetricsRow> run_experiments(const std::vector<GridPoint>& grid,
                                        const ExperimentOptions& options) {
    std::vector<MetricsRow> rows;
    if (options.trials == 0) return rows;
    const std::size_t threads = options.threads == 0 ? 1 : options.threads;

    for (const GridPoint& point : grid) {
        std::vector<TrialOutcome> outcomes(options.trials);
        for (std::size_t start = 0; start < options.trials; start += threads) {
            std::vector<std::future<TrialOutcome>> batch;
            for (std::size_t i = start; i < std::min(options.trials, start + threads); ++i) {
                const std::uint64_t seed = derive_seed(options.seed, point.id, i);
                batch.push_back(std::async(threads > 1 ? std::launch::async : std::launch::deferred,
                                           [&point, seed] { return run_trial(point, seed); }));
            }
            for (std::size_t i = 0; i < batch.size(); ++i) outcomes[start + i] = batch[i].get();
        }

        for (const char* mode : {"rst", "descent"}) {
            const bool rst = std::string(mode) == "rst";
            MetricsRow row{point.id, mode, options.trials, 0, 0.0, 0.0};
            for (std::size_t i = 0; i < outcomes.size(); ++i) {
                const AttackResult& r = rst ? outcomes[i].rst : outcomes[i].descent;
                row.successes += r.success ? 1 : 0;
                row.mean_iters += static_cast<double>(r.iterations);
                row.mean_ms += std::chrono::duration<double, std::milli>(r.elapsed).count();
                if (options.trial_log) {
                    auto j = attack_result_to_json(r, options.timing);
                    nlohmann::ordered_json line;
                    line["grid_id"] = point.id;
                    line["mode"] = mode;
                    line["trial"] = i;
                    line["result"] = std::move(j);
                    *options.trial_log << line.dump() << '\n';
                }
            }
            row.mean_iters /= static_cast<double>(options.trials);
            row.mean_ms /= static_cast<double>(options.trials);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::string to_csv(const std::vector<MetricsRow>& rows, bool timing) {
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const MetricsRow& r : rows) {
        out << r.grid_id << ',' << r.mode << ',' << r.trials << ',' << r.successes << ','
            << fixed3(r.mean_iters) << ',' << (timing ? fixed3(r.mean_ms) : std::string("NA"))
            << '\n';
    }
    return out.str();
}

std::vector<GridPoint> default_grid() {
    std::vector<GridPoint> grid;
    grid.push_back(GridPoint{"abelian-m2", GroupParams(IntMatrix::identity(2)), IntVector{2, 1},
                             IntVector{1, 3}});
    grid.push_back(GridPoint{"bs12", GroupParams(IntMatrix{{2}}), IntVector{1}, IntVector{1}});
    grid.push_back(GridPoint{"tri-m2", GroupParams(IntMatrix{{2, 1}, {0, 3}}), IntVector{1, 0},
                             IntVector{0, 1}});
    return grid;
}

}  // namespace algkex
