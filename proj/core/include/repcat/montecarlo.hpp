#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "repcat/decoder.hpp"
#include "repcat/noise.hpp"
#include "repcat/tableau.hpp"

namespace repcat {

struct RunConfig {
    ExperimentKind kind = ExperimentKind::Memory;
    int d = 3;
    double p = 0.01;
    uint64_t seed = 1;
    uint64_t min_failures = 500;
    uint64_t max_trajectories = 10'000'000;
    int workers = 0;  // 0 = hardware concurrency
    BuilderOptions builder;
};

struct Estimate {
    uint64_t n = 0;
    uint64_t n_fail = 0;  // trajectories with any failed operator
    std::array<uint64_t, kNumLogicalOps> n_fail_op{};
    double p_l = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    bool censored = false;  // failure quota unmet within the trajectory cap
    double wall_seconds = 0.0;
    uint64_t seed = 0;

    double p_op(int op) const { return n ? static_cast<double>(n_fail_op[op]) / n : 0.0; }
};

/// 95% Wilson interval for a binomial proportion.
void wilson_interval(uint64_t fails, uint64_t n, double& lo, double& hi);

/// Reusable per-worker state: error frame, outcome grids, decode scratch and
/// the lazily allocated tableau.
class TrajectoryWorkspace {
  public:
    explicit TrajectoryWorkspace(const Experiment& e);

    FailureSet run(const NoiseConfig& noise, Rng& rng);

    // Runs with a single injected fault and no sampled noise; used by the
    // fault-enumeration tooling and tests. `fault_layer < 0` disables.
    struct Injection {
        int layer = -1;
        ErrorDelta delta;
        int flip_tag = -1;  // measurement-tag index whose outcome flips
    };
    FailureSet run_injected(const Injection& inj, Rng& rng);

    const SyndromeGrid& grid(Domain dom) const;
    const ErrorState& error_state() const { return err_; }

  private:
    const Experiment& exp_;
    ErrorState err_;
    SyndromeGrid grids_[3];
    std::vector<uint8_t> steane_bits_;
    std::vector<uint8_t> xl_bits_;
    std::vector<uint8_t> steane_sign_;  // per steane row: global readout sign
    // adjusted-history offsets: parity of applied corrections per grid cell
    std::vector<uint8_t> offs_[3];
    std::vector<uint16_t> corr_cum_[3];  // applied correction parity per block qubit
    std::vector<TargetCorrectionEntry> target_log_;
    std::vector<std::pair<uint16_t, uint16_t>> final_fault_windows_;

    StabilizerTableau tableau_;
    bool tableau_active_ = false;
    std::vector<uint8_t> tab_dirty_;
    std::vector<int> tab_index_;  // flat qubit id -> tableau index, -1 outside
    int scratch_ = 0;

    std::vector<uint16_t> partners_;
    const NoiseConfig* noise_ = nullptr;
    Rng* rng_ = nullptr;
    const Injection* inj_ = nullptr;
    bool frame_only_ = false;  // geometry tracing: no pair effects, no decodes

    void reset();
    FailureSet execute();
    void run_layer(int li);
    void resolve_measurement(const Gate& g);
    int tableau_sigma(const MeasTag& tag, uint16_t anc_flat);
    void ensure_tableau();
    void do_schedule(const SchedulePoint& sp);
    void perfect_round(Domain dom);
    void decode_domain(Domain dom, int rounds_limit, bool final_pass);
    void steane_decode(int piece);
    void cz_undo();
    FailureSet failure_check();
    FailureSet run_perfect_ec();
    void record_offsets_row(Domain dom, int row);
    int domain_slot(Domain dom) const;

    friend std::shared_ptr<const GeometryBundle> build_geometry(const Experiment&);
};

FailureSet run_trajectory(const Experiment& e, const NoiseConfig& noise, Rng& rng);

Estimate estimate(const RunConfig& rc);
Estimate estimate(const Experiment& e, const RunConfig& rc);

}  // namespace repcat
