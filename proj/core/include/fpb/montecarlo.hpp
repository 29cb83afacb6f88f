// Seeded stochastic simulation of BB84 sessions under the entangling
// probe, with exact Born-rule sampling per trial.
//
// Per-trial randomness is a counter-based stream keyed on
// (seed, trial index), so results are independent of execution order.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fpb/analytics.hpp"

namespace fpb {

enum class Scenario { Direct, Lossy };

struct SimConfig {
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    double pe = 0.0;
    ProbeKind probe = ProbeKind::Povm;
    Scenario scenario = Scenario::Direct;
    double eta = 1.0;        // Lossy only; pe is derived as eta/3
    bool eve_present = true; // false: pure-loss baseline, no probe

    // Throws std::invalid_argument on an inconsistent configuration and
    // returns a copy with pe derived for the lossy scenario.
    SimConfig validated() const;
};

struct TrialRecord {
    Bb84Symbol alice = Bb84Symbol::H;
    Basis alice_basis = Basis::HV;
    Basis bob_basis = Basis::HV;
    std::optional<Bb84Symbol> bob;    // empty when the photon is not delivered
    std::optional<EveOutcome> eve;    // empty when no probe is present
    bool sifted = false;              // bases match and photon delivered
    bool forwarded = false;           // Lossy only
};

struct SessionStats {
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    double pe = 0.0;
    std::uint64_t sift_count = 0;
    std::uint64_t error_count = 0;         // among sifted
    std::uint64_t inconclusive_count = 0;  // among sifted
    std::uint64_t basis_match_count = 0;
    std::uint64_t delivered_count = 0;
    std::uint64_t forwarded_count = 0;     // Lossy with probe only
    // Sifted-trial counts in JointDistribution state-cell order.
    std::vector<std::uint64_t> state_counts =
        std::vector<std::uint64_t>(JointDistribution::kStateCells, 0);

    JointDistribution empirical_state() const;
    JointDistribution empirical_bit() const;
    // Binomial standard error of one state cell's empirical frequency.
    double state_cell_std_error(int cell) const;
    double sifted_error_rate() const;
};

// Deterministic sampling of one trial; the free function rebuilds the
// sampler internally, so prefer run_session for bulk work.
TrialRecord sample_trial(std::uint64_t trial_index, const SimConfig& config);

SessionStats run_session(const SimConfig& config);

struct CellComparison {
    int cell = 0;
    std::string label;
    double analytic = 0.0;
    double empirical = 0.0;
    double z = 0.0;
};

struct ComparisonReport {
    bool pass = false;
    double max_abs_z = 0.0;
    int zero_violations = 0;  // structurally-zero cells with nonzero counts
    std::vector<CellComparison> cells;
    // 5-sigma per cell; with 24 cells the family-wise false-failure
    // probability is still below 1e-5 (Bonferroni bound).
    static constexpr double kZThreshold = 5.0;
};

// Per-cell z-scores of the sifted empirical distribution against an
// analytic one of the same level.
ComparisonReport compare_to_analytic(const SessionStats& stats,
                                     const JointDistribution& dist);

// Precomputes the Born-rule outcome tables for a configuration.
class SessionSampler {
public:
    explicit SessionSampler(const SimConfig& config);
    TrialRecord sample(std::uint64_t trial_index) const;
    const SimConfig& config() const { return cfg_; }

private:
    SimConfig cfg_;
    // Cumulative probabilities over (bob outcome slot, eve outcome) for
    // each (alice symbol, bob basis); 6 entries each.
    std::vector<std::array<double, 6>> cdf_;
};

}  // namespace fpb
