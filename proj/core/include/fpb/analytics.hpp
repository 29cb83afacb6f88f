// Closed-form probability tables and information measures for both probe
// variants, plus a Born-rule oracle that re-derives every table entry
// from the quantum model.
//
// All distributions are conditioned on an Alice/Bob sift event.
#pragma once

#include <array>
#include <optional>
#include <vector>

#include "fpb/model.hpp"

namespace fpb {

enum class Level { State, Bit };

// Joint probability table over (Alice, Bob, Eve outcome).
//
// State level: 24 cells indexed by Alice symbol (H, V, +45, -45), Bob
// symbol restricted to Alice's basis (slot 0/1), and raw Eve outcome
// (Plus, Minus, Inconclusive).
//
// Bit level: 12 cells indexed by (a, b, e) with a,b in {0,1} and
// e in {0, 1, inc}; Eve's outcome is decoded to a bit via the basis
// encodings before aggregation.
class JointDistribution {
public:
    static constexpr int kStateCells = 24;
    static constexpr int kBitCells = 12;
    static constexpr int kEveInc = 2;  // bit-level index for inconclusive

    JointDistribution(Level level, std::vector<double> probs);

    Level level() const { return level_; }
    int size() const { return static_cast<int>(p_.size()); }
    const std::vector<double>& probs() const { return p_; }
    double total() const;

    static int state_index(Bb84Symbol alice, int bob_slot, EveOutcome e);
    static int bit_index(int a, int b, int e);

    // State-level lookup with Bob and Eve given as symbols in Alice's
    // basis; eve == nullopt means inconclusive.
    double at_state(Bb84Symbol alice, Bb84Symbol bob,
                    std::optional<Bb84Symbol> eve) const;
    double at_bit(int a, int b, int e) const;

    // Encoding aggregation of a state-level table; identity on bit level.
    JointDistribution to_bits() const;

private:
    Level level_;
    std::vector<double> p_;
};

// Per-probe summary of the closed-form performance quantities.
struct ProbeReport {
    double pe = 0.0;
    double renyi_bits = 0.0;
    double error_prob = 0.0;
    std::optional<double> inconclusive_prob;                  // POVM only
    std::optional<double> conditional_error_given_conclusive; // POVM only
};

// Selective-forwarding attack on a pure-loss channel of transmissivity eta.
struct LossyScenario {
    double eta = 0.0;
    double pe = 0.0;                  // eta / 3
    double forwarded_fraction = 0.0;  // 3 pe = eta
    double renyi_conditional = 1.0;
    double error_given_conclusive = 1.0 / 3.0;
};

// log2(1 + 4 pe (1 - 2 pe) / (1 - pe)^2), valid on [0, 1/2].
double renyi_projective(double pe);

// 2 pe / (1 - pe), valid on [0, 1/3].
double renyi_povm(double pe);

// The 24-cell state-level table for the conclusive probe.
JointDistribution table1(double pe);

// The 12-cell bit-level table for the conclusive probe.
JointDistribution table2(double pe);

// Born-rule oracle: per Alice symbol (prior 1/4), Bob measuring in
// Alice's basis, Eve applying the chosen probe's measurement.
JointDistribution joint_from_model(double pe, ProbeKind probe);

// Order-2 Renyi information about Bob's error-free sifted bits.  State
// level input is aggregated to bits first.
double renyi_from_joint(const JointDistribution& dist);

double error_prob(const JointDistribution& dist);
double inconclusive_prob(const JointDistribution& dist);

// Renormalized bit-level distribution over conclusive Eve outcomes.
JointDistribution condition_on_conclusive(const JointDistribution& dist);

LossyScenario lossy_scenario(double eta);

ProbeReport probe_report(double pe, ProbeKind probe);

}  // namespace fpb
