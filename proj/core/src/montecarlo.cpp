#include "fpb/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fpb {

namespace {

constexpr std::array<Bb84Symbol, 4> kSymbols = {Bb84Symbol::H, Bb84Symbol::V,
                                                Bb84Symbol::P45, Bb84Symbol::M45};

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Counter-based per-trial stream: the initial state is a hash of
// (seed, trial index), so trials are independent of iteration order.
class TrialRng {
public:
    TrialRng(std::uint64_t seed, std::uint64_t trial_index) {
        std::uint64_t k = trial_index + 0x632BE59BD9B4E019ULL;
        state_ = splitmix64(k) ^ seed;
        splitmix64(state_);  // decorrelate nearby seeds
    }

    std::uint64_t next_u64() { return splitmix64(state_); }

    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

}  // namespace

SimConfig SimConfig::validated() const {
    SimConfig c = *this;
    if (c.trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (c.scenario == Scenario::Lossy) {
        if (!(c.eta > 0.0 && c.eta <= 1.0)) {
            throw std::invalid_argument("eta must lie in (0, 1]");
        }
        if (c.eve_present && c.probe != ProbeKind::Povm) {
            throw std::invalid_argument(
                "the lossy scenario uses the conclusive (POVM) probe");
        }
        c.pe = c.eta / 3.0;
    } else {
        if (!(c.pe >= 0.0 && c.pe <= 1.0 / 3.0)) {
            throw std::invalid_argument("pe must lie in [0, 1/3]");
        }
    }
    return c;
}

SessionSampler::SessionSampler(const SimConfig& config) : cfg_(config.validated()) {
    if (!cfg_.eve_present) return;
    ProbeParams params(cfg_.pe);
    Povm eve = cfg_.probe == ProbeKind::Povm ? conclusive_povm(params)
                                             : projective_measurement();
    cdf_.resize(8);
    for (int a = 0; a < 4; ++a) {
        PureState psi = joint_output(kSymbols[static_cast<size_t>(a)], params);
        for (int bb = 0; bb < 2; ++bb) {
            Povm bob = bob_measurement(static_cast<Basis>(bb));
            std::array<double, 6> cum{};
            double acc = 0.0;
            for (int slot = 0; slot < 2; ++slot) {
                for (int e = 0; e < 3; ++e) {
                    double p = 0.0;
                    if (e < static_cast<int>(eve.size())) {
                        p = born_prob(psi,
                                      tensor(bob.effects[static_cast<size_t>(slot)],
                                             eve.effects[static_cast<size_t>(e)]));
                    }
                    acc += p;
                    cum[static_cast<size_t>(slot * 3 + e)] = acc;
                }
            }
            cum[5] = 1.0;  // guard against rounding in the last cell
            cdf_[static_cast<size_t>(a * 2 + bb)] = cum;
        }
    }
}

TrialRecord SessionSampler::sample(std::uint64_t trial_index) const {
    TrialRng rng(cfg_.seed, trial_index);
    TrialRecord rec;
    rec.alice = kSymbols[rng.next_u64() & 3];
    rec.alice_basis = basis_of(rec.alice);
    rec.bob_basis = static_cast<Basis>(rng.next_u64() & 1);

    if (!cfg_.eve_present) {
        bool delivered = cfg_.scenario == Scenario::Direct ||
                         rng.next_unit() < cfg_.eta;
        if (delivered) {
            if (rec.bob_basis == rec.alice_basis) {
                rec.bob = rec.alice;
            } else {
                // Conjugate-basis outcome is equiprobable.
                rec.bob = symbol_from(rec.bob_basis,
                                      static_cast<int>(rng.next_u64() & 1));
            }
        }
        rec.sifted = delivered && rec.bob_basis == rec.alice_basis;
        rec.forwarded = delivered && cfg_.scenario == Scenario::Lossy;
        return rec;
    }

    const auto& cum =
        cdf_[static_cast<size_t>(static_cast<int>(rec.alice) * 2 +
                                 static_cast<int>(rec.bob_basis))];
    double u = rng.next_unit();
    int cell = 0;
    while (cell < 5 && u >= cum[static_cast<size_t>(cell)]) ++cell;
    int slot = cell / 3;
    auto outcome = static_cast<EveOutcome>(cell % 3);
    rec.eve = outcome;

    bool delivered = true;
    if (cfg_.scenario == Scenario::Lossy) {
        rec.forwarded = outcome != EveOutcome::Inconclusive;
        delivered = rec.forwarded;
    }
    if (delivered) rec.bob = symbol_from(rec.bob_basis, slot);
    rec.sifted = delivered && rec.bob_basis == rec.alice_basis;
    return rec;
}

TrialRecord sample_trial(std::uint64_t trial_index, const SimConfig& config) {
    return SessionSampler(config).sample(trial_index);
}

SessionStats run_session(const SimConfig& config) {
    SessionSampler sampler(config);
    const SimConfig& cfg = sampler.config();
    SessionStats st;
    st.trials = cfg.trials;
    st.seed = cfg.seed;
    st.pe = cfg.pe;
    for (std::uint64_t i = 0; i < cfg.trials; ++i) {
        TrialRecord rec = sampler.sample(i);
        if (rec.bob_basis == rec.alice_basis) ++st.basis_match_count;
        if (rec.bob) ++st.delivered_count;
        if (rec.forwarded) ++st.forwarded_count;
        if (!rec.sifted) continue;
        ++st.sift_count;
        if (*rec.bob != rec.alice) ++st.error_count;
        if (rec.eve) {
            if (*rec.eve == EveOutcome::Inconclusive) ++st.inconclusive_count;
            ++st.state_counts[static_cast<size_t>(JointDistribution::state_index(
                rec.alice, bit_of(*rec.bob), *rec.eve))];
        }
    }
    return st;
}

JointDistribution SessionStats::empirical_state() const {
    if (sift_count == 0) {
        throw std::invalid_argument("no sifted trials to normalize over");
    }
    std::vector<double> p(JointDistribution::kStateCells, 0.0);
    for (int i = 0; i < JointDistribution::kStateCells; ++i) {
        p[static_cast<size_t>(i)] =
            static_cast<double>(state_counts[static_cast<size_t>(i)]) /
            static_cast<double>(sift_count);
    }
    return JointDistribution(Level::State, std::move(p));
}

JointDistribution SessionStats::empirical_bit() const {
    return empirical_state().to_bits();
}

double SessionStats::state_cell_std_error(int cell) const {
    if (sift_count == 0) return 0.0;
    double n = static_cast<double>(sift_count);
    double phat = static_cast<double>(state_counts[static_cast<size_t>(cell)]) / n;
    return std::sqrt(phat * (1.0 - phat) / n);
}

double SessionStats::sifted_error_rate() const {
    return sift_count == 0 ? 0.0
                           : static_cast<double>(error_count) /
                                 static_cast<double>(sift_count);
}

ComparisonReport compare_to_analytic(const SessionStats& stats,
                                     const JointDistribution& dist) {
    ComparisonReport rep;
    double n = static_cast<double>(stats.sift_count);
    if (stats.sift_count == 0) return rep;

    std::vector<double> counts;
    std::vector<std::string> labels;
    if (dist.level() == Level::State) {
        counts.assign(JointDistribution::kStateCells, 0.0);
        for (int i = 0; i < JointDistribution::kStateCells; ++i) {
            counts[static_cast<size_t>(i)] =
                static_cast<double>(stats.state_counts[static_cast<size_t>(i)]);
        }
        for (Bb84Symbol a : kSymbols) {
            for (int slot = 0; slot < 2; ++slot) {
                for (int e = 0; e < 3; ++e) {
                    labels.push_back(
                        std::string(symbol_name(a)) + "/" +
                        symbol_name(symbol_from(basis_of(a), slot)) + "/" +
                        outcome_name(static_cast<EveOutcome>(e)));
                }
            }
        }
    } else {
        counts.assign(JointDistribution::kBitCells, 0.0);
        for (Bb84Symbol a : kSymbols) {
            Basis basis = basis_of(a);
            for (int slot = 0; slot < 2; ++slot) {
                for (int e = 0; e < 3; ++e) {
                    auto outcome = static_cast<EveOutcome>(e);
                    auto decoded = decode_outcome(outcome, basis);
                    int eb = decoded ? bit_of(*decoded) : JointDistribution::kEveInc;
                    counts[static_cast<size_t>(JointDistribution::bit_index(
                        bit_of(a), slot, eb))] +=
                        static_cast<double>(stats.state_counts[static_cast<size_t>(
                            JointDistribution::state_index(a, slot, outcome))]);
                }
            }
        }
        const char* enames[3] = {"0", "1", "inc"};
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                for (int e = 0; e < 3; ++e) {
                    labels.push_back(std::to_string(a) + "/" + std::to_string(b) +
                                     "/" + enames[e]);
                }
            }
        }
    }

    bool ok = true;
    for (int i = 0; i < dist.size(); ++i) {
        CellComparison cc;
        cc.cell = i;
        cc.label = labels[static_cast<size_t>(i)];
        cc.analytic = dist.probs()[static_cast<size_t>(i)];
        cc.empirical = counts[static_cast<size_t>(i)] / n;
        if (cc.analytic <= 0.0) {
            // Structural zero: the sampler must never produce it.
            if (counts[static_cast<size_t>(i)] > 0.0) {
                ++rep.zero_violations;
                ok = false;
            }
        } else {
            double se = std::sqrt(cc.analytic * (1.0 - cc.analytic) / n);
            cc.z = (cc.empirical - cc.analytic) / se;
            rep.max_abs_z = std::max(rep.max_abs_z, std::abs(cc.z));
        }
        rep.cells.push_back(std::move(cc));
    }
    rep.pass = ok && rep.max_abs_z <= ComparisonReport::kZThreshold;
    return rep;
}

}  // namespace fpb
