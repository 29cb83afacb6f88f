#include "fpb/analytics.hpp"

#include <cmath>
#include <stdexcept>

namespace fpb {

namespace {

constexpr std::array<Bb84Symbol, 4> kSymbols = {Bb84Symbol::H, Bb84Symbol::V,
                                                Bb84Symbol::P45, Bb84Symbol::M45};

int symbol_index(Bb84Symbol s) { return static_cast<int>(s); }

// Slot of a symbol within its own basis (0 or 1); equals its bit.
int slot_of(Bb84Symbol s) { return bit_of(s); }

void check_pe_range(double pe, double hi) {
    if (!(pe >= 0.0 && pe <= hi)) {
        throw std::invalid_argument("pe out of range");
    }
}

double log2_or_zero(double x) { return x > 0.0 ? std::log2(x) : 0.0; }

}  // namespace

JointDistribution::JointDistribution(Level level, std::vector<double> probs)
    : level_(level), p_(std::move(probs)) {
    int expected = level_ == Level::State ? kStateCells : kBitCells;
    if (size() != expected) {
        throw std::invalid_argument("cell count does not match level");
    }
    for (double v : p_) {
        if (!(v >= -kTol)) throw std::invalid_argument("negative probability");
    }
}

double JointDistribution::total() const {
    double s = 0.0;
    for (double v : p_) s += v;
    return s;
}

int JointDistribution::state_index(Bb84Symbol alice, int bob_slot, EveOutcome e) {
    return symbol_index(alice) * 6 + bob_slot * 3 + static_cast<int>(e);
}

int JointDistribution::bit_index(int a, int b, int e) {
    return a * 6 + b * 3 + e;
}

double JointDistribution::at_state(Bb84Symbol alice, Bb84Symbol bob,
                                   std::optional<Bb84Symbol> eve) const {
    if (level_ != Level::State) throw std::invalid_argument("not a state-level table");
    Basis basis = basis_of(alice);
    if (basis_of(bob) != basis) throw std::invalid_argument("Bob symbol not in Alice's basis");
    EveOutcome e = EveOutcome::Inconclusive;
    if (eve) {
        if (basis_of(*eve) != basis) {
            throw std::invalid_argument("Eve symbol not in Alice's basis");
        }
        e = (*eve == decode_outcome(EveOutcome::Plus, basis)) ? EveOutcome::Plus
                                                              : EveOutcome::Minus;
    }
    return p_[static_cast<size_t>(state_index(alice, slot_of(bob), e))];
}

double JointDistribution::at_bit(int a, int b, int e) const {
    if (level_ != Level::Bit) throw std::invalid_argument("not a bit-level table");
    return p_[static_cast<size_t>(bit_index(a, b, e))];
}

JointDistribution JointDistribution::to_bits() const {
    if (level_ == Level::Bit) return *this;
    std::vector<double> bits(kBitCells, 0.0);
    for (Bb84Symbol a : kSymbols) {
        Basis basis = basis_of(a);
        for (int slot = 0; slot < 2; ++slot) {
            for (int e = 0; e < 3; ++e) {
                EveOutcome outcome = static_cast<EveOutcome>(e);
                auto decoded = decode_outcome(outcome, basis);
                int eb = decoded ? bit_of(*decoded) : kEveInc;
                bits[static_cast<size_t>(bit_index(bit_of(a), slot, eb))] +=
                    p_[static_cast<size_t>(state_index(a, slot, outcome))];
            }
        }
    }
    return JointDistribution(Level::Bit, std::move(bits));
}

double renyi_projective(double pe) {
    check_pe_range(pe, 0.5);
    double q = 1.0 - pe;
    return std::log2(1.0 + 4.0 * pe * (1.0 - 2.0 * pe) / (q * q));
}

double renyi_povm(double pe) {
    check_pe_range(pe, 1.0 / 3.0);
    return 2.0 * pe / (1.0 - pe);
}

JointDistribution table1(double pe) {
    check_pe_range(pe, 1.0 / 3.0);
    std::vector<double> p(JointDistribution::kStateCells, 0.0);
    for (Bb84Symbol a : kSymbols) {
        Basis basis = basis_of(a);
        int correct = slot_of(a);
        int wrong = 1 - correct;
        // Outcome that decodes to Alice's symbol.
        EveOutcome match = decode_outcome(EveOutcome::Plus, basis) == a
                               ? EveOutcome::Plus
                               : EveOutcome::Minus;
        EveOutcome other = match == EveOutcome::Plus ? EveOutcome::Minus : EveOutcome::Plus;
        auto set = [&](int slot, EveOutcome e, double v) {
            p[static_cast<size_t>(JointDistribution::state_index(a, slot, e))] = v;
        };
        set(correct, match, pe / 2.0);
        set(wrong, match, pe / 8.0);
        set(correct, other, 0.0);
        set(wrong, other, pe / 8.0);
        set(correct, EveOutcome::Inconclusive, (1.0 - 3.0 * pe) / 4.0);
        set(wrong, EveOutcome::Inconclusive, 0.0);
    }
    return JointDistribution(Level::State, std::move(p));
}

JointDistribution table2(double pe) {
    check_pe_range(pe, 1.0 / 3.0);
    std::vector<double> p(JointDistribution::kBitCells, 0.0);
    auto set = [&](int a, int b, int e, double v) {
        p[static_cast<size_t>(JointDistribution::bit_index(a, b, e))] = v;
    };
    for (int a = 0; a < 2; ++a) {
        int o = 1 - a;
        set(a, a, a, pe);
        set(a, a, o, 0.0);
        set(a, a, JointDistribution::kEveInc, (1.0 - 3.0 * pe) / 2.0);
        set(a, o, 0, pe / 4.0);
        set(a, o, 1, pe / 4.0);
        set(a, o, JointDistribution::kEveInc, 0.0);
    }
    return JointDistribution(Level::Bit, std::move(p));
}

JointDistribution joint_from_model(double pe, ProbeKind probe) {
    ProbeParams params(pe);
    Povm eve = probe == ProbeKind::Povm ? conclusive_povm(params)
                                        : projective_measurement();
    std::vector<double> p(JointDistribution::kStateCells, 0.0);
    for (Bb84Symbol a : kSymbols) {
        Basis basis = basis_of(a);
        PureState psi = joint_output(a, params);
        Povm bob = bob_measurement(basis);
        for (int slot = 0; slot < 2; ++slot) {
            for (size_t k = 0; k < eve.size(); ++k) {
                // Projective probe: d+ plays the T+ role, d- the T- role.
                EveOutcome outcome = static_cast<EveOutcome>(k);
                double prob =
                    born_prob(psi, tensor(bob.effects[static_cast<size_t>(slot)],
                                          eve.effects[k]));
                p[static_cast<size_t>(
                    JointDistribution::state_index(a, slot, outcome))] += 0.25 * prob;
            }
        }
    }
    return JointDistribution(Level::State, std::move(p));
}

double renyi_from_joint(const JointDistribution& dist) {
    JointDistribution bits = dist.to_bits();
    double p_agree = 0.0;
    for (int a = 0; a < 2; ++a) {
        for (int e = 0; e < 3; ++e) p_agree += bits.at_bit(a, a, e);
    }
    if (p_agree <= 0.0) {
        throw std::invalid_argument("degenerate distribution: Pr(b = a) = 0");
    }
    std::array<double, 2> pr_b = {0.0, 0.0};
    std::array<double, 3> pr_e = {0.0, 0.0, 0.0};
    std::array<std::array<double, 3>, 2> pr_be = {{{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}}};
    for (int b = 0; b < 2; ++b) {
        for (int e = 0; e < 3; ++e) {
            double v = bits.at_bit(b, b, e) / p_agree;
            pr_b[static_cast<size_t>(b)] += v;
            pr_e[static_cast<size_t>(e)] += v;
            pr_be[static_cast<size_t>(b)][static_cast<size_t>(e)] += v;
        }
    }
    double info = -std::log2(pr_b[0] * pr_b[0] + pr_b[1] * pr_b[1]);
    for (int e = 0; e < 3; ++e) {
        double pe_cond = pr_e[static_cast<size_t>(e)];
        if (pe_cond <= 0.0) continue;
        double s = 0.0;
        for (int b = 0; b < 2; ++b) {
            double cond = pr_be[static_cast<size_t>(b)][static_cast<size_t>(e)] / pe_cond;
            s += cond * cond;
        }
        info += pe_cond * log2_or_zero(s);
    }
    return info;
}

double error_prob(const JointDistribution& dist) {
    JointDistribution bits = dist.to_bits();
    double s = 0.0;
    for (int a = 0; a < 2; ++a) {
        for (int e = 0; e < 3; ++e) s += bits.at_bit(a, 1 - a, e);
    }
    return s;
}

double inconclusive_prob(const JointDistribution& dist) {
    JointDistribution bits = dist.to_bits();
    double s = 0.0;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) s += bits.at_bit(a, b, JointDistribution::kEveInc);
    }
    return s;
}

JointDistribution condition_on_conclusive(const JointDistribution& dist) {
    JointDistribution bits = dist.to_bits();
    double p_conclusive = 1.0 - inconclusive_prob(bits);
    if (p_conclusive <= 0.0) {
        throw std::invalid_argument("Pr(e != inc) = 0: nothing to condition on");
    }
    std::vector<double> p(JointDistribution::kBitCells, 0.0);
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int e = 0; e < 2; ++e) {
                p[static_cast<size_t>(JointDistribution::bit_index(a, b, e))] =
                    bits.at_bit(a, b, e) / p_conclusive;
            }
        }
    }
    return JointDistribution(Level::Bit, std::move(p));
}

LossyScenario lossy_scenario(double eta) {
    if (!(eta > 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("eta must lie in (0, 1]");
    }
    LossyScenario s;
    s.eta = eta;
    s.pe = eta / 3.0;
    s.forwarded_fraction = 3.0 * s.pe;
    s.renyi_conditional = 1.0;
    s.error_given_conclusive = 1.0 / 3.0;
    return s;
}

ProbeReport probe_report(double pe, ProbeKind probe) {
    ProbeReport r;
    r.pe = pe;
    if (probe == ProbeKind::Povm) {
        r.renyi_bits = renyi_povm(pe);
        JointDistribution bits = table2(pe);
        r.error_prob = error_prob(bits);
        r.inconclusive_prob = inconclusive_prob(bits);
        if (pe > 0.0) {
            r.conditional_error_given_conclusive =
                error_prob(condition_on_conclusive(bits));
        }
    } else {
        r.renyi_bits = renyi_projective(pe);
        r.error_prob = error_prob(joint_from_model(pe, ProbeKind::Projective));
    }
    return r;
}

}  // namespace fpb
