#include "fpb/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fpb {

namespace {

constexpr double kSqrt2Inv = 0.70710678118654752440;

const PureState& ket0() {
    static const PureState k = PureState::qubit(std::cos(std::numbers::pi / 8),
                                                std::sin(std::numbers::pi / 8));
    return k;
}

const PureState& ket1() {
    static const PureState k = PureState::qubit(-std::sin(std::numbers::pi / 8),
                                                std::cos(std::numbers::pi / 8));
    return k;
}

}  // namespace

ProbeParams::ProbeParams(double pe_value) : pe(pe_value) {
    if (!(pe >= 0.0 && pe <= 1.0 / 3.0)) {
        throw std::invalid_argument("pe must lie in [0, 1/3]");
    }
    c = std::sqrt(1.0 - 2.0 * pe);
    s = std::sqrt(2.0 * pe);
}

Basis basis_of(Bb84Symbol s) {
    return (s == Bb84Symbol::H || s == Bb84Symbol::V) ? Basis::HV : Basis::DIAG;
}

int bit_of(Bb84Symbol s) {
    return (s == Bb84Symbol::H || s == Bb84Symbol::P45) ? 0 : 1;
}

Bb84Symbol symbol_from(Basis basis, int bit) {
    if (bit != 0 && bit != 1) throw std::invalid_argument("bit must be 0 or 1");
    if (basis == Basis::HV) return bit == 0 ? Bb84Symbol::H : Bb84Symbol::V;
    return bit == 0 ? Bb84Symbol::P45 : Bb84Symbol::M45;
}

std::optional<Bb84Symbol> decode_outcome(EveOutcome e, Basis basis) {
    switch (e) {
        case EveOutcome::Plus:
            return basis == Basis::HV ? Bb84Symbol::V : Bb84Symbol::P45;
        case EveOutcome::Minus:
            return basis == Basis::HV ? Bb84Symbol::H : Bb84Symbol::M45;
        case EveOutcome::Inconclusive:
            return std::nullopt;
    }
    return std::nullopt;
}

const char* symbol_name(Bb84Symbol s) {
    switch (s) {
        case Bb84Symbol::H: return "H";
        case Bb84Symbol::V: return "V";
        case Bb84Symbol::P45: return "+45";
        case Bb84Symbol::M45: return "-45";
    }
    return "?";
}

const char* outcome_name(EveOutcome e) {
    switch (e) {
        case EveOutcome::Plus: return "T+";
        case EveOutcome::Minus: return "T-";
        case EveOutcome::Inconclusive: return "inc";
    }
    return "?";
}

std::pair<PureState, PureState> comp_basis() {
    return {ket0(), ket1()};
}

PureState plus_ket() {
    return (ket0() + ket1()) * kSqrt2Inv;
}

PureState minus_ket() {
    return (ket0() - ket1()) * kSqrt2Inv;
}

PureState bb84_state(Bb84Symbol s) {
    switch (s) {
        case Bb84Symbol::H:
            return PureState::qubit(1.0, 0.0);
        case Bb84Symbol::V:
            return PureState::qubit(0.0, 1.0);
        case Bb84Symbol::P45:
            return PureState::qubit(kSqrt2Inv, kSqrt2Inv);
        case Bb84Symbol::M45:
            return PureState::qubit(-kSqrt2Inv, kSqrt2Inv);
    }
    throw std::invalid_argument("unknown symbol");
}

PureState probe_input(const ProbeParams& p) {
    return plus_ket() * cplx{p.c, 0.0} + minus_ket() * cplx{p.s, 0.0};
}

TargetOutputs target_outputs(const ProbeParams& p) {
    PureState plus = plus_ket();
    PureState minus = minus_ket();
    double half_s = p.s * kSqrt2Inv;
    return {plus * cplx{p.c, 0.0} + minus * cplx{half_s, 0.0},
            plus * cplx{p.c, 0.0} - minus * cplx{half_s, 0.0},
            minus * cplx{half_s, 0.0}};
}

std::pair<PureState, PureState> target_perps(const ProbeParams& p) {
    PureState plus = plus_ket();
    PureState minus = minus_ket();
    double half_s = p.s * kSqrt2Inv;
    return {plus * cplx{-half_s, 0.0} + minus * cplx{p.c, 0.0},
            plus * cplx{-half_s, 0.0} - minus * cplx{p.c, 0.0}};
}

Operator cnot() {
    // Acts as the identity on the target's |+> sector and flips the
    // control's computational basis on the |-> sector; this is the unique
    // linear extension of the gate's action on all four BB84 inputs.
    const PureState& k0 = ket0();
    const PureState& k1 = ket1();
    Operator flip =
        Operator(2, {k0[0] * k1[0] + k1[0] * k0[0], k0[0] * k1[1] + k1[0] * k0[1],
                     k0[1] * k1[0] + k1[1] * k0[0], k0[1] * k1[1] + k1[1] * k0[1]});
    return tensor(Operator::identity(2), Operator::outer(plus_ket().normalized())) +
           tensor(flip, Operator::outer(minus_ket().normalized()));
}

Povm projective_measurement() {
    return Povm{{"d+", "d-"}, {Operator::outer(ket0()), Operator::outer(ket1())}};
}

Povm conclusive_povm(const ProbeParams& p) {
    auto [t_plus_perp, t_minus_perp] = target_perps(p);
    double inv = 1.0 / (2.0 * p.c * p.c);
    double inc_weight = (p.c * p.c - p.s * p.s / 2.0) / (p.c * p.c);
    Operator pi_plus = Operator::outer(t_minus_perp) * cplx{inv, 0.0};
    Operator pi_minus = Operator::outer(t_plus_perp) * cplx{inv, 0.0};
    Operator pi_inc = Operator::outer(plus_ket()) * cplx{inc_weight, 0.0};
    return Povm{{"T+", "T-", "inc"}, {pi_plus, pi_minus, pi_inc}};
}

Povm bob_measurement(Basis basis) {
    PureState b0 = bb84_state(symbol_from(basis, 0));
    PureState b1 = bb84_state(symbol_from(basis, 1));
    if (basis == Basis::HV) {
        return Povm{{"H", "V"}, {Operator::outer(b0), Operator::outer(b1)}};
    }
    return Povm{{"+45", "-45"}, {Operator::outer(b0), Operator::outer(b1)}};
}

PureState joint_output(Bb84Symbol sym, const ProbeParams& p) {
    return cnot().apply(tensor(bb84_state(sym), probe_input(p)));
}

}  // namespace fpb
