// States, gates, and measurements of the entangling-probe attack, all as
// functions of the single attack-strength parameter.
//
// Coordinate convention: every single-qubit ket is stored in the H/V
// frame, so |H> = (1,0) and |V> = (0,1).  The gate's computational basis
// {|0>,|1>} sits at 22.5 degrees.  The phase convention for the diagonal
// basis is |+45> = (|H>+|V>)/sqrt(2) and |-45> = (|V>-|H>)/sqrt(2); the
// latter sign is what makes the gate's action on all four inputs take the
// same two-branch form.
#pragma once

#include <optional>
#include <utility>

#include "fpb/quantum.hpp"

namespace fpb {

// Attack strength: pe is the sifted-bit error probability the probe
// induces, restricted to [0, 1/3].
struct ProbeParams {
    double pe;
    double c;  // sqrt(1 - 2 pe)
    double s;  // sqrt(2 pe)

    explicit ProbeParams(double pe_value);
};

enum class Bb84Symbol { H, V, P45, M45 };
enum class Basis { HV, DIAG };

Basis basis_of(Bb84Symbol s);
int bit_of(Bb84Symbol s);  // H,+45 -> 0; V,-45 -> 1
Bb84Symbol symbol_from(Basis basis, int bit);

// Probe measurement outcome.  Plus/Minus are the conclusive outcomes
// (POVM labels T+/T-, projective labels d+/d-); Inconclusive occurs only
// for the POVM probe.
enum class EveOutcome { Plus, Minus, Inconclusive };

// Decode an outcome after basis revelation: Plus -> V or +45,
// Minus -> H or -45; nullopt for Inconclusive.
std::optional<Bb84Symbol> decode_outcome(EveOutcome e, Basis basis);

enum class ProbeKind { Projective, Povm };

const char* symbol_name(Bb84Symbol s);   // "H", "V", "+45", "-45"
const char* outcome_name(EveOutcome e);  // "T+", "T-", "inc"

// The gate's computational basis (|0>, |1>) in H/V coordinates.
std::pair<PureState, PureState> comp_basis();

// (|0>+|1>)/sqrt(2) and (|0>-|1>)/sqrt(2).
PureState plus_ket();
PureState minus_ket();

PureState bb84_state(Bb84Symbol s);

// Target-qubit input C|+> + S|->.
PureState probe_input(const ProbeParams& p);

struct TargetOutputs {
    PureState t_plus;   // C|+> + (S/sqrt2)|->
    PureState t_minus;  // C|+> - (S/sqrt2)|->
    PureState t_err;    // (S/sqrt2)|->
};

TargetOutputs target_outputs(const ProbeParams& p);

// Unnormalized states orthogonal to |T+> and |T-> respectively.
std::pair<PureState, PureState> target_perps(const ProbeParams& p);

// The probe's two-qubit gate (control x target ordering).  Fixed,
// parameter-free, unitary, and self-inverse.
Operator cnot();

// Minimum-error projective discrimination {|d+><d+|, |d-><d-|} with
// |d+> = |0>, |d-> = |1>.
Povm projective_measurement();

// Unambiguous-discrimination POVM {Pi+, Pi-, Pi_inc}.  Pi_inc is kept as
// an explicit zero effect at pe = 1/3.
Povm conclusive_povm(const ProbeParams& p);

// Bob's projective measurement in the given basis, ordered (bit0, bit1).
Povm bob_measurement(Basis basis);

// Normalized Bob x Eve state after the gate acts on
// bb84_state(sym) x probe_input(p).
PureState joint_output(Bb84Symbol sym, const ProbeParams& p);

}  // namespace fpb
