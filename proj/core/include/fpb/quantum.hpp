// Fixed-dimension complex linear algebra and Born-rule measurement for
// one- and two-qubit systems (dims 2 and 4 only).
#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace fpb {

using cplx = std::complex<double>;

// Tolerance for all exactness checks (normalization, Hermiticity,
// POVM completeness, positivity).
inline constexpr double kTol = 1e-12;

// Complex state vector of dimension 2 or 4.  May be unnormalized: the
// branch states |T+->, |T_E> carry their raw amplitudes.
class PureState {
public:
    explicit PureState(std::vector<cplx> amplitudes);
    static PureState qubit(cplx a0, cplx a1);

    int dim() const { return static_cast<int>(amp_.size()); }
    const cplx& operator[](int i) const { return amp_[static_cast<size_t>(i)]; }
    const std::vector<cplx>& amplitudes() const { return amp_; }

    double norm2() const;
    bool is_normalized(double tol = kTol) const;
    PureState normalized() const;

    PureState operator+(const PureState& o) const;
    PureState operator-(const PureState& o) const;
    PureState operator*(cplx scale) const;

private:
    std::vector<cplx> amp_;
};

inline PureState operator*(cplx scale, const PureState& s) { return s * scale; }

// Square complex matrix of dimension 2 or 4, row-major.
class Operator {
public:
    Operator(int dim, std::vector<cplx> entries);
    static Operator identity(int dim);
    // |v><v|
    static Operator outer(const PureState& v);

    int dim() const { return dim_; }
    const cplx& at(int row, int col) const {
        return m_[static_cast<size_t>(row * dim_ + col)];
    }

    Operator adjoint() const;
    bool is_hermitian(double tol = kTol) const;
    bool is_unitary(double tol = kTol) const;

    PureState apply(const PureState& s) const;
    Operator operator+(const Operator& o) const;
    Operator operator-(const Operator& o) const;
    Operator operator*(const Operator& o) const;
    Operator operator*(cplx scale) const;

    double max_abs() const;

private:
    int dim_;
    std::vector<cplx> m_;
};

// Ordered list of labeled positive effects summing to identity.
struct Povm {
    std::vector<std::string> labels;
    std::vector<Operator> effects;

    size_t size() const { return effects.size(); }
};

struct PovmReport {
    double completeness_residual = 0.0;  // max-abs entry of sum(effects) - I
    double min_eigenvalue = 0.0;         // smallest eigenvalue across effects
    bool pass = false;
};

// <a|b>, conjugating the first argument.
cplx inner(const PureState& a, const PureState& b);

// Kronecker products in control-major ordering: index = 2*control + target.
PureState tensor(const PureState& a, const PureState& b);
Operator tensor(const Operator& a, const Operator& b);

// <state|effect|state> for a Hermitian positive effect; clamped to [0,1]
// after a -kTol positivity check when the state is normalized.
double born_prob(const PureState& state, const Operator& effect);

// Closed-form eigenvalues of a Hermitian 2x2 operator, ascending.
std::pair<double, double> eig2(const Operator& op);

// Completeness and positivity report for single-qubit POVMs.  Every
// measurement in the model acts on one qubit; dim-4 effects only ever
// arise as tensor products inside born_prob.
PovmReport validate_povm(const Povm& p);

}  // namespace fpb
