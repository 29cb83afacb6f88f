#include "fpb/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fpb {

namespace {

void check_dim(int dim) {
    if (dim != 2 && dim != 4) {
        throw std::invalid_argument("dimension must be 2 or 4");
    }
}

void check_finite(const std::vector<cplx>& v) {
    for (const cplx& z : v) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw std::invalid_argument("non-finite amplitude");
        }
    }
}

}  // namespace

PureState::PureState(std::vector<cplx> amplitudes) : amp_(std::move(amplitudes)) {
    check_dim(static_cast<int>(amp_.size()));
    check_finite(amp_);
}

PureState PureState::qubit(cplx a0, cplx a1) {
    return PureState({a0, a1});
}

double PureState::norm2() const {
    double s = 0.0;
    for (const cplx& z : amp_) s += std::norm(z);
    return s;
}

bool PureState::is_normalized(double tol) const {
    return std::abs(norm2() - 1.0) <= tol;
}

PureState PureState::normalized() const {
    double n = std::sqrt(norm2());
    if (n == 0.0) throw std::invalid_argument("cannot normalize zero state");
    std::vector<cplx> out(amp_);
    for (cplx& z : out) z /= n;
    return PureState(std::move(out));
}

PureState PureState::operator+(const PureState& o) const {
    if (dim() != o.dim()) throw std::invalid_argument("dimension mismatch");
    std::vector<cplx> out(amp_);
    for (size_t i = 0; i < out.size(); ++i) out[i] += o.amp_[i];
    return PureState(std::move(out));
}

PureState PureState::operator-(const PureState& o) const {
    if (dim() != o.dim()) throw std::invalid_argument("dimension mismatch");
    std::vector<cplx> out(amp_);
    for (size_t i = 0; i < out.size(); ++i) out[i] -= o.amp_[i];
    return PureState(std::move(out));
}

PureState PureState::operator*(cplx scale) const {
    std::vector<cplx> out(amp_);
    for (cplx& z : out) z *= scale;
    return PureState(std::move(out));
}

Operator::Operator(int dim, std::vector<cplx> entries)
    : dim_(dim), m_(std::move(entries)) {
    check_dim(dim_);
    if (m_.size() != static_cast<size_t>(dim_ * dim_)) {
        throw std::invalid_argument("entry count does not match dimension");
    }
    check_finite(m_);
}

Operator Operator::identity(int dim) {
    check_dim(dim);
    std::vector<cplx> m(static_cast<size_t>(dim * dim), cplx{0.0, 0.0});
    for (int i = 0; i < dim; ++i) m[static_cast<size_t>(i * dim + i)] = 1.0;
    return Operator(dim, std::move(m));
}

Operator Operator::outer(const PureState& v) {
    int d = v.dim();
    std::vector<cplx> m(static_cast<size_t>(d * d));
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            m[static_cast<size_t>(i * d + j)] = v[i] * std::conj(v[j]);
        }
    }
    return Operator(d, std::move(m));
}

Operator Operator::adjoint() const {
    std::vector<cplx> m(m_.size());
    for (int i = 0; i < dim_; ++i) {
        for (int j = 0; j < dim_; ++j) {
            m[static_cast<size_t>(j * dim_ + i)] = std::conj(at(i, j));
        }
    }
    return Operator(dim_, std::move(m));
}

bool Operator::is_hermitian(double tol) const {
    return (*this - adjoint()).max_abs() <= tol;
}

bool Operator::is_unitary(double tol) const {
    return (*this * adjoint() - identity(dim_)).max_abs() <= tol;
}

PureState Operator::apply(const PureState& s) const {
    if (s.dim() != dim_) throw std::invalid_argument("dimension mismatch");
    std::vector<cplx> out(static_cast<size_t>(dim_), cplx{0.0, 0.0});
    for (int i = 0; i < dim_; ++i) {
        for (int j = 0; j < dim_; ++j) out[static_cast<size_t>(i)] += at(i, j) * s[j];
    }
    return PureState(std::move(out));
}

Operator Operator::operator+(const Operator& o) const {
    if (dim_ != o.dim_) throw std::invalid_argument("dimension mismatch");
    std::vector<cplx> m(m_);
    for (size_t i = 0; i < m.size(); ++i) m[i] += o.m_[i];
    return Operator(dim_, std::move(m));
}

Operator Operator::operator-(const Operator& o) const {
    if (dim_ != o.dim_) throw std::invalid_argument("dimension mismatch");
    std::vector<cplx> m(m_);
    for (size_t i = 0; i < m.size(); ++i) m[i] -= o.m_[i];
    return Operator(dim_, std::move(m));
}

Operator Operator::operator*(const Operator& o) const {
    if (dim_ != o.dim_) throw std::invalid_argument("dimension mismatch");
    std::vector<cplx> m(m_.size(), cplx{0.0, 0.0});
    for (int i = 0; i < dim_; ++i) {
        for (int k = 0; k < dim_; ++k) {
            cplx aik = at(i, k);
            for (int j = 0; j < dim_; ++j) {
                m[static_cast<size_t>(i * dim_ + j)] += aik * o.at(k, j);
            }
        }
    }
    return Operator(dim_, std::move(m));
}

Operator Operator::operator*(cplx scale) const {
    std::vector<cplx> m(m_);
    for (cplx& z : m) z *= scale;
    return Operator(dim_, std::move(m));
}

double Operator::max_abs() const {
    double mx = 0.0;
    for (const cplx& z : m_) mx = std::max(mx, std::abs(z));
    return mx;
}

cplx inner(const PureState& a, const PureState& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
    cplx s{0.0, 0.0};
    for (int i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

PureState tensor(const PureState& a, const PureState& b) {
    if (a.dim() != 2 || b.dim() != 2) {
        throw std::invalid_argument("tensor expects two qubit states");
    }
    return PureState({a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]});
}

Operator tensor(const Operator& a, const Operator& b) {
    if (a.dim() != 2 || b.dim() != 2) {
        throw std::invalid_argument("tensor expects two qubit operators");
    }
    std::vector<cplx> m(16);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            for (int k = 0; k < 2; ++k) {
                for (int l = 0; l < 2; ++l) {
                    m[static_cast<size_t>((2 * i + k) * 4 + (2 * j + l))] =
                        a.at(i, j) * b.at(k, l);
                }
            }
        }
    }
    return Operator(4, std::move(m));
}

double born_prob(const PureState& state, const Operator& effect) {
    if (state.dim() != effect.dim()) throw std::invalid_argument("dimension mismatch");
    if (!effect.is_hermitian()) throw std::invalid_argument("effect must be Hermitian");
    cplx val = inner(state, effect.apply(state));
    double p = val.real();
    if (p < -kTol) throw std::invalid_argument("effect is not positive on this state");
    // Clamp only when the state is physical; unnormalized states keep the
    // raw quadratic form so born_prob(s, I) == inner(s, s).
    if (state.is_normalized()) {
        p = std::clamp(p, 0.0, 1.0);
    } else if (p < 0.0) {
        p = 0.0;
    }
    return p;
}

std::pair<double, double> eig2(const Operator& op) {
    if (op.dim() != 2) throw std::invalid_argument("eig2 expects dim 2");
    if (!op.is_hermitian()) throw std::invalid_argument("eig2 expects a Hermitian operator");
    double a = op.at(0, 0).real();
    double d = op.at(1, 1).real();
    double off2 = std::norm(op.at(0, 1));
    double mean = 0.5 * (a + d);
    double disc = std::sqrt(0.25 * (a - d) * (a - d) + off2);
    return {mean - disc, mean + disc};
}

PovmReport validate_povm(const Povm& p) {
    PovmReport r;
    if (p.effects.empty()) return r;
    int d = p.effects.front().dim();
    if (d != 2) throw std::invalid_argument("validate_povm expects single-qubit effects");
    Operator sum = Operator::identity(d) * cplx{0.0, 0.0};
    double min_ev = std::numeric_limits<double>::infinity();
    for (const Operator& e : p.effects) {
        if (e.dim() != d) throw std::invalid_argument("mixed effect dimensions");
        sum = sum + e;
        auto [lo, hi] = eig2(e);
        (void)hi;
        min_ev = std::min(min_ev, lo);
    }
    r.completeness_residual = (sum - Operator::identity(d)).max_abs();
    r.min_eigenvalue = min_ev;
    r.pass = r.completeness_residual <= kTol && r.min_eigenvalue >= -kTol;
    return r;
}

}  // namespace fpb
