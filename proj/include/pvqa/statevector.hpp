// Copyright 2026 The pvqa developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "pvqa/circuit.hpp"
#include "pvqa/pauli.hpp"
#include "pvqa/util.hpp"

namespace pvqa {

namespace detail {

/// Gate reduced to simulation form: either a (multi-)controlled 2x2 matrix
/// on one target, or a SWAP of two qubits.
struct GateKernel {
    bool is_swap = false;
    int target = 0;
    int other = 0;  // SWAP only
    std::uint64_t control_mask = 0;
    std::array<cdouble, 4> u{};  // row-major [u00, u01, u10, u11]
};

inline std::array<cdouble, 4> single_qubit_matrix(GateKind kind, double angle) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const double c = std::cos(angle / 2), s = std::sin(angle / 2);
    switch (kind) {
        case GateKind::X: return {cdouble{0, 0}, {1, 0}, {1, 0}, {0, 0}};
        case GateKind::Y: return {cdouble{0, 0}, {0, -1}, {0, 1}, {0, 0}};
        case GateKind::Z: return {cdouble{1, 0}, {0, 0}, {0, 0}, {-1, 0}};
        case GateKind::H: return {cdouble{inv_sqrt2, 0}, {inv_sqrt2, 0}, {inv_sqrt2, 0}, {-inv_sqrt2, 0}};
        case GateKind::SX: return {cdouble{0.5, 0.5}, {0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}};
        case GateKind::RX: return {cdouble{c, 0}, {0, -s}, {0, -s}, {c, 0}};
        case GateKind::RY: return {cdouble{c, 0}, {-s, 0}, {s, 0}, {c, 0}};
        case GateKind::RZ: return {cdouble{c, -s}, {0, 0}, {0, 0}, {c, s}};
        default: throw std::invalid_argument("arity-mismatch: not a single-qubit gate");
    }
}

inline GateKernel gate_kernel(const GateInstance& g) {
    if (g.parameterized()) throw std::invalid_argument("unbound-parameter: cannot simulate @" + g.param);
    GateKernel k;
    auto controlled_x = [&](std::size_t num_controls) {
        for (std::size_t i = 0; i < num_controls; ++i)
            k.control_mask |= 1ull << g.qubits[i];
        k.target = g.qubits[num_controls];
        k.u = single_qubit_matrix(GateKind::X, 0);
    };
    switch (g.kind) {
        case GateKind::CX: controlled_x(1); break;
        case GateKind::CCX: controlled_x(2); break;
        case GateKind::MCX: controlled_x(static_cast<std::size_t>(g.mcx_controls)); break;
        case GateKind::CZ:
            k.control_mask = 1ull << g.qubits[0];
            k.target = g.qubits[1];
            k.u = single_qubit_matrix(GateKind::Z, 0);
            break;
        case GateKind::SWAP:
            k.is_swap = true;
            k.target = g.qubits[0];
            k.other = g.qubits[1];
            break;
        default:
            k.target = g.qubits[0];
            k.u = single_qubit_matrix(g.kind, g.angle);
            break;
    }
    return k;
}

/// In-place stride iteration over amplitude pairs; no full-unitary build.
/// With `conjugate_entries`, applies elementwise-conjugated matrices (used
/// for the right factor of rho -> U rho U†).
inline void apply_kernel(std::vector<cdouble>& amp, const GateKernel& k, bool conjugate_entries = false) {
    const std::uint64_t size = amp.size();
    if (k.is_swap) {
        const std::uint64_t a = 1ull << k.target, b = 1ull << k.other;
        for (std::uint64_t i = 0; i < size; ++i)
            if ((i & a) && !(i & b)) std::swap(amp[i], amp[(i ^ a) | b]);
        return;
    }
    const std::uint64_t tbit = 1ull << k.target;
    const cdouble u00 = conjugate_entries ? std::conj(k.u[0]) : k.u[0];
    const cdouble u01 = conjugate_entries ? std::conj(k.u[1]) : k.u[1];
    const cdouble u10 = conjugate_entries ? std::conj(k.u[2]) : k.u[2];
    const cdouble u11 = conjugate_entries ? std::conj(k.u[3]) : k.u[3];
    for (std::uint64_t i = 0; i < size; ++i) {
        if ((i & tbit) || ((i & k.control_mask) != k.control_mask)) continue;
        const cdouble a0 = amp[i], a1 = amp[i | tbit];
        amp[i] = u00 * a0 + u01 * a1;
        amp[i | tbit] = u10 * a0 + u11 * a1;
    }
}

inline void apply_gate(std::vector<cdouble>& amp, const GateInstance& g) {
    if (g.kind == GateKind::Measure) return;  // terminal layer, no-op on amplitudes
    apply_kernel(amp, gate_kernel(g));
}

}  // namespace detail

/// Normalized pure state over 2^n complex amplitudes; basis index bit i is
/// qubit i.
class Statevector {
public:
    Statevector(int num_qubits, std::vector<cdouble> amplitudes)
        : num_qubits_(num_qubits), amp_(std::move(amplitudes)) {
        if (amp_.size() != (1ull << num_qubits_))
            throw std::invalid_argument("dimension-mismatch: amplitude count != 2^n");
        if (std::abs(norm() - 1.0) > 1e-10)
            throw std::invalid_argument("dimension-mismatch: state not normalized");
    }

    static Statevector zero_state(int n) { return basis_state(n, 0); }

    static Statevector basis_state(int n, std::uint64_t index) {
        std::vector<cdouble> amp(1ull << n, cdouble{0, 0});
        amp.at(index) = {1, 0};
        return Statevector(n, std::move(amp));
    }

    int num_qubits() const { return num_qubits_; }
    const std::vector<cdouble>& amplitudes() const { return amp_; }

    double norm() const {
        double s = 0;
        for (const auto& a : amp_) s += std::norm(a);
        return std::sqrt(s);
    }

    /// <this|other>
    cdouble inner(const Statevector& other) const {
        if (other.num_qubits_ != num_qubits_)
            throw std::invalid_argument("dimension-mismatch: inner product");
        cdouble s{0, 0};
        for (std::size_t i = 0; i < amp_.size(); ++i) s += std::conj(amp_[i]) * other.amp_[i];
        return s;
    }

    friend bool operator==(const Statevector&, const Statevector&) = default;

private:
    int num_qubits_;
    std::vector<cdouble> amp_;
};

/// Applies each gate's unitary in order to `initial` (default |0...0>).
inline Statevector run_statevector(const LogicalCircuit& circuit,
                                   const std::optional<Statevector>& initial = {}) {
    if (!circuit.fully_bound())
        throw std::invalid_argument("unbound-parameter: bind_parameters before simulation");
    std::vector<cdouble> amp;
    if (initial) {
        if (initial->num_qubits() != circuit.num_qubits())
            throw std::invalid_argument("dimension-mismatch: initial state width");
        amp = initial->amplitudes();
    } else {
        amp.assign(1ull << circuit.num_qubits(), cdouble{0, 0});
        amp[0] = {1, 0};
    }
    for (const auto& g : circuit.gate_list()) detail::apply_gate(amp, g);
    return Statevector(circuit.num_qubits(), std::move(amp));
}

/// Real part of <psi|O|psi>; the imaginary residue of a Hermitian observable
/// must vanish and is asserted against 1e-10.
inline double expectation(const Statevector& state, const PauliSum& observable) {
    if (observable.num_qubits() != state.num_qubits())
        throw std::invalid_argument("dimension-mismatch: observable width != state width");
    if (!is_hermitian(observable))
        throw std::invalid_argument("non-hermitian-observable: expectation");
    const auto& amp = state.amplitudes();
    cdouble total{0, 0};
    for (const auto& t : observable.terms()) {
        const std::uint64_t xmask = t.string.x_mask();
        cdouble val{0, 0};
        for (std::uint64_t k = 0; k < amp.size(); ++k)
            val += std::conj(amp[k ^ xmask]) * pauli_phase(t.string, k) * amp[k];
        total += t.coeff * val;
    }
    if (std::abs(total.imag()) >= 1e-10)
        throw std::runtime_error("non-hermitian-observable: imaginary expectation residue");
    return total.real();
}

/// Multinomial draw from |amplitude|^2. Keys are bitstrings with qubit n-1
/// leftmost. Deterministic for a fixed seed.
inline std::map<std::string, std::uint64_t> sample_counts(const Statevector& state,
                                                          std::uint64_t shots, std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("arity-mismatch: shots must be >= 1");
    const auto& amp = state.amplitudes();
    std::vector<double> cdf(amp.size());
    double acc = 0;
    for (std::size_t i = 0; i < amp.size(); ++i) {
        acc += std::norm(amp[i]);
        cdf[i] = acc;
    }
    cdf.back() = 1.0;

    std::mt19937_64 gen(seed);
    const int n = state.num_qubits();
    std::map<std::string, std::uint64_t> counts;
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = detail::uniform01(gen);
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        const auto idx = static_cast<std::uint64_t>(it - cdf.begin());
        std::string bits(static_cast<std::size_t>(n), '0');
        for (int q = 0; q < n; ++q)
            if (idx >> q & 1) bits[static_cast<std::size_t>(n - 1 - q)] = '1';
        ++counts[bits];
    }
    return counts;
}

/// Full unitary by columns: simulate every basis state. Test oracle; n <= 10.
inline CMatrix circuit_unitary(const LogicalCircuit& circuit) {
    if (circuit.num_qubits() > 10)
        throw std::invalid_argument("too-many-qubits: circuit_unitary capped at 10 qubits");
    const std::uint64_t dim = 1ull << circuit.num_qubits();
    CMatrix u(dim, dim);
    for (std::uint64_t col = 0; col < dim; ++col) {
        const Statevector out = run_statevector(circuit, Statevector::basis_state(circuit.num_qubits(), col));
        for (std::uint64_t row = 0; row < dim; ++row) u(row, col) = out.amplitudes()[row];
    }
    return u;
}

}  // namespace pvqa
