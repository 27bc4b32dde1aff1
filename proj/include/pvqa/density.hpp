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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pvqa/circuit.hpp"
#include "pvqa/matrix.hpp"
#include "pvqa/statevector.hpp"

namespace pvqa {

/// Depolarizing probability per gate, keyed by gate arity.
struct NoiseModel {
    double eps_1q = 0.0;
    double eps_2q = 0.0;
    double eps_3q = 0.0;

    NoiseModel() = default;
    NoiseModel(double e1, double e2, double e3) : eps_1q(e1), eps_2q(e2), eps_3q(e3) {
        for (double e : {e1, e2, e3})
            if (e < 0.0 || e > 1.0)
                throw std::invalid_argument("arity-mismatch: depolarizing probability outside [0,1]");
    }

    bool ideal() const { return eps_1q == 0.0 && eps_2q == 0.0 && eps_3q == 0.0; }

    double for_arity(int arity) const {
        if (arity <= 1) return eps_1q;
        if (arity == 2) return eps_2q;
        return eps_3q;
    }

    friend bool operator==(const NoiseModel&, const NoiseModel&) = default;
};

/// Mixed state; Hermitian, unit trace (validated at 1e-10). Positive
/// semidefiniteness holds by construction from channel evolution and is
/// asserted in tests.
class DensityMatrix {
public:
    DensityMatrix(int num_qubits, CMatrix matrix) : num_qubits_(num_qubits), m_(std::move(matrix)) {
        const std::uint64_t dim = 1ull << num_qubits_;
        if (m_.rows() != dim || m_.cols() != dim)
            throw std::invalid_argument("dimension-mismatch: density matrix must be 2^n x 2^n");
        cdouble tr{0, 0};
        for (std::uint64_t i = 0; i < dim; ++i) {
            tr += m_(i, i);
            for (std::uint64_t j = i; j < dim; ++j)
                if (std::abs(m_(i, j) - std::conj(m_(j, i))) > 1e-10)
                    throw std::invalid_argument("dimension-mismatch: density matrix not Hermitian");
        }
        if (std::abs(tr - cdouble{1, 0}) > 1e-10)
            throw std::invalid_argument("dimension-mismatch: density matrix trace != 1");
    }

    static DensityMatrix pure(const Statevector& psi) {
        const auto& a = psi.amplitudes();
        CMatrix m(a.size(), a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < a.size(); ++j) m(i, j) = a[i] * std::conj(a[j]);
        return DensityMatrix(psi.num_qubits(), std::move(m));
    }

    int num_qubits() const { return num_qubits_; }
    const CMatrix& matrix() const { return m_; }

private:
    int num_qubits_;
    CMatrix m_;
};

namespace detail {

inline void apply_unitary_to_density(CMatrix& rho, const GateInstance& g) {
    const GateKernel k = gate_kernel(g);
    const std::uint64_t dim = rho.rows();
    std::vector<cdouble> scratch(dim);
    // U rho: kernel over the row index, one column at a time.
    for (std::uint64_t c = 0; c < dim; ++c) {
        for (std::uint64_t r = 0; r < dim; ++r) scratch[r] = rho(r, c);
        apply_kernel(scratch, k);
        for (std::uint64_t r = 0; r < dim; ++r) rho(r, c) = scratch[r];
    }
    // (U rho) U†: row r maps as w = conj(U) v, elementwise-conjugated kernel.
    for (std::uint64_t r = 0; r < dim; ++r) {
        for (std::uint64_t c = 0; c < dim; ++c) scratch[c] = rho(r, c);
        apply_kernel(scratch, k, /*conjugate_entries=*/true);
        for (std::uint64_t c = 0; c < dim; ++c) rho(r, c) = scratch[c];
    }
}

/// rho -> (1-eps) rho + eps (I/2^k tensor Tr_Q rho) on the qubit subset Q.
inline void depolarize(CMatrix& rho, int num_qubits, const std::vector<int>& qubits, double eps) {
    if (eps <= 0.0) return;
    const int k = static_cast<int>(qubits.size());
    std::uint64_t qmask = 0;
    for (int q : qubits) qmask |= 1ull << q;

    // Scatter tables: rest-index r and subset-index m to full basis indices.
    const int n_rest = num_qubits - k;
    std::vector<std::uint64_t> rest_bits, sub_bits;
    for (int b = 0; b < num_qubits; ++b)
        ((qmask >> b) & 1 ? sub_bits : rest_bits).push_back(1ull << b);
    auto scatter = [](const std::vector<std::uint64_t>& bits, std::uint64_t idx) {
        std::uint64_t out = 0;
        for (std::size_t i = 0; i < bits.size(); ++i)
            if (idx >> i & 1) out |= bits[i];
        return out;
    };

    const std::uint64_t rest_dim = 1ull << n_rest, sub_dim = 1ull << k;
    CMatrix traced(rest_dim, rest_dim);
    for (std::uint64_t a = 0; a < rest_dim; ++a)
        for (std::uint64_t b = 0; b < rest_dim; ++b) {
            cdouble s{0, 0};
            for (std::uint64_t m = 0; m < sub_dim; ++m)
                s += rho(scatter(rest_bits, a) | scatter(sub_bits, m),
                         scatter(rest_bits, b) | scatter(sub_bits, m));
            traced(a, b) = s;
        }

    const double mix = eps / static_cast<double>(sub_dim);
    for (auto& v : rho.data()) v *= (1.0 - eps);
    for (std::uint64_t a = 0; a < rest_dim; ++a)
        for (std::uint64_t b = 0; b < rest_dim; ++b) {
            const cdouble add = mix * traced(a, b);
            if (add == cdouble{0, 0}) continue;
            for (std::uint64_t m = 0; m < sub_dim; ++m)
                rho(scatter(rest_bits, a) | scatter(sub_bits, m),
                    scatter(rest_bits, b) | scatter(sub_bits, m)) += add;
        }
}

}  // namespace detail

/// Dense noisy evolution: after each gate, the depolarizing channel acts on
/// that gate's qubits with the arity-matched probability.
inline DensityMatrix run_density_with_noise(const LogicalCircuit& circuit, const NoiseModel& noise) {
    if (circuit.num_qubits() > 12)
        throw std::invalid_argument("too-many-qubits: density simulation capped at 12 qubits");
    if (!circuit.fully_bound())
        throw std::invalid_argument("unbound-parameter: bind_parameters before simulation");
    const std::uint64_t dim = 1ull << circuit.num_qubits();
    CMatrix rho(dim, dim);
    rho(0, 0) = {1, 0};
    for (const auto& g : circuit.gate_list()) {
        if (g.kind == GateKind::Measure) continue;
        detail::apply_unitary_to_density(rho, g);
        detail::depolarize(rho, circuit.num_qubits(), g.qubits, noise.for_arity(g.arity()));
    }
    return DensityMatrix(circuit.num_qubits(), std::move(rho));
}

/// <psi_ideal| rho |psi_ideal>, clamped to [0,1] against numerical spill.
inline double state_fidelity(const Statevector& ideal, const DensityMatrix& noisy) {
    if (ideal.num_qubits() != noisy.num_qubits())
        throw std::invalid_argument("dimension-mismatch: state_fidelity");
    const auto& a = ideal.amplitudes();
    cdouble f{0, 0};
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            f += std::conj(a[i]) * noisy.matrix()(i, j) * a[j];
    return std::clamp(f.real(), 0.0, 1.0);
}

}  // namespace pvqa
