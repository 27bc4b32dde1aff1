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
#include <map>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pvqa {

/// Hardware-agnostic gate vocabulary. Qubit index 0 is the least significant
/// bit of basis-state labels |q_{n-1}...q_1 q_0>; every module follows this.
enum class GateKind { X, Y, Z, H, SX, RX, RY, RZ, CX, CZ, SWAP, CCX, MCX, Measure };

constexpr bool is_rotation(GateKind k) {
    return k == GateKind::RX || k == GateKind::RY || k == GateKind::RZ;
}

inline std::string_view gate_name(GateKind k) {
    switch (k) {
        case GateKind::X: return "X";
        case GateKind::Y: return "Y";
        case GateKind::Z: return "Z";
        case GateKind::H: return "H";
        case GateKind::SX: return "SX";
        case GateKind::RX: return "RX";
        case GateKind::RY: return "RY";
        case GateKind::RZ: return "RZ";
        case GateKind::CX: return "CX";
        case GateKind::CZ: return "CZ";
        case GateKind::SWAP: return "SWAP";
        case GateKind::CCX: return "CCX";
        case GateKind::MCX: return "MCX";
        case GateKind::Measure: return "MEASURE";
    }
    return "?";
}

/// One gate application. Operand order: controls first, target last.
/// Rotation gates carry either a bound angle or a symbolic parameter name.
struct GateInstance {
    GateKind kind = GateKind::X;
    std::vector<int> qubits;
    double angle = 0.0;
    std::string param;       // nonempty = unbound rotation
    int mcx_controls = 0;    // MCX only, >= 2

    int arity() const {
        switch (kind) {
            case GateKind::CX:
            case GateKind::CZ:
            case GateKind::SWAP: return 2;
            case GateKind::CCX: return 3;
            case GateKind::MCX: return mcx_controls + 1;
            default: return 1;
        }
    }

    bool parameterized() const { return !param.empty(); }

    friend bool operator==(const GateInstance&, const GateInstance&) = default;
};

namespace gates {

inline GateInstance x(int q) { return {GateKind::X, {q}, 0.0, {}, 0}; }
inline GateInstance y(int q) { return {GateKind::Y, {q}, 0.0, {}, 0}; }
inline GateInstance z(int q) { return {GateKind::Z, {q}, 0.0, {}, 0}; }
inline GateInstance h(int q) { return {GateKind::H, {q}, 0.0, {}, 0}; }
inline GateInstance sx(int q) { return {GateKind::SX, {q}, 0.0, {}, 0}; }
inline GateInstance rx(int q, double angle) { return {GateKind::RX, {q}, angle, {}, 0}; }
inline GateInstance ry(int q, double angle) { return {GateKind::RY, {q}, angle, {}, 0}; }
inline GateInstance rz(int q, double angle) { return {GateKind::RZ, {q}, angle, {}, 0}; }
inline GateInstance rx(int q, std::string param) { return {GateKind::RX, {q}, 0.0, std::move(param), 0}; }
inline GateInstance ry(int q, std::string param) { return {GateKind::RY, {q}, 0.0, std::move(param), 0}; }
inline GateInstance rz(int q, std::string param) { return {GateKind::RZ, {q}, 0.0, std::move(param), 0}; }
inline GateInstance cx(int control, int target) { return {GateKind::CX, {control, target}, 0.0, {}, 0}; }
inline GateInstance cz(int a, int b) { return {GateKind::CZ, {a, b}, 0.0, {}, 0}; }
inline GateInstance swap(int a, int b) { return {GateKind::SWAP, {a, b}, 0.0, {}, 0}; }
inline GateInstance ccx(int c0, int c1, int target) { return {GateKind::CCX, {c0, c1, target}, 0.0, {}, 0}; }

inline GateInstance mcx(std::vector<int> controls, int target) {
    GateInstance g{GateKind::MCX, std::move(controls), 0.0, {}, 0};
    g.mcx_controls = static_cast<int>(g.qubits.size());
    g.qubits.push_back(target);
    return g;
}

inline GateInstance measure(int q) { return {GateKind::Measure, {q}, 0.0, {}, 0}; }

}  // namespace gates

/// Ordered gate sequence on abstract qubits, value-semantic and immutable
/// once shared. The parameter table order is the binding order: theta[i]
/// binds the i-th distinct symbolic name.
class LogicalCircuit {
public:
    LogicalCircuit() = default;

    explicit LogicalCircuit(int num_qubits) : num_qubits_(num_qubits) {
        if (num_qubits < 1) throw std::invalid_argument("index-out-of-range: circuit needs >= 1 qubit");
    }

    int num_qubits() const { return num_qubits_; }
    const std::vector<GateInstance>& gate_list() const { return gates_; }
    const std::vector<std::string>& parameters() const { return params_; }
    std::size_t size() const { return gates_.size(); }
    bool fully_bound() const { return params_.empty(); }

    /// Mutating builder primitive. Factories use this while assembling;
    /// the value-semantic op is append().
    LogicalCircuit& add(GateInstance g) {
        validate(g);
        if (g.parameterized() &&
            std::find(params_.begin(), params_.end(), g.param) == params_.end()) {
            params_.push_back(g.param);
        }
        gates_.push_back(std::move(g));
        return *this;
    }

    LogicalCircuit append(GateInstance g) const {
        LogicalCircuit out = *this;
        out.add(std::move(g));
        return out;
    }

    LogicalCircuit bind_parameters(std::span<const double> theta) const {
        if (theta.size() != params_.size())
            throw std::invalid_argument("length-mismatch: expected " + std::to_string(params_.size()) +
                                        " parameters, got " + std::to_string(theta.size()));
        LogicalCircuit out(num_qubits_);
        out.gates_.reserve(gates_.size());
        for (GateInstance g : gates_) {
            if (g.parameterized()) {
                auto it = std::find(params_.begin(), params_.end(), g.param);
                g.angle = theta[static_cast<std::size_t>(it - params_.begin())];
                g.param.clear();
            }
            out.gates_.push_back(std::move(g));
        }
        return out;
    }

    /// Gates of `tail` appended after this circuit's gates; parameter tables
    /// merged by name, this circuit's names first.
    LogicalCircuit concatenated(const LogicalCircuit& tail) const {
        if (tail.num_qubits_ != num_qubits_)
            throw std::invalid_argument("dimension-mismatch: concatenating circuits of different width");
        LogicalCircuit out = *this;
        for (const auto& g : tail.gates_) out.add(g);
        return out;
    }

    /// Longest chain in the gate dependency DAG (gates depend iff they share
    /// a qubit), via greedy as-soon-as-possible layering.
    int depth() const {
        std::vector<int> level(static_cast<std::size_t>(num_qubits_), 0);
        for (const auto& g : gates_) {
            int at = 0;
            for (int q : g.qubits) at = std::max(at, level[static_cast<std::size_t>(q)]);
            for (int q : g.qubits) level[static_cast<std::size_t>(q)] = at + 1;
        }
        return *std::max_element(level.begin(), level.end());
    }

    std::map<GateKind, int> gate_counts() const {
        std::map<GateKind, int> counts;
        for (const auto& g : gates_) ++counts[g.kind];
        return counts;
    }

    /// Line format: header `qubits N`, then one gate per line
    /// `KIND q0[,q1,...] [angle|@param]`.
    std::string to_text() const {
        std::ostringstream os;
        os << "qubits " << num_qubits_ << "\n";
        for (const auto& g : gates_) {
            os << gate_name(g.kind) << " ";
            for (std::size_t i = 0; i < g.qubits.size(); ++i) {
                if (i) os << ",";
                os << g.qubits[i];
            }
            if (is_rotation(g.kind)) {
                if (g.parameterized()) {
                    os << " @" << g.param;
                } else {
                    char buf[32];
                    std::snprintf(buf, sizeof(buf), "%.17g", g.angle);
                    os << " " << buf;
                }
            }
            os << "\n";
        }
        return os.str();
    }

    friend bool operator==(const LogicalCircuit&, const LogicalCircuit&) = default;

private:
    void validate(const GateInstance& g) const {
        if (static_cast<int>(g.qubits.size()) != g.arity())
            throw std::invalid_argument("arity-mismatch: " + std::string(gate_name(g.kind)) + " expects " +
                                        std::to_string(g.arity()) + " qubits, got " +
                                        std::to_string(g.qubits.size()));
        if (g.kind == GateKind::MCX && g.mcx_controls < 2)
            throw std::invalid_argument("arity-mismatch: MCX needs >= 2 controls");
        for (int q : g.qubits)
            if (q < 0 || q >= num_qubits_)
                throw std::out_of_range("index-out-of-range: qubit " + std::to_string(q) + " on " +
                                        std::to_string(num_qubits_) + "-qubit circuit");
        std::vector<int> sorted = g.qubits;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("arity-mismatch: duplicate qubit index in " +
                                        std::string(gate_name(g.kind)));
        if (g.parameterized() && !is_rotation(g.kind))
            throw std::invalid_argument("arity-mismatch: only rotation gates take parameters");
        // Measurement is a terminal full-register layer; nothing follows it.
        if (!gates_.empty() && gates_.back().kind == GateKind::Measure && g.kind != GateKind::Measure)
            throw std::invalid_argument("mid-circuit-measurement: gates after Measure are not supported");
    }

    int num_qubits_ = 1;
    std::vector<GateInstance> gates_;
    std::vector<std::string> params_;
};

/// k-controlled X from a compute/uncompute chain of Toffolis onto clean
/// ancillae: 2(k-1) CCX + 1 CX for k >= 3, a plain CCX for k = 2 (the chain
/// would round-trip a single ancilla for nothing). Ancillae must start in
/// |0> and are returned to |0>.
inline LogicalCircuit mcx_vchain(int num_controls, std::span<const int> controls, int target,
                                 std::span<const int> ancillas) {
    if (num_controls < 2 || static_cast<int>(controls.size()) != num_controls)
        throw std::invalid_argument("arity-mismatch: mcx_vchain needs >= 2 controls");
    if (static_cast<int>(ancillas.size()) < num_controls - 1)
        throw std::invalid_argument("insufficient-ancilla: need " + std::to_string(num_controls - 1) +
                                    " ancillae for " + std::to_string(num_controls) + " controls");
    std::vector<int> all(controls.begin(), controls.end());
    all.push_back(target);
    all.insert(all.end(), ancillas.begin(), ancillas.begin() + (num_controls - 1));
    std::vector<int> sorted = all;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("index-collision: controls, target and ancillae must be distinct");

    LogicalCircuit frag(*std::max_element(all.begin(), all.end()) + 1);
    if (num_controls == 2) {
        frag.add(gates::ccx(controls[0], controls[1], target));
        return frag;
    }
    // Compute chain: a[0] = c0 AND c1, a[i] = a[i-1] AND c[i+1].
    std::vector<GateInstance> chain;
    chain.push_back(gates::ccx(controls[0], controls[1], ancillas[0]));
    for (int i = 1; i < num_controls - 1; ++i)
        chain.push_back(gates::ccx(controls[static_cast<std::size_t>(i) + 1],
                                   ancillas[static_cast<std::size_t>(i) - 1],
                                   ancillas[static_cast<std::size_t>(i)]));
    for (const auto& g : chain) frag.add(g);
    frag.add(gates::cx(ancillas[static_cast<std::size_t>(num_controls) - 2], target));
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) frag.add(*it);
    return frag;
}

}  // namespace pvqa
