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

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pvqa/circuit.hpp"
#include "pvqa/matrix.hpp"

namespace pvqa {

/// Tensor product of single-qubit Paulis. Label position i is qubit i
/// (index 0 least significant), so "XI" means X on qubit 0.
class PauliString {
public:
    explicit PauliString(std::string label) : label_(std::move(label)) {
        if (label_.empty()) throw std::invalid_argument("arity-mismatch: empty Pauli label");
        for (char c : label_)
            if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
                throw std::invalid_argument("arity-mismatch: Pauli label may only contain IXYZ");
    }

    static PauliString identity(int n) { return PauliString(std::string(static_cast<std::size_t>(n), 'I')); }

    static PauliString single(int n, int qubit, char p) {
        std::string label(static_cast<std::size_t>(n), 'I');
        label[static_cast<std::size_t>(qubit)] = p;
        return PauliString(std::move(label));
    }

    int num_qubits() const { return static_cast<int>(label_.size()); }
    char at(int qubit) const { return label_[static_cast<std::size_t>(qubit)]; }
    const std::string& label() const { return label_; }
    bool is_identity() const { return label_.find_first_not_of('I') == std::string::npos; }

    /// Bitmask of qubits where this string flips the basis state (X or Y).
    std::uint64_t x_mask() const {
        std::uint64_t m = 0;
        for (std::size_t i = 0; i < label_.size(); ++i)
            if (label_[i] == 'X' || label_[i] == 'Y') m |= 1ull << i;
        return m;
    }

    /// Bitmask of qubits contributing a (-1)^bit phase (Y or Z).
    std::uint64_t phase_mask() const {
        std::uint64_t m = 0;
        for (std::size_t i = 0; i < label_.size(); ++i)
            if (label_[i] == 'Y' || label_[i] == 'Z') m |= 1ull << i;
        return m;
    }

    int y_count() const {
        int c = 0;
        for (char p : label_)
            if (p == 'Y') ++c;
        return c;
    }

    /// Operator product this * rhs (rhs applied first). Returns the global
    /// phase and the resulting string.
    std::pair<cdouble, PauliString> times(const PauliString& rhs) const {
        if (rhs.label_.size() != label_.size())
            throw std::invalid_argument("dimension-mismatch: Pauli product widths differ");
        std::string out(label_.size(), 'I');
        cdouble phase{1.0, 0.0};
        for (std::size_t i = 0; i < label_.size(); ++i) {
            auto [p, c] = single_product(label_[i], rhs.label_[i]);
            phase *= p;
            out[i] = c;
        }
        return {phase, PauliString(std::move(out))};
    }

    friend auto operator<=>(const PauliString& a, const PauliString& b) { return a.label_ <=> b.label_; }
    friend bool operator==(const PauliString& a, const PauliString& b) { return a.label_ == b.label_; }

private:
    static std::pair<cdouble, char> single_product(char a, char b) {
        if (a == 'I') return {{1, 0}, b};
        if (b == 'I') return {{1, 0}, a};
        if (a == b) return {{1, 0}, 'I'};
        // Cyclic: XY=iZ, YZ=iX, ZX=iY; reversed order flips the sign.
        static constexpr char third[3][3] = {{'I', 'Z', 'Y'}, {'Z', 'I', 'X'}, {'Y', 'X', 'I'}};
        auto idx = [](char c) { return c == 'X' ? 0 : c == 'Y' ? 1 : 2; };
        int ia = idx(a), ib = idx(b);
        bool forward = (ib - ia + 3) % 3 == 1;
        return {cdouble{0, forward ? 1.0 : -1.0}, third[ia][ib]};
    }

    std::string label_;
};

struct PauliTerm {
    cdouble coeff;
    PauliString string;
    friend bool operator==(const PauliTerm&, const PauliTerm&) = default;
};

/// Weighted list of n-qubit Pauli strings, canonicalized: terms sorted
/// lexicographically by label, duplicates merged, |coeff| <= drop tolerance
/// removed.
class PauliSum {
public:
    explicit PauliSum(int num_qubits, double drop_tol = kDefaultDropTol)
        : num_qubits_(num_qubits), drop_tol_(drop_tol) {
        if (num_qubits < 1) throw std::invalid_argument("arity-mismatch: PauliSum needs >= 1 qubit");
    }

    PauliSum(int num_qubits, std::vector<PauliTerm> terms, double drop_tol = kDefaultDropTol)
        : PauliSum(num_qubits, drop_tol) {
        for (auto& t : terms) accumulate(std::move(t));
        canonicalize();
    }

    static PauliSum identity(int n, cdouble coeff = {1, 0}) {
        return PauliSum(n, {{coeff, PauliString::identity(n)}});
    }

    static PauliSum single(int n, int qubit, char p, cdouble coeff = {1, 0}) {
        return PauliSum(n, {{coeff, PauliString::single(n, qubit, p)}});
    }

    int num_qubits() const { return num_qubits_; }
    const std::vector<PauliTerm>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    cdouble coefficient(const std::string& label) const {
        for (const auto& t : terms_)
            if (t.string.label() == label) return t.coeff;
        return {0, 0};
    }

    PauliSum operator+(const PauliSum& rhs) const {
        check_width(rhs);
        PauliSum out = *this;
        for (const auto& t : rhs.terms_) out.accumulate(t);
        out.canonicalize();
        return out;
    }

    PauliSum operator-(const PauliSum& rhs) const { return *this + rhs * cdouble{-1, 0}; }

    PauliSum operator*(cdouble scalar) const {
        PauliSum out = *this;
        for (auto& t : out.terms_) t.coeff *= scalar;
        out.canonicalize();
        return out;
    }

    /// Operator product (rhs applied first); term-by-term string products.
    PauliSum operator*(const PauliSum& rhs) const {
        check_width(rhs);
        PauliSum out(num_qubits_, drop_tol_);
        for (const auto& a : terms_)
            for (const auto& b : rhs.terms_) {
                auto [phase, str] = a.string.times(b.string);
                out.accumulate({a.coeff * b.coeff * phase, std::move(str)});
            }
        out.canonicalize();
        return out;
    }

    PauliSum adjoint() const {
        PauliSum out = *this;
        for (auto& t : out.terms_) t.coeff = std::conj(t.coeff);
        return out;
    }

    /// One term per line: `<re> <im> <LABEL>`, canonical order.
    std::string to_text() const {
        std::string out;
        char buf[80];
        for (const auto& t : terms_) {
            std::snprintf(buf, sizeof(buf), "%.17g %.17g %s\n", t.coeff.real(), t.coeff.imag(),
                          t.string.label().c_str());
            out += buf;
        }
        return out;
    }

    friend bool operator==(const PauliSum& a, const PauliSum& b) {
        return a.num_qubits_ == b.num_qubits_ && a.terms_ == b.terms_;
    }

    static constexpr double kDefaultDropTol = 1e-12;

private:
    void check_width(const PauliSum& rhs) const {
        if (rhs.num_qubits_ != num_qubits_)
            throw std::invalid_argument("dimension-mismatch: PauliSum widths differ");
    }

    void accumulate(PauliTerm t) {
        if (t.string.num_qubits() != num_qubits_)
            throw std::invalid_argument("dimension-mismatch: term width differs from sum");
        acc_[t.string.label()] += t.coeff;
    }

    void canonicalize() {
        for (auto& t : terms_) acc_[t.string.label()] += t.coeff;
        terms_.clear();
        for (auto& [label, coeff] : acc_)
            if (std::abs(coeff) > drop_tol_) terms_.push_back({coeff, PauliString(label)});
        acc_.clear();
    }

    int num_qubits_ = 1;
    double drop_tol_ = kDefaultDropTol;
    std::vector<PauliTerm> terms_;
    std::map<std::string, cdouble> acc_;  // scratch during accumulation
};

inline PauliSum operator*(cdouble scalar, const PauliSum& ps) { return ps * scalar; }

/// Phase picked up by `ps` acting on basis state `k`:
/// P|k> = phase * |k XOR x_mask>.
inline cdouble pauli_phase(const PauliString& ps, std::uint64_t k) {
    static constexpr cdouble ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    int sign = std::popcount(k & ps.phase_mask()) & 1 ? -1 : 1;
    return static_cast<double>(sign) * ipow[ps.y_count() & 3];
}

/// Coefficients c_P = Tr(P† M)/2^n over all 4^n strings; |c| <= tolerance
/// dropped. Brute-force verification oracle; structured operators are
/// assembled analytically elsewhere.
inline PauliSum decompose_matrix(const CMatrix& m, double tolerance = PauliSum::kDefaultDropTol) {
    const std::size_t dim = m.rows();
    if (dim == 0 || m.cols() != dim || (dim & (dim - 1)) != 0)
        throw std::invalid_argument("non-power-of-2-dimension: matrix must be 2^n x 2^n");
    int n = 0;
    while ((1ull << n) < dim) ++n;
    n = std::max(n, 1);

    std::vector<PauliTerm> terms;
    std::string label(static_cast<std::size_t>(n), 'I');
    const char alphabet[4] = {'I', 'X', 'Y', 'Z'};
    const std::uint64_t total = 1ull << (2 * n);
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t c = code;
        for (int q = 0; q < n; ++q, c >>= 2) label[static_cast<std::size_t>(q)] = alphabet[c & 3];
        PauliString p(label);
        const std::uint64_t xmask = p.x_mask();
        // P is Hermitian, so Tr(P†M) = Tr(PM) = sum_k phase(k) M[k][k^xmask].
        cdouble tr{0, 0};
        for (std::uint64_t k = 0; k < dim; ++k) tr += pauli_phase(p, k) * m(k, k ^ xmask);
        const cdouble c_p = tr / static_cast<double>(dim);
        if (std::abs(c_p) > tolerance) terms.push_back({c_p, std::move(p)});
    }
    return PauliSum(n, std::move(terms), tolerance);
}

inline CMatrix to_matrix(const PauliSum& ps) {
    if (ps.num_qubits() > 10)
        throw std::invalid_argument("too-many-qubits: to_matrix capped at 10 qubits");
    const std::uint64_t dim = 1ull << ps.num_qubits();
    CMatrix m(dim, dim);
    for (const auto& t : ps.terms()) {
        const std::uint64_t xmask = t.string.x_mask();
        for (std::uint64_t k = 0; k < dim; ++k) m(k ^ xmask, k) += t.coeff * pauli_phase(t.string, k);
    }
    return m;
}

inline bool is_hermitian(const PauliSum& ps) {
    for (const auto& t : ps.terms())
        if (std::abs(t.coeff.imag()) >= 1e-10) return false;
    return true;
}

/// Basis-change fragment mapping one Pauli string onto a Z-string, with the
/// term's weight. Measuring `z_string` after `basis_change` estimates the
/// original term.
struct MeasurementBasis {
    LogicalCircuit basis_change;
    PauliString z_string;
    double weight;
};

struct MeasurementPlan {
    std::vector<MeasurementBasis> bases;
    double identity_offset = 0.0;
};

inline MeasurementPlan measurement_bases(const PauliSum& ps) {
    if (!is_hermitian(ps)) throw std::invalid_argument("non-hermitian-observable: measurement_bases");
    MeasurementPlan plan;
    const int n = ps.num_qubits();
    for (const auto& t : ps.terms()) {
        if (t.string.is_identity()) {
            plan.identity_offset += t.coeff.real();
            continue;
        }
        LogicalCircuit frag(n);
        std::string zlabel(static_cast<std::size_t>(n), 'I');
        for (int q = 0; q < n; ++q) {
            switch (t.string.at(q)) {
                case 'X':
                    frag.add(gates::h(q));
                    zlabel[static_cast<std::size_t>(q)] = 'Z';
                    break;
                case 'Y':
                    // HS† maps the Y eigenbasis onto Z; S† as RZ(-pi/2) up
                    // to global phase.
                    frag.add(gates::rz(q, -std::numbers::pi / 2));
                    frag.add(gates::h(q));
                    zlabel[static_cast<std::size_t>(q)] = 'Z';
                    break;
                case 'Z':
                    zlabel[static_cast<std::size_t>(q)] = 'Z';
                    break;
                default:
                    break;
            }
        }
        plan.bases.push_back({std::move(frag), PauliString(std::move(zlabel)), t.coeff.real()});
    }
    return plan;
}

}  // namespace pvqa
