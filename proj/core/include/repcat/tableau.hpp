#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "repcat/gate.hpp"

namespace repcat {

class Rng;

/// CHP-style stabilizer/destabilizer tableau over n qubits, initialized to
/// |+>^n. Rows store a Pauli as i^r * prod X^x Z^z with bit-packed x/z parts.
/// Supports exactly the Clifford gates the error circuits need; CCX is
/// rejected. Measurements are X-basis.
class StabilizerTableau {
  public:
    explicit StabilizerTableau(int n_qubits = 0);

    int num_qubits() const { return n_; }

    void prep_plus(int q, Rng& rng);  // reset q to |+>
    void pauli_x(int q);
    void pauli_z(int q);
    void cz(int a, int b);
    void cnot(int control, int target);
    void swap(int a, int b);

    struct MeasureResult {
        int outcome = +1;  // +1 or -1
        bool deterministic = false;
    };

    /// Measures X_q. Random outcomes consume one bit from rng and update the
    /// tableau by projection; deterministic outcomes leave it untouched.
    MeasureResult measure_x(int q, Rng& rng);

    /// True iff measuring prod_{q in support} X_q would be deterministic.
    bool x_string_deterministic(std::span<const int> support) const;

    /// Sign of a deterministic X string (precondition: deterministic).
    int x_string_value(std::span<const int> support) const;

    /// True iff any stabilizer row carries Z content on some qubit; false for
    /// states of the form (X-string signs) |+>^n.
    bool any_z_content() const;

    /// Verification hooks for tests.
    bool stabilizer_row_has_z(int row, int q) const;
    bool invariants_ok() const;

  private:
    int n_ = 0;
    int words_ = 0;
    // rows 0..n-1 destabilizers, n..2n-1 stabilizers, row 2n scratch
    std::vector<uint64_t> x_, z_;
    std::vector<uint8_t> r_;  // phase exponent of i, mod 4

    uint64_t* xrow(int i) { return &x_[static_cast<size_t>(i) * words_]; }
    uint64_t* zrow(int i) { return &z_[static_cast<size_t>(i) * words_]; }
    const uint64_t* xrow(int i) const { return &x_[static_cast<size_t>(i) * words_]; }
    const uint64_t* zrow(int i) const { return &z_[static_cast<size_t>(i) * words_]; }

    bool get(const uint64_t* row, int q) const { return (row[q >> 6] >> (q & 63)) & 1; }
    void toggle(uint64_t* row, int q) { row[q >> 6] ^= (1ull << (q & 63)); }

    void row_clear(int i);
    void row_copy(int dst, int src);
    void row_mult(int dst, int src);  // dst *= src with phase bookkeeping
    bool row_z_parity(int i, std::span<const int> support) const;
};

/// Applies one circuit gate to the tableau. Allowed kinds: PauliX, PauliZ,
/// CZ, CNOT, SWAP, PrepPlus. Anything else (in particular CCX) throws.
void tableau_apply(StabilizerTableau& t, const Gate& g, Rng& rng);

}  // namespace repcat
