#pragma once

#include <cstdint>
#include <vector>

#include "repcat/gate.hpp"

namespace repcat {

/// Parity set of unordered qubit pairs carrying pending CZ errors. Inserting
/// a pair twice removes it (CZ is self-inverse). Kept sorted so that partner
/// enumeration is deterministic.
class CzSet {
  public:
    static uint32_t key(uint16_t a, uint16_t b) {
        if (a > b) std::swap(a, b);
        return (static_cast<uint32_t>(a) << 16) | b;
    }

    void toggle(uint16_t a, uint16_t b);
    bool contains(uint16_t a, uint16_t b) const;
    bool empty() const { return pairs_.empty(); }
    size_t size() const { return pairs_.size(); }
    void clear() { pairs_.clear(); }

    /// All partners of q, in ascending id order.
    void partners_of(uint16_t q, std::vector<uint16_t>& out) const;

    /// Relabels every endpoint a <-> b (SWAP conjugation).
    void relabel(uint16_t a, uint16_t b);

    const std::vector<uint32_t>& raw() const { return pairs_; }

  private:
    std::vector<uint32_t> pairs_;  // sorted packed keys
};

/// Pending error frame: one Z bit per qubit plus the CZ pair set. Pairs only
/// ever connect control-block and gadget-ancilla qubits; the target block
/// stays purely Pauli.
struct ErrorState {
    std::vector<uint8_t> zframe;
    CzSet czset;

    explicit ErrorState(int n_qubits = 0) : zframe(n_qubits, 0) {}

    void clear() {
        std::fill(zframe.begin(), zframe.end(), 0);
        czset.clear();
    }
    bool empty() const;
};

/// One draw from a gate error channel: up to three qubit Z flips and at most
/// one CZ pair.
struct ErrorDelta {
    uint8_t nz = 0;
    uint16_t z[3] = {0, 0, 0};
    bool has_cz = false;
    uint16_t cz_a = 0, cz_b = 0;

    bool is_identity() const { return nz == 0 && !has_cz; }
};

void apply_delta(ErrorState& e, const ErrorDelta& d);

/// Conjugates the pending error through one perfect gate: computes E' with
/// g E = E' g. Z on a CNOT target copies to the control; Z on a CCX target
/// toggles the CZ pair of its controls; SWAP relabels; diagonal gates and
/// Paulis act trivially apart from the PauliX rule X_q CZ(q,r) = CZ(q,r) Z_r X_q.
/// A CZ pair touching a CCX target would leave the tracked group; validated
/// circuits cannot produce one and the case throws.
void propagate(ErrorState& e, const Gate& g);

}  // namespace repcat
