#pragma once

#include <string>
#include <vector>

#include "repcat/gate.hpp"
#include "repcat/qubit.hpp"

namespace repcat {

/// Builder-assigned role of a layer, used by the validator to check gadget
/// scheduling (a modified B-stabilizer gadget must follow target-block EC
/// within its piece) and by the geometry tracer to attribute fault windows.
enum class Section : uint8_t {
    Generic = 0,
    Piece,          // transversal CCX layer
    TargetEc,       // intermediate target stabilizer round / Steane EC
    GadgetA,        // Clifford stabilizer gadgets on block A
    GadgetB,        // modified B-stabilizer gadgets
    FinalCycle,
    SwapNetwork,
};

struct Layer {
    std::vector<Gate> gates;
    std::vector<uint16_t> idle;  // qubits not touched by any gate this layer
    Section section = Section::Generic;
    uint16_t piece = 0;  // 1-based piece index for Piece/TargetEc/Gadget layers
};

/// Time-stepped gate sequence. Every layer has uniform duration; qubits not
/// acted on idle explicitly. All qubit operands are flat ids resolved through
/// the layout.
struct Circuit {
    Layout layout;
    std::vector<Layer> layers;
    std::vector<MeasTag> tags;

    int distance() const { return layout.distance(); }
    int total_qubits() const { return layout.total_qubits(); }

    /// Appends a layer made of `gates`; fills in the idle list.
    Layer& add_layer(std::vector<Gate> gates, Section section = Section::Generic,
                     uint16_t piece = 0);

    uint16_t add_tag(Domain domain, uint16_t row, uint16_t col);

    size_t gate_count(GateKind k) const;
};

struct Violation {
    int layer = -1;
    int qubit = -1;
    std::string message;
};

/// Checks the structural invariants: operand arity and range, no qubit used
/// twice within a layer, all CCX targets in the Target block (and in a single
/// block), and gadget-section ordering. Never throws; returns one record per
/// breach.
std::vector<Violation> validate_circuit(const Circuit& c);

/// JSON round-trip used by golden tests and the CLI `validate` verb.
std::string circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const std::string& text);

}  // namespace repcat
