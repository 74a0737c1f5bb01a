#pragma once

#include <cstdint>
#include <string>

namespace repcat {

enum class GateKind : uint8_t {
    Idle = 0,
    PrepPlus,
    PrepZeroL,
    MeasX,
    PauliX,
    PauliZ,
    CZ,
    CNOT,   // q0 control, q1 target
    CCX,    // q0, q1 controls, q2 target
    SWAP,
};

inline int gate_arity(GateKind k) {
    switch (k) {
        case GateKind::CCX: return 3;
        case GateKind::CZ:
        case GateKind::CNOT:
        case GateKind::SWAP: return 2;
        default: return 1;
    }
}

inline const char* gate_name(GateKind k) {
    switch (k) {
        case GateKind::Idle: return "I";
        case GateKind::PrepPlus: return "P+";
        case GateKind::PrepZeroL: return "P0L";
        case GateKind::MeasX: return "MX";
        case GateKind::PauliX: return "X";
        case GateKind::PauliZ: return "Z";
        case GateKind::CZ: return "CZ";
        case GateKind::CNOT: return "CX";
        case GateKind::CCX: return "CCX";
        case GateKind::SWAP: return "SWAP";
    }
    return "?";
}

bool gate_kind_from_name(const std::string& name, GateKind& out);

constexpr uint16_t kNoTag = 0xffff;

/// Gate over flat qubit ids. MeasX gates carry a tag index into the
/// experiment's measurement-tag table; everything else leaves it at kNoTag.
struct Gate {
    GateKind kind = GateKind::Idle;
    uint8_t nq = 1;
    uint16_t tag = kNoTag;
    uint16_t q[3] = {0, 0, 0};

    static Gate g1(GateKind k, uint16_t a) { return Gate{k, 1, kNoTag, {a, 0, 0}}; }
    static Gate g2(GateKind k, uint16_t a, uint16_t b) { return Gate{k, 2, kNoTag, {a, b, 0}}; }
    static Gate g3(GateKind k, uint16_t a, uint16_t b, uint16_t c) {
        return Gate{k, 3, kNoTag, {a, b, c}};
    }
};

/// Where a measurement outcome lands: a (row, col) cell of one of the
/// experiment's outcome grids.
enum class Domain : uint8_t {
    TargetStabs = 0,  // target-block stabilizer history
    BlockAStabs = 1,  // control-A stabilizer history (plain or Clifford gadgets)
    BlockBStabs = 2,  // control-B stabilizer history
    SteaneAncilla = 3,  // transversal read-out of the Steane ancilla block
    LogicalX = 4,       // transversal X_L measurement
};

constexpr int kNumDomains = 5;

struct MeasTag {
    Domain domain = Domain::TargetStabs;
    uint16_t row = 0;  // round index within the domain grid
    uint16_t col = 0;  // stabilizer / qubit index
};

}  // namespace repcat
