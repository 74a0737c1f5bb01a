#pragma once

#include <memory>
#include <string>
#include <vector>

#include "repcat/circuit.hpp"

namespace repcat {

enum class ExperimentKind : uint8_t {
    Memory,
    PrepPlusL,
    MeasXL,
    TransversalCnot,
    ToffoliConcat,
    ToffoliFt,
    ToffoliSwap,
};

const char* experiment_name(ExperimentKind k);
bool experiment_from_name(const std::string& name, ExperimentKind& out);

/// Logical operators whose failure is tracked per trajectory.
enum LogicalOp : uint8_t {
    kZLA = 0,
    kZLB = 1,
    kZLC = 2,
    kCZLAB = 3,
    kXL = 4,
};
constexpr int kNumLogicalOps = 5;
using FailureSet = uint8_t;  // bit i set = LogicalOp i failed

const char* logical_op_name(int op);

/// One stabilizer-history domain fed to the MWPM decoder.
struct StabDomain {
    Domain domain = Domain::TargetStabs;
    Block block = Block::Target;
    int n_stabs = 0;
    int n_rounds = 0;  // grid rows, including the final perfect row
};

/// Decoding directives, executed in order once the referenced layer has run.
struct SchedulePoint {
    enum class Op : uint8_t {
        SteaneDecode,            // majority decode of steane row `piece - 1`
        TargetCumulativeDecode,  // MWPM over target rows seen so far
        PerfectRound,            // append a noiseless row to `domain`
        FinalTargetDecode,       // full-history target decode + fault timeline
        CzUndo,                  // a-posteriori CZ cancellation
        FinalBlockDecode,        // full-history decode of a block domain
    };
    Op op;
    Domain domain = Domain::TargetStabs;
    int piece = 0;
    int after_layer = -1;
};

struct GeometryBundle;  // decoder-side fault lattice, built once per experiment

/// A complete simulated gadget: circuit, decode schedule, failure criterion,
/// and bookkeeping the trajectory engine needs.
struct Experiment {
    ExperimentKind kind = ExperimentKind::Memory;
    int d = 3;
    Circuit circuit;
    std::vector<StabDomain> domains;
    std::vector<SchedulePoint> schedule;
    uint8_t criterion = 0;  // FailureSet mask of logical operators checked

    int n_pieces = 0;
    int steane_rows = 0;
    // Ancilla ranges per decoded block domain (offsets into the Ancilla block).
    // target window index per circuit layer, for CZ undo attribution
    std::vector<uint16_t> window_of_layer;
    bool ancilla_is_control = true;
    bool perfect_ec = false;  // idealized-EC accumulation variant

    std::shared_ptr<const GeometryBundle> geometry;

    const StabDomain* find_domain(Domain dom) const;
};

/// Experiment-level invariants: circuit passes validate_circuit, every MeasX
/// tag cell is covered exactly once, schedule references valid layers, and
/// the failure criterion is non-empty.
std::vector<Violation> validate_experiment(const Experiment& e);

}  // namespace repcat
