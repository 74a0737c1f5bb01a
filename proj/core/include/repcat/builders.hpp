#pragma once

#include "repcat/experiment.hpp"

namespace repcat {

struct BuilderOptions {
    int rounds = 0;  // memory-style QEC rounds; 0 means d
    // Syndrome-extraction CNOT orientation. With the default, the ancilla is
    // the CNOT control so data phase flips copy onto it (Z_t -> Z_c Z_t) and
    // the dominant 3p CNOT error lands on the ancilla. The flipped
    // orientation exists for ablation runs only: it measures nothing.
    bool ancilla_is_control = true;
    bool perfect_ec = false;  // ToffoliConcat: idealized instantaneous EC
    bool build_geometry = true;
};

// Standalone fragments, mainly exercised by tests.
Circuit build_stabilizer_measurement(int i, int d, const BuilderOptions& opt = {});
Circuit build_round_robin_piece(int k, int d);
Circuit build_clifford_stabilizer_gadget(int i, int k, int d);
Circuit build_modified_b_stabilizer_gadget(int i, int k, int d);
Circuit build_steane_ec(int d);

// Full experiments.
Experiment build_memory_experiment(int d, const BuilderOptions& opt = {});
Experiment build_prep_plus_l(int d, const BuilderOptions& opt = {});
Experiment build_measure_xl(int d, const BuilderOptions& opt = {});
Experiment build_transversal_cnot(int d, const BuilderOptions& opt = {});
Experiment build_toffoli_concat_experiment(int d, const BuilderOptions& opt = {});
Experiment build_toffoli_ft_experiment(int d, const BuilderOptions& opt = {});
Experiment build_toffoli_swap_experiment(int d, const BuilderOptions& opt = {});

Experiment build_experiment(ExperimentKind kind, int d, const BuilderOptions& opt = {});

}  // namespace repcat
