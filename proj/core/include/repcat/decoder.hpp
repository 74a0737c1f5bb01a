#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "repcat/error_state.hpp"
#include "repcat/experiment.hpp"

namespace repcat {

/// Outcome grid of one stabilizer domain; bit 1 = outcome -1. Rows are
/// measurement rounds in time order, the last row being the perfect round.
struct SyndromeGrid {
    int n_rounds = 0;
    int n_stabs = 0;
    std::vector<uint8_t> bits;

    SyndromeGrid() = default;
    SyndromeGrid(int rounds, int stabs) : n_rounds(rounds), n_stabs(stabs), bits(rounds * stabs, 0) {}
    uint8_t& at(int r, int i) { return bits[r * n_stabs + i]; }
    uint8_t get(int r, int i) const { return bits[r * n_stabs + i]; }
    int node(int r, int i) const { return r * n_stabs + i; }
};

/// Space-time nodes where an outcome differs from the previous round (first
/// round compared against +1).
std::vector<int> detection_events(const SyndromeGrid& g, int rounds_limit = -1);

// ---------------------------------------------------------------------------
// Fault-lattice geometry, enumerated per experiment by injecting every
// single Pauli-Z fault (and measurement flip) into a noiseless trace.

struct GeomEdge {
    int a = -1;
    int b = -1;  // -1 = boundary
    std::vector<uint16_t> content;  // data-qubit indices within the block
    uint16_t window = 0;            // target-frame window, for CZ undo attribution
};

struct DomainGeometry {
    int n_rounds = 0;
    int n_stabs = 0;
    std::vector<GeomEdge> edges;
    std::vector<std::vector<int>> adj;  // node -> incident edge ids

    int n_nodes() const { return n_rounds * n_stabs; }
    bool empty() const { return edges.empty(); }
};

struct GeometryBundle {
    // indexed by Domain value for TargetStabs / BlockAStabs / BlockBStabs
    DomainGeometry domains[3];
};

/// Builds the per-domain fault lattices for an experiment. Deterministic and
/// noise-strength independent (unit weight per elementary fault).
std::shared_ptr<const GeometryBundle> build_geometry(const Experiment& e);

// ---------------------------------------------------------------------------
// Matching

struct MatchingGraph {
    int n_events = 0;
    std::vector<int> event_nodes;
    std::vector<int64_t> dist;       // n_events x n_events, pairwise shortest paths
    std::vector<int64_t> boundary;   // per event: shortest path to the lattice boundary
    // Dijkstra state per event for path reconstruction.
    std::vector<std::vector<int32_t>> node_dist;
    std::vector<std::vector<int32_t>> pred_edge;
    std::vector<int> boundary_via_node;  // node whose boundary edge closes the path
    std::vector<int> boundary_via_edge;

    int64_t d(int i, int j) const { return dist[i * n_events + j]; }
};

/// All-pairs event distances over the fault lattice via Dijkstra from each
/// detection event.
MatchingGraph build_matching_graph(const std::vector<int>& events, const DomainGeometry& geom);

/// Exact minimum-weight perfect matching (blossom). Returns, per event, its
/// partner event index or -1 for a boundary match. Deterministic for a fixed
/// input ordering.
std::vector<int> mwpm(const MatchingGraph& g);

/// Test-only greedy baseline; never used on the decode path.
std::vector<int> greedy_matching(const MatchingGraph& g);

/// Minimum total weight of any perfect matching, by exhaustive search.
/// Test oracle; feasible for <= 10 events.
int64_t brute_force_matching_weight(const MatchingGraph& g);
int64_t matching_weight(const MatchingGraph& g, const std::vector<int>& match);

struct Correction {
    std::vector<uint16_t> z_qubits;  // block-qubit indices with odd parity
    // (qubit, window) pairs of every space-like fault on the matched paths
    std::vector<std::pair<uint16_t, uint16_t>> fault_windows;
};

Correction correction_from_matching(const MatchingGraph& g, const std::vector<int>& match,
                                    const DomainGeometry& geom);

/// Majority-vote inference for Steane-style readout: the minority outcome
/// side is returned as the Z correction on the data block.
std::vector<uint16_t> majority_decode_steane(std::span<const uint8_t> outcome_bits);

/// Applied-correction log entry for the target block.
struct TargetCorrectionEntry {
    int boundary = 0;  // corrections take effect for pieces > boundary
    std::vector<uint16_t> qubits;
};

/// A-posteriori CZ cancellation: re-derives, from the final decode's fault
/// windows and the applied-correction log, which target Z content crossed
/// which pieces, and emits the CZ pairs those crossings generated. XORing the
/// result into the pending set cancels every correctly re-attributed pair.
std::vector<std::pair<uint16_t, uint16_t>> cz_posteriori_undo(
    const std::vector<std::pair<uint16_t, uint16_t>>& final_fault_windows,
    const std::vector<TargetCorrectionEntry>& applied_log, int n_pieces, int d,
    const std::function<std::pair<uint16_t, uint16_t>(int piece, int qubit)>& pair_map);

/// Post-correction failure classification on the classical frame: Z_L per
/// block from frame parity, CZ_L from a non-empty residual pair set. Requires
/// trivial frame syndromes on every checked block and throws otherwise.
FailureSet logical_failure_check(const ErrorState& e, const Layout& layout, uint8_t criterion);

}  // namespace repcat
