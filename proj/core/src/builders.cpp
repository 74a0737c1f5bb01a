#include "repcat/builders.hpp"

#include <stdexcept>

#include "repcat/decoder.hpp"

namespace repcat {

const char* experiment_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::Memory: return "memory";
        case ExperimentKind::PrepPlusL: return "prep_plus";
        case ExperimentKind::MeasXL: return "meas_xl";
        case ExperimentKind::TransversalCnot: return "cnot";
        case ExperimentKind::ToffoliConcat: return "toffoli_concat";
        case ExperimentKind::ToffoliFt: return "toffoli_ft";
        case ExperimentKind::ToffoliSwap: return "toffoli_swap";
    }
    return "?";
}

bool experiment_from_name(const std::string& name, ExperimentKind& out) {
    for (int k = 0; k <= static_cast<int>(ExperimentKind::ToffoliSwap); ++k) {
        if (name == experiment_name(static_cast<ExperimentKind>(k))) {
            out = static_cast<ExperimentKind>(k);
            return true;
        }
    }
    return false;
}

const char* logical_op_name(int op) {
    switch (op) {
        case kZLA: return "Z_L_A";
        case kZLB: return "Z_L_B";
        case kZLC: return "Z_L";
        case kCZLAB: return "CZ_L_AB";
        case kXL: return "X_L";
    }
    return "?";
}

const StabDomain* Experiment::find_domain(Domain dom) const {
    for (const auto& sd : domains)
        if (sd.domain == dom) return &sd;
    return nullptr;
}

namespace {

void require_odd(int d) {
    if (d < 3 || d % 2 == 0) throw std::invalid_argument("code distance must be odd and >= 3");
}

struct RoundSpec {
    Block block;
    Domain domain;
    int row;
    int anc_offset;  // first ancilla index used by this block's stabilizers
};

/// One stabilizer-measurement round: prep ancillas, two CNOT layers coupling
/// each ancilla to data (i, i+1), measure. Several blocks run in parallel.
void append_stab_round(Circuit& c, const std::vector<RoundSpec>& specs, bool anc_is_control,
                       Section section, int piece) {
    int d = c.layout.distance();
    std::vector<Gate> prep, cx1, cx2, meas;
    for (const auto& s : specs) {
        for (int i = 0; i < d - 1; ++i) {
            uint16_t anc = c.layout.flat(Block::Ancilla, s.anc_offset + i);
            uint16_t d0 = c.layout.flat(s.block, i);
            uint16_t d1 = c.layout.flat(s.block, i + 1);
            prep.push_back(Gate::g1(GateKind::PrepPlus, anc));
            cx1.push_back(anc_is_control ? Gate::g2(GateKind::CNOT, anc, d0)
                                         : Gate::g2(GateKind::CNOT, d0, anc));
            cx2.push_back(anc_is_control ? Gate::g2(GateKind::CNOT, anc, d1)
                                         : Gate::g2(GateKind::CNOT, d1, anc));
            Gate m = Gate::g1(GateKind::MeasX, anc);
            m.tag = c.add_tag(s.domain, static_cast<uint16_t>(s.row), static_cast<uint16_t>(i));
            meas.push_back(m);
        }
    }
    c.add_layer(std::move(prep), section, piece);
    c.add_layer(std::move(cx1), section, piece);
    c.add_layer(std::move(cx2), section, piece);
    c.add_layer(std::move(meas), section, piece);
}

void append_piece_layer(Circuit& c, int k, int d, const std::vector<int>* a_content) {
    // P_k = prod_i CCX(A_{i-k+1}, B_i, C_i). With SWAP routing the wiring is
    // the fixed local triple (slot i, B_i, C_i) and the content permutation
    // supplies the shift; the placement is asserted against it.
    std::vector<Gate> gates;
    for (int i = 0; i < d; ++i) {
        int a_logical = ((i - k + 1) % d + d) % d;
        int a_index = a_logical;
        if (a_content) {
            a_index = i;
            if ((*a_content)[i] != a_logical)
                throw std::logic_error("SWAP routing placement does not realize the piece");
        }
        gates.push_back(Gate::g3(GateKind::CCX, c.layout.flat(Block::ControlA, a_index),
                                 c.layout.flat(Block::ControlB, i), c.layout.flat(Block::Target, i)));
    }
    c.add_layer(std::move(gates), Section::Piece, static_cast<uint16_t>(k));
}

/// Two parallel-SWAP layers shifting block-A content from slot s to s+1.
void append_shift_network(Circuit& c, int d, std::vector<int>& content, int piece) {
    std::vector<Gate> l1, l2;
    for (int i = 0; 2 * i < d - 1; ++i) {
        int j = d - 1 - i;
        l1.push_back(Gate::g2(GateKind::SWAP, c.layout.flat(Block::ControlA, i),
                              c.layout.flat(Block::ControlA, j)));
        std::swap(content[i], content[j]);
    }
    for (int i = 1; 2 * i <= d - 1; ++i) {
        int j = d - i;
        l2.push_back(Gate::g2(GateKind::SWAP, c.layout.flat(Block::ControlA, i),
                              c.layout.flat(Block::ControlA, j % d)));
        std::swap(content[i], content[j % d]);
    }
    c.add_layer(std::move(l1), Section::SwapNetwork, static_cast<uint16_t>(piece));
    c.add_layer(std::move(l2), Section::SwapNetwork, static_cast<uint16_t>(piece));
}

void append_steane_ec(Circuit& c, int d, int row, Section section, int piece) {
    std::vector<Gate> prep, cx, meas;
    for (int q = 0; q < d; ++q) {
        uint16_t anc = c.layout.flat(Block::AncillaBlock, q);
        prep.push_back(Gate::g1(GateKind::PrepZeroL, anc));
        cx.push_back(Gate::g2(GateKind::CNOT, anc, c.layout.flat(Block::Target, q)));
        Gate m = Gate::g1(GateKind::MeasX, anc);
        m.tag = c.add_tag(Domain::SteaneAncilla, static_cast<uint16_t>(row), static_cast<uint16_t>(q));
        meas.push_back(m);
    }
    c.add_layer(std::move(prep), section, piece);
    c.add_layer(std::move(cx), section, piece);
    c.add_layer(std::move(meas), section, piece);
}

/// Six-layer gadget group measuring the evolved block-A stabilizers
/// S^A_{i,k} = X^A_i X^A_{i+1} CX^{BC}(i,i) CX^{BC}(i+k,i+k), one ancilla per
/// stabilizer, all i in parallel.
void append_gadgets_a(Circuit& c, int k, int d, int anc_offset, int row) {
    std::vector<Gate> prep, f1, f2, f3, f4, meas;
    for (int i = 0; i < d - 1; ++i) {
        uint16_t anc = c.layout.flat(Block::Ancilla, anc_offset + i);
        prep.push_back(Gate::g1(GateKind::PrepPlus, anc));
        f1.push_back(Gate::g2(GateKind::CNOT, anc, c.layout.flat(Block::ControlA, i)));
        f2.push_back(Gate::g2(GateKind::CNOT, anc, c.layout.flat(Block::ControlA, i + 1)));
        f3.push_back(Gate::g3(GateKind::CCX, anc, c.layout.flat(Block::ControlB, i),
                              c.layout.flat(Block::Target, i)));
        f4.push_back(Gate::g3(GateKind::CCX, anc, c.layout.flat(Block::ControlB, i + k),
                              c.layout.flat(Block::Target, i + k)));
        Gate m = Gate::g1(GateKind::MeasX, anc);
        m.tag = c.add_tag(Domain::BlockAStabs, static_cast<uint16_t>(row), static_cast<uint16_t>(i));
        meas.push_back(m);
    }
    uint16_t piece = static_cast<uint16_t>(k);
    c.add_layer(std::move(prep), Section::GadgetA, piece);
    c.add_layer(std::move(f1), Section::GadgetA, piece);
    c.add_layer(std::move(f2), Section::GadgetA, piece);
    c.add_layer(std::move(f3), Section::GadgetA, piece);
    c.add_layer(std::move(f4), Section::GadgetA, piece);
    c.add_layer(std::move(meas), Section::GadgetA, piece);
}

/// Modified B-stabilizers S^B_{i,k} = X^B_i X^B_{i+1} CX^{AC}(i+1-k,i)
/// CX^{AC}(i+1,i+1), constant weight; valid once the target block has been
/// error-corrected, hence scheduled directly after Steane EC.
void append_gadgets_b(Circuit& c, int k, int d, int anc_offset, int row) {
    std::vector<Gate> prep, f1, f2, f3, f4, meas;
    for (int i = 0; i < d - 1; ++i) {
        uint16_t anc = c.layout.flat(Block::Ancilla, anc_offset + i);
        prep.push_back(Gate::g1(GateKind::PrepPlus, anc));
        f1.push_back(Gate::g2(GateKind::CNOT, anc, c.layout.flat(Block::ControlB, i)));
        f2.push_back(Gate::g2(GateKind::CNOT, anc, c.layout.flat(Block::ControlB, i + 1)));
        f3.push_back(Gate::g3(GateKind::CCX, anc, c.layout.flat(Block::ControlA, i + 1 - k),
                              c.layout.flat(Block::Target, i)));
        f4.push_back(Gate::g3(GateKind::CCX, anc, c.layout.flat(Block::ControlA, i + 1),
                              c.layout.flat(Block::Target, i + 1)));
        Gate m = Gate::g1(GateKind::MeasX, anc);
        m.tag = c.add_tag(Domain::BlockBStabs, static_cast<uint16_t>(row), static_cast<uint16_t>(i));
        meas.push_back(m);
    }
    uint16_t piece = static_cast<uint16_t>(k);
    c.add_layer(std::move(prep), Section::GadgetB, piece);
    c.add_layer(std::move(f1), Section::GadgetB, piece);
    c.add_layer(std::move(f2), Section::GadgetB, piece);
    c.add_layer(std::move(f3), Section::GadgetB, piece);
    c.add_layer(std::move(f4), Section::GadgetB, piece);
    c.add_layer(std::move(meas), Section::GadgetB, piece);
}

int last_layer(const Circuit& c) { return static_cast<int>(c.layers.size()) - 1; }

void finish_windows(Experiment& e) {
    // Window w covers the layers after target round w-1 completes; piece k's
    // CCX layer therefore sits in window k.
    e.window_of_layer.assign(e.circuit.layers.size(), 0);
    uint16_t w = 1;
    for (size_t li = 0; li < e.circuit.layers.size(); ++li) {
        e.window_of_layer[li] = w;
        bool closes_target_round = false;
        for (const Gate& g : e.circuit.layers[li].gates) {
            if (g.kind == GateKind::MeasX && g.tag != kNoTag &&
                (e.circuit.tags[g.tag].domain == Domain::TargetStabs ||
                 e.circuit.tags[g.tag].domain == Domain::SteaneAncilla)) {
                closes_target_round = true;
                break;
            }
        }
        if (closes_target_round) ++w;
    }
}

void finish(Experiment& e, const BuilderOptions& opt) {
    e.ancilla_is_control = opt.ancilla_is_control;
    finish_windows(e);
    if (opt.build_geometry && !e.perfect_ec) e.geometry = build_geometry(e);
}

}  // namespace

Circuit build_stabilizer_measurement(int i, int d, const BuilderOptions& opt) {
    require_odd(d);
    if (i < 0 || i >= d - 1) throw std::out_of_range("stabilizer index out of range");
    Circuit c;
    c.layout = Layout(d, false, false, true, false, 1);
    uint16_t anc = c.layout.flat(Block::Ancilla, 0);
    uint16_t d0 = c.layout.flat(Block::Target, i);
    uint16_t d1 = c.layout.flat(Block::Target, i + 1);
    bool ac = opt.ancilla_is_control;
    c.add_layer({Gate::g1(GateKind::PrepPlus, anc)});
    c.add_layer({ac ? Gate::g2(GateKind::CNOT, anc, d0) : Gate::g2(GateKind::CNOT, d0, anc)});
    c.add_layer({ac ? Gate::g2(GateKind::CNOT, anc, d1) : Gate::g2(GateKind::CNOT, d1, anc)});
    Gate m = Gate::g1(GateKind::MeasX, anc);
    m.tag = c.add_tag(Domain::TargetStabs, 0, static_cast<uint16_t>(i));
    c.add_layer({m});
    return c;
}

Circuit build_round_robin_piece(int k, int d) {
    require_odd(d);
    if (k < 1 || k > d) throw std::out_of_range("piece index out of range");
    Circuit c;
    c.layout = Layout(d, true, true, true, false, 0);
    append_piece_layer(c, k, d, nullptr);
    return c;
}

Circuit build_clifford_stabilizer_gadget(int i, int k, int d) {
    require_odd(d);
    if (i < 0 || i >= d - 1 || k < 1 || k >= d) throw std::out_of_range("gadget index out of range");
    Circuit c;
    c.layout = Layout(d, true, true, true, false, 1);
    uint16_t anc = c.layout.flat(Block::Ancilla, 0);
    c.add_layer({Gate::g1(GateKind::PrepPlus, anc)}, Section::GadgetA, static_cast<uint16_t>(k));
    c.add_layer({Gate::g2(GateKind::CNOT, anc, c.layout.flat(Block::ControlA, i))}, Section::GadgetA,
                static_cast<uint16_t>(k));
    c.add_layer({Gate::g2(GateKind::CNOT, anc, c.layout.flat(Block::ControlA, i + 1))},
                Section::GadgetA, static_cast<uint16_t>(k));
    c.add_layer({Gate::g3(GateKind::CCX, anc, c.layout.flat(Block::ControlB, i),
                          c.layout.flat(Block::Target, i))},
                Section::GadgetA, static_cast<uint16_t>(k));
    c.add_layer({Gate::g3(GateKind::CCX, anc, c.layout.flat(Block::ControlB, i + k),
                          c.layout.flat(Block::Target, i + k))},
                Section::GadgetA, static_cast<uint16_t>(k));
    Gate m = Gate::g1(GateKind::MeasX, anc);
    m.tag = c.add_tag(Domain::BlockAStabs, 0, static_cast<uint16_t>(i));
    c.add_layer({m}, Section::GadgetA, static_cast<uint16_t>(k));
    return c;
}

Circuit build_modified_b_stabilizer_gadget(int i, int k, int d) {
    require_odd(d);
    if (i < 0 || i >= d - 1 || k < 1 || k >= d) throw std::out_of_range("gadget index out of range");
    Circuit s;
    s.layout = Layout(d, true, true, true, false, 1);
    uint16_t anc = s.layout.flat(Block::Ancilla, 0);
    s.add_layer({Gate::g1(GateKind::PrepPlus, anc)}, Section::GadgetB, static_cast<uint16_t>(k));
    s.add_layer({Gate::g2(GateKind::CNOT, anc, s.layout.flat(Block::ControlB, i))}, Section::GadgetB,
                static_cast<uint16_t>(k));
    s.add_layer({Gate::g2(GateKind::CNOT, anc, s.layout.flat(Block::ControlB, i + 1))},
                Section::GadgetB, static_cast<uint16_t>(k));
    s.add_layer({Gate::g3(GateKind::CCX, anc, s.layout.flat(Block::ControlA, i + 1 - k),
                          s.layout.flat(Block::Target, i))},
                Section::GadgetB, static_cast<uint16_t>(k));
    s.add_layer({Gate::g3(GateKind::CCX, anc, s.layout.flat(Block::ControlA, i + 1),
                          s.layout.flat(Block::Target, i + 1))},
                Section::GadgetB, static_cast<uint16_t>(k));
    Gate m = Gate::g1(GateKind::MeasX, anc);
    m.tag = s.add_tag(Domain::BlockBStabs, 0, static_cast<uint16_t>(i));
    s.add_layer({m}, Section::GadgetB, static_cast<uint16_t>(k));
    return s;
}

Circuit build_steane_ec(int d) {
    require_odd(d);
    Circuit c;
    c.layout = Layout(d, false, false, true, true, 0);
    append_steane_ec(c, d, 0, Section::TargetEc, 1);
    return c;
}

Experiment build_memory_experiment(int d, const BuilderOptions& opt) {
    require_odd(d);
    int rounds = opt.rounds > 0 ? opt.rounds : d;
    Experiment e;
    e.kind = ExperimentKind::Memory;
    e.d = d;
    e.circuit.layout = Layout(d, false, false, true, false, d - 1);
    for (int r = 0; r < rounds; ++r)
        append_stab_round(e.circuit, {{Block::Target, Domain::TargetStabs, r, 0}},
                          opt.ancilla_is_control, Section::Generic, 0);
    e.domains.push_back({Domain::TargetStabs, Block::Target, d - 1, rounds + 1});
    e.schedule.push_back({SchedulePoint::Op::PerfectRound, Domain::TargetStabs, 0, last_layer(e.circuit)});
    e.schedule.push_back(
        {SchedulePoint::Op::FinalBlockDecode, Domain::TargetStabs, 0, last_layer(e.circuit)});
    e.criterion = 1u << kZLC;
    finish(e, opt);
    return e;
}

Experiment build_prep_plus_l(int d, const BuilderOptions& opt) {
    require_odd(d);
    int rounds = opt.rounds > 0 ? opt.rounds : d;
    Experiment e;
    e.kind = ExperimentKind::PrepPlusL;
    e.d = d;
    e.circuit.layout = Layout(d, false, false, true, false, d - 1);
    std::vector<Gate> prep;
    for (int q = 0; q < d; ++q)
        prep.push_back(Gate::g1(GateKind::PrepPlus, e.circuit.layout.flat(Block::Target, q)));
    e.circuit.add_layer(std::move(prep));
    for (int r = 0; r < rounds; ++r)
        append_stab_round(e.circuit, {{Block::Target, Domain::TargetStabs, r, 0}},
                          opt.ancilla_is_control, Section::Generic, 0);
    e.domains.push_back({Domain::TargetStabs, Block::Target, d - 1, rounds + 1});
    e.schedule.push_back({SchedulePoint::Op::PerfectRound, Domain::TargetStabs, 0, last_layer(e.circuit)});
    e.schedule.push_back(
        {SchedulePoint::Op::FinalBlockDecode, Domain::TargetStabs, 0, last_layer(e.circuit)});
    e.criterion = 1u << kZLC;
    finish(e, opt);
    return e;
}

Experiment build_measure_xl(int d, const BuilderOptions& opt) {
    require_odd(d);
    Experiment e;
    e.kind = ExperimentKind::MeasXL;
    e.d = d;
    e.circuit.layout = Layout(d, false, false, true, false, 0);
    std::vector<Gate> meas;
    for (int q = 0; q < d; ++q) {
        Gate m = Gate::g1(GateKind::MeasX, e.circuit.layout.flat(Block::Target, q));
        m.tag = e.circuit.add_tag(Domain::LogicalX, 0, static_cast<uint16_t>(q));
        meas.push_back(m);
    }
    e.circuit.add_layer(std::move(meas));
    e.criterion = 1u << kXL;
    finish(e, opt);
    return e;
}

Experiment build_transversal_cnot(int d, const BuilderOptions& opt) {
    require_odd(d);
    int rounds = opt.rounds > 0 ? opt.rounds : d;
    Experiment e;
    e.kind = ExperimentKind::TransversalCnot;
    e.d = d;
    e.circuit.layout = Layout(d, true, false, true, false, 2 * (d - 1));
    std::vector<Gate> cx;
    for (int q = 0; q < d; ++q)
        cx.push_back(Gate::g2(GateKind::CNOT, e.circuit.layout.flat(Block::ControlA, q),
                              e.circuit.layout.flat(Block::Target, q)));
    e.circuit.add_layer(std::move(cx));
    for (int r = 0; r < rounds; ++r)
        append_stab_round(e.circuit,
                          {{Block::ControlA, Domain::BlockAStabs, r, 0},
                           {Block::Target, Domain::TargetStabs, r, d - 1}},
                          opt.ancilla_is_control, Section::Generic, 0);
    e.domains.push_back({Domain::BlockAStabs, Block::ControlA, d - 1, rounds + 1});
    e.domains.push_back({Domain::TargetStabs, Block::Target, d - 1, rounds + 1});
    int ll = last_layer(e.circuit);
    e.schedule.push_back({SchedulePoint::Op::PerfectRound, Domain::TargetStabs, 0, ll});
    e.schedule.push_back({SchedulePoint::Op::PerfectRound, Domain::BlockAStabs, 0, ll});
    e.schedule.push_back({SchedulePoint::Op::FinalBlockDecode, Domain::TargetStabs, 0, ll});
    e.schedule.push_back({SchedulePoint::Op::FinalBlockDecode, Domain::BlockAStabs, 0, ll});
    e.criterion = (1u << kZLA) | (1u << kZLC);
    finish(e, opt);
    return e;
}

namespace {

void append_final_cycle(Experiment& e, int d, int t_row0, int ab_row0, bool anc_is_control) {
    for (int r = 0; r < d; ++r)
        append_stab_round(e.circuit,
                          {{Block::Target, Domain::TargetStabs, t_row0 + r, 0},
                           {Block::ControlA, Domain::BlockAStabs, ab_row0 + r, d - 1},
                           {Block::ControlB, Domain::BlockBStabs, ab_row0 + r, 2 * (d - 1)}},
                          anc_is_control, Section::FinalCycle, 0);
    int ll = last_layer(e.circuit);
    e.schedule.push_back({SchedulePoint::Op::PerfectRound, Domain::TargetStabs, 0, ll});
    e.schedule.push_back({SchedulePoint::Op::PerfectRound, Domain::BlockAStabs, 0, ll});
    e.schedule.push_back({SchedulePoint::Op::PerfectRound, Domain::BlockBStabs, 0, ll});
    e.schedule.push_back({SchedulePoint::Op::FinalTargetDecode, Domain::TargetStabs, 0, ll});
    e.schedule.push_back({SchedulePoint::Op::CzUndo, Domain::TargetStabs, 0, ll});
    e.schedule.push_back({SchedulePoint::Op::FinalBlockDecode, Domain::BlockAStabs, 0, ll});
    e.schedule.push_back({SchedulePoint::Op::FinalBlockDecode, Domain::BlockBStabs, 0, ll});
}

}  // namespace

Experiment build_toffoli_concat_experiment(int d, const BuilderOptions& opt) {
    require_odd(d);
    Experiment e;
    e.kind = ExperimentKind::ToffoliConcat;
    e.d = d;
    e.n_pieces = d;
    e.perfect_ec = opt.perfect_ec;
    e.circuit.layout = Layout(d, true, true, true, false, 3 * (d - 1));
    if (e.perfect_ec) {
        // Idealized instantaneous EC: the circuit is the bare pieces; the
        // engine clears the target frame at each boundary and applies exact
        // final corrections.
        for (int k = 1; k <= d; ++k) append_piece_layer(e.circuit, k, d, nullptr);
        e.criterion = (1u << kZLA) | (1u << kZLB);
        finish(e, opt);
        return e;
    }
    for (int k = 1; k <= d; ++k) {
        append_piece_layer(e.circuit, k, d, nullptr);
        if (k < d) {
            append_stab_round(e.circuit, {{Block::Target, Domain::TargetStabs, k - 1, 0}},
                              opt.ancilla_is_control, Section::TargetEc, k);
            e.schedule.push_back({SchedulePoint::Op::TargetCumulativeDecode, Domain::TargetStabs, k,
                                  last_layer(e.circuit)});
        }
    }
    append_final_cycle(e, d, d - 1, 0, opt.ancilla_is_control);
    e.domains.push_back({Domain::TargetStabs, Block::Target, d - 1, 2 * d});
    e.domains.push_back({Domain::BlockAStabs, Block::ControlA, d - 1, d + 1});
    e.domains.push_back({Domain::BlockBStabs, Block::ControlB, d - 1, d + 1});
    e.criterion = (1u << kZLA) | (1u << kZLB) | (1u << kZLC) | (1u << kCZLAB);
    finish(e, opt);
    return e;
}

Experiment build_toffoli_ft_experiment(int d, const BuilderOptions& opt) {
    require_odd(d);
    Experiment e;
    e.kind = ExperimentKind::ToffoliFt;
    e.d = d;
    e.n_pieces = d;
    e.steane_rows = d - 1;
    e.circuit.layout = Layout(d, true, true, true, true, 3 * (d - 1));
    for (int k = 1; k <= d; ++k) {
        append_piece_layer(e.circuit, k, d, nullptr);
        if (k < d) {
            append_steane_ec(e.circuit, d, k - 1, Section::TargetEc, k);
            e.schedule.push_back(
                {SchedulePoint::Op::SteaneDecode, Domain::SteaneAncilla, k, last_layer(e.circuit)});
            append_gadgets_a(e.circuit, k, d, d - 1, k - 1);
            append_gadgets_b(e.circuit, k, d, 2 * (d - 1), k - 1);
        }
    }
    append_final_cycle(e, d, 0, d - 1, opt.ancilla_is_control);
    e.domains.push_back({Domain::TargetStabs, Block::Target, d - 1, d + 1});
    e.domains.push_back({Domain::BlockAStabs, Block::ControlA, d - 1, 2 * d});
    e.domains.push_back({Domain::BlockBStabs, Block::ControlB, d - 1, 2 * d});
    e.criterion = (1u << kZLA) | (1u << kZLB) | (1u << kZLC) | (1u << kCZLAB);
    finish(e, opt);
    return e;
}

Experiment build_toffoli_swap_experiment(int d, const BuilderOptions& opt) {
    require_odd(d);
    Experiment e;
    e.kind = ExperimentKind::ToffoliSwap;
    e.d = d;
    e.n_pieces = d;
    e.circuit.layout = Layout(d, true, true, true, false, 3 * (d - 1));
    std::vector<int> content(d);
    for (int i = 0; i < d; ++i) content[i] = i;
    for (int k = 1; k <= d; ++k) {
        append_piece_layer(e.circuit, k, d, &content);
        if (k < d) {
            append_stab_round(e.circuit, {{Block::Target, Domain::TargetStabs, k - 1, 0}},
                              opt.ancilla_is_control, Section::TargetEc, k);
            e.schedule.push_back({SchedulePoint::Op::TargetCumulativeDecode, Domain::TargetStabs, k,
                                  last_layer(e.circuit)});
            append_shift_network(e.circuit, d, content, k);
        }
    }
    // restore block-A content to the identity placement before the final EC
    append_shift_network(e.circuit, d, content, d);
    for (int i = 0; i < d; ++i)
        if (content[i] != i) throw std::logic_error("SWAP routing failed to restore placement");
    append_final_cycle(e, d, d - 1, 0, opt.ancilla_is_control);
    e.domains.push_back({Domain::TargetStabs, Block::Target, d - 1, 2 * d});
    e.domains.push_back({Domain::BlockAStabs, Block::ControlA, d - 1, d + 1});
    e.domains.push_back({Domain::BlockBStabs, Block::ControlB, d - 1, d + 1});
    e.criterion = (1u << kZLA) | (1u << kZLB) | (1u << kZLC) | (1u << kCZLAB);
    finish(e, opt);
    return e;
}

Experiment build_experiment(ExperimentKind kind, int d, const BuilderOptions& opt) {
    switch (kind) {
        case ExperimentKind::Memory: return build_memory_experiment(d, opt);
        case ExperimentKind::PrepPlusL: return build_prep_plus_l(d, opt);
        case ExperimentKind::MeasXL: return build_measure_xl(d, opt);
        case ExperimentKind::TransversalCnot: return build_transversal_cnot(d, opt);
        case ExperimentKind::ToffoliConcat: return build_toffoli_concat_experiment(d, opt);
        case ExperimentKind::ToffoliFt: return build_toffoli_ft_experiment(d, opt);
        case ExperimentKind::ToffoliSwap: return build_toffoli_swap_experiment(d, opt);
    }
    throw std::invalid_argument("unknown experiment kind");
}

std::vector<Violation> validate_experiment(const Experiment& e) {
    std::vector<Violation> out = validate_circuit(e.circuit);
    if (e.criterion == 0) out.push_back({-1, -1, "empty failure criterion"});
    // every measurement grid cell covered exactly once
    for (const auto& sd : e.domains) {
        int noisy_rows = sd.n_rounds - 1;  // last row is the synthesized perfect round
        std::vector<int> count(noisy_rows * sd.n_stabs, 0);
        for (const auto& t : e.circuit.tags) {
            if (t.domain != sd.domain) continue;
            if (t.row >= noisy_rows || t.col >= sd.n_stabs) {
                out.push_back({-1, -1, "measurement tag outside its domain grid"});
                continue;
            }
            ++count[t.row * sd.n_stabs + t.col];
        }
        for (int i = 0; i < static_cast<int>(count.size()); ++i)
            if (count[i] != 1)
                out.push_back({-1, -1, std::string("grid cell measured ") +
                                           std::to_string(count[i]) + " times in domain " +
                                           std::to_string(static_cast<int>(sd.domain))});
    }
    for (const auto& sp : e.schedule)
        if (sp.after_layer < 0 || sp.after_layer >= static_cast<int>(e.circuit.layers.size()))
            out.push_back({sp.after_layer, -1, "schedule point outside circuit"});
    return out;
}

}  // namespace repcat
