#include "repcat/circuit.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace repcat {

bool gate_kind_from_name(const std::string& name, GateKind& out) {
    static const std::pair<const char*, GateKind> table[] = {
        {"I", GateKind::Idle},     {"P+", GateKind::PrepPlus}, {"P0L", GateKind::PrepZeroL},
        {"MX", GateKind::MeasX},   {"X", GateKind::PauliX},    {"Z", GateKind::PauliZ},
        {"CZ", GateKind::CZ},      {"CX", GateKind::CNOT},     {"CCX", GateKind::CCX},
        {"SWAP", GateKind::SWAP},
    };
    for (auto& [n, k] : table) {
        if (name == n) {
            out = k;
            return true;
        }
    }
    return false;
}

Layer& Circuit::add_layer(std::vector<Gate> gates, Section section, uint16_t piece) {
    Layer layer;
    layer.gates = std::move(gates);
    layer.section = section;
    layer.piece = piece;
    std::vector<uint8_t> busy(layout.total_qubits(), 0);
    for (const Gate& g : layer.gates)
        for (int i = 0; i < g.nq; ++i)
            if (g.q[i] < busy.size()) busy[g.q[i]] = 1;
    for (uint16_t q = 0; q < busy.size(); ++q)
        if (!busy[q]) layer.idle.push_back(q);
    layers.push_back(std::move(layer));
    return layers.back();
}

uint16_t Circuit::add_tag(Domain domain, uint16_t row, uint16_t col) {
    tags.push_back(MeasTag{domain, row, col});
    return static_cast<uint16_t>(tags.size() - 1);
}

size_t Circuit::gate_count(GateKind k) const {
    size_t n = 0;
    for (const Layer& l : layers)
        for (const Gate& g : l.gates)
            if (g.kind == k) ++n;
    return n;
}

std::vector<Violation> validate_circuit(const Circuit& c) {
    std::vector<Violation> out;
    const int n = c.layout.total_qubits();
    std::vector<int> seen(n, -1);
    bool target_block_seen = false;
    Block ccx_target_block = Block::Target;
    bool steane_or_ec_seen_this_piece = false;
    int current_piece = -1;

    for (size_t li = 0; li < c.layers.size(); ++li) {
        const Layer& layer = c.layers[li];

        if (layer.piece != current_piece) {
            current_piece = layer.piece;
            steane_or_ec_seen_this_piece = false;
        }
        if (layer.section == Section::TargetEc) steane_or_ec_seen_this_piece = true;
        if (layer.section == Section::GadgetB && !steane_or_ec_seen_this_piece)
            out.push_back({static_cast<int>(li), -1,
                           "modified B-stabilizer gadget scheduled before target-block EC"});

        for (const Gate& g : layer.gates) {
            if (g.nq != gate_arity(g.kind))
                out.push_back({static_cast<int>(li), g.q[0], "operand count does not match gate arity"});
            for (int i = 0; i < g.nq; ++i) {
                if (g.q[i] >= n) {
                    out.push_back({static_cast<int>(li), g.q[i], "qubit index out of range"});
                    continue;
                }
                if (seen[g.q[i]] == static_cast<int>(li))
                    out.push_back({static_cast<int>(li), g.q[i],
                                   "qubit q" + std::to_string(g.q[i]) + " used twice in layer"});
                seen[g.q[i]] = static_cast<int>(li);
            }
            for (int i = 0; i < g.nq; ++i)
                for (int j = i + 1; j < g.nq; ++j)
                    if (g.q[i] == g.q[j])
                        out.push_back({static_cast<int>(li), g.q[i], "repeated operand"});
            if (g.kind == GateKind::CCX && g.q[2] < n) {
                Block tb = c.layout.block_of(g.q[2]);
                if (tb != Block::Target)
                    out.push_back({static_cast<int>(li), g.q[2], "CCX target outside the Target block"});
                if (!target_block_seen) {
                    target_block_seen = true;
                    ccx_target_block = tb;
                } else if (tb != ccx_target_block) {
                    out.push_back({static_cast<int>(li), g.q[2], "mixed Toffoli target blocks"});
                }
            }
            if (g.kind == GateKind::MeasX && g.tag == kNoTag)
                out.push_back({static_cast<int>(li), g.q[0], "untagged measurement"});
            if (g.tag != kNoTag && g.tag >= c.tags.size())
                out.push_back({static_cast<int>(li), g.q[0], "measurement tag out of range"});
        }
    }
    return out;
}

std::string circuit_to_json(const Circuit& c) {
    nlohmann::json j;
    j["distance"] = c.layout.distance();
    j["blocks"] = nlohmann::json::object();
    for (int b = 0; b < kNumBlocks; ++b) {
        Block blk = static_cast<Block>(b);
        if (c.layout.has_block(blk)) j["blocks"][block_name(blk)] = c.layout.block_size(blk);
    }
    j["layers"] = nlohmann::json::array();
    for (const Layer& layer : c.layers) {
        nlohmann::json jl = nlohmann::json::array();
        for (const Gate& g : layer.gates) {
            nlohmann::json jg;
            jg["kind"] = gate_name(g.kind);
            auto ops = nlohmann::json::array();
            for (int i = 0; i < g.nq; ++i) {
                QubitRef r = c.layout.ref(g.q[i]);
                ops.push_back({{"block", block_name(r.block)}, {"index", r.index}});
            }
            jg["operands"] = ops;
            if (g.tag != kNoTag) {
                const MeasTag& t = c.tags[g.tag];
                jg["tag"] = {{"domain", static_cast<int>(t.domain)}, {"row", t.row}, {"col", t.col}};
            }
            jl.push_back(jg);
        }
        j["layers"].push_back(jl);
    }
    return j.dump(2);
}

Circuit circuit_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    int d = j.at("distance").get<int>();
    auto blocks = j.at("blocks");
    int n_anc = blocks.contains("ancilla") ? blocks["ancilla"].get<int>() : 0;
    Circuit c;
    c.layout = Layout(d, blocks.contains("control_a"), blocks.contains("control_b"),
                      blocks.contains("target"), blocks.contains("ancilla_block"), n_anc);
    auto block_from_name = [](const std::string& s) {
        for (int b = 0; b < kNumBlocks; ++b)
            if (s == block_name(static_cast<Block>(b))) return static_cast<Block>(b);
        throw std::invalid_argument("unknown block name: " + s);
    };
    for (const auto& jl : j.at("layers")) {
        std::vector<Gate> gates;
        for (const auto& jg : jl) {
            GateKind k;
            if (!gate_kind_from_name(jg.at("kind").get<std::string>(), k))
                throw std::invalid_argument("unknown gate kind in circuit json");
            Gate g;
            g.kind = k;
            g.nq = static_cast<uint8_t>(jg.at("operands").size());
            int i = 0;
            for (const auto& jo : jg.at("operands"))
                g.q[i++] = c.layout.flat(block_from_name(jo.at("block").get<std::string>()),
                                         jo.at("index").get<int>());
            if (jg.contains("tag"))
                g.tag = c.add_tag(static_cast<Domain>(jg["tag"].at("domain").get<int>()),
                                  jg["tag"].at("row").get<uint16_t>(),
                                  jg["tag"].at("col").get<uint16_t>());
            gates.push_back(g);
        }
        c.add_layer(std::move(gates));
    }
    return c;
}

}  // namespace repcat
