#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace repcat {

/// Code blocks of an experiment. ControlA/ControlB/Target are data blocks of
/// size d with modulo-d addressing; AncillaBlock is the d-qubit logical
/// ancilla consumed by Steane-style error correction; Ancilla holds the
/// syndrome-measurement ancillas.
enum class Block : uint8_t {
    ControlA = 0,
    ControlB = 1,
    Target = 2,
    AncillaBlock = 3,
    Ancilla = 4,
};

constexpr int kNumBlocks = 5;

inline const char* block_name(Block b) {
    switch (b) {
        case Block::ControlA: return "control_a";
        case Block::ControlB: return "control_b";
        case Block::Target: return "target";
        case Block::AncillaBlock: return "ancilla_block";
        case Block::Ancilla: return "ancilla";
    }
    return "?";
}

struct QubitRef {
    Block block = Block::Target;
    int index = 0;

    bool operator==(const QubitRef&) const = default;
};

/// Maps (block, index) pairs to flat qubit ids. Data blocks and the ancilla
/// block are reduced modulo d; measurement ancillas are addressed directly.
class Layout {
  public:
    Layout() = default;
    Layout(int d, bool control_a, bool control_b, bool target, bool ancilla_block, int n_ancilla)
        : d_(d) {
        int off = 0;
        auto place = [&](Block b, bool present, int size) {
            sizes_[static_cast<int>(b)] = present ? size : 0;
            offsets_[static_cast<int>(b)] = off;
            if (present) off += size;
        };
        place(Block::ControlA, control_a, d);
        place(Block::ControlB, control_b, d);
        place(Block::Target, target, d);
        place(Block::AncillaBlock, ancilla_block, d);
        place(Block::Ancilla, n_ancilla > 0, n_ancilla);
        total_ = off;
    }

    int distance() const { return d_; }
    int total_qubits() const { return total_; }
    int block_size(Block b) const { return sizes_[static_cast<int>(b)]; }
    int block_offset(Block b) const { return offsets_[static_cast<int>(b)]; }
    bool has_block(Block b) const { return block_size(b) > 0; }

    uint16_t flat(Block b, int index) const {
        int n = block_size(b);
        int i = index % n;
        if (i < 0) i += n;
        return static_cast<uint16_t>(block_offset(b) + i);
    }
    uint16_t flat(QubitRef q) const { return flat(q.block, q.index); }

    QubitRef ref(uint16_t id) const {
        for (int b = 0; b < kNumBlocks; ++b) {
            if (sizes_[b] > 0 && id >= offsets_[b] && id < offsets_[b] + sizes_[b])
                return QubitRef{static_cast<Block>(b), id - offsets_[b]};
        }
        return QubitRef{Block::Ancilla, -1};
    }

    Block block_of(uint16_t id) const { return ref(id).block; }

  private:
    int d_ = 0;
    int total_ = 0;
    std::array<int, kNumBlocks> sizes_{};
    std::array<int, kNumBlocks> offsets_{};
};

}  // namespace repcat
