#include "repcat/tableau.hpp"

#include <cstring>
#include <stdexcept>

#include "repcat/rng.hpp"

namespace repcat {

StabilizerTableau::StabilizerTableau(int n_qubits) : n_(n_qubits) {
    words_ = (n_ + 63) / 64;
    if (n_ == 0) return;
    size_t rows = static_cast<size_t>(2 * n_ + 1);
    x_.assign(rows * words_, 0);
    z_.assign(rows * words_, 0);
    r_.assign(rows, 0);
    // |+>^n: destabilizer i = Z_i, stabilizer i = X_i.
    for (int i = 0; i < n_; ++i) {
        toggle(zrow(i), i);
        toggle(xrow(n_ + i), i);
    }
}

void StabilizerTableau::row_clear(int i) {
    std::memset(xrow(i), 0, words_ * sizeof(uint64_t));
    std::memset(zrow(i), 0, words_ * sizeof(uint64_t));
    r_[i] = 0;
}

void StabilizerTableau::row_copy(int dst, int src) {
    std::memcpy(xrow(dst), xrow(src), words_ * sizeof(uint64_t));
    std::memcpy(zrow(dst), zrow(src), words_ * sizeof(uint64_t));
    r_[dst] = r_[src];
}

void StabilizerTableau::row_mult(int dst, int src) {
    // Rows hold i^r * prod_q X^x Z^z in canonical per-qubit order. Computing
    // src * dst moves each Z of src past the X of dst on the same qubit:
    // sign (-1)^(z_src & x_dst) per qubit.
    const uint64_t* xs = xrow(src);
    const uint64_t* zs = zrow(src);
    uint64_t* xd = xrow(dst);
    uint64_t* zd = zrow(dst);
    int phase = r_[dst] + r_[src];
    for (int w = 0; w < words_; ++w) {
        phase += 2 * __builtin_popcountll(zs[w] & xd[w]);
        xd[w] ^= xs[w];
        zd[w] ^= zs[w];
    }
    r_[dst] = static_cast<uint8_t>(phase & 3);
}

void StabilizerTableau::pauli_x(int q) {
    for (int i = 0; i < 2 * n_; ++i)
        if (get(zrow(i), q)) r_[i] = (r_[i] + 2) & 3;
}

void StabilizerTableau::pauli_z(int q) {
    for (int i = 0; i < 2 * n_; ++i)
        if (get(xrow(i), q)) r_[i] = (r_[i] + 2) & 3;
}

void StabilizerTableau::cz(int a, int b) {
    for (int i = 0; i < 2 * n_; ++i) {
        bool xa = get(xrow(i), a), xb = get(xrow(i), b);
        if (xa && xb) r_[i] = (r_[i] + 2) & 3;
        if (xa) toggle(zrow(i), b);
        if (xb) toggle(zrow(i), a);
    }
}

void StabilizerTableau::cnot(int c, int t) {
    // In the canonical X^x Z^z row convention the CNOT conjugation is
    // phase-free: X_c -> X_c X_t, Z_t -> Z_c Z_t.
    for (int i = 0; i < 2 * n_; ++i) {
        if (get(xrow(i), c)) toggle(xrow(i), t);
        if (get(zrow(i), t)) toggle(zrow(i), c);
    }
}

void StabilizerTableau::swap(int a, int b) {
    for (int i = 0; i < 2 * n_; ++i) {
        bool xa = get(xrow(i), a), xb = get(xrow(i), b);
        if (xa != xb) {
            toggle(xrow(i), a);
            toggle(xrow(i), b);
        }
        bool za = get(zrow(i), a), zb = get(zrow(i), b);
        if (za != zb) {
            toggle(zrow(i), a);
            toggle(zrow(i), b);
        }
    }
}

StabilizerTableau::MeasureResult StabilizerTableau::measure_x(int q, Rng& rng) {
    // X_q anticommutes with a row iff the row has Z content at q.
    int p = -1;
    for (int i = n_; i < 2 * n_; ++i) {
        if (get(zrow(i), q)) {
            p = i;
            break;
        }
    }
    if (p >= 0) {
        for (int i = 0; i < 2 * n_; ++i)
            if (i != p && get(zrow(i), q)) row_mult(i, p);
        row_copy(p - n_, p);
        row_clear(p);
        toggle(xrow(p), q);
        bool minus = rng.bit();
        r_[p] = minus ? 2 : 0;
        return {minus ? -1 : +1, false};
    }
    // Deterministic: accumulate the stabilizer product indicated by the
    // destabilizers that anticommute with X_q.
    int s = 2 * n_;
    row_clear(s);
    for (int i = 0; i < n_; ++i)
        if (get(zrow(i), q)) row_mult(s, n_ + i);
    return {r_[s] == 2 ? -1 : +1, true};
}

void StabilizerTableau::prep_plus(int q, Rng& rng) {
    MeasureResult m = measure_x(q, rng);
    if (m.outcome < 0) pauli_z(q);
}

bool StabilizerTableau::row_z_parity(int i, std::span<const int> support) const {
    bool parity = false;
    for (int q : support) parity ^= get(zrow(i), q);
    return parity;
}

bool StabilizerTableau::x_string_deterministic(std::span<const int> support) const {
    for (int i = n_; i < 2 * n_; ++i)
        if (row_z_parity(i, support)) return false;
    return true;
}

int StabilizerTableau::x_string_value(std::span<const int> support) const {
    auto* self = const_cast<StabilizerTableau*>(this);
    int s = 2 * n_;
    self->row_clear(s);
    for (int i = 0; i < n_; ++i)
        if (row_z_parity(i, support)) self->row_mult(s, n_ + i);
    return r_[s] == 2 ? -1 : +1;
}

bool StabilizerTableau::any_z_content() const {
    for (int i = n_; i < 2 * n_; ++i)
        for (int w = 0; w < words_; ++w)
            if (zrow(i)[w]) return true;
    return false;
}

bool StabilizerTableau::stabilizer_row_has_z(int row, int q) const {
    return get(zrow(n_ + row), q);
}

bool StabilizerTableau::invariants_ok() const {
    // Stabilizer rows must commute pairwise and be Hermitian: the phase
    // parity must match the Y count, i.e. r mod 2 == popcount(x & z) mod 2.
    for (int i = n_; i < 2 * n_; ++i) {
        int ycount = 0;
        for (int w = 0; w < words_; ++w)
            ycount ^= __builtin_popcountll(xrow(i)[w] & zrow(i)[w]) & 1;
        if ((r_[i] & 1) != ycount) return false;
        for (int j = i + 1; j < 2 * n_; ++j) {
            int anti = 0;
            for (int w = 0; w < words_; ++w) {
                uint64_t v = (xrow(i)[w] & zrow(j)[w]) ^ (zrow(i)[w] & xrow(j)[w]);
                anti ^= __builtin_popcountll(v) & 1;
            }
            if (anti) return false;
        }
    }
    return true;
}

void tableau_apply(StabilizerTableau& t, const Gate& g, Rng& rng) {
    switch (g.kind) {
        case GateKind::PauliX: t.pauli_x(g.q[0]); break;
        case GateKind::PauliZ: t.pauli_z(g.q[0]); break;
        case GateKind::CZ: t.cz(g.q[0], g.q[1]); break;
        case GateKind::CNOT: t.cnot(g.q[0], g.q[1]); break;
        case GateKind::SWAP: t.swap(g.q[0], g.q[1]); break;
        case GateKind::PrepPlus: t.prep_plus(g.q[0], rng); break;
        default:
            throw std::invalid_argument("non-Clifford gate fed to tableau");
    }
}

}  // namespace repcat
