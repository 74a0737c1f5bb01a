#include "repcat/error_state.hpp"

#include <algorithm>
#include <stdexcept>

namespace repcat {

void CzSet::toggle(uint16_t a, uint16_t b) {
    uint32_t k = key(a, b);
    auto it = std::lower_bound(pairs_.begin(), pairs_.end(), k);
    if (it != pairs_.end() && *it == k)
        pairs_.erase(it);
    else
        pairs_.insert(it, k);
}

bool CzSet::contains(uint16_t a, uint16_t b) const {
    uint32_t k = key(a, b);
    return std::binary_search(pairs_.begin(), pairs_.end(), k);
}

void CzSet::partners_of(uint16_t q, std::vector<uint16_t>& out) const {
    out.clear();
    for (uint32_t k : pairs_) {
        uint16_t hi = static_cast<uint16_t>(k >> 16);
        uint16_t lo = static_cast<uint16_t>(k & 0xffff);
        if (hi == q)
            out.push_back(lo);
        else if (lo == q)
            out.push_back(hi);
    }
    std::sort(out.begin(), out.end());
}

void CzSet::relabel(uint16_t a, uint16_t b) {
    bool changed = false;
    for (uint32_t& k : pairs_) {
        uint16_t hi = static_cast<uint16_t>(k >> 16);
        uint16_t lo = static_cast<uint16_t>(k & 0xffff);
        uint16_t nhi = hi == a ? b : (hi == b ? a : hi);
        uint16_t nlo = lo == a ? b : (lo == b ? a : lo);
        uint32_t nk = key(nhi, nlo);
        if (nk != k) {
            k = nk;
            changed = true;
        }
    }
    if (changed) std::sort(pairs_.begin(), pairs_.end());
}

bool ErrorState::empty() const {
    if (!czset.empty()) return false;
    for (uint8_t b : zframe)
        if (b) return false;
    return true;
}

void apply_delta(ErrorState& e, const ErrorDelta& d) {
    for (int i = 0; i < d.nz; ++i) e.zframe[d.z[i]] ^= 1;
    if (d.has_cz) e.czset.toggle(d.cz_a, d.cz_b);
}

namespace {

// CZ pair with one endpoint on a CNOT target gains a copy on the control.
void conjugate_pairs_through_cnot(CzSet& cz, uint16_t c, uint16_t t) {
    if (cz.empty()) return;
    std::vector<uint16_t> partners;
    cz.partners_of(t, partners);
    for (uint16_t x : partners) {
        if (x == c) {
            // CZ(c,t) through CNOT(c,t): picks up Z_c; handled by caller.
            continue;
        }
        cz.toggle(c, x);
    }
}

}  // namespace

void propagate(ErrorState& e, const Gate& g) {
    auto& z = e.zframe;
    switch (g.kind) {
        case GateKind::Idle:
            break;
        case GateKind::PrepPlus:
        case GateKind::PrepZeroL:
            z[g.q[0]] = 0;
            break;
        case GateKind::MeasX:
            // Outcome resolution consumes the frame bit and any pending pairs;
            // the trajectory engine clears them alongside recording the bit.
            break;
        case GateKind::PauliZ:
            break;
        case GateKind::PauliX: {
            // X_q CZ(q,r) = CZ(q,r) Z_r X_q
            if (!e.czset.empty()) {
                std::vector<uint16_t> partners;
                e.czset.partners_of(g.q[0], partners);
                for (uint16_t r : partners) z[r] ^= 1;
            }
            break;
        }
        case GateKind::CZ:
            break;
        case GateKind::CNOT: {
            uint16_t c = g.q[0], t = g.q[1];
            if (e.czset.contains(c, t)) z[c] ^= 1;
            conjugate_pairs_through_cnot(e.czset, c, t);
            z[c] ^= z[t];
            break;
        }
        case GateKind::CCX: {
            uint16_t a = g.q[0], b = g.q[1], t = g.q[2];
            if (!e.czset.empty()) {
                std::vector<uint16_t> partners;
                e.czset.partners_of(t, partners);
                if (!partners.empty())
                    throw std::logic_error("propagate: CZ pair on a CCX target leaves the Z/CZ group");
            }
            if (z[t]) e.czset.toggle(a, b);
            break;
        }
        case GateKind::SWAP: {
            uint16_t a = g.q[0], b = g.q[1];
            std::swap(z[a], z[b]);
            e.czset.relabel(a, b);
            break;
        }
    }
}

}  // namespace repcat
