#include "repcat/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace repcat {

double idle_phase_flip_probability(const CatQubitParams& p) {
    return p.nbar * p.kappa1 * p.T;
}

double optimal_gate_time(double nbar, double kappa1, double kappa2) {
    if (kappa1 <= 0.0) throw std::domain_error("optimal_gate_time: no finite optimum at kappa1 = 0");
    if (kappa2 <= 0.0 || nbar <= 0.0) throw std::domain_error("optimal_gate_time: invalid parameters");
    return 1.0 / (2.0 * nbar * std::sqrt(M_PI) * std::sqrt(kappa1 * kappa2));
}

double optimal_phase_flip_probability(double kappa1, double kappa2) {
    if (kappa2 <= 0.0) throw std::domain_error("optimal_phase_flip_probability: kappa2 must be > 0");
    return std::sqrt(kappa1 / kappa2) / (2.0 * std::sqrt(M_PI));
}

double cnot_bitflip_probability(double nbar, double ratio) {
    return (5.58 * std::sqrt(ratio) + 1.68 * ratio) * std::exp(-2.0 * nbar);
}

double GateErrorModel::total_error_probability() const {
    double s = 0.0;
    for (const auto& t : terms) s += t.probability;
    return s;
}

void GateErrorModel::finalize() {
    cumulative.clear();
    double s = 0.0;
    for (const auto& t : terms) {
        if (t.probability < 0.0) throw std::domain_error("negative channel probability");
        s += t.probability;
        cumulative.push_back(s);
    }
    if (s > 1.0 + 1e-12) throw std::domain_error("gate error channel exceeds unit probability");
}

namespace {

ErrorDelta z_on(std::initializer_list<uint16_t> slots) {
    ErrorDelta d;
    for (uint16_t s : slots) d.z[d.nz++] = s;
    return d;
}

ErrorDelta cz_on(uint16_t a, uint16_t b, std::initializer_list<uint16_t> zslots = {}) {
    ErrorDelta d = z_on(zslots);
    d.has_cz = true;
    d.cz_a = a;
    d.cz_b = b;
    return d;
}

}  // namespace

NoiseConfig::NoiseConfig(double p) : p_(p) {
    if (p < 0.0 || 6.0 * p > 1.0)
        throw std::domain_error("NoiseConfig: require 0 <= p and 6p <= 1");

    auto& m = models_;
    auto set = [&](GateKind k, std::vector<ErrorTerm> terms) {
        auto& gm = m[static_cast<int>(k)];
        gm.kind = k;
        gm.terms = std::move(terms);
        gm.finalize();
    };

    // Single-qubit operations share the plain phase-flip channel.
    std::vector<ErrorTerm> single = {{p, z_on({0})}};
    set(GateKind::Idle, single);
    set(GateKind::PrepPlus, single);
    set(GateKind::PrepZeroL, single);
    set(GateKind::PauliZ, single);
    set(GateKind::PauliX, single);
    set(GateKind::MeasX, {});  // outcome flip handled separately

    set(GateKind::CZ, {{p, z_on({0})}, {p, z_on({1})}});
    set(GateKind::CNOT, {{3 * p, z_on({0})}, {p / 2, z_on({1})}, {p / 2, z_on({0, 1})}});
    set(GateKind::CCX, {{p, z_on({0})},
                        {p, z_on({1})},
                        {p / 2, z_on({2})},
                        {3 * p, cz_on(0, 1)},
                        {p / 2, cz_on(0, 1, {2})}});
    // No model is given for the direct dissipative SWAP; default to the CZ
    // two-qubit Z marginal.
    set(GateKind::SWAP, {{p, z_on({0})}, {p, z_on({1})}});
}

NoiseConfig NoiseConfig::from_params(const CatQubitParams& params) {
    return NoiseConfig(idle_phase_flip_probability(params));
}

bool NoiseConfig::valid() const { return p_ >= 0.0 && 6.0 * p_ <= 1.0; }

ErrorDelta NoiseConfig::sample_gate_error(const Gate& g, Rng& rng) const {
    const GateErrorModel& gm = models_[static_cast<int>(g.kind)];
    ErrorDelta out;
    if (gm.terms.empty() || p_ <= 0.0) return out;
    double u = rng.uniform();
    if (u >= gm.cumulative.back()) return out;
    size_t i = 0;
    while (u >= gm.cumulative[i]) ++i;
    const ErrorDelta& slot = gm.terms[i].delta;
    out = slot;
    for (int k = 0; k < out.nz; ++k) out.z[k] = g.q[slot.z[k]];
    if (out.has_cz) {
        out.cz_a = g.q[slot.cz_a];
        out.cz_b = g.q[slot.cz_b];
    }
    return out;
}

void NoiseConfig::prep_zero_l_noise(std::vector<uint16_t> const& block_qubits, ErrorState& e,
                                    Rng& rng) const {
    for (uint16_t q : block_qubits)
        if (p_ > 0.0 && rng.bernoulli(p_)) e.zframe[q] ^= 1;
}

}  // namespace repcat
