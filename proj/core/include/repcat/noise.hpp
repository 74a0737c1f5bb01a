#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "repcat/error_state.hpp"
#include "repcat/gate.hpp"
#include "repcat/rng.hpp"

namespace repcat {

/// Physical cat-qubit parameters. Rates in 1/s, gate time in s.
struct CatQubitParams {
    double nbar = 15.0;
    double kappa1 = 0.0;
    double kappa2 = 1.0;
    double T = 0.0;

    bool valid() const { return nbar > 0 && kappa1 >= 0 && kappa2 > 0 && T > 0; }
};

/// Z phase-flip probability of an idling qubit over one time step: nbar*kappa1*T.
double idle_phase_flip_probability(const CatQubitParams& p);

/// Gate time maximizing two-qubit gate fidelity under single-photon loss:
/// T* = (2 nbar sqrt(pi))^-1 / sqrt(kappa1 kappa2). Requires kappa1 > 0.
double optimal_gate_time(double nbar, double kappa1, double kappa2);

/// Phase-flip probability at T = T*: p = (2 sqrt(pi))^-1 sqrt(kappa1/kappa2).
double optimal_phase_flip_probability(double kappa1, double kappa2);

/// CNOT bit-flip probability fit: (5.58 sqrt(r) + 1.68 r) exp(-2 nbar),
/// r = kappa1/kappa2.
double cnot_bitflip_probability(double nbar, double ratio);

/// One error term of a gate channel.
struct ErrorTerm {
    double probability = 0.0;
    ErrorDelta delta;  // operands as slot numbers 0..2, remapped at sampling
};

/// Stochastic Z-type error channel of one gate kind: a perfect gate followed
/// by one of these terms (identity takes the residual probability).
struct GateErrorModel {
    GateKind kind = GateKind::Idle;
    std::vector<ErrorTerm> terms;
    std::vector<double> cumulative;  // running sums of term probabilities

    double total_error_probability() const;
    void finalize();  // builds cumulative, checks normalization
};

/// Per-gate channels derived from the single noise strength p. Measurement
/// outcomes flip with probability p as well.
class NoiseConfig {
  public:
    NoiseConfig() : NoiseConfig(0.0) {}
    explicit NoiseConfig(double p);

    static NoiseConfig from_params(const CatQubitParams& params);

    double p() const { return p_; }
    double measurement_flip_probability() const { return p_; }
    const GateErrorModel& model(GateKind k) const { return models_[static_cast<int>(k)]; }

    /// Draws one error from the channel of gate g; slot operands are remapped
    /// to g's actual qubits. Identity comes back as an empty delta.
    ErrorDelta sample_gate_error(const Gate& g, Rng& rng) const;

    /// Independent per-qubit Z noise of a fresh logical |0> block.
    void prep_zero_l_noise(std::vector<uint16_t> const& block_qubits, ErrorState& e,
                           Rng& rng) const;

    bool valid() const;

  private:
    double p_ = 0.0;
    std::array<GateErrorModel, 10> models_;
};

}  // namespace repcat
