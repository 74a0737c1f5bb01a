#include "repcat/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "repcat/builders.hpp"

namespace repcat {

void wilson_interval(uint64_t fails, uint64_t n, double& lo, double& hi) {
    if (n == 0) {
        lo = hi = 0.0;
        return;
    }
    const double z = 1.959963984540054;
    double phat = static_cast<double>(fails) / n;
    double z2n = z * z / n;
    double center = (phat + z2n / 2.0) / (1.0 + z2n);
    double half = z * std::sqrt(phat * (1.0 - phat) / n + z2n / (4.0 * n)) / (1.0 + z2n);
    lo = std::max(0.0, center - half);
    hi = std::min(1.0, center + half);
}

namespace {
constexpr int kDomainSlots = 3;

int slot_of(Domain dom) {
    switch (dom) {
        case Domain::TargetStabs: return 0;
        case Domain::BlockAStabs: return 1;
        case Domain::BlockBStabs: return 2;
        default: return -1;
    }
}
}  // namespace

int TrajectoryWorkspace::domain_slot(Domain dom) const { return slot_of(dom); }

TrajectoryWorkspace::TrajectoryWorkspace(const Experiment& e)
    : exp_(e), err_(e.circuit.total_qubits()) {
    const Layout& lay = e.circuit.layout;
    for (const auto& sd : e.domains) {
        int s = slot_of(sd.domain);
        grids_[s] = SyndromeGrid(sd.n_rounds, sd.n_stabs);
        offs_[s].assign(sd.n_rounds * sd.n_stabs, 0);
        corr_cum_[s].assign(lay.block_size(sd.block), 0);
    }
    steane_bits_.assign(static_cast<size_t>(e.steane_rows) * e.d, 0);
    steane_sign_.assign(std::max(1, e.steane_rows), 0xff);
    xl_bits_.assign(e.kind == ExperimentKind::MeasXL ? e.d : 0, 0);

    tab_index_.assign(lay.total_qubits(), -1);
    int ti = 0;
    if (lay.has_block(Block::ControlA))
        for (int i = 0; i < lay.block_size(Block::ControlA); ++i)
            tab_index_[lay.flat(Block::ControlA, i)] = ti++;
    if (lay.has_block(Block::ControlB))
        for (int i = 0; i < lay.block_size(Block::ControlB); ++i)
            tab_index_[lay.flat(Block::ControlB, i)] = ti++;
    scratch_ = ti;
}

void TrajectoryWorkspace::reset() {
    err_.clear();
    for (int s = 0; s < kDomainSlots; ++s) {
        std::fill(grids_[s].bits.begin(), grids_[s].bits.end(), 0);
        std::fill(offs_[s].begin(), offs_[s].end(), 0);
        std::fill(corr_cum_[s].begin(), corr_cum_[s].end(), 0);
    }
    std::fill(steane_bits_.begin(), steane_bits_.end(), 0);
    std::fill(steane_sign_.begin(), steane_sign_.end(), 0xff);
    std::fill(xl_bits_.begin(), xl_bits_.end(), 0);
    target_log_.clear();
    final_fault_windows_.clear();
    tableau_active_ = false;
    std::fill(tab_dirty_.begin(), tab_dirty_.end(), 0);
}

FailureSet TrajectoryWorkspace::run(const NoiseConfig& noise, Rng& rng) {
    noise_ = &noise;
    rng_ = &rng;
    inj_ = nullptr;
    frame_only_ = false;
    if (exp_.perfect_ec) return run_perfect_ec();
    return execute();
}

FailureSet TrajectoryWorkspace::run_injected(const Injection& inj, Rng& rng) {
    noise_ = nullptr;
    rng_ = &rng;
    inj_ = &inj;
    frame_only_ = false;
    return execute();
}

void TrajectoryWorkspace::ensure_tableau() {
    if (tableau_active_) return;
    int n = scratch_ + 1;
    tableau_ = StabilizerTableau(n);
    tab_dirty_.assign(n, 0);
    tableau_active_ = true;
}


FailureSet TrajectoryWorkspace::execute() {
    reset();
    size_t sched_idx = 0;
    for (int li = 0; li < static_cast<int>(exp_.circuit.layers.size()); ++li) {
        run_layer(li);
        while (sched_idx < exp_.schedule.size() &&
               exp_.schedule[sched_idx].after_layer == li) {
            if (!frame_only_) do_schedule(exp_.schedule[sched_idx]);
            else if (exp_.schedule[sched_idx].op == SchedulePoint::Op::PerfectRound)
                do_schedule(exp_.schedule[sched_idx]);
            ++sched_idx;
        }
    }
    if (frame_only_) return 0;
    return failure_check();
}

void TrajectoryWorkspace::run_layer(int li) {
    const Layer& layer = exp_.circuit.layers[li];
    const double p = noise_ ? noise_->p() : 0.0;
    for (const Gate& g : layer.gates) {
        propagate(err_, g);
        if (tableau_active_ && g.kind == GateKind::SWAP) {
            int a = tab_index_[g.q[0]], b = tab_index_[g.q[1]];
            if (a >= 0 && b >= 0) {
                tableau_.swap(a, b);
                std::swap(tab_dirty_[a], tab_dirty_[b]);
            }
        }
        if (g.kind == GateKind::MeasX) resolve_measurement(g);
        if (noise_ && p > 0.0) {
            ErrorDelta delta = noise_->sample_gate_error(g, *rng_);
            if (!delta.is_identity()) apply_delta(err_, delta);
        }
    }
    if (noise_ && p > 0.0) {
        for (uint16_t q : layer.idle)
            if (rng_->bernoulli(p)) err_.zframe[q] ^= 1;
    }
    if (inj_ && inj_->layer == li && inj_->delta.nz + (inj_->delta.has_cz ? 1 : 0) > 0)
        apply_delta(err_, inj_->delta);
}

int TrajectoryWorkspace::tableau_sigma(const MeasTag& tag, uint16_t anc_flat) {
    err_.czset.partners_of(anc_flat, partners_);
    for (uint16_t r : partners_) err_.czset.toggle(anc_flat, r);

    int s0 = -1, s1 = -1;
    const Layout& lay = exp_.circuit.layout;
    if (tag.domain == Domain::BlockAStabs && lay.has_block(Block::ControlA) &&
        exp_.find_domain(Domain::BlockAStabs)) {
        s0 = tab_index_[lay.flat(Block::ControlA, tag.col)];
        s1 = tab_index_[lay.flat(Block::ControlA, tag.col + 1)];
    } else if (tag.domain == Domain::BlockBStabs) {
        s0 = tab_index_[lay.flat(Block::ControlB, tag.col)];
        s1 = tab_index_[lay.flat(Block::ControlB, tag.col + 1)];
    } else {
        if (!partners_.empty())
            throw std::logic_error("pending CZ pair on a measurement outside the control blocks");
        return +1;
    }

    if (partners_.empty()) {
        if (!tableau_active_) return +1;
        if (!tab_dirty_[s0] && !tab_dirty_[s1]) return +1;
    }
    ensure_tableau();
    tableau_.prep_plus(scratch_, *rng_);
    tableau_.cnot(scratch_, s0);
    tableau_.cnot(scratch_, s1);
    for (uint16_t r : partners_) {
        int tr = tab_index_[r];
        if (tr < 0) throw std::logic_error("CZ pair endpoint outside the control blocks");
        tableau_.cz(scratch_, tr);
    }
    auto m = tableau_.measure_x(scratch_, *rng_);
    if (!m.deterministic) {
        tab_dirty_[s0] = tab_dirty_[s1] = 1;
        for (uint16_t r : partners_) tab_dirty_[tab_index_[r]] = 1;
    }
    return m.outcome;
}

void TrajectoryWorkspace::resolve_measurement(const Gate& g) {
    const MeasTag& tag = exp_.circuit.tags[g.tag];
    uint16_t anc = g.q[0];
    uint8_t flip = err_.zframe[anc];
    err_.zframe[anc] = 0;
    if (noise_ && noise_->measurement_flip_probability() > 0.0 &&
        rng_->bernoulli(noise_->measurement_flip_probability()))
        flip ^= 1;
    if (inj_ && inj_->flip_tag == static_cast<int>(g.tag)) flip ^= 1;

    int sigma = +1;
    if (!frame_only_) sigma = tableau_sigma(tag, anc);

    uint8_t bit = flip ^ (sigma < 0 ? 1 : 0);
    switch (tag.domain) {
        case Domain::SteaneAncilla: {
            if (!frame_only_ && steane_sign_[tag.row] == 0xff)
                steane_sign_[tag.row] = rng_ && !inj_ ? (rng_->bit() ? 1 : 0) : 0;
            if (steane_sign_[tag.row] == 0xff) steane_sign_[tag.row] = 0;
            bit ^= steane_sign_[tag.row];
            steane_bits_[tag.row * exp_.d + tag.col] = bit;
            break;
        }
        case Domain::LogicalX:
            xl_bits_[tag.col] = bit;
            break;
        default: {
            int s = slot_of(tag.domain);
            const StabDomain* sd = exp_.find_domain(tag.domain);
            if (offs_[s][tag.row * sd->n_stabs + tag.col] == 0 && tag.col == 0)
                record_offsets_row(tag.domain, tag.row);
            grids_[s].at(tag.row, tag.col) = bit;
            break;
        }
    }
}

void TrajectoryWorkspace::perfect_round(Domain dom) {
    int s = slot_of(dom);
    const StabDomain* sd = exp_.find_domain(dom);
    const Layout& lay = exp_.circuit.layout;
    int row = sd->n_rounds - 1;
    std::vector<uint16_t> merged;
    for (int i = 0; i < sd->n_stabs; ++i) {
        uint16_t q0 = lay.flat(sd->block, i);
        uint16_t q1 = lay.flat(sd->block, i + 1);
        uint8_t bit = err_.zframe[q0] ^ err_.zframe[q1];
        if (!frame_only_ && (tableau_active_ || !err_.czset.empty())) {
            // virtual noiseless gadget: pair copies from both supports
            std::vector<uint16_t> pa, pb;
            err_.czset.partners_of(q0, pa);
            err_.czset.partners_of(q1, pb);
            merged.clear();
            for (uint16_t r : pa) merged.push_back(r);
            for (uint16_t r : pb) merged.push_back(r);
            std::sort(merged.begin(), merged.end());
            // keep odd-multiplicity partners
            std::vector<uint16_t> odd;
            for (size_t k = 0; k < merged.size();) {
                size_t j = k;
                while (j < merged.size() && merged[j] == merged[k]) ++j;
                if ((j - k) & 1) odd.push_back(merged[k]);
                k = j;
            }
            int t0 = tab_index_[q0], t1 = tab_index_[q1];
            bool need = !odd.empty();
            if (!need && tableau_active_ && t0 >= 0 && (tab_dirty_[t0] || tab_dirty_[t1])) need = true;
            if (need) {
                ensure_tableau();
                tableau_.prep_plus(scratch_, *rng_);
                if (t0 >= 0) {
                    tableau_.cnot(scratch_, t0);
                    tableau_.cnot(scratch_, t1);
                }
                for (uint16_t r : odd) {
                    int tr = tab_index_[r];
                    if (tr < 0) throw std::logic_error("CZ partner outside control blocks");
                    tableau_.cz(scratch_, tr);
                }
                auto m = tableau_.measure_x(scratch_, *rng_);
                if (!m.deterministic) {
                    if (t0 >= 0) tab_dirty_[t0] = tab_dirty_[t1] = 1;
                    for (uint16_t r : odd) tab_dirty_[tab_index_[r]] = 1;
                }
                bit ^= (m.outcome < 0) ? 1 : 0;
            }
        }
        grids_[s].at(row, i) = bit;
        offs_[s][row * sd->n_stabs + i] = corr_cum_[s][i] ^ corr_cum_[s][i + 1];
    }
}

void TrajectoryWorkspace::do_schedule(const SchedulePoint& sp) {
    switch (sp.op) {
        case SchedulePoint::Op::PerfectRound:
            perfect_round(sp.domain);
            break;
        case SchedulePoint::Op::SteaneDecode:
            steane_decode(sp.piece);
            break;
        case SchedulePoint::Op::TargetCumulativeDecode:
            decode_domain(Domain::TargetStabs, sp.piece, false);
            break;
        case SchedulePoint::Op::FinalTargetDecode:
            decode_domain(Domain::TargetStabs, -1, true);
            break;
        case SchedulePoint::Op::CzUndo:
            cz_undo();
            break;
        case SchedulePoint::Op::FinalBlockDecode:
            decode_domain(sp.domain, -1, true);
            break;
    }
}

void TrajectoryWorkspace::steane_decode(int piece) {
    int row = piece - 1;
    std::span<const uint8_t> bits(&steane_bits_[row * exp_.d], exp_.d);
    std::vector<uint16_t> corr = majority_decode_steane(bits);
    if (corr.empty()) {
        target_log_.push_back({piece, {}});
        return;
    }
    const Layout& lay = exp_.circuit.layout;
    int s = slot_of(Domain::TargetStabs);
    for (uint16_t q : corr) {
        err_.zframe[lay.flat(Block::Target, q)] ^= 1;
        corr_cum_[s][q] ^= 1;
    }
    target_log_.push_back({piece, corr});
}

void TrajectoryWorkspace::decode_domain(Domain dom, int rounds_limit, bool final_pass) {
    int s = slot_of(dom);
    const StabDomain* sd = exp_.find_domain(dom);
    const DomainGeometry& geom = exp_.geometry->domains[s];
    int rows = rounds_limit > 0 ? rounds_limit : sd->n_rounds;

    // adjusted view: measured bits with applied corrections folded out
    SyndromeGrid adj(rows, sd->n_stabs);
    for (int r = 0; r < rows; ++r)
        for (int i = 0; i < sd->n_stabs; ++i)
            adj.at(r, i) = grids_[s].get(r, i) ^ offs_[s][r * sd->n_stabs + i];

    std::vector<int> events = detection_events(adj);
    std::vector<uint8_t> inferred(corr_cum_[s].size(), 0);
    std::vector<std::pair<uint16_t, uint16_t>> windows;
    if (!events.empty()) {
        MatchingGraph mg = build_matching_graph(events, geom);
        std::vector<int> match = mwpm(mg);
        Correction corr = correction_from_matching(mg, match, geom);
        for (uint16_t q : corr.z_qubits) inferred[q] ^= 1;
        windows = std::move(corr.fault_windows);
    }
    const Layout& lay = exp_.circuit.layout;
    std::vector<uint16_t> delta_qubits;
    for (size_t q = 0; q < inferred.size(); ++q) {
        uint8_t delta = inferred[q] ^ corr_cum_[s][q];
        if (delta) {
            err_.zframe[lay.flat(sd->block, static_cast<int>(q))] ^= 1;
            corr_cum_[s][q] = inferred[q];
            delta_qubits.push_back(static_cast<uint16_t>(q));
        }
    }
    if (dom == Domain::TargetStabs && !final_pass)
        target_log_.push_back({rounds_limit, delta_qubits});
    if (dom == Domain::TargetStabs && final_pass) final_fault_windows_ = std::move(windows);
}

void TrajectoryWorkspace::cz_undo() {
    if (exp_.n_pieces == 0) return;
    const Layout& lay = exp_.circuit.layout;
    auto pair_map = [&](int piece, int qubit) {
        return std::make_pair(lay.flat(Block::ControlA, qubit - piece + 1),
                              lay.flat(Block::ControlB, qubit));
    };
    auto pairs = cz_posteriori_undo(final_fault_windows_, target_log_, exp_.n_pieces, exp_.d,
                                    pair_map);
    for (auto& [a, b] : pairs) err_.czset.toggle(a, b);
}

FailureSet TrajectoryWorkspace::failure_check() {
    const Layout& lay = exp_.circuit.layout;
    FailureSet fs = 0;

    if (exp_.kind == ExperimentKind::MeasXL) {
        int flips = 0;
        for (uint8_t b : xl_bits_) flips += b;
        if (flips > exp_.d / 2) fs |= 1u << kXL;
        return static_cast<FailureSet>(fs & exp_.criterion);
    }

    auto block_parity = [&](Block b) {
        uint8_t par = 0;
        for (int i = 0; i < lay.block_size(b); ++i) par ^= err_.zframe[lay.flat(b, i)];
        return par;
    };
    if (lay.has_block(Block::Target) && block_parity(Block::Target)) fs |= 1u << kZLC;

    bool have_controls = lay.has_block(Block::ControlA) || lay.has_block(Block::ControlB);
    if (!have_controls) return static_cast<FailureSet>(fs & exp_.criterion);

    if (!tableau_active_ && err_.czset.empty()) {
        if (lay.has_block(Block::ControlA) && block_parity(Block::ControlA)) fs |= 1u << kZLA;
        if (lay.has_block(Block::ControlB) && block_parity(Block::ControlB)) fs |= 1u << kZLB;
        return static_cast<FailureSet>(fs & exp_.criterion);
    }

    // Fuse the classical frame and pending pairs into the collapse tableau,
    // then classify the residual logical operator.
    uint8_t par_a = block_parity(Block::ControlA);
    uint8_t par_b = block_parity(Block::ControlB);
    ensure_tableau();
    const int d = exp_.d;
    for (Block b : {Block::ControlA, Block::ControlB}) {
        for (int i = 0; i < lay.block_size(b); ++i) {
            uint16_t q = lay.flat(b, i);
            if (err_.zframe[q]) {
                tableau_.pauli_z(tab_index_[q]);
                err_.zframe[q] = 0;
            }
        }
    }
    for (uint32_t key : err_.czset.raw()) {
        int a = tab_index_[static_cast<uint16_t>(key >> 16)];
        int b = tab_index_[static_cast<uint16_t>(key & 0xffff)];
        if (a < 0 || b < 0) throw std::logic_error("residual CZ pair outside control blocks");
        tableau_.cz(a, b);
    }
    err_.czset.clear();

    bool coherent = false;
    for (Block b : {Block::ControlA, Block::ControlB}) {
        for (int i = 0; i + 1 < d; ++i) {
            int support[2] = {tab_index_[lay.flat(b, i)], tab_index_[lay.flat(b, i + 1)]};
            if (!tableau_.x_string_deterministic(std::span<const int>(support, 2))) {
                coherent = true;
            } else if (tableau_.x_string_value(std::span<const int>(support, 2)) < 0) {
                throw std::logic_error("nontrivial residual syndrome after final correction");
            }
        }
    }
    if (coherent) {
        fs |= 1u << kCZLAB;
        if (par_a) fs |= 1u << kZLA;
        if (par_b) fs |= 1u << kZLB;
        return static_cast<FailureSet>(fs & exp_.criterion);
    }

    if (tableau_.any_z_content()) {
        fs |= 1u << kCZLAB;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                tableau_.cz(tab_index_[lay.flat(Block::ControlA, i)],
                            tab_index_[lay.flat(Block::ControlB, j)]);
        if (tableau_.any_z_content())
            throw std::logic_error("residual is not a diagonal logical operator");
    }
    int a0 = tab_index_[lay.flat(Block::ControlA, 0)];
    int b0 = tab_index_[lay.flat(Block::ControlB, 0)];
    if (tableau_.x_string_value(std::span<const int>(&a0, 1)) < 0) fs |= 1u << kZLA;
    if (tableau_.x_string_value(std::span<const int>(&b0, 1)) < 0) fs |= 1u << kZLB;
    return static_cast<FailureSet>(fs & exp_.criterion);
}

FailureSet TrajectoryWorkspace::run_perfect_ec() {
    reset();
    const Layout& lay = exp_.circuit.layout;
    const double p = noise_ ? noise_->p() : 0.0;
    for (const Layer& layer : exp_.circuit.layers) {
        for (const Gate& g : layer.gates) {
            propagate(err_, g);
            if (p > 0.0) {
                ErrorDelta delta = noise_->sample_gate_error(g, *rng_);
                // идеal EC also cancels the pending pair algebra exactly
                delta.has_cz = false;
                if (!delta.is_identity()) apply_delta(err_, delta);
            }
        }
        for (int i = 0; i < lay.block_size(Block::Target); ++i)
            err_.zframe[lay.flat(Block::Target, i)] = 0;
    }
    FailureSet fs = 0;
    auto weight = [&](Block b) {
        int w = 0;
        for (int i = 0; i < lay.block_size(b); ++i) w += err_.zframe[lay.flat(b, i)];
        return w;
    };
    if (weight(Block::ControlA) > exp_.d / 2) fs |= 1u << kZLA;
    if (weight(Block::ControlB) > exp_.d / 2) fs |= 1u << kZLB;
    return static_cast<FailureSet>(fs & exp_.criterion);
}

const SyndromeGrid& TrajectoryWorkspace::grid(Domain dom) const { return grids_[slot_of(dom)]; }

FailureSet run_trajectory(const Experiment& e, const NoiseConfig& noise, Rng& rng) {
    TrajectoryWorkspace ws(e);
    return ws.run(noise, rng);
}

Estimate estimate(const Experiment& e, const RunConfig& rc) {
    auto t0 = std::chrono::steady_clock::now();
    const NoiseConfig noise(rc.p);
    const uint64_t batch = 4096;
    const uint64_t n_batches = (rc.max_trajectories + batch - 1) / batch;
    int workers = rc.workers > 0 ? rc.workers : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min<int>(workers, 64));

    struct BatchResult {
        uint64_t n = 0;
        uint64_t any_fail = 0;
        std::array<uint64_t, kNumLogicalOps> op_fail{};
        bool done = false;
    };
    std::vector<BatchResult> results(n_batches);
    std::atomic<uint64_t> next_batch{0};
    std::atomic<int64_t> stop_batch{-1};  // first prefix batch reaching the quota
    std::mutex m;
    uint64_t prefix_done = 0, prefix_fails = 0;

    auto worker_fn = [&]() {
        TrajectoryWorkspace ws(e);
        Rng rng;
        for (;;) {
            uint64_t b = next_batch.fetch_add(1);
            if (b >= n_batches) break;
            int64_t sb = stop_batch.load();
            if (sb >= 0 && static_cast<int64_t>(b) > sb) break;
            BatchResult br;
            uint64_t begin = b * batch;
            uint64_t end = std::min(rc.max_trajectories, begin + batch);
            for (uint64_t traj = begin; traj < end; ++traj) {
                rng.reseed(rc.seed, traj);
                FailureSet fs = ws.run(noise, rng);
                ++br.n;
                if (fs) ++br.any_fail;
                for (int op = 0; op < kNumLogicalOps; ++op)
                    if (fs & (1u << op)) ++br.op_fail[op];
            }
            br.done = true;
            std::lock_guard<std::mutex> lock(m);
            results[b] = br;
            while (prefix_done < n_batches && results[prefix_done].done) {
                prefix_fails += results[prefix_done].any_fail;
                if (prefix_fails >= rc.min_failures && stop_batch.load() < 0)
                    stop_batch.store(static_cast<int64_t>(prefix_done));
                ++prefix_done;
            }
        }
    };

    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker_fn);
    for (auto& t : pool) t.join();

    // deterministic stopping point: the first prefix batch where the failure
    // quota is met, independent of scheduling
    uint64_t cum_fails = 0, cum_n = 0;
    std::array<uint64_t, kNumLogicalOps> cum_op{};
    uint64_t used_batches = 0;
    for (uint64_t b = 0; b < n_batches; ++b) {
        if (!results[b].done) break;
        cum_fails += results[b].any_fail;
        cum_n += results[b].n;
        for (int op = 0; op < kNumLogicalOps; ++op) cum_op[op] += results[b].op_fail[op];
        ++used_batches;
        if (cum_fails >= rc.min_failures) break;
    }
    (void)used_batches;

    Estimate est;
    est.n = cum_n;
    est.n_fail = cum_fails;
    est.n_fail_op = cum_op;
    est.p_l = cum_n ? static_cast<double>(cum_fails) / cum_n : 0.0;
    wilson_interval(cum_fails, cum_n, est.ci_low, est.ci_high);
    est.censored = cum_fails < rc.min_failures;
    est.seed = rc.seed;
    est.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return est;
}

Estimate estimate(const RunConfig& rc) {
    Experiment e = build_experiment(rc.kind, rc.d, rc.builder);
    return estimate(e, rc);
}

}  // namespace repcat
