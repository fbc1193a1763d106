#include "bellsim/builders.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "bellsim/pauli.h"
#include "bellsim/sparse_parity.h"

namespace bellsim {

namespace {

/// One patch participating in syndrome extraction: a layout plus the global
/// qubit ids backing its data and ancilla slots, and the ancilla records of
/// every emitted round.
struct Patch {
    const SurfaceCodeLayout *layout = nullptr;
    std::vector<uint32_t> data_ids;
    std::vector<uint32_t> anc_ids;
    std::vector<std::vector<uint32_t>> rounds;
};

std::vector<uint32_t> iota_ids(uint32_t base, size_t count) {
    std::vector<uint32_t> ids(count);
    std::iota(ids.begin(), ids.end(), base);
    return ids;
}

/// A syndrome CNOT whose endpoints live on different nodes. The gate is run
/// through a fresh Bell pair (e1 next to the control, e2 next to the target);
/// the two byproduct measurements are recorded, and the Pauli corrections they
/// call for are folded into detectors later instead of being applied.
struct PendingCorrection {
    size_t op_index;  // the Pauli would act right after this op
    uint32_t record;
    uint32_t qubit;
    char pauli;
};

using CrossingKey = std::tuple<size_t, size_t, int>;  // patch, plaquette, slot

struct RoundContext {
    Circuit *circuit;
    size_t *num_records;
    double p = 0.0;
    double p_bell = 0.0;
    double idle = 0.0;
    std::vector<PendingCorrection> *pending = nullptr;
    const std::map<CrossingKey, std::pair<uint32_t, uint32_t>> *crossings = nullptr;
};

/// One full syndrome round over the given patches in lockstep: ancilla resets,
/// four CNOT layers, ancilla readout. Appends one record per plaquette to each
/// patch's round history.
void emit_round(RoundContext &ctx, const std::vector<Patch *> &patches) {
    Circuit &c = *ctx.circuit;

    std::vector<uint32_t> rx, rz;
    for (const Patch *patch : patches) {
        for (size_t i = 0; i < patch->layout->plaquettes.size(); ++i) {
            (patch->layout->plaquettes[i].basis == 'X' ? rx : rz).push_back(patch->anc_ids[i]);
        }
    }
    if (!rx.empty()) {
        c.append(OpType::RX, rx);
        if (ctx.p > 0) {
            c.append(OpType::FLIPZ, rx, ctx.p);
        }
    }
    if (!rz.empty()) {
        c.append(OpType::RZ, rz);
        if (ctx.p > 0) {
            c.append(OpType::FLIPX, rz, ctx.p);
        }
    }

    for (int layer = 0; layer < 4; ++layer) {
        c.append(OpType::TICK, {});
        std::vector<uint32_t> local;
        struct Remote {
            uint32_t ctrl, tgt, e1, e2;
        };
        std::vector<Remote> remote;
        std::vector<uint32_t> busy;
        for (size_t pi = 0; pi < patches.size(); ++pi) {
            const Patch *patch = patches[pi];
            const auto &plaqs = patch->layout->plaquettes;
            for (size_t i = 0; i < plaqs.size(); ++i) {
                const Plaquette &pl = plaqs[i];
                const auto layers = plaquette_slot_layers(pl.basis);
                for (int k = 0; k < 4; ++k) {
                    if (layers[k] != layer || pl.slots[k] < 0) {
                        continue;
                    }
                    uint32_t data = patch->data_ids[size_t(pl.slots[k])];
                    uint32_t anc = patch->anc_ids[i];
                    uint32_t ctrl = pl.basis == 'X' ? anc : data;
                    uint32_t tgt = pl.basis == 'X' ? data : anc;
                    busy.push_back(data);
                    const auto *site = ctx.crossings ? [&]() -> const std::pair<uint32_t, uint32_t> * {
                        auto it = ctx.crossings->find({pi, i, k});
                        return it == ctx.crossings->end() ? nullptr : &it->second;
                    }() : nullptr;
                    if (site) {
                        remote.push_back({ctrl, tgt, site->first, site->second});
                    } else {
                        local.push_back(ctrl);
                        local.push_back(tgt);
                    }
                }
            }
        }
        if (!local.empty()) {
            c.append(OpType::CNOT, local);
            if (ctx.p > 0) {
                c.append(OpType::DEPOL2, local, ctx.p);
            }
        }
        for (const Remote &x : remote) {
            c.append(OpType::BELL, {x.e1, x.e2});
            if (ctx.p_bell > 0) {
                c.append(OpType::DEPOL1, {x.e2}, ctx.p_bell);
            }
            c.append(OpType::CNOT, {x.ctrl, x.e1});
            if (ctx.p > 0) {
                c.append(OpType::DEPOL2, {x.ctrl, x.e1}, ctx.p);
            }
            c.append(OpType::CNOT, {x.e2, x.tgt});
            if (ctx.p > 0) {
                c.append(OpType::DEPOL2, {x.e2, x.tgt}, ctx.p);
            }
            c.append(OpType::MZ, {x.e1}, ctx.p);
            ctx.pending->push_back({c.ops.size() - 1, uint32_t((*ctx.num_records)++), x.tgt, 'X'});
            c.append(OpType::MX, {x.e2}, ctx.p);
            ctx.pending->push_back({c.ops.size() - 1, uint32_t((*ctx.num_records)++), x.ctrl, 'Z'});
        }
        if (ctx.idle > 0) {
            std::sort(busy.begin(), busy.end());
            std::vector<uint32_t> idle_ids;
            for (const Patch *patch : patches) {
                for (uint32_t q : patch->data_ids) {
                    if (!std::binary_search(busy.begin(), busy.end(), q)) {
                        idle_ids.push_back(q);
                    }
                }
            }
            if (!idle_ids.empty()) {
                c.append(OpType::DEPOL1, idle_ids, ctx.idle);
            }
        }
    }

    std::vector<uint32_t> mx, mz;
    for (const Patch *patch : patches) {
        for (size_t i = 0; i < patch->layout->plaquettes.size(); ++i) {
            (patch->layout->plaquettes[i].basis == 'X' ? mx : mz).push_back(patch->anc_ids[i]);
        }
    }
    if (!mx.empty()) {
        c.append(OpType::MX, mx, ctx.p);
    }
    if (!mz.empty()) {
        c.append(OpType::MZ, mz, ctx.p);
    }
    std::map<uint32_t, uint32_t> rec_of;
    for (uint32_t q : mx) {
        rec_of[q] = uint32_t((*ctx.num_records)++);
    }
    for (uint32_t q : mz) {
        rec_of[q] = uint32_t((*ctx.num_records)++);
    }
    for (Patch *patch : patches) {
        std::vector<uint32_t> recs(patch->layout->plaquettes.size());
        for (size_t i = 0; i < recs.size(); ++i) {
            recs[i] = rec_of.at(patch->anc_ids[i]);
        }
        patch->rounds.push_back(std::move(recs));
    }
}

PauliString mpp_observable(const Operation &op, size_t num_qubits) {
    PauliString p(num_qubits);
    for (size_t i = 0; i < op.targets.size(); ++i) {
        p.set_letter(op.targets[i], pauli_letter_code(op.pauli[i]));
    }
    return p;
}

/// Records flipped by a Pauli inserted right after op `after`: propagate the
/// frame forward and note every measurement it anticommutes with.
std::vector<uint32_t> records_flipped_by(const Circuit &c, const std::vector<size_t> &rec_before,
                                         size_t after, uint32_t qubit, char pauli) {
    PauliString frame(c.num_qubits);
    frame.set_letter(qubit, pauli_letter_code(pauli));
    std::vector<uint32_t> flips;
    for (size_t i = after + 1; i < c.ops.size(); ++i) {
        const Operation &op = c.ops[i];
        size_t rec = rec_before[i];
        switch (op.type) {
            case OpType::H:
                for (uint32_t q : op.targets) {
                    frame.apply_h(q);
                }
                break;
            case OpType::S:
                for (uint32_t q : op.targets) {
                    frame.apply_s(q);
                }
                break;
            case OpType::CNOT:
                for (size_t j = 0; j + 1 < op.targets.size(); j += 2) {
                    frame.apply_cnot(op.targets[j], op.targets[j + 1]);
                }
                break;
            case OpType::CZ:
                for (size_t j = 0; j + 1 < op.targets.size(); j += 2) {
                    frame.apply_cz(op.targets[j], op.targets[j + 1]);
                }
                break;
            case OpType::RZ:
            case OpType::RX:
            case OpType::BELL:
                for (uint32_t q : op.targets) {
                    frame.x.set(q, false);
                    frame.z.set(q, false);
                }
                break;
            case OpType::MZ:
                for (uint32_t q : op.targets) {
                    if (frame.x.get(q)) {
                        flips.push_back(uint32_t(rec));
                    }
                    ++rec;
                }
                break;
            case OpType::MX:
                for (uint32_t q : op.targets) {
                    if (frame.z.get(q)) {
                        flips.push_back(uint32_t(rec));
                    }
                    ++rec;
                }
                break;
            case OpType::MPP:
                if (!frame.commutes_with(mpp_observable(op, c.num_qubits))) {
                    flips.push_back(uint32_t(rec));
                }
                break;
            default:
                break;
        }
    }
    return flips;
}

bool odd_overlap(const std::vector<uint32_t> &sorted, const SparseParity &set) {
    bool odd = false;
    for (uint32_t v : sorted) {
        odd ^= set.contains(v);
    }
    return odd;
}

/// Rewrites detector and observable record sets so that their parities equal
/// what the protocol with feed-forward corrections would have computed. A
/// correction conditioned on record r flips a known set of later records, and
/// r itself may be flipped by earlier omitted corrections, so each correction
/// expands to a set of raw records by forward substitution.
void fold_pending_corrections(Circuit &c, const std::vector<PendingCorrection> &pending) {
    if (pending.empty()) {
        return;
    }
    std::vector<size_t> rec_before(c.ops.size());
    size_t count = 0;
    for (size_t i = 0; i < c.ops.size(); ++i) {
        rec_before[i] = count;
        if (c.ops[i].type == OpType::MPP) {
            count += 1;
        } else {
            count += op_records_per_target(c.ops[i].type) * c.ops[i].targets.size();
        }
    }

    const size_t num = pending.size();
    std::vector<std::vector<uint32_t>> flips(num);
    std::vector<SparseParity> expansion(num);
    for (size_t k = 0; k < num; ++k) {
        flips[k] = records_flipped_by(c, rec_before, pending[k].op_index, pending[k].qubit,
                                      pending[k].pauli);
        SparseParity e;
        e.toggle(pending[k].record);
        for (size_t j = 0; j < k; ++j) {
            if (std::binary_search(flips[j].begin(), flips[j].end(), pending[k].record)) {
                e.xor_with(expansion[j]);
            }
        }
        expansion[k] = std::move(e);
    }

    for (Operation &op : c.ops) {
        if (op.type != OpType::DETECTOR && op.type != OpType::OBSERVABLE) {
            continue;
        }
        SparseParity nominal;
        for (uint32_t r : op.records) {
            nominal.toggle(r);
        }
        SparseParity raw = nominal;
        for (size_t k = 0; k < num; ++k) {
            if (odd_overlap(flips[k], nominal)) {
                raw.xor_with(expansion[k]);
            }
        }
        op.records.assign(raw.ids.begin(), raw.ids.end());
    }
}

}  // namespace

BoostingCircuit build_boosting_circuit(const BoostingSpec &spec) {
    const int db = spec.d_bell;
    const int ds = spec.d_s;
    if (db < 1 || ds < 2 || db > ds) {
        throw std::invalid_argument("build_boosting_circuit: need 1 <= d_bell <= d_s, d_s >= 2");
    }
    const int rounds = spec.rounds > 0 ? spec.rounds : ds;

    BoostingCircuit out;
    out.d_bell = db;
    out.d_s = ds;
    out.rounds = rounds;
    out.layout = build_rotated_surface_code(ds);
    const size_t n = out.layout.num_data();
    const size_t np = out.layout.plaquettes.size();
    out.data_a = 0;
    out.data_b = uint32_t(n);
    out.anc_a = uint32_t(2 * n);
    out.anc_b = uint32_t(2 * n + np);

    Circuit &c = out.circuit;
    c.num_qubits = 2 * (n + np);

    Patch pa{&out.layout, iota_ids(out.data_a, n), iota_ids(out.anc_a, np), {}};
    Patch pb{&out.layout, iota_ids(out.data_b, n), iota_ids(out.anc_b, np), {}};

    // Bell pairs fill the top-left d_bell x d_bell corner of both patches. The
    // rest of each patch starts in |+> on and below the diagonal (so it can
    // extend the vertical X logical) and |0> above it.
    enum class Region { Bell, Plus, Zero };
    auto region = [&](int r, int col) {
        if (r < db && col < db) {
            return Region::Bell;
        }
        return (col < db || r >= col) ? Region::Plus : Region::Zero;
    };

    std::vector<uint32_t> bell_targets, bell_b, plus, zero;
    for (int r = 0; r < ds; ++r) {
        for (int col = 0; col < ds; ++col) {
            const auto idx = size_t(out.layout.data_index(r, col));
            switch (region(r, col)) {
                case Region::Bell:
                    bell_targets.push_back(pa.data_ids[idx]);
                    bell_targets.push_back(pb.data_ids[idx]);
                    bell_b.push_back(pb.data_ids[idx]);
                    break;
                case Region::Plus:
                    plus.push_back(pa.data_ids[idx]);
                    plus.push_back(pb.data_ids[idx]);
                    break;
                case Region::Zero:
                    zero.push_back(pa.data_ids[idx]);
                    zero.push_back(pb.data_ids[idx]);
                    break;
            }
        }
    }
    out.bell_pairs = bell_b.size();

    c.append(OpType::BELL, bell_targets);
    if (spec.noise.p_bell > 0) {
        c.append(OpType::DEPOL1, bell_b, spec.noise.p_bell);
    }
    if (!plus.empty()) {
        c.append(OpType::RX, plus);
        if (spec.noise.p > 0) {
            c.append(OpType::FLIPZ, plus, spec.noise.p);
        }
    }
    if (!zero.empty()) {
        c.append(OpType::RZ, zero);
        if (spec.noise.p > 0) {
            c.append(OpType::FLIPX, zero, spec.noise.p);
        }
    }

    size_t num_records = 0;
    RoundContext noisy{&c, &num_records, spec.noise.p, spec.noise.p_bell, spec.noise.idle,
                       nullptr, nullptr};
    RoundContext clean{&c, &num_records, 0, 0, 0, nullptr, nullptr};

    for (int t = 1; t <= rounds + 1; ++t) {
        emit_round(t <= rounds ? noisy : clean, {&pa, &pb});
        const auto &ra = pa.rounds.back();
        const auto &rb = pb.rounds.back();
        if (t == 1) {
            // A check seeded entirely from its matching product state is
            // deterministic on each node; one that touches Bell pairs is only
            // deterministic jointly across the two nodes.
            for (size_t i = 0; i < np; ++i) {
                const Plaquette &pl = out.layout.plaquettes[i];
                bool bell_touch = false;
                bool deterministic = true;
                for (uint32_t cell : pl.support) {
                    Region reg = region(int(cell) / ds, int(cell) % ds);
                    if (reg == Region::Bell) {
                        bell_touch = true;
                    } else if (pl.basis == 'X' ? reg != Region::Plus : reg != Region::Zero) {
                        deterministic = false;
                    }
                }
                if (!deterministic) {
                    continue;
                }
                const double s = pl.corner_row, tt = pl.corner_col;
                if (bell_touch) {
                    c.append_detector(pl.basis, {ra[i], rb[i]}, {1, 2, s, tt});
                } else {
                    c.append_detector(pl.basis, {ra[i]}, {1, 0, s, tt});
                    c.append_detector(pl.basis, {rb[i]}, {1, 1, s, tt});
                }
            }
        } else {
            const auto &qa = pa.rounds[size_t(t) - 2];
            const auto &qb = pb.rounds[size_t(t) - 2];
            for (size_t i = 0; i < np; ++i) {
                const Plaquette &pl = out.layout.plaquettes[i];
                const double s = pl.corner_row, tt = pl.corner_col;
                c.append_detector(pl.basis, {qa[i], ra[i]}, {double(t), 0, s, tt});
                c.append_detector(pl.basis, {qb[i], rb[i]}, {double(t), 1, s, tt});
            }
        }
    }

    // Joint logicals of the projected Bell pair: X on the left column of both
    // patches, Z on the top row. Both sit inside Bell/|+> resp. Bell/|0>
    // regions, so both are deterministically +1 without noise.
    std::vector<uint32_t> xx_targets, zz_targets;
    for (int r = 0; r < ds; ++r) {
        xx_targets.push_back(pa.data_ids[size_t(out.layout.data_index(r, 0))]);
    }
    for (int r = 0; r < ds; ++r) {
        xx_targets.push_back(pb.data_ids[size_t(out.layout.data_index(r, 0))]);
    }
    for (int col = 0; col < ds; ++col) {
        zz_targets.push_back(pa.data_ids[size_t(out.layout.data_index(0, col))]);
    }
    for (int col = 0; col < ds; ++col) {
        zz_targets.push_back(pb.data_ids[size_t(out.layout.data_index(0, col))]);
    }
    Operation &mpp_x = c.append(OpType::MPP, xx_targets);
    mpp_x.pauli = std::string(xx_targets.size(), 'X');
    c.append_observable("xx", {uint32_t(num_records++)});
    Operation &mpp_z = c.append(OpType::MPP, zz_targets);
    mpp_z.pauli = std::string(zz_targets.size(), 'Z');
    c.append_observable("zz", {uint32_t(num_records++)});

    c.validate();
    return out;
}

SurgeryCircuit build_surgery_circuit(const SurgerySpec &spec) {
    const int ds = spec.d_s;
    if (ds < 3 || ds % 2 == 0) {
        throw std::invalid_argument("build_surgery_circuit: d_s must be odd and >= 3");
    }
    const int rounds = spec.rounds > 0 ? spec.rounds : ds;
    const int cols = 2 * ds + 1;
    const int link = ds;

    SurgeryCircuit out;
    out.d_s = ds;
    out.rounds = rounds;
    out.merged = build_rotated_surface_layout(ds, cols);
    const size_t n = out.merged.num_data();
    const size_t np = out.merged.plaquettes.size();

    Patch merged{&out.merged, iota_ids(0, n), iota_ids(uint32_t(n), np), {}};

    // Node assignment: columns left of the seam belong to A, right of it to B,
    // and the seam column alternates row by row so each node anchors half the
    // interface checks.
    auto cell_node = [&](int idx) {
        int col = idx % cols;
        if (col != link) {
            return col < link ? 0 : 1;
        }
        return (idx / cols) % 2 == 0 ? 0 : 1;
    };
    auto plaq_node = [&](const Plaquette &pl) { return pl.corner_col < link ? 0 : 1; };

    std::map<CrossingKey, std::pair<uint32_t, uint32_t>> crossings;
    uint32_t next_q = uint32_t(n + np);
    for (size_t i = 0; i < np; ++i) {
        const Plaquette &pl = out.merged.plaquettes[i];
        for (int k = 0; k < 4; ++k) {
            if (pl.slots[k] >= 0 && cell_node(pl.slots[k]) != plaq_node(pl)) {
                crossings[{0, i, k}] = {next_q, next_q + 1};
                next_q += 2;
            }
        }
    }
    out.crossings_per_round = crossings.size();
    out.bell_pairs = crossings.size() * size_t(rounds);
    if (out.crossings_per_round != size_t(2 * ds - 1)) {
        throw std::logic_error("build_surgery_circuit: unexpected interface gate count");
    }

    // After the seam column is measured out, each node reads its own patch
    // once more without noise. Data qubits are shared with the merged patch;
    // readout ancillas are fresh.
    SurfaceCodeLayout la = build_rotated_surface_layout(ds, ds, 0, 0);
    SurfaceCodeLayout lb = build_rotated_surface_layout(ds, ds, 0, ds + 1);
    Patch fa{&la, {}, {}, {}};
    Patch fb{&lb, {}, {}, {}};
    for (int r = 0; r < ds; ++r) {
        for (int col = 0; col < ds; ++col) {
            fa.data_ids.push_back(uint32_t(out.merged.data_index(r, col)));
            fb.data_ids.push_back(uint32_t(out.merged.data_index(r, ds + 1 + col)));
        }
    }
    fa.anc_ids = iota_ids(next_q, la.plaquettes.size());
    next_q += uint32_t(la.plaquettes.size());
    fb.anc_ids = iota_ids(next_q, lb.plaquettes.size());
    next_q += uint32_t(lb.plaquettes.size());

    Circuit &c = out.circuit;
    c.num_qubits = next_q;

    c.append(OpType::RZ, merged.data_ids);
    if (spec.noise.p > 0) {
        c.append(OpType::FLIPX, merged.data_ids, spec.noise.p);
    }

    size_t num_records = 0;
    std::vector<PendingCorrection> pending;
    RoundContext noisy{&c, &num_records, spec.noise.p, spec.noise.p_bell, spec.noise.idle,
                       &pending, &crossings};

    for (int t = 1; t <= rounds; ++t) {
        emit_round(noisy, {&merged});
        const auto &cur = merged.rounds.back();
        for (size_t i = 0; i < np; ++i) {
            const Plaquette &pl = out.merged.plaquettes[i];
            const double s = pl.corner_row, tt = pl.corner_col;
            if (t == 1) {
                if (pl.basis == 'Z') {
                    c.append_detector('Z', {cur[i]}, {1, s, tt});
                }
            } else {
                c.append_detector(pl.basis, {merged.rounds[size_t(t) - 2][i], cur[i]},
                                  {double(t), s, tt});
            }
        }
    }

    std::vector<uint32_t> link_targets;
    std::vector<uint32_t> link_rec(static_cast<size_t>(ds));
    for (int r = 0; r < ds; ++r) {
        link_targets.push_back(uint32_t(out.merged.data_index(r, link)));
    }
    c.append(OpType::MZ, link_targets, spec.noise.p);
    for (int r = 0; r < ds; ++r) {
        link_rec[size_t(r)] = uint32_t(num_records++);
    }

    RoundContext clean{&c, &num_records, 0, 0, 0, nullptr, nullptr};
    emit_round(clean, {&fa, &fb});

    std::map<std::tuple<int, int, char>, size_t> merged_at;
    for (size_t i = 0; i < np; ++i) {
        const Plaquette &pl = out.merged.plaquettes[i];
        merged_at[{pl.corner_row, pl.corner_col, pl.basis}] = i;
    }
    const auto &mlast = merged.rounds.back();
    for (const Patch *patch : {&fa, &fb}) {
        const auto &final_recs = patch->rounds.back();
        for (size_t i = 0; i < patch->layout->plaquettes.size(); ++i) {
            const Plaquette &pl = patch->layout->plaquettes[i];
            const size_t j = merged_at.at({pl.corner_row, pl.corner_col, pl.basis});
            std::vector<uint32_t> records = {final_recs[i], mlast[j]};
            if (pl.basis == 'Z') {
                // A seam-adjacent Z check shrinks from weight 4 to weight 2 at
                // the split; the two measured seam qubits make up the parity.
                std::vector<uint32_t> own;
                for (uint32_t cell : pl.support) {
                    own.push_back(patch->data_ids[cell]);
                }
                std::sort(own.begin(), own.end());
                for (uint32_t cell : out.merged.plaquettes[j].support) {
                    if (!std::binary_search(own.begin(), own.end(), cell)) {
                        records.push_back(link_rec[cell / uint32_t(cols)]);
                    }
                }
            }
            c.append_detector(pl.basis, records,
                              {double(rounds + 1), double(pl.corner_row), double(pl.corner_col)});
        }
    }

    // The joint XX outcome: the product of the X logicals on the two columns
    // flanking the seam equals the product of the seam-straddling X checks,
    // whose values were fixed in round 1. The joint ZZ outcome folds in the
    // measured seam qubit that completes the merged top-row logical.
    std::vector<uint32_t> xx_targets, zz_targets;
    for (int r = 0; r < ds; ++r) {
        xx_targets.push_back(uint32_t(out.merged.data_index(r, ds - 1)));
    }
    for (int r = 0; r < ds; ++r) {
        xx_targets.push_back(uint32_t(out.merged.data_index(r, ds + 1)));
    }
    for (int col = 0; col < ds; ++col) {
        zz_targets.push_back(uint32_t(out.merged.data_index(0, col)));
    }
    for (int col = 0; col < ds; ++col) {
        zz_targets.push_back(uint32_t(out.merged.data_index(0, ds + 1 + col)));
    }
    std::vector<uint32_t> xx_records;
    for (size_t i = 0; i < np; ++i) {
        const Plaquette &pl = out.merged.plaquettes[i];
        if (pl.basis == 'X' && (pl.corner_col == ds - 1 || pl.corner_col == ds)) {
            xx_records.push_back(merged.rounds[0][i]);
        }
    }
    Operation &mpp_x = c.append(OpType::MPP, xx_targets);
    mpp_x.pauli = std::string(xx_targets.size(), 'X');
    xx_records.push_back(uint32_t(num_records++));
    c.append_observable("xx", xx_records);
    Operation &mpp_z = c.append(OpType::MPP, zz_targets);
    mpp_z.pauli = std::string(zz_targets.size(), 'Z');
    c.append_observable("zz", {uint32_t(num_records++), link_rec[0]});

    fold_pending_corrections(c, pending);
    c.validate();
    return out;
}

}  // namespace bellsim
