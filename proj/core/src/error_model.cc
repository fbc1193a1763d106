#include "bellsim/error_model.h"

#include <fmt/format.h>

#include <map>
#include <stdexcept>

namespace bellsim {

namespace {

/// Per-record symptom sets: which detectors/observables reference each record.
std::vector<SparseParity> record_symptoms(const Circuit &circuit, size_t num_records) {
    std::vector<SparseParity> sets(num_records);
    uint32_t det = 0, obs = 0;
    for (const Operation &op : circuit.ops) {
        if (op.type == OpType::DETECTOR) {
            for (uint32_t r : op.records) {
                sets[r].toggle(det);
            }
            det++;
        } else if (op.type == OpType::OBSERVABLE) {
            for (uint32_t r : op.records) {
                sets[r].toggle(kObservableBase + obs);
            }
            obs++;
        }
    }
    return sets;
}

struct SensTracker {
    std::vector<SparseParity> x, z;

    explicit SensTracker(size_t n) : x(n), z(n) {}

    const SparseParity &of(uint32_t q, char pauli, SparseParity &scratch) {
        switch (pauli) {
            case 'X':
                return x[q];
            case 'Z':
                return z[q];
            case 'Y':
                scratch = x[q];
                scratch.xor_with(z[q]);
                return scratch;
            default:
                throw std::logic_error("unknown pauli");
        }
    }

    void clear(uint32_t q) {
        x[q].clear();
        z[q].clear();
    }
};

constexpr char kPaulis[3] = {'X', 'Y', 'Z'};

}  // namespace

ChannelModel extract_channel_model(const Circuit &circuit) {
    circuit.validate();
    ChannelModel model;
    model.num_detectors = circuit.num_detectors();
    model.num_observables = circuit.num_observables();

    const size_t num_records = circuit.num_measurements();
    std::vector<SparseParity> recs = record_symptoms(circuit, num_records);

    std::vector<size_t> rec_before(circuit.ops.size());
    size_t count = 0;
    for (size_t i = 0; i < circuit.ops.size(); ++i) {
        rec_before[i] = count;
        if (circuit.ops[i].type == OpType::MPP) {
            count += 1;
        } else {
            count += op_records_per_target(circuit.ops[i].type) * circuit.ops[i].targets.size();
        }
    }

    SensTracker sens(circuit.num_qubits);
    SparseParity scratch;
    std::vector<NoiseChannel> reversed;

    for (size_t i = circuit.ops.size(); i-- > 0;) {
        const Operation &op = circuit.ops[i];
        const auto &t = op.targets;
        switch (op.type) {
            case OpType::H:
                for (uint32_t q : t) {
                    std::swap(sens.x[q], sens.z[q]);
                }
                break;
            case OpType::S:
                for (uint32_t q : t) {
                    sens.x[q].xor_with(sens.z[q]);
                }
                break;
            case OpType::CNOT:
                for (size_t j = 0; j + 1 < t.size(); j += 2) {
                    sens.x[t[j]].xor_with(sens.x[t[j + 1]]);
                    sens.z[t[j + 1]].xor_with(sens.z[t[j]]);
                }
                break;
            case OpType::CZ:
                for (size_t j = 0; j + 1 < t.size(); j += 2) {
                    sens.x[t[j]].xor_with(sens.z[t[j + 1]]);
                    sens.x[t[j + 1]].xor_with(sens.z[t[j]]);
                }
                break;
            case OpType::RZ:
            case OpType::RX:
            case OpType::BELL:
                for (uint32_t q : t) {
                    sens.clear(q);
                }
                break;
            case OpType::MZ:
            case OpType::MX:
                for (size_t j = t.size(); j-- > 0;) {
                    const uint32_t rec = uint32_t(rec_before[i] + j);
                    if (op.arg > 0) {
                        NoiseChannel ch{i, j, op.arg, {}};
                        ch.cases.push_back({0, 0, true, recs[rec]});
                        reversed.push_back(std::move(ch));
                    }
                    (op.type == OpType::MZ ? sens.x : sens.z)[t[j]].xor_with(recs[rec]);
                }
                break;
            case OpType::MPP: {
                const uint32_t rec = uint32_t(rec_before[i]);
                if (op.arg > 0) {
                    NoiseChannel ch{i, 0, op.arg, {}};
                    ch.cases.push_back({0, 0, true, recs[rec]});
                    reversed.push_back(std::move(ch));
                }
                for (size_t j = 0; j < t.size(); ++j) {
                    if (op.pauli[j] == 'Z' || op.pauli[j] == 'Y') {
                        sens.x[t[j]].xor_with(recs[rec]);
                    }
                    if (op.pauli[j] == 'X' || op.pauli[j] == 'Y') {
                        sens.z[t[j]].xor_with(recs[rec]);
                    }
                }
                break;
            }
            case OpType::FLIPX:
            case OpType::FLIPZ:
                for (size_t j = t.size(); j-- > 0;) {
                    const char pauli = op.type == OpType::FLIPX ? 'X' : 'Z';
                    NoiseChannel ch{i, j, op.arg, {}};
                    ch.cases.push_back({pauli, 0, false, sens.of(t[j], pauli, scratch)});
                    reversed.push_back(std::move(ch));
                }
                break;
            case OpType::DEPOL1:
                for (size_t j = t.size(); j-- > 0;) {
                    NoiseChannel ch{i, j, op.arg, {}};
                    for (char pauli : kPaulis) {
                        ch.cases.push_back({pauli, 0, false, sens.of(t[j], pauli, scratch)});
                    }
                    reversed.push_back(std::move(ch));
                }
                break;
            case OpType::DEPOL2:
                for (size_t j = t.size() / 2; j-- > 0;) {
                    NoiseChannel ch{i, j, op.arg, {}};
                    for (int a = 0; a < 4; ++a) {
                        for (int b = (a == 0 ? 1 : 0); b < 4; ++b) {
                            SparseParity sym;
                            char pa = 0, pb = 0;
                            if (a > 0) {
                                pa = kPaulis[a - 1];
                                sym.xor_with(sens.of(t[2 * j], pa, scratch));
                            }
                            if (b > 0) {
                                pb = kPaulis[b - 1];
                                sym.xor_with(sens.of(t[2 * j + 1], pb, scratch));
                            }
                            ch.cases.push_back({pa, pb, false, std::move(sym)});
                        }
                    }
                    reversed.push_back(std::move(ch));
                }
                break;
            case OpType::TICK:
            case OpType::DETECTOR:
            case OpType::OBSERVABLE:
                break;
        }
    }

    model.channels.assign(reversed.rbegin(), reversed.rend());
    return model;
}

DetectorErrorModel collapse_to_dem(const ChannelModel &channels, const Circuit &circuit) {
    DetectorErrorModel dem;
    dem.num_detectors = channels.num_detectors;
    dem.num_observables = channels.num_observables;
    dem.observable_names = circuit.observable_names();
    for (const Operation &op : circuit.ops) {
        if (op.type == OpType::DETECTOR) {
            dem.detector_basis.push_back(op.basis);
            dem.detector_coords.push_back(op.coords);
        }
    }

    std::map<std::vector<uint32_t>, double> merged;
    for (const NoiseChannel &ch : channels.channels) {
        const double case_p = ch.probability / double(ch.cases.size());
        std::map<std::vector<uint32_t>, double> local;
        for (const ChannelCase &cs : ch.cases) {
            if (!cs.symptoms.empty()) {
                local[cs.symptoms.ids] += case_p;
            }
        }
        for (const auto &[key, p] : local) {
            double &slot = merged[key];
            slot = slot * (1 - p) + p * (1 - slot);
        }
    }

    for (const auto &[key, p] : merged) {
        ErrorMechanism mech;
        mech.probability = p;
        for (uint32_t id : key) {
            if (id >= kObservableBase) {
                mech.observables.push_back(id - kObservableBase);
            } else {
                mech.detectors.push_back(id);
            }
        }
        dem.mechanisms.push_back(std::move(mech));
    }
    return dem;
}

DetectorErrorModel build_detector_error_model(const Circuit &circuit) {
    return collapse_to_dem(extract_channel_model(circuit), circuit);
}

std::string dem_to_text(const DetectorErrorModel &dem) {
    std::string out = fmt::format("dem detectors={} observables={}\n", dem.num_detectors,
                                  dem.num_observables);
    for (const ErrorMechanism &mech : dem.mechanisms) {
        out += fmt::format("error({:.12g})", mech.probability);
        for (uint32_t d : mech.detectors) {
            out += fmt::format(" D{}", d);
        }
        for (uint32_t o : mech.observables) {
            out += fmt::format(" L{}", o);
        }
        out += "\n";
    }
    return out;
}

}  // namespace bellsim
