#include "bellsim/distill.h"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "bellsim/css_code.h"

namespace bellsim {

LogicalDistillationCircuit synthesize_distillation(const StandardFormResult &sf) {
    if (sf.n == 0 || sf.k + sf.r > sf.n) throw std::invalid_argument("malformed standard form");
    LogicalDistillationCircuit c;
    c.n = sf.n;
    c.k = sf.k;
    c.r = sf.r;
    size_t mid = sf.mid();
    for (size_t i = 0; i < sf.r; ++i)
        for (size_t j = 0; j < sf.n; ++j)
            if (j != i && sf.h_x_std.get(i, j))
                c.cnots.push_back({static_cast<uint32_t>(i), static_cast<uint32_t>(j), 1});
    for (size_t i = 0; i < sf.k; ++i)
        for (size_t t = 0; t < mid; ++t)
            if (sf.e_block.get(t, i))
                c.cnots.push_back({static_cast<uint32_t>(sf.n - sf.k + i),
                                   static_cast<uint32_t>(sf.r + t), 2});
    for (size_t i = 0; i < sf.r; ++i) c.x_measured.push_back(static_cast<uint32_t>(i));
    for (size_t t = 0; t < mid; ++t) c.z_measured.push_back(static_cast<uint32_t>(sf.r + t));
    for (size_t i = 0; i < sf.k; ++i) c.outputs.push_back(static_cast<uint32_t>(sf.n - sf.k + i));
    return c;
}

PipelineSchedule schedule_pipeline(const LogicalDistillationCircuit &c) {
    PipelineSchedule s;
    s.n = c.n;
    s.k = c.k;
    s.r = c.r;
    size_t mid = c.n - c.k - c.r;
    std::vector<std::vector<char>> gate(c.n, std::vector<char>(c.n, 0));
    for (const auto &g : c.cnots) gate[g.control][g.target] = 1;

    // The r measured-in-X patches stream across all n-r prepared patches, one
    // slot per step, entering one behind another.
    size_t stationary = c.n - c.r;
    if (c.r > 0 && stationary > 0) {
        for (size_t step = 0; step + 1 < stationary + c.r; ++step) {
            PipelineStep ps;
            for (size_t i = 0; i < c.r; ++i) {
                if (step < i || step - i >= stationary) continue;
                uint32_t q = static_cast<uint32_t>(c.r + (step - i));
                ps.moved.push_back(static_cast<uint32_t>(i));
                if (gate[i][q]) ps.cnots.push_back({static_cast<uint32_t>(i), q});
            }
            if (!ps.moved.empty()) s.steps.push_back(std::move(ps));
        }
    }
    // Then the measured-in-Z patches stream across the k outputs.
    if (mid > 0 && c.k > 0) {
        for (size_t step = 0; step + 1 < c.k + mid; ++step) {
            PipelineStep ps;
            for (size_t t = 0; t < mid; ++t) {
                if (step < t || step - t >= c.k) continue;
                uint32_t target = static_cast<uint32_t>(c.r + t);
                uint32_t control = static_cast<uint32_t>(c.n - c.k + (step - t));
                ps.moved.push_back(target);
                if (gate[control][target]) ps.cnots.push_back({control, target});
            }
            if (!ps.moved.empty()) s.steps.push_back(std::move(ps));
        }
    }
    s.layer_budget.resize(c.n, 0);
    for (uint32_t q : c.outputs) s.layer_budget[q] = c.n - c.k;
    for (uint32_t q : c.x_measured) s.layer_budget[q] = c.n - c.r;
    for (uint32_t q : c.z_measured) s.layer_budget[q] = c.n - 1;
    return s;
}

namespace {

struct Pauli64 {
    uint64_t x = 0;
    uint64_t z = 0;
};

Pauli64 propagate(const LogicalDistillationCircuit &c, Pauli64 p) {
    for (const auto &g : c.cnots) {
        if ((p.x >> g.control) & 1) p.x ^= uint64_t{1} << g.target;
        if ((p.z >> g.target) & 1) p.z ^= uint64_t{1} << g.control;
    }
    return p;
}

}  // namespace

PatternFate propagate_error_pattern(const LogicalDistillationCircuit &c,
                                    const std::vector<std::pair<uint32_t, char>> &pattern) {
    if (c.n > 64) throw std::invalid_argument("pattern propagation supports up to 64 qubits");
    Pauli64 p;
    for (auto [q, letter] : pattern) {
        if (q >= c.n) throw std::invalid_argument("pattern qubit out of range");
        if (letter == 'X' || letter == 'Y') p.x ^= uint64_t{1} << q;
        if (letter == 'Z' || letter == 'Y') p.z ^= uint64_t{1} << q;
        if (letter != 'X' && letter != 'Y' && letter != 'Z')
            throw std::invalid_argument("pattern letters must be X, Y or Z");
    }
    p = propagate(c, p);
    uint64_t xmeas = 0, zmeas = 0, outs = 0;
    for (uint32_t q : c.x_measured) xmeas |= uint64_t{1} << q;
    for (uint32_t q : c.z_measured) zmeas |= uint64_t{1} << q;
    for (uint32_t q : c.outputs) outs |= uint64_t{1} << q;
    PatternFate fate;
    fate.detected = ((p.z & xmeas) != 0) || ((p.x & zmeas) != 0);
    fate.corrupts_output = ((p.x | p.z) & outs) != 0;
    return fate;
}

DistillationPerformance analyze_distillation(const LogicalDistillationCircuit &c, double p_in,
                                             int max_weight) {
    if (c.n == 0 || c.n > 64) throw std::invalid_argument("enumeration supports 1 to 64 qubits");
    if (p_in < 0.0 || p_in >= 1.0) throw std::invalid_argument("input error rate must be in [0, 1)");
    if (max_weight < 1) throw std::invalid_argument("max_weight must be at least 1");

    // Single-letter propagation is enough: conjugation is linear over the
    // pattern, so any pattern's image is the XOR of its letters' images.
    size_t n = c.n;
    std::vector<Pauli64> img_x(n), img_z(n);
    for (size_t q = 0; q < n; ++q) {
        img_x[q] = propagate(c, {uint64_t{1} << q, 0});
        img_z[q] = propagate(c, {0, uint64_t{1} << q});
    }
    uint64_t xmeas = 0, zmeas = 0, outs = 0;
    for (uint32_t q : c.x_measured) xmeas |= uint64_t{1} << q;
    for (uint32_t q : c.z_measured) zmeas |= uint64_t{1} << q;
    for (uint32_t q : c.outputs) outs |= uint64_t{1} << q;

    DistillationPerformance perf;
    perf.n = n;
    perf.k = c.k;
    perf.max_weight = max_weight;
    perf.accepted_by_weight.assign(max_weight + 1, 0);
    perf.logical_by_weight.assign(max_weight + 1, 0);
    perf.corrupted_pairs_by_weight.assign(max_weight + 1, 0);
    perf.accepted_by_weight[0] = 1;

    // Depth-first over qubit subsets, branching into the three letters.
    struct Frame {
        size_t next_qubit;
        int weight;
        Pauli64 p;
    };
    std::vector<Frame> stack{{0, 0, {}}};
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (f.weight > 0) {
            bool detected = ((f.p.z & xmeas) != 0) || ((f.p.x & zmeas) != 0);
            if (!detected) {
                perf.accepted_by_weight[f.weight]++;
                uint64_t hit = (f.p.x | f.p.z) & outs;
                if (hit) perf.logical_by_weight[f.weight]++;
                perf.corrupted_pairs_by_weight[f.weight] += std::popcount(hit);
            }
        }
        if (f.weight == max_weight) continue;
        for (size_t q = f.next_qubit; q < n; ++q) {
            Pauli64 px{f.p.x ^ img_x[q].x, f.p.z ^ img_x[q].z};
            Pauli64 pz{f.p.x ^ img_z[q].x, f.p.z ^ img_z[q].z};
            Pauli64 py{px.x ^ img_z[q].x, px.z ^ img_z[q].z};
            stack.push_back({q + 1, f.weight + 1, px});
            stack.push_back({q + 1, f.weight + 1, py});
            stack.push_back({q + 1, f.weight + 1, pz});
        }
    }

    for (int w = 1; w <= max_weight; ++w)
        if (perf.logical_by_weight[w] > 0) {
            perf.leading_weight = w;
            break;
        }
    if (perf.leading_weight > 0 && c.k > 0)
        perf.output_error_leading =
            static_cast<double>(perf.corrupted_pairs_by_weight[perf.leading_weight]) /
            (static_cast<double>(c.k) * std::pow(3.0, perf.leading_weight));

    perf.success_poly.assign(max_weight + 1, 0.0);
    for (int o = 0; o <= max_weight; ++o) {
        double coef = 0.0;
        for (int w = 0; w <= o; ++w) {
            // Coefficient of p^o in count_w * (p/3)^w (1-p)^(n-w).
            double binom = 1.0;
            for (int i = 0; i < o - w; ++i)
                binom = binom * static_cast<double>(static_cast<long>(n) - w - i) /
                        static_cast<double>(i + 1);
            double sign = ((o - w) % 2 == 0) ? 1.0 : -1.0;
            coef += static_cast<double>(perf.accepted_by_weight[w]) * std::pow(3.0, -w) * sign * binom;
        }
        perf.success_poly[o] = coef;
    }
    perf.success_probability = 0.0;
    for (int w = 0; w <= max_weight; ++w)
        perf.success_probability += static_cast<double>(perf.accepted_by_weight[w]) *
                                    std::pow(p_in / 3.0, w) *
                                    std::pow(1.0 - p_in, static_cast<double>(n - w));
    return perf;
}

DistillationPerformance analyze_parity_distillation(int m, double p_in, int max_weight) {
    if (m < 2 || m > 32) throw std::invalid_argument("parity code size m must be in [2, 32]");
    auto sf = compute_standard_form(build_parity_code(static_cast<size_t>(m)));
    return analyze_distillation(synthesize_distillation(sf), p_in, max_weight);
}

ConcatResult evaluate_concat_sequence(const std::vector<ConcatStage> &stages, double throughput) {
    if (stages.empty()) throw std::invalid_argument("empty distillation sequence");
    if (throughput <= 0.0) throw std::invalid_argument("throughput must be positive");
    ConcatResult res;
    double demand = 1.0;  // pairs needed from the level under consideration
    for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
        if (it->success <= 0.0 || it->success > 1.0 || it->inputs <= 0.0 || it->outputs <= 0.0)
            throw std::invalid_argument("stage rates must be positive with success in (0, 1]");
        double attempts = demand / (it->success * it->outputs);
        res.v_factory += attempts * it->volume;
        demand = attempts * it->inputs;
    }
    res.inverse_yield = demand;
    res.p_out = stages.back().p_out;
    res.v_buffer = demand * demand / throughput;
    res.v_total = res.v_factory + res.v_buffer;
    return res;
}

}  // namespace bellsim
