#include "bellsim/compare.h"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "bellsim/cost.h"

namespace bellsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ProtocolChoice blank(std::string name, double R) {
    ProtocolChoice c;
    c.protocol = std::move(name);
    c.R = R;
    c.v_buffer = c.v_factory = c.v_total = kInf;
    c.p_out = kInf;
    c.inverse_yield = kInf;
    return c;
}

ProtocolChoice best_boosting(const CompareConfig &cfg, double R) {
    ProtocolChoice best = blank("boosting", R);
    for (const auto &[discard, model] : cfg.boosting_models) {
        for (int d_bell : cfg.d_bell_grid) {
            double p_l = model(cfg.p_bell, d_bell);
            if (p_l > cfg.target_p_l) continue;
            CostReport rep = llv_boosting(d_bell, cfg.d_s, R, 1 - discard);
            if (rep.v_total >= best.v_total) continue;
            best.feasible = true;
            best.d_bell = d_bell;
            best.discard = discard;
            best.q0 = 1 - discard;
            best.d_s = cfg.d_s;
            best.p_out = p_l;
            best.inverse_yield = rep.inverse_yield;
            best.v_buffer = rep.v_buffer;
            best.v_factory = rep.v_factory;
            best.v_total = rep.v_total;
        }
    }
    return best;
}

ProtocolChoice best_boosted_distillation(const CompareConfig &cfg, double R) {
    ProtocolChoice best = blank("boosting+distillation", R);
    for (const auto &[discard, model] : cfg.boosting_models) {
        for (int d_bell : cfg.d_bell_grid) {
            double p_mid = model(cfg.p_bell, d_bell);
            CostReport stage = llv_boosting(d_bell, cfg.d_s, R, 1 - discard);
            for (int m : cfg.m_grid) {
                double p_out = 0.69 * std::pow(m, 1.36) * p_mid * p_mid;
                if (p_out > cfg.target_p_l) continue;
                double n = 2.0 * m, k = 2.0 * m - 2.0;
                double q_d = std::pow(1 - p_mid, n);  // leading acceptance
                double pipe = pipelined_volume(2 * m, 2 * m - 2, 1, cfg.d_s);
                double denom = q_d * k;
                double v_buffer = n * stage.v_buffer / denom;
                double v_factory = (n * stage.v_factory + pipe) / denom;
                if (v_buffer + v_factory >= best.v_total) continue;
                best.feasible = true;
                best.d_bell = d_bell;
                best.discard = discard;
                best.q0 = 1 - discard;
                best.m = m;
                best.d_s = cfg.d_s;
                best.p_out = p_out;
                best.inverse_yield = n * stage.inverse_yield / denom;
                best.v_buffer = v_buffer;
                best.v_factory = v_factory;
                best.v_total = v_buffer + v_factory;
            }
        }
    }
    return best;
}

ProtocolChoice best_surgery(const CompareConfig &cfg, double R) {
    ProtocolChoice best = blank("surgery", R);
    for (int d_s = 3; d_s <= 61; d_s += 2) {
        double p_out = cfg.surgery(cfg.p_bell, d_s);
        if (p_out > cfg.target_p_l) continue;
        CostReport rep = llv_surgery(d_s, R);
        if (rep.v_total >= best.v_total) continue;
        best.feasible = true;
        best.d_s = d_s;
        best.p_out = p_out;
        best.inverse_yield = rep.inverse_yield;
        best.v_buffer = rep.v_buffer;
        best.v_factory = rep.v_factory;
        best.v_total = rep.v_total;
    }
    return best;
}

ProtocolChoice concat_choice(const CompareConfig &cfg, double R) {
    ProtocolChoice c = blank("concat", R);
    ConcatResult res = evaluate_concat_sequence(cfg.concat_stages, R);
    c.feasible = res.p_out <= cfg.target_p_l;
    c.p_out = res.p_out;
    c.inverse_yield = res.inverse_yield;
    c.v_buffer = res.v_buffer;
    c.v_factory = res.v_factory;
    c.v_total = res.v_total;
    return c;
}

}  // namespace

std::vector<std::pair<double, BoostingModel>> default_boosting_ladder() {
    return {
        {0.00, {0.5, 0.4, 0.12}},
        {0.10, {0.5, 0.6, 0.12}},
        {0.35, {0.5, 0.9, 0.12}},
        {0.50, {0.5, 1.2, 0.12}},
    };
}

std::vector<ConcatStage> default_concat_stages(int d_s) {
    double patch = d_s * (2.0 * d_s * d_s - 1.0);  // one patch alive for d_s rounds
    double cnot = 3 * patch;                       // control, target, routing
    return {
        {1, 1, 0.50, patch, 0},
        {3, 1, 0.75, 2 * cnot, 0},
        {2, 1, 0.85, cnot, 0},
        {2, 1, 0.85, cnot, 0},
        {6, 4, 0.90, pipelined_volume(6, 4, 1, d_s), 1e-12},
    };
}

std::vector<double> default_r_grid() {
    std::vector<double> grid;
    for (int e = -8; e <= 4; ++e) grid.push_back(std::pow(10.0, e / 2.0));
    return grid;
}

std::vector<ProtocolChoice> compare_protocols(const CompareConfig &config) {
    if (config.p_bell <= 0 || config.p_bell >= 1) throw std::invalid_argument("p_bell out of range");
    if (config.target_p_l <= 0) throw std::invalid_argument("target error rate must be positive");
    if (config.r_grid.empty()) throw std::invalid_argument("empty throughput grid");
    std::vector<ProtocolChoice> rows;
    for (double R : config.r_grid) {
        if (R <= 0) throw std::invalid_argument("throughputs must be positive");
        rows.push_back(best_boosting(config, R));
        rows.push_back(best_boosted_distillation(config, R));
        rows.push_back(best_surgery(config, R));
        rows.push_back(concat_choice(config, R));
    }
    return rows;
}

std::string crossover_csv(const std::vector<ProtocolChoice> &choices) {
    std::string out = "protocol,R,d_bell,threshold,q0,inverse_yield,v_buffer,v_factory,v_total\n";
    for (const auto &c : choices) {
        out += fmt::format("{},{:.10g},{},{:.10g},{:.10g},{:.10g},{:.10g},{:.10g},{:.10g}\n",
                           c.protocol, c.R, c.d_bell, c.discard, c.q0, c.inverse_yield, c.v_buffer,
                           c.v_factory, c.v_total);
    }
    return out;
}

}  // namespace bellsim
