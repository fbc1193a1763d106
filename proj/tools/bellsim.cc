#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "bellsim/builders.h"
#include "bellsim/compare.h"
#include "bellsim/cost.h"
#include "bellsim/css_code.h"
#include "bellsim/distill.h"
#include "bellsim/experiment.h"
#include "bellsim/fit.h"
#include "bellsim/standard_form.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string default_out_dir() {
    const char *env = std::getenv("BELLSIM_OUT");
    return env && *env ? env : ".";
}

void write_file(const fs::path &path, const std::string &content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f << content;
    if (!f) throw std::runtime_error("failed writing " + path.string());
}

std::string read_file(const fs::path &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

uint64_t fnv1a(const std::string &s) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

/// Defaults merged with an optional --config JSON document; flags parsed by
/// CLI11 afterwards override both. Unknown keys in the file are an error.
json load_config(const std::vector<std::string> &args, json defaults) {
    for (size_t i = 0; i + 1 < args.size(); ++i) {
        if (args[i] != "--config") continue;
        json file = json::parse(read_file(args[i + 1]));
        for (auto &[key, value] : file.items()) {
            if (!defaults.contains(key))
                throw std::runtime_error("unknown config field \"" + key + "\"");
            defaults[key] = value;
        }
    }
    return defaults;
}

struct RunContext {
    std::string command;
    json config;
    fs::path out;
    std::vector<std::string> outputs;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void emit(const std::string &name, const std::string &content) {
        write_file(out / name, content);
        outputs.push_back(name);
    }
    void finish(uint64_t seed = 0) {
        double wall_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
        json manifest;
        manifest["command"] = command;
        manifest["config"] = config;
        manifest["config_hash"] = fmt::format("{:016x}", fnv1a(config.dump()));
        manifest["seed"] = seed;
        manifest["version"] = "0.1.0";
        manifest["wall_ms"] = wall_ms;
        manifest["outputs"] = outputs;
        write_file(out / "manifest.json", manifest.dump(2) + "\n");
    }
};

json fit_value_json(const bellsim::FitValue &v) {
    return json{{"value", v.value}, {"lo", v.lo}, {"hi", v.hi}};
}

std::vector<std::vector<double>> read_numeric_csv(const fs::path &path,
                                                  const std::string &expect_header) {
    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line) || line != expect_header)
        throw std::runtime_error(path.string() + ": expected header \"" + expect_header + "\"");
    std::vector<std::vector<double>> rows;
    size_t cols = std::count(expect_header.begin(), expect_header.end(), ',') + 1;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
        if (row.size() != cols) throw std::runtime_error(path.string() + ": ragged row");
        rows.push_back(std::move(row));
    }
    return rows;
}

void run_campaign_command(RunContext &ctx, const bellsim::Circuit &circuit, size_t shots,
                          uint64_t seed, int workers, const std::vector<double> &discard_grid,
                          bool ack_large) {
    if (shots > 1000000000ULL && !ack_large)
        throw std::runtime_error(
            "configured shots exceed 1e9 decoder calls; pass --ack-large to confirm");
    bellsim::CampaignResult res = bellsim::run_decode_campaign(circuit, shots, seed, workers);
    std::vector<int64_t> thresholds;
    for (double d : discard_grid)
        thresholds.push_back(d <= 0 ? 0 : bellsim::gap_quantile(res, d));
    auto curve = bellsim::postselection_curve(res, thresholds);
    ctx.emit("shots.csv", bellsim::campaign_csv(res));
    ctx.emit("postselection.csv", bellsim::postselection_csv(curve));
    ctx.finish(seed);
}

int cmd_boost(const std::vector<std::string> &args) {
    json cfg = load_config(args, json{{"d_bell", 3},
                                      {"d_s", 5},
                                      {"rounds", 0},
                                      {"p", 1e-3},
                                      {"p_bell", 0.01},
                                      {"idle", 0.0},
                                      {"shots", 100000},
                                      {"seed", 1},
                                      {"workers", 1},
                                      {"discard_grid", {0.0, 0.1, 0.25, 0.5, 0.75, 0.9}},
                                      {"ack_large", false},
                                      {"out", default_out_dir()}});
    bellsim::BoostingSpec spec;
    spec.d_bell = cfg["d_bell"];
    spec.d_s = cfg["d_s"];
    spec.rounds = cfg["rounds"];
    spec.noise.p = cfg["p"];
    spec.noise.p_bell = cfg["p_bell"];
    spec.noise.idle = cfg["idle"];
    size_t shots = cfg["shots"];
    uint64_t seed = cfg["seed"];
    int workers = cfg["workers"];
    std::vector<double> grid = cfg["discard_grid"].get<std::vector<double>>();
    bool ack = cfg["ack_large"];
    std::string out = cfg["out"], config_path;

    CLI::App app{"boosted logical Bell pair campaign"};
    app.add_option("--config", config_path);
    app.add_option("--d-bell", spec.d_bell);
    app.add_option("--d-s", spec.d_s);
    app.add_option("--rounds", spec.rounds);
    app.add_option("--p", spec.noise.p);
    app.add_option("--p-bell", spec.noise.p_bell);
    app.add_option("--idle", spec.noise.idle);
    app.add_option("--shots", shots);
    app.add_option("--seed", seed);
    app.add_option("--workers", workers);
    app.add_option("--discard-grid", grid)->delimiter(',');
    app.add_flag("--ack-large", ack);
    app.add_option("--out", out);
    std::vector<std::string> rest(args.rbegin(), args.rend());
    app.parse(rest);

    RunContext ctx{"boost",
                   json{{"d_bell", spec.d_bell},
                        {"d_s", spec.d_s},
                        {"rounds", spec.rounds},
                        {"p", spec.noise.p},
                        {"p_bell", spec.noise.p_bell},
                        {"idle", spec.noise.idle},
                        {"shots", shots},
                        {"seed", seed},
                        {"workers", workers},
                        {"discard_grid", grid},
                        {"ack_large", ack},
                        {"out", out}},
                   out};
    auto built = bellsim::build_boosting_circuit(spec);
    run_campaign_command(ctx, built.circuit, shots, seed, workers, grid, ack);
    return 0;
}

int cmd_surgery(const std::vector<std::string> &args) {
    json cfg = load_config(args, json{{"d_s", 3},
                                      {"rounds", 0},
                                      {"p", 1e-3},
                                      {"p_bell", 0.1},
                                      {"idle", 0.0},
                                      {"shots", 100000},
                                      {"seed", 1},
                                      {"workers", 1},
                                      {"discard_grid", {0.0, 0.1, 0.25, 0.5, 0.75, 0.9}},
                                      {"ack_large", false},
                                      {"out", default_out_dir()}});
    bellsim::SurgerySpec spec;
    spec.d_s = cfg["d_s"];
    spec.rounds = cfg["rounds"];
    spec.noise.p = cfg["p"];
    spec.noise.p_bell = cfg["p_bell"];
    spec.noise.idle = cfg["idle"];
    size_t shots = cfg["shots"];
    uint64_t seed = cfg["seed"];
    int workers = cfg["workers"];
    std::vector<double> grid = cfg["discard_grid"].get<std::vector<double>>();
    bool ack = cfg["ack_large"];
    std::string out = cfg["out"], config_path;

    CLI::App app{"remote lattice surgery campaign"};
    app.add_option("--config", config_path);
    app.add_option("--d-s", spec.d_s);
    app.add_option("--rounds", spec.rounds);
    app.add_option("--p", spec.noise.p);
    app.add_option("--p-bell", spec.noise.p_bell);
    app.add_option("--idle", spec.noise.idle);
    app.add_option("--shots", shots);
    app.add_option("--seed", seed);
    app.add_option("--workers", workers);
    app.add_option("--discard-grid", grid)->delimiter(',');
    app.add_flag("--ack-large", ack);
    app.add_option("--out", out);
    std::vector<std::string> rest(args.rbegin(), args.rend());
    app.parse(rest);

    RunContext ctx{"surgery",
                   json{{"d_s", spec.d_s},
                        {"rounds", spec.rounds},
                        {"p", spec.noise.p},
                        {"p_bell", spec.noise.p_bell},
                        {"idle", spec.noise.idle},
                        {"shots", shots},
                        {"seed", seed},
                        {"workers", workers},
                        {"discard_grid", grid},
                        {"ack_large", ack},
                        {"out", out}},
                   out};
    auto built = bellsim::build_surgery_circuit(spec);
    run_campaign_command(ctx, built.circuit, shots, seed, workers, grid, ack);
    return 0;
}

int cmd_distill(const std::vector<std::string> &args) {
    json cfg = load_config(
        args,
        json{{"m", 3}, {"p_in", 0.01}, {"max_weight", 3}, {"out", default_out_dir()}});
    int m = cfg["m"], max_weight = cfg["max_weight"];
    double p_in = cfg["p_in"];
    std::string out = cfg["out"], config_path;

    CLI::App app{"parity-code distillation analysis"};
    app.add_option("--config", config_path);
    app.add_option("--m", m);
    app.add_option("--p-in", p_in);
    app.add_option("--max-weight", max_weight);
    app.add_option("--out", out);
    std::vector<std::string> rest(args.rbegin(), args.rend());
    app.parse(rest);

    RunContext ctx{"distill",
                   json{{"m", m}, {"p_in", p_in}, {"max_weight", max_weight}, {"out", out}}, out};
    auto perf = bellsim::analyze_parity_distillation(m, p_in, max_weight);
    auto lc = bellsim::synthesize_distillation(
        bellsim::compute_standard_form(bellsim::build_parity_code(static_cast<size_t>(m))));
    auto sched = bellsim::schedule_pipeline(lc);
    json rep;
    rep["n"] = perf.n;
    rep["k"] = perf.k;
    rep["max_weight"] = perf.max_weight;
    rep["leading_weight"] = perf.leading_weight;
    rep["accepted_by_weight"] = perf.accepted_by_weight;
    rep["logical_by_weight"] = perf.logical_by_weight;
    rep["corrupted_pairs_by_weight"] = perf.corrupted_pairs_by_weight;
    rep["success_poly"] = perf.success_poly;
    rep["success_probability"] = perf.success_probability;
    rep["output_error_leading"] = perf.output_error_leading;
    rep["cnots"] = lc.cnots.size();
    rep["schedule_steps"] = sched.steps.size();
    rep["layer_budget"] = sched.layer_budget;
    ctx.emit("distill.json", rep.dump(2) + "\n");
    ctx.finish();
    return 0;
}

int cmd_llv(const std::vector<std::string> &args) {
    json cfg = load_config(args, json{{"d_bell", 3},
                                      {"d_s", 19},
                                      {"R", 1.0},
                                      {"q0", 1.0},
                                      {"surgery_d_s", 3},
                                      {"surgery_R", 10.0},
                                      {"n", 6},
                                      {"k", 4},
                                      {"r", 1},
                                      {"pipeline_d_s", 3},
                                      {"out", default_out_dir()}});
    int d_bell = cfg["d_bell"], d_s = cfg["d_s"], surgery_d_s = cfg["surgery_d_s"];
    int pipeline_d_s = cfg["pipeline_d_s"];
    double R = cfg["R"], q0 = cfg["q0"], surgery_R = cfg["surgery_R"];
    size_t n = cfg["n"], k = cfg["k"], r = cfg["r"];
    std::string out = cfg["out"], config_path;

    CLI::App app{"link-limited volume tables"};
    app.add_option("--config", config_path);
    app.add_option("--d-bell", d_bell);
    app.add_option("--d-s", d_s);
    app.add_option("--R", R);
    app.add_option("--q0", q0);
    app.add_option("--surgery-d-s", surgery_d_s);
    app.add_option("--surgery-R", surgery_R);
    app.add_option("--n", n);
    app.add_option("--k", k);
    app.add_option("--r", r);
    app.add_option("--pipeline-d-s", pipeline_d_s);
    app.add_option("--out", out);
    std::vector<std::string> rest(args.rbegin(), args.rend());
    app.parse(rest);

    RunContext ctx{"llv",
                   json{{"d_bell", d_bell},
                        {"d_s", d_s},
                        {"R", R},
                        {"q0", q0},
                        {"surgery_d_s", surgery_d_s},
                        {"surgery_R", surgery_R},
                        {"n", n},
                        {"k", k},
                        {"r", r},
                        {"pipeline_d_s", pipeline_d_s},
                        {"out", out}},
                   out};
    bellsim::CostReport boost = bellsim::llv_boosting(d_bell, d_s, R, q0);
    bellsim::CostReport surg = bellsim::llv_surgery(surgery_d_s, surgery_R);
    double pipe = bellsim::pipelined_volume(n, k, r, pipeline_d_s);
    std::string csv = "kind,v_buffer,v_factory,v_total,inverse_yield\n";
    csv += fmt::format("boosting,{:.10g},{:.10g},{:.10g},{:.10g}\n", boost.v_buffer,
                       boost.v_factory, boost.v_total, boost.inverse_yield);
    csv += fmt::format("surgery,{:.10g},{:.10g},{:.10g},{:.10g}\n", surg.v_buffer, surg.v_factory,
                       surg.v_total, surg.inverse_yield);
    csv += fmt::format("pipelined,0,{:.10g},{:.10g},0\n", pipe, pipe);
    ctx.emit("llv.csv", csv);
    ctx.finish();
    return 0;
}

int cmd_compare(const std::vector<std::string> &args) {
    json cfg = load_config(args, json{{"p_bell", 0.01},
                                      {"target", 1e-12},
                                      {"d_s", 19},
                                      {"r_grid", bellsim::default_r_grid()},
                                      {"out", default_out_dir()}});
    bellsim::CompareConfig cc;
    cc.p_bell = cfg["p_bell"];
    cc.target_p_l = cfg["target"];
    cc.d_s = cfg["d_s"];
    cc.r_grid = cfg["r_grid"].get<std::vector<double>>();
    std::string out = cfg["out"], config_path;

    CLI::App app{"protocol crossover comparison"};
    app.add_option("--config", config_path);
    app.add_option("--p-bell", cc.p_bell);
    app.add_option("--target", cc.target_p_l);
    app.add_option("--d-s", cc.d_s);
    app.add_option("--r-grid", cc.r_grid)->delimiter(',');
    app.add_option("--out", out);
    std::vector<std::string> rest(args.rbegin(), args.rend());
    app.parse(rest);
    cc.concat_stages = bellsim::default_concat_stages(cc.d_s);

    RunContext ctx{"compare",
                   json{{"p_bell", cc.p_bell},
                        {"target", cc.target_p_l},
                        {"d_s", cc.d_s},
                        {"r_grid", cc.r_grid},
                        {"out", out}},
                   out};
    auto rows = bellsim::compare_protocols(cc);
    ctx.emit("crossover.csv", bellsim::crossover_csv(rows));
    json jrows = json::array();
    for (const auto &c : rows) {
        jrows.push_back(json{{"protocol", c.protocol},
                             {"R", c.R},
                             {"d_bell", c.d_bell},
                             {"discard", c.discard},
                             {"q0", c.q0},
                             {"m", c.m},
                             {"d_s", c.d_s},
                             {"feasible", c.feasible},
                             {"p_out", c.feasible ? json(c.p_out) : json()},
                             {"inverse_yield",
                              std::isfinite(c.inverse_yield) ? json(c.inverse_yield) : json()},
                             {"v_total", std::isfinite(c.v_total) ? json(c.v_total) : json()}});
    }
    ctx.emit("crossover.json", jrows.dump(2) + "\n");
    ctx.finish();
    return 0;
}

int cmd_fit(const std::vector<std::string> &args) {
    json cfg = load_config(
        args, json{{"kind", "boost"}, {"input", ""}, {"out", default_out_dir()}});
    std::string kind = cfg["kind"], input = cfg["input"], out = cfg["out"], config_path;

    CLI::App app{"scaling-law fits"};
    app.add_option("--config", config_path);
    app.add_option("--kind", kind)->check(CLI::IsMember({"boost", "surgery"}));
    app.add_option("--input", input);
    app.add_option("--out", out);
    std::vector<std::string> rest(args.rbegin(), args.rend());
    app.parse(rest);
    if (input.empty()) throw std::runtime_error("fit needs --input samples.csv");

    RunContext ctx{"fit", json{{"kind", kind}, {"input", input}, {"out", out}}, out};
    json rep;
    rep["kind"] = kind;
    if (kind == "boost") {
        std::vector<bellsim::BoostingSample> samples;
        for (const auto &row : read_numeric_csv(input, "p_bell,d_bell,p_l"))
            samples.push_back({row[0], static_cast<int>(row[1]), row[2]});
        bellsim::BoostingFit fit = bellsim::fit_boosting_scaling(samples);
        rep["alpha"] = fit_value_json(fit.alpha);
        rep["gamma"] = fit_value_json(fit.gamma);
        rep["p_bell_th"] = fit_value_json(fit.p_bell_th);
        rep["residual"] = fit.residual;
        rep["points_used"] = fit.points_used;
    } else {
        std::vector<bellsim::SurgerySample> samples;
        for (const auto &row : read_numeric_csv(input, "p_bell,d_s,p_out"))
            samples.push_back({row[0], static_cast<int>(row[1]), row[2]});
        bellsim::SurgeryFit fit = bellsim::fit_surgery_scaling(samples);
        rep["kappa"] = fit_value_json(fit.kappa);
        rep["eta"] = fit_value_json(fit.eta);
        rep["alpha_c"] = fit_value_json(fit.alpha_c);
        rep["residual"] = fit.residual;
        rep["points_used"] = fit.points_used;
    }
    ctx.emit("fit.json", rep.dump(2) + "\n");
    ctx.finish();
    return 0;
}

int cmd_summarize(const std::vector<std::string> &args) {
    json cfg = load_config(args, json{{"inputs", json::array()},
                                      {"mode", "pool"},
                                      {"out", default_out_dir()}});
    std::vector<std::string> inputs = cfg["inputs"].get<std::vector<std::string>>();
    std::string mode = cfg["mode"], out = cfg["out"], config_path;

    CLI::App app{"aggregate result files"};
    app.add_option("--config", config_path);
    app.add_option("--inputs", inputs)->delimiter(',');
    app.add_option("--mode", mode)->check(CLI::IsMember({"pool", "crossing"}));
    app.add_option("--out", out);
    std::vector<std::string> rest(args.rbegin(), args.rend());
    app.parse(rest);
    if (inputs.empty()) throw std::runtime_error("summarize needs --inputs");

    RunContext ctx{"summarize", json{{"inputs", inputs}, {"mode", mode}, {"out", out}}, out};
    if (mode == "pool") {
        // Pool postselection curves over runs: same thresholds, summed counts.
        std::map<int64_t, std::pair<size_t, size_t>> pooled;  // kept, errors
        size_t total_shots = 0;
        for (const auto &file : inputs) {
            size_t file_shots = 0;
            for (const auto &row :
                 read_numeric_csv(file, "threshold,kept,errors,acceptance,p_l,std_err")) {
                auto &[kept, errors] = pooled[static_cast<int64_t>(row[0])];
                kept += static_cast<size_t>(row[1]);
                errors += static_cast<size_t>(row[2]);
                file_shots = std::max(file_shots, static_cast<size_t>(row[1]));
            }
            total_shots += file_shots;
        }
        std::string csv = "threshold,kept,errors,acceptance,p_l,std_err\n";
        for (const auto &[threshold, counts] : pooled) {
            auto [kept, errors] = counts;
            double p = kept ? static_cast<double>(errors) / kept : 0.0;
            double se = kept ? std::sqrt(p * (1 - p) / kept) : 0.0;
            double acc = total_shots ? static_cast<double>(kept) / total_shots : 0.0;
            csv += fmt::format("{},{},{},{:.10g},{:.10g},{:.10g}\n", threshold, kept, errors, acc,
                               p, se);
        }
        ctx.emit("summary.csv", csv);
        json rep;
        rep["mode"] = mode;
        rep["rows"] = pooled.size();
        if (pooled.empty()) rep["status"] = "no data";
        ctx.emit("summary.json", rep.dump(2) + "\n");
    } else {
        std::vector<bellsim::SurgerySample> samples;
        for (const auto &file : inputs)
            for (const auto &row : read_numeric_csv(file, "p_bell,d_s,p_l"))
                samples.push_back({row[0], static_cast<int>(row[1]), row[2]});
        std::string csv = "d_a,d_b,crossing_p_bell\n";
        json rep;
        rep["mode"] = mode;
        if (samples.empty()) {
            rep["rows"] = 0;
            rep["status"] = "no data";
        } else {
            auto crossings = bellsim::estimate_curve_crossings(samples);
            for (const auto &c : crossings)
                csv += fmt::format("{},{},{:.10g}\n", c.d_a, c.d_b, c.p_bell);
            rep["rows"] = crossings.size();
        }
        ctx.emit("crossing.csv", csv);
        ctx.emit("summary.json", rep.dump(2) + "\n");
    }
    ctx.finish();
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        if (args.empty())
            throw std::runtime_error(
                "usage: bellsim <boost|surgery|distill|llv|compare|fit|summarize> [options]");
        std::string command = args.front();
        std::vector<std::string> rest(args.begin() + 1, args.end());
        if (command == "boost") return cmd_boost(rest);
        if (command == "surgery") return cmd_surgery(rest);
        if (command == "distill") return cmd_distill(rest);
        if (command == "llv") return cmd_llv(rest);
        if (command == "compare") return cmd_compare(rest);
        if (command == "fit") return cmd_fit(rest);
        if (command == "summarize") return cmd_summarize(rest);
        throw std::runtime_error("unknown command \"" + command + "\"");
    } catch (const CLI::ParseError &e) {
        json err;
        err["error"] = json{{"type", "cli"}, {"message", e.what()}};
        fprintf(stderr, "%s\n", err.dump().c_str());
        return 1;
    } catch (const std::exception &e) {
        json err;
        err["error"] = json{{"type", "run"}, {"message", e.what()}};
        fprintf(stderr, "%s\n", err.dump().c_str());
        return 1;
    }
}
