#include "bellsim/experiment.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "bellsim/error_model.h"
#include "bellsim/sampler.h"

namespace bellsim {

namespace {
constexpr size_t kSlice = 1024;
}

CampaignResult run_decode_campaign(const Circuit &circuit, size_t shots, uint64_t seed,
                                   int workers) {
    if (workers < 1) throw std::invalid_argument("need at least one worker");
    ChannelModel model = extract_channel_model(circuit);
    DetectorErrorModel dem = collapse_to_dem(model, circuit);
    GapDecoder decoder(dem);

    CampaignResult res;
    res.shots.resize(shots);

    std::atomic<size_t> next{0};
    std::mutex fail_mutex;
    std::exception_ptr failure;
    auto drain = [&]() {
        ShotBatch batch(kSlice, dem.num_detectors, dem.num_observables);
        for (;;) {
            size_t first = next.fetch_add(kSlice);
            if (first >= shots) return;
            size_t count = std::min(kSlice, shots - first);
            // The sampler toggles symptoms into the rows, so a reused batch
            // must start clean.
            batch.det_bits.assign(batch.det_bits.size(), 0);
            batch.obs_bits.assign(batch.obs_bits.size(), 0);
            sample_channel_model_range(model, seed, first, count, batch, 0);
            for (size_t i = 0; i < count; ++i) {
                ShotDecode d = decoder.decode(batch, i);
                ShotOutcome &out = res.shots[first + i];
                out.gap_x = d.gap_x;
                out.gap_z = d.gap_z;
                out.gap = d.gap;
                out.pred_xx = static_cast<uint8_t>(d.pred_xx);
                out.pred_zz = static_cast<uint8_t>(d.pred_zz);
                out.true_xx = batch.observable(i, 0);
                out.true_zz = batch.observable(i, 1);
            }
        }
    };
    auto guarded = [&]() {
        try {
            drain();
        } catch (...) {
            std::lock_guard<std::mutex> lock(fail_mutex);
            if (!failure) failure = std::current_exception();
        }
    };

    if (workers == 1) {
        drain();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(guarded);
        for (auto &t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    }

    for (const ShotOutcome &s : res.shots) {
        bool ex = s.pred_xx != s.true_xx, ez = s.pred_zz != s.true_zz;
        res.errors_xx += ex;
        res.errors_zz += ez;
        res.errors_any += ex || ez;
    }
    return res;
}

PostselectionPoint postselect(const CampaignResult &res, int64_t threshold) {
    PostselectionPoint pt;
    pt.threshold = threshold;
    for (const ShotOutcome &s : res.shots) {
        if (s.gap < threshold) continue;
        pt.kept++;
        pt.errors += (s.pred_xx != s.true_xx) || (s.pred_zz != s.true_zz);
    }
    pt.acceptance =
        res.shots.empty() ? 0.0 : static_cast<double>(pt.kept) / static_cast<double>(res.shots.size());
    if (pt.kept > 0) {
        pt.p_l = static_cast<double>(pt.errors) / static_cast<double>(pt.kept);
        pt.std_err = std::sqrt(pt.p_l * (1 - pt.p_l) / static_cast<double>(pt.kept));
    }
    return pt;
}

std::vector<PostselectionPoint> postselection_curve(const CampaignResult &res,
                                                    const std::vector<int64_t> &thresholds) {
    std::vector<PostselectionPoint> pts;
    pts.reserve(thresholds.size());
    for (int64_t t : thresholds) pts.push_back(postselect(res, t));
    return pts;
}

int64_t gap_quantile(const CampaignResult &res, double discard) {
    if (discard < 0 || discard >= 1) throw std::invalid_argument("discard fraction must be in [0, 1)");
    if (res.shots.empty()) throw std::invalid_argument("no shots");
    std::vector<int64_t> gaps;
    gaps.reserve(res.shots.size());
    for (const ShotOutcome &s : res.shots) gaps.push_back(s.gap);
    std::sort(gaps.begin(), gaps.end());
    size_t idx = static_cast<size_t>(discard * static_cast<double>(gaps.size()));
    return gaps[std::min(idx, gaps.size() - 1)];
}

std::string campaign_csv(const CampaignResult &res) {
    std::string out = "shot,gap_x,gap_z,gap,pred_xx,pred_zz,true_xx,true_zz\n";
    for (size_t i = 0; i < res.shots.size(); ++i) {
        const ShotOutcome &s = res.shots[i];
        out += fmt::format("{},{},{},{},{},{},{},{}\n", i, s.gap_x, s.gap_z, s.gap, s.pred_xx,
                           s.pred_zz, s.true_xx, s.true_zz);
    }
    return out;
}

std::string postselection_csv(const std::vector<PostselectionPoint> &points) {
    std::string out = "threshold,kept,errors,acceptance,p_l,std_err\n";
    for (const auto &p : points) {
        out += fmt::format("{},{},{},{:.10g},{:.10g},{:.10g}\n", p.threshold, p.kept, p.errors,
                           p.acceptance, p.p_l, p.std_err);
    }
    return out;
}

std::vector<CurveCrossing> estimate_curve_crossings(const std::vector<SurgerySample> &points) {
    std::map<int, std::map<double, double>> curves;
    for (const auto &s : points) {
        if (s.p_bell <= 0 || s.p_out <= 0) throw std::invalid_argument("need positive rates");
        curves[s.d_s][s.p_bell] = s.p_out;
    }
    if (curves.size() < 2) throw std::invalid_argument("need at least two distances");
    const auto &grid = curves.begin()->second;
    for (const auto &[d, curve] : curves) {
        if (curve.size() != grid.size()) throw std::invalid_argument("curves must share a grid");
        for (const auto &[p, _] : curve)
            if (grid.find(p) == grid.end()) throw std::invalid_argument("curves must share a grid");
    }

    std::vector<CurveCrossing> crossings;
    for (auto it = curves.begin(); std::next(it) != curves.end(); ++it) {
        auto jt = std::next(it);
        double prev_p = 0, prev_diff = 0;
        bool have_prev = false, found = false;
        for (const auto &[p, low_val] : it->second) {
            double diff = std::log(jt->second.at(p)) - std::log(low_val);
            if (have_prev && diff * prev_diff <= 0 && diff != prev_diff) {
                double t = prev_diff / (prev_diff - diff);
                crossings.push_back({it->first, jt->first, prev_p + t * (p - prev_p)});
                found = true;
                break;
            }
            prev_p = p;
            prev_diff = diff;
            have_prev = true;
        }
        if (!found) crossings.push_back({it->first, jt->first, 0});
    }
    return crossings;
}

}  // namespace bellsim
