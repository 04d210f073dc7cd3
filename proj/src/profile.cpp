#include "gazeff/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gazeff {

namespace {

std::vector<double> max_normalize(const std::vector<double>& s) {
    double m = 0.0;
    for (double x : s) m = std::max(m, x);
    std::vector<double> out(s.size(), 0.0);
    if (m > 0.0)
        for (size_t i = 0; i < s.size(); ++i) out[i] = s[i] / m;
    return out;
}

double mean_over(const std::vector<double>& vals, int start, int end) {
    double sum = 0.0;
    for (int i = start; i <= end; ++i) sum += vals[i];
    return sum / static_cast<double>(end - start + 1);
}

}  // namespace

const char* to_string(SegmentLabel l) {
    return l == SegmentLabel::Relevant ? "relevant" : "nonrelevant";
}

SemanticProfile compose(const std::vector<double>& v, const std::vector<double>& t,
                        const std::vector<double>& s, const std::vector<double>& n) {
    const size_t len = v.size();
    if (t.size() != len || s.size() != len || n.size() != len)
        throw std::invalid_argument("channel length mismatch");
    SemanticProfile p;
    p.v = v;
    p.t = t;
    p.s = s;
    p.n = n;
    p.fused.resize(len);
    for (size_t i = 0; i < len; ++i) p.fused[i] = v[i] * t[i] * s[i] * n[i];
    p.normalized = max_normalize(p.fused);
    return p;
}

SemanticProfile box_smooth(const SemanticProfile& profile, double smooth_s, double fps) {
    if (smooth_s < 0.0) throw ConfigError("smooth_s must be >= 0");
    if (!(fps > 0.0)) throw ConfigError("fps must be positive");
    const int width = static_cast<int>(std::lround(smooth_s * fps));
    if (width <= 1) return profile;

    SemanticProfile out = profile;
    const int n = profile.n_frames();
    const int radius = width / 2;
    for (int i = 0; i < n; ++i) {
        const int lo = std::max(0, i - radius);
        const int hi = std::min(n - 1, i + radius);
        out.fused[i] = mean_over(profile.fused, lo, hi);
    }
    out.normalized = max_normalize(out.fused);
    return out;
}

double percentile(std::vector<double> values, double pct) {
    if (values.empty()) throw std::invalid_argument("percentile of empty set");
    if (!(pct > 0.0 && pct < 100.0)) throw ConfigError("percentile must be in (0,100)");
    std::sort(values.begin(), values.end());
    const double rank = pct / 100.0 * static_cast<double>(values.size() - 1);
    const size_t lo = static_cast<size_t>(rank);
    if (lo + 1 >= values.size()) return values.back();
    const double frac = rank - static_cast<double>(lo);
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

std::vector<Segment> segment(const SemanticProfile& profile, double threshold_percentile,
                             double min_seg_s, double fps) {
    const int n = profile.n_frames();
    if (n == 0) throw std::invalid_argument("cannot segment an empty profile");
    if (!(min_seg_s > 0.0)) throw ConfigError("min_seg_s must be positive");
    if (!(fps > 0.0)) throw ConfigError("fps must be positive");

    const std::vector<double>& score = profile.normalized;
    std::vector<double> nonzero;
    for (double x : score)
        if (x > 0.0) nonzero.push_back(x);

    std::vector<bool> relevant(n, false);
    if (!nonzero.empty()) {
        const double thr = percentile(std::move(nonzero), threshold_percentile);
        for (int i = 0; i < n; ++i) relevant[i] = score[i] >= thr;
    }

    auto runs_from_labels = [&]() {
        std::vector<Segment> runs;
        int start = 0;
        for (int i = 1; i <= n; ++i) {
            if (i == n || relevant[i] != relevant[start]) {
                Segment seg;
                seg.start_frame = start;
                seg.end_frame = i - 1;
                seg.label = relevant[start] ? SegmentLabel::Relevant : SegmentLabel::NonRelevant;
                seg.mean_score = mean_over(score, start, i - 1);
                runs.push_back(seg);
                start = i;
            }
        }
        return runs;
    };

    std::vector<Segment> runs = runs_from_labels();
    const int min_len = std::max(1, static_cast<int>(std::lround(min_seg_s * fps)));

    // Merge the shortest offending run into the neighbor whose mean score is
    // closer, relabeling and recomputing runs until everything is long enough
    // or a single segment remains. Leftmost run wins a length tie.
    while (runs.size() > 1) {
        int victim = -1;
        for (size_t k = 0; k < runs.size(); ++k) {
            if (runs[k].length() >= min_len) continue;
            if (victim < 0 || runs[k].length() < runs[victim].length()) victim = static_cast<int>(k);
        }
        if (victim < 0) break;

        const Segment& run = runs[victim];
        int into;
        if (victim == 0) {
            into = 1;
        } else if (victim == static_cast<int>(runs.size()) - 1) {
            into = victim - 1;
        } else {
            const double d_prev = std::abs(run.mean_score - runs[victim - 1].mean_score);
            const double d_next = std::abs(run.mean_score - runs[victim + 1].mean_score);
            into = d_prev <= d_next ? victim - 1 : victim + 1;
        }
        const bool new_label = runs[into].label == SegmentLabel::Relevant;
        for (int i = run.start_frame; i <= run.end_frame; ++i) relevant[i] = new_label;
        runs = runs_from_labels();
    }
    return runs;
}

}  // namespace gazeff
