#include "gazeff/pipeline.hpp"

#include <istream>
#include <ostream>

#include "gazeff/numio.hpp"
#include "gazeff/spatial.hpp"

namespace gazeff {

ScoredVideo score_video(const std::vector<FrameContext>& contexts, const PipelineConfig& cfg) {
    ScoredVideo sv;
    const size_t n = contexts.size();
    sv.resolutions.reserve(n);
    for (const FrameContext& ctx : contexts) sv.resolutions.push_back(resolve_focus(ctx));

    auto [tracks, assignment] =
        build_tracks(sv.resolutions, cfg.iou_min, cfg.gap_tolerance_frames());
    sv.tracks = std::move(tracks);
    sv.assignment = std::move(assignment);
    const int T_max = t_max(sv.tracks);

    std::vector<double> v(n), t(n), s(n), nv(n);
    for (size_t i = 0; i < n; ++i) {
        const int frame = contexts[i].frame;
        v[i] = visual_interaction(contexts[i], sv.resolutions[i]);
        t[i] = temporal_relevance(frame, sv.assignment, sv.tracks, T_max);
        s[i] = spatial_features(contexts[i], sv.resolutions[i]).score;
        nv[i] = novelty(frame, sv.assignment, sv.tracks, cfg.alpha_s, cfg.fps);
    }
    sv.profile = compose(v, t, s, nv);
    if (cfg.smooth_s > 0.0) sv.profile = box_smooth(sv.profile, cfg.smooth_s, cfg.fps);
    return sv;
}

void write_profile_csv(std::ostream& out, const SemanticProfile& p) {
    out << "frame,v,t,s,n,S,S_hat\n";
    for (int i = 0; i < p.n_frames(); ++i) {
        out << format_int(i) << ',' << format_double(p.v[i]) << ',' << format_double(p.t[i])
            << ',' << format_double(p.s[i]) << ',' << format_double(p.n[i]) << ','
            << format_double(p.fused[i]) << ',' << format_double(p.normalized[i]) << '\n';
    }
}

SemanticProfile read_profile_csv(std::istream& in) {
    SemanticProfile p;
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string_view sv = trim(line);
        if (sv.empty()) continue;
        if (!header_seen) {
            if (sv != "frame,v,t,s,n,S,S_hat")
                throw ParseError("expected profile header 'frame,v,t,s,n,S,S_hat'", lineno);
            header_seen = true;
            continue;
        }
        double vals[6];
        long long frame = 0;
        size_t pos = 0;
        auto next_field = [&]() {
            const size_t comma = sv.find(',', pos);
            std::string_view f =
                comma == std::string_view::npos ? sv.substr(pos) : sv.substr(pos, comma - pos);
            pos = comma == std::string_view::npos ? sv.size() : comma + 1;
            return f;
        };
        if (!parse_int(next_field(), frame) ||
            frame != static_cast<long long>(p.fused.size()))
            throw ParseError("profile rows must cover frames 0..n-1 in order", lineno);
        for (double& val : vals)
            if (!parse_double(next_field(), val)) throw ParseError("bad profile value", lineno);
        if (pos < sv.size()) throw ParseError("too many fields", lineno);
        p.v.push_back(vals[0]);
        p.t.push_back(vals[1]);
        p.s.push_back(vals[2]);
        p.n.push_back(vals[3]);
        p.fused.push_back(vals[4]);
        p.normalized.push_back(vals[5]);
    }
    if (p.fused.empty()) throw ParseError("empty profile");
    return p;
}

SelectionResult select_from_profile(const SemanticProfile& profile, const PipelineConfig& cfg,
                                    int jobs) {
    const std::vector<Segment> segments =
        segment(profile, cfg.threshold_percentile, cfg.min_seg_s, cfg.fps);
    SelectParams prm;
    prm.target_speedup = cfg.target_speedup;
    prm.p_max = cfg.p_max;
    prm.lambda_emphasis = cfg.lambda_emphasis;
    prm.gamma_semantic = cfg.gamma_semantic;
    prm.jobs = jobs;
    return select_frames(segments, profile.normalized, prm);
}

}  // namespace gazeff
