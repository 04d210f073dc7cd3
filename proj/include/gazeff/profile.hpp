#pragma once

#include <vector>

#include "gazeff/types.hpp"

namespace gazeff {

struct SemanticProfile {
    std::vector<double> v;
    std::vector<double> t;
    std::vector<double> s;
    std::vector<double> n;
    std::vector<double> fused;      // S, the per-frame channel product
    std::vector<double> normalized; // S_hat = S / max(S), all zero when max is 0

    int n_frames() const { return static_cast<int>(fused.size()); }
};

enum class SegmentLabel { NonRelevant, Relevant };

const char* to_string(SegmentLabel l);

struct Segment {
    int start_frame = 0;
    int end_frame = 0;
    SegmentLabel label = SegmentLabel::NonRelevant;
    double mean_score = 0.0;

    int length() const { return end_frame - start_frame + 1; }
};

// Elementwise product of the four channels, then max-normalization.
SemanticProfile compose(const std::vector<double>& v, const std::vector<double>& t,
                        const std::vector<double>& s, const std::vector<double>& n);

// Centered box filter of the given width in seconds applied to the fused
// score, with renormalization. Width of zero (the default) is the identity.
SemanticProfile box_smooth(const SemanticProfile& profile, double smooth_s, double fps);

// Percentile of sorted values with linear interpolation between ranks.
double percentile(std::vector<double> values, double pct);

// Labels frames Relevant when S_hat is at or above the given percentile of
// the nonzero S_hat values, then merges runs shorter than min_seg_s into the
// neighbor with the closer mean score (ties prefer the preceding neighbor).
// The result tiles [0, n_frames-1].
std::vector<Segment> segment(const SemanticProfile& profile, double threshold_percentile,
                             double min_seg_s, double fps);

}  // namespace gazeff
