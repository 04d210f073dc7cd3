#pragma once

#include "gazeff/attention.hpp"
#include "gazeff/types.hpp"

namespace gazeff {

struct SpatialFeatures {
    double relative_area = 0.0;   // a, box area over frame area
    double centrality = 0.0;      // c, inverse distance of box center to frame center
    double focus_alignment = 0.0; // m, inverse horizontal gaze-to-center distance
    double confidence = 0.0;      // d, detector confidence
    double score = 0.0;           // s = d * (a + c + m)
};

double relative_area(const BBox& bbox, int frame_w, int frame_h);

// (1 + ||center_hat - (0.5, 0.5)||)^-1 with the box center in unit-normalized
// coordinates, so the value is resolution independent.
double centrality(const BBox& bbox, int frame_w, int frame_h);

// (1 + |x_hat_gaze - x_hat_center|)^-1; only the horizontal axis counts.
double focus_alignment(const GazeSample& gaze, const BBox& bbox, int frame_w);

// s = d * (a + c + m)
double spatial_score(const SpatialFeatures& features);

// All-zero features (score 0) when the frame has no focused object.
SpatialFeatures spatial_features(const FrameContext& ctx, const FocusResolution& res);

}  // namespace gazeff
