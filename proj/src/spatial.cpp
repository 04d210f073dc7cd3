#include "gazeff/spatial.hpp"

#include <cmath>

namespace gazeff {

double relative_area(const BBox& bbox, int frame_w, int frame_h) {
    const double frame_area = static_cast<double>(frame_w) * static_cast<double>(frame_h);
    if (frame_area <= 0.0) throw ConfigError("frame area must be positive");
    return bbox.area() / frame_area;
}

double centrality(const BBox& bbox, int frame_w, int frame_h) {
    const double dx = bbox.cx() / frame_w - 0.5;
    const double dy = bbox.cy() / frame_h - 0.5;
    return 1.0 / (1.0 + std::sqrt(dx * dx + dy * dy));
}

double focus_alignment(const GazeSample& gaze, const BBox& bbox, int frame_w) {
    const double dx = gaze.x / frame_w - bbox.cx() / frame_w;
    return 1.0 / (1.0 + std::abs(dx));
}

double spatial_score(const SpatialFeatures& f) {
    return f.confidence * (f.relative_area + f.centrality + f.focus_alignment);
}

SpatialFeatures spatial_features(const FrameContext& ctx, const FocusResolution& res) {
    SpatialFeatures f;
    if (!res.focused.has_value()) return f;
    const Detection& det = *res.focused;
    f.relative_area = relative_area(det.bbox, ctx.width, ctx.height);
    f.centrality = centrality(det.bbox, ctx.width, ctx.height);
    f.focus_alignment = focus_alignment(ctx.gaze, det.bbox, ctx.width);
    f.confidence = det.confidence;
    f.score = spatial_score(f);
    return f;
}

}  // namespace gazeff
