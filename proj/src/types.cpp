#include "gazeff/types.hpp"

#include <algorithm>

namespace gazeff {

const char* to_string(GazePattern p) {
    switch (p) {
        case GazePattern::Fixation: return "fixation";
        case GazePattern::Saccade: return "saccade";
        case GazePattern::Blink: return "blink";
        case GazePattern::Missing: return "missing";
    }
    return "missing";
}

double iou(const BBox& a, const BBox& b) {
    const double ix0 = std::max(a.x, b.x);
    const double iy0 = std::max(a.y, b.y);
    const double ix1 = std::min(a.x + a.w, b.x + b.w);
    const double iy1 = std::min(a.y + a.h, b.y + b.h);
    const double iw = ix1 - ix0;
    const double ih = iy1 - iy0;
    if (iw <= 0.0 || ih <= 0.0) return 0.0;
    const double inter = iw * ih;
    const double uni = a.area() + b.area() - inter;
    if (uni <= 0.0) return 0.0;
    return inter / uni;
}

}  // namespace gazeff
