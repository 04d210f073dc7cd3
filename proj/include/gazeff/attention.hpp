#pragma once

#include <optional>

#include "gazeff/types.hpp"

namespace gazeff {

struct FocusResolution {
    int frame = 0;
    // Smallest-area detection whose box contains the gaze point; absent when
    // no box contains it or the eye is closed / untracked.
    std::optional<Detection> focused;
    int candidates_hit = 0;
};

// Area argmin over boxes containing the gaze. Ties: higher confidence, then
// lower class_id, then earlier list position.
FocusResolution resolve_focus(const FrameContext& ctx);

// 1.0 for a fixation on a detected object, 0.5 for a saccade on one,
// 0.0 otherwise (blink, missing record, or gaze outside every box).
double visual_interaction(const FrameContext& ctx, const FocusResolution& res);

}  // namespace gazeff
