#pragma once

#include <iosfwd>

#include "gazeff/attention.hpp"
#include "gazeff/config.hpp"
#include "gazeff/profile.hpp"
#include "gazeff/select.hpp"
#include "gazeff/tracks.hpp"

namespace gazeff {

struct ScoredVideo {
    std::vector<FocusResolution> resolutions;
    std::vector<FocusTrack> tracks;
    TrackAssignment assignment;
    SemanticProfile profile;
};

// Runs the four scoring channels over aligned frame contexts.
ScoredVideo score_video(const std::vector<FrameContext>& contexts, const PipelineConfig& cfg);

// Per-frame rows "frame,v,t,s,n,S,S_hat". Values round-trip exactly.
void write_profile_csv(std::ostream& out, const SemanticProfile& profile);
SemanticProfile read_profile_csv(std::istream& in);

// Segmentation plus rate allocation plus per-segment sampling.
SelectionResult select_from_profile(const SemanticProfile& profile, const PipelineConfig& cfg,
                                    int jobs = 1);

}  // namespace gazeff
