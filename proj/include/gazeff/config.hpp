#pragma once

#include <iosfwd>
#include <string>

#include "gazeff/types.hpp"

namespace gazeff {

// Flat key=value configuration. Defaults below; a config file and then CLI
// flags override in that order. Unknown keys are rejected.
struct PipelineConfig {
    double fps = 30.0;
    int width = 640;
    int height = 480;

    double iou_min = 0.3;
    double gap_tolerance_s = 0.5;
    double alpha_s = 5.0;

    double threshold_percentile = 75.0;
    double min_seg_s = 1.0;
    double smooth_s = 0.0;

    double target_speedup = 8.0;
    int p_max = 32;
    double lambda_emphasis = 10.0;
    double gamma_semantic = 0.5;

    void set(const std::string& key, const std::string& value);
    void validate() const;

    int gap_tolerance_frames() const;
};

// Lines of "key = value"; '#' starts a comment; blank lines ignored.
PipelineConfig load_config(std::istream& in, PipelineConfig base = {});
PipelineConfig load_config_file(const std::string& path, PipelineConfig base = {});

}  // namespace gazeff
