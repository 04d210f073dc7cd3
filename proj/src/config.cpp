#include "gazeff/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "gazeff/numio.hpp"

namespace gazeff {

namespace {

double as_double(const std::string& key, const std::string& value) {
    double d = 0.0;
    if (!parse_double(trim(value), d))
        throw ConfigError("config: bad numeric value for '" + key + "': " + value);
    return d;
}

int as_int(const std::string& key, const std::string& value) {
    long long i = 0;
    if (!parse_int(trim(value), i))
        throw ConfigError("config: bad integer value for '" + key + "': " + value);
    return static_cast<int>(i);
}

}  // namespace

void PipelineConfig::set(const std::string& key, const std::string& value) {
    if (key == "fps") fps = as_double(key, value);
    else if (key == "width") width = as_int(key, value);
    else if (key == "height") height = as_int(key, value);
    else if (key == "iou_min") iou_min = as_double(key, value);
    else if (key == "gap_tolerance_s") gap_tolerance_s = as_double(key, value);
    else if (key == "alpha_s") alpha_s = as_double(key, value);
    else if (key == "threshold_percentile") threshold_percentile = as_double(key, value);
    else if (key == "min_seg_s") min_seg_s = as_double(key, value);
    else if (key == "smooth_s") smooth_s = as_double(key, value);
    else if (key == "target_speedup") target_speedup = as_double(key, value);
    else if (key == "p_max") p_max = as_int(key, value);
    else if (key == "lambda_emphasis") lambda_emphasis = as_double(key, value);
    else if (key == "gamma_semantic") gamma_semantic = as_double(key, value);
    else throw ConfigError("config: unknown key '" + key + "'");
}

void PipelineConfig::validate() const {
    if (!(fps > 0.0)) throw ConfigError("config: fps must be positive");
    if (width <= 0 || height <= 0) throw ConfigError("config: frame dims must be positive");
    if (!(iou_min > 0.0 && iou_min <= 1.0)) throw ConfigError("config: iou_min must be in (0,1]");
    if (gap_tolerance_s < 0.0) throw ConfigError("config: gap_tolerance_s must be >= 0");
    if (!(alpha_s > 0.0)) throw ConfigError("config: alpha_s must be positive");
    if (!(threshold_percentile > 0.0 && threshold_percentile < 100.0))
        throw ConfigError("config: threshold_percentile must be in (0,100)");
    if (!(min_seg_s > 0.0)) throw ConfigError("config: min_seg_s must be positive");
    if (smooth_s < 0.0) throw ConfigError("config: smooth_s must be >= 0");
    if (!(target_speedup > 1.0)) throw ConfigError("config: target_speedup must exceed 1");
    if (p_max < static_cast<int>(std::ceil(target_speedup)))
        throw ConfigError("config: p_max must be at least the target speed-up");
    if (lambda_emphasis < 0.0) throw ConfigError("config: lambda_emphasis must be >= 0");
    if (gamma_semantic < 0.0) throw ConfigError("config: gamma_semantic must be >= 0");
}

int PipelineConfig::gap_tolerance_frames() const {
    return static_cast<int>(std::lround(gap_tolerance_s * fps));
}

PipelineConfig load_config(std::istream& in, PipelineConfig base) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string_view sv = trim(line);
        if (sv.empty()) continue;
        const size_t eq = sv.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
        const std::string key(trim(sv.substr(0, eq)));
        const std::string value(trim(sv.substr(eq + 1)));
        base.set(key, value);
    }
    return base;
}

PipelineConfig load_config_file(const std::string& path, PipelineConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    return load_config(in, std::move(base));
}

}  // namespace gazeff
