#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gazeff {

// Thrown on malformed input files; carries a 1-based line number when known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Bad or inconsistent configuration / usage.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class GazePattern { Fixation, Saccade, Blink, Missing };

const char* to_string(GazePattern p);

struct GazeSample {
    int frame = 0;
    double x = 0.0;
    double y = 0.0;
    GazePattern pattern = GazePattern::Missing;
    // Blink and Missing rows carry no coordinates; x,y are 0 then.
    bool has_position = false;
};

// Axis-aligned box, top-left origin, pixel units.
struct BBox {
    double x = 0.0;
    double y = 0.0;
    double w = 0.0;
    double h = 0.0;

    double area() const { return w * h; }
    double cx() const { return x + w / 2.0; }
    double cy() const { return y + h / 2.0; }

    // Closed intervals: points on the edge count as inside.
    bool contains(double px, double py) const {
        return px >= x && px <= x + w && py >= y && py <= y + h;
    }
};

double iou(const BBox& a, const BBox& b);

struct Detection {
    int frame = 0;
    BBox bbox;
    int class_id = 0;
    double confidence = 0.0;
};

struct FrameContext {
    int frame = 0;
    int width = 0;
    int height = 0;
    GazeSample gaze;
    std::vector<Detection> detections;
};

// Inclusive frame span with a ground-truth action label.
struct TaskAnnotation {
    int start_frame = 0;
    int end_frame = 0;
    std::string label;

    int length() const { return end_frame - start_frame + 1; }
};

inline bool spans_overlap(int a_start, int a_end, int b_start, int b_end) {
    return a_start <= b_end && b_start <= a_end;
}

}  // namespace gazeff
