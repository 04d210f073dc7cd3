#include "gazeff/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gazeff/numio.hpp"

namespace gazeff {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> fields;
    size_t pos = 0;
    while (true) {
        size_t comma = line.find(',', pos);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(pos));
            break;
        }
        fields.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return fields;
}

// Strips a trailing '\r' so CRLF files parse the same as LF files.
bool next_line(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

}  // namespace

std::vector<GazeSample> parse_gaze(std::istream& in) {
    std::vector<GazeSample> samples;
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    while (next_line(in, line)) {
        ++lineno;
        std::string_view sv = trim(line);
        if (sv.empty()) continue;
        if (!header_seen) {
            auto fields = split_csv(sv);
            if (fields.size() != 4 || lower(trim(fields[0])) != "frame" ||
                lower(trim(fields[1])) != "x" || lower(trim(fields[2])) != "y" ||
                lower(trim(fields[3])) != "pattern") {
                throw ParseError("expected gaze header 'frame,x,y,pattern'", lineno);
            }
            header_seen = true;
            continue;
        }
        auto fields = split_csv(sv);
        if (fields.size() != 4) throw ParseError("expected 4 fields", lineno);

        GazeSample g;
        long long frame = 0;
        if (!parse_int(trim(fields[0]), frame) || frame < 0)
            throw ParseError("bad frame index '" + std::string(fields[0]) + "'", lineno);
        g.frame = static_cast<int>(frame);

        const std::string pat = lower(trim(fields[3]));
        if (pat == "fixation") g.pattern = GazePattern::Fixation;
        else if (pat == "saccade") g.pattern = GazePattern::Saccade;
        else if (pat == "blink") g.pattern = GazePattern::Blink;
        else throw ParseError("unknown gaze pattern '" + pat + "'", lineno);

        const std::string_view xs = trim(fields[1]);
        const std::string_view ys = trim(fields[2]);
        if (xs.empty() && ys.empty()) {
            if (g.pattern != GazePattern::Blink)
                throw ParseError("missing coordinates on non-blink row", lineno);
            g.has_position = false;
        } else {
            if (!parse_double(xs, g.x) || !parse_double(ys, g.y))
                throw ParseError("bad gaze coordinates", lineno);
            if (!std::isfinite(g.x) || !std::isfinite(g.y))
                throw ParseError("non-finite gaze coordinates", lineno);
            g.has_position = true;
        }
        samples.push_back(g);
    }

    std::stable_sort(samples.begin(), samples.end(),
                     [](const GazeSample& a, const GazeSample& b) { return a.frame < b.frame; });
    for (size_t i = 1; i < samples.size(); ++i) {
        if (samples[i].frame == samples[i - 1].frame)
            throw ParseError("duplicate gaze record for frame " +
                             std::to_string(samples[i].frame));
    }
    return samples;
}

std::vector<GazeSample> parse_gaze(const std::string& text) {
    std::istringstream in(text);
    return parse_gaze(in);
}

void write_gaze_csv(std::ostream& out, const std::vector<GazeSample>& samples) {
    out << "frame,x,y,pattern\n";
    for (const GazeSample& g : samples) {
        out << format_int(g.frame) << ',';
        if (g.has_position) out << format_double(g.x) << ',' << format_double(g.y);
        else out << ',';
        out << ',' << to_string(g.pattern) << '\n';
    }
}

DetectionSet parse_detections(std::istream& in, int frame_width, int frame_height) {
    if (frame_width <= 0 || frame_height <= 0)
        throw ConfigError("frame dimensions must be positive");
    DetectionSet set;
    std::string line;
    int lineno = 0;
    while (next_line(in, line)) {
        ++lineno;
        std::string_view sv = trim(line);
        if (sv.empty()) continue;

        nlohmann::json j;
        try {
            j = nlohmann::json::parse(sv);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("bad JSON: ") + e.what(), lineno);
        }
        if (!j.is_object() || !j.contains("frame") || !j.contains("boxes"))
            throw ParseError("expected object with 'frame' and 'boxes'", lineno);
        if (!j["frame"].is_number_integer() || j["frame"].get<long long>() < 0)
            throw ParseError("bad frame index", lineno);
        const int frame = j["frame"].get<int>();
        if (!j["boxes"].is_array()) throw ParseError("'boxes' must be an array", lineno);

        for (const auto& b : j["boxes"]) {
            if (!b.is_object() || !b.contains("x") || !b.contains("y") || !b.contains("w") ||
                !b.contains("h") || !b.contains("class") || !b.contains("conf"))
                throw ParseError("box needs x,y,w,h,class,conf", lineno);
            Detection d;
            d.frame = frame;
            d.bbox.x = b["x"].get<double>();
            d.bbox.y = b["y"].get<double>();
            d.bbox.w = b["w"].get<double>();
            d.bbox.h = b["h"].get<double>();
            d.class_id = b["class"].get<int>();
            d.confidence = b["conf"].get<double>();
            if (!(d.confidence >= 0.0 && d.confidence <= 1.0))
                throw ParseError("confidence outside [0,1]", lineno);
            if (d.bbox.w <= 0.0 || d.bbox.h <= 0.0) {
                ++set.skipped;
                continue;
            }
            // Clip to the frame rectangle; detectors overflow by a few pixels.
            // Only the overflowing edges move so in-bounds boxes stay bit-exact.
            BBox& box = d.bbox;
            if (box.x < 0.0) {
                box.w += box.x;
                box.x = 0.0;
            }
            if (box.y < 0.0) {
                box.h += box.y;
                box.y = 0.0;
            }
            if (box.x + box.w > frame_width) box.w = frame_width - box.x;
            if (box.y + box.h > frame_height) box.h = frame_height - box.y;
            if (box.w <= 0.0 || box.h <= 0.0) {
                ++set.skipped;
                continue;
            }
            set.by_frame[frame].push_back(d);
        }
    }
    return set;
}

DetectionSet parse_detections(const std::string& text, int frame_width, int frame_height) {
    std::istringstream in(text);
    return parse_detections(in, frame_width, frame_height);
}

void write_detections_jsonl(std::ostream& out, const DetectionSet& set) {
    for (const auto& [frame, dets] : set.by_frame) {
        nlohmann::ordered_json boxes = nlohmann::ordered_json::array();
        for (const Detection& d : dets) {
            boxes.push_back({{"x", d.bbox.x},
                             {"y", d.bbox.y},
                             {"w", d.bbox.w},
                             {"h", d.bbox.h},
                             {"class", d.class_id},
                             {"conf", d.confidence}});
        }
        nlohmann::ordered_json j{{"frame", frame}, {"boxes", std::move(boxes)}};
        out << j.dump() << '\n';
    }
}

std::vector<TaskAnnotation> parse_tasks(std::istream& in) {
    std::vector<TaskAnnotation> tasks;
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    while (next_line(in, line)) {
        ++lineno;
        std::string_view sv = trim(line);
        if (sv.empty()) continue;
        if (!header_seen) {
            auto fields = split_csv(sv);
            if (fields.size() != 3 || lower(trim(fields[0])) != "start" ||
                lower(trim(fields[1])) != "end" || lower(trim(fields[2])) != "label")
                throw ParseError("expected tasks header 'start,end,label'", lineno);
            header_seen = true;
            continue;
        }
        auto fields = split_csv(sv);
        if (fields.size() != 3) throw ParseError("expected 3 fields", lineno);
        long long start = 0, end = 0;
        if (!parse_int(trim(fields[0]), start) || start < 0)
            throw ParseError("bad start frame", lineno);
        if (!parse_int(trim(fields[1]), end)) throw ParseError("bad end frame", lineno);
        if (end < start) throw ParseError("task end before start", lineno);
        TaskAnnotation t;
        t.start_frame = static_cast<int>(start);
        t.end_frame = static_cast<int>(end);
        t.label = std::string(trim(fields[2]));
        tasks.push_back(std::move(t));
    }
    std::stable_sort(tasks.begin(), tasks.end(),
                     [](const TaskAnnotation& a, const TaskAnnotation& b) {
                         return a.start_frame < b.start_frame;
                     });
    return tasks;
}

std::vector<TaskAnnotation> parse_tasks(const std::string& text) {
    std::istringstream in(text);
    return parse_tasks(in);
}

void write_tasks_csv(std::ostream& out, const std::vector<TaskAnnotation>& tasks) {
    out << "start,end,label\n";
    for (const TaskAnnotation& t : tasks)
        out << format_int(t.start_frame) << ',' << format_int(t.end_frame) << ',' << t.label
            << '\n';
}

std::vector<FrameContext> align(const std::vector<GazeSample>& gaze,
                                const DetectionSet& detections,
                                int n_frames, int width, int height) {
    if (n_frames <= 0) throw ConfigError("n_frames must be positive");
    if (width <= 0 || height <= 0) throw ConfigError("frame dimensions must be positive");

    std::vector<FrameContext> ctxs(static_cast<size_t>(n_frames));
    for (int i = 0; i < n_frames; ++i) {
        ctxs[i].frame = i;
        ctxs[i].width = width;
        ctxs[i].height = height;
        ctxs[i].gaze.frame = i;
        ctxs[i].gaze.pattern = GazePattern::Missing;
    }
    for (const GazeSample& g : gaze) {
        if (g.frame >= n_frames)
            throw ParseError("gaze record at frame " + std::to_string(g.frame) +
                             " outside video of " + std::to_string(n_frames) + " frames");
        ctxs[g.frame].gaze = g;
    }
    for (const auto& [frame, dets] : detections.by_frame) {
        if (frame >= n_frames)
            throw ParseError("detection at frame " + std::to_string(frame) +
                             " outside video of " + std::to_string(n_frames) + " frames");
        ctxs[frame].detections = dets;
    }
    return ctxs;
}

}  // namespace gazeff
