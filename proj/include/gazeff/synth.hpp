#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gazeff/ingest.hpp"
#include "gazeff/types.hpp"

namespace gazeff {

// Piecewise-linear box trajectory; the object exists between the first and
// last waypoint frames (inclusive).
struct SynthObject {
    int class_id = 0;
    double confidence = 1.0;
    struct Waypoint {
        int frame = 0;
        BBox box;
    };
    std::vector<Waypoint> waypoints;

    int first_frame() const { return waypoints.front().frame; }
    int last_frame() const { return waypoints.back().frame; }
    bool alive_at(int frame) const { return frame >= first_frame() && frame <= last_frame(); }
    BBox box_at(int frame) const;
};

// A span of planted visual interaction with one object. Exactly
// round(fixation_ratio * length) frames are fixations, so the planted
// fixation fraction holds no matter the noise draws.
struct SynthEpisode {
    int object = 0;
    int start_frame = 0;
    int end_frame = 0;
    std::string label;
    double fixation_ratio = 0.9;
};

struct Scenario {
    std::string name;
    int n_frames = 0;
    double fps = 30.0;
    int width = 640;
    int height = 480;
    std::vector<SynthObject> objects;
    std::vector<SynthEpisode> episodes;
    double blink_rate = 0.0;    // chance a frame becomes a blink
    double saccade_rate = 0.0;  // chance a background frame is a saccade (unused in episodes)

    void validate() const;
};

Scenario parse_scenario(std::istream& in);
Scenario parse_scenario(const std::string& text);

struct SynthDataset {
    std::vector<GazeSample> gaze;
    DetectionSet detections;
    std::vector<TaskAnnotation> tasks;
    std::string truth_json;  // planted tasks plus video metadata
};

// Deterministic: the same scenario and seed always produce the same dataset.
SynthDataset synth_scenario(const Scenario& scenario, std::uint64_t seed);

// Writes gaze.csv, detections.jsonl, tasks.csv and truth.json into dir.
void write_dataset(const SynthDataset& dataset, const std::string& dir);

}  // namespace gazeff
