#include "gazeff/synth.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "gazeff/numio.hpp"

namespace gazeff {

namespace {

// Uniform in [0,1) from the top 53 bits; avoids the implementation-defined
// std::uniform_real_distribution so outputs are reproducible everywhere.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

BBox SynthObject::box_at(int frame) const {
    if (frame <= waypoints.front().frame) return waypoints.front().box;
    if (frame >= waypoints.back().frame) return waypoints.back().box;
    for (size_t i = 1; i < waypoints.size(); ++i) {
        if (frame > waypoints[i].frame) continue;
        const Waypoint& a = waypoints[i - 1];
        const Waypoint& b = waypoints[i];
        if (b.frame == a.frame) return b.box;
        const double f = static_cast<double>(frame - a.frame) /
                         static_cast<double>(b.frame - a.frame);
        return BBox{a.box.x + f * (b.box.x - a.box.x), a.box.y + f * (b.box.y - a.box.y),
                    a.box.w + f * (b.box.w - a.box.w), a.box.h + f * (b.box.h - a.box.h)};
    }
    return waypoints.back().box;
}

void Scenario::validate() const {
    if (n_frames <= 0) throw ParseError("scenario: n_frames must be positive");
    if (!(fps > 0.0)) throw ParseError("scenario: fps must be positive");
    if (width <= 0 || height <= 0) throw ParseError("scenario: frame dims must be positive");
    for (size_t i = 0; i < objects.size(); ++i) {
        const SynthObject& o = objects[i];
        if (o.waypoints.empty())
            throw ParseError("scenario: object " + std::to_string(i) + " has no waypoints");
        if (!(o.confidence >= 0.0 && o.confidence <= 1.0))
            throw ParseError("scenario: object confidence outside [0,1]");
        int prev = -1;
        for (const SynthObject::Waypoint& wp : o.waypoints) {
            if (wp.frame < 0 || wp.frame >= n_frames)
                throw ParseError("scenario: waypoint outside video");
            if (wp.frame <= prev) throw ParseError("scenario: waypoints must be increasing");
            prev = wp.frame;
            if (wp.box.w <= 0.0 || wp.box.h <= 0.0 || wp.box.x < 0.0 || wp.box.y < 0.0 ||
                wp.box.x + wp.box.w > width || wp.box.y + wp.box.h > height)
                throw ParseError("scenario: waypoint box outside frame");
        }
    }
    std::vector<std::pair<int, int>> spans;
    for (const SynthEpisode& e : episodes) {
        if (e.object < 0 || e.object >= static_cast<int>(objects.size()))
            throw ParseError("scenario: episode references unknown object");
        if (e.start_frame < 0 || e.end_frame >= n_frames || e.start_frame > e.end_frame)
            throw ParseError("scenario: episode outside video");
        if (!objects[e.object].alive_at(e.start_frame) ||
            !objects[e.object].alive_at(e.end_frame))
            throw ParseError("scenario: episode outside its object's lifetime");
        if (!(e.fixation_ratio >= 0.0 && e.fixation_ratio <= 1.0))
            throw ParseError("scenario: fixation_ratio outside [0,1]");
        spans.emplace_back(e.start_frame, e.end_frame);
    }
    std::sort(spans.begin(), spans.end());
    for (size_t i = 1; i < spans.size(); ++i)
        if (spans[i].first <= spans[i - 1].second)
            throw ParseError("scenario: episodes overlap");
    if (!(blink_rate >= 0.0 && blink_rate <= 1.0) ||
        !(saccade_rate >= 0.0 && saccade_rate <= 1.0))
        throw ParseError("scenario: noise rates outside [0,1]");
}

Scenario parse_scenario(std::istream& in) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("scenario: bad JSON: ") + e.what());
    }
    Scenario sc;
    try {
        sc.name = j.value("name", std::string());
        sc.n_frames = j.at("n_frames").get<int>();
        sc.fps = j.value("fps", 30.0);
        sc.width = j.at("width").get<int>();
        sc.height = j.at("height").get<int>();
        for (const auto& jo : j.value("objects", nlohmann::json::array())) {
            SynthObject o;
            o.class_id = jo.at("class").get<int>();
            o.confidence = jo.value("conf", 1.0);
            for (const auto& jw : jo.at("waypoints")) {
                if (!jw.is_array() || jw.size() != 5)
                    throw ParseError("scenario: waypoint must be [frame,x,y,w,h]");
                SynthObject::Waypoint wp;
                wp.frame = jw[0].get<int>();
                wp.box = BBox{jw[1].get<double>(), jw[2].get<double>(), jw[3].get<double>(),
                              jw[4].get<double>()};
                o.waypoints.push_back(wp);
            }
            sc.objects.push_back(std::move(o));
        }
        for (const auto& je : j.value("episodes", nlohmann::json::array())) {
            SynthEpisode e;
            e.object = je.at("object").get<int>();
            e.start_frame = je.at("start").get<int>();
            e.end_frame = je.at("end").get<int>();
            e.label = je.at("label").get<std::string>();
            e.fixation_ratio = je.value("fixation_ratio", 0.9);
            sc.episodes.push_back(std::move(e));
        }
        sc.blink_rate = j.value("blink_rate", 0.0);
        sc.saccade_rate = j.value("saccade_rate", 0.0);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("scenario: ") + e.what());
    }
    sc.validate();
    return sc;
}

Scenario parse_scenario(const std::string& text) {
    std::istringstream in(text);
    return parse_scenario(in);
}

SynthDataset synth_scenario(const Scenario& sc, std::uint64_t seed) {
    sc.validate();
    std::mt19937_64 rng(seed);
    SynthDataset ds;

    // Episode index per frame, -1 for background.
    std::vector<int> episode_of(sc.n_frames, -1);
    for (size_t e = 0; e < sc.episodes.size(); ++e)
        for (int f = sc.episodes[e].start_frame; f <= sc.episodes[e].end_frame; ++f)
            episode_of[f] = static_cast<int>(e);

    // Plant the exact fixation count per episode, positions shuffled.
    std::vector<std::vector<bool>> fixation_plan(sc.episodes.size());
    for (size_t e = 0; e < sc.episodes.size(); ++e) {
        const SynthEpisode& ep = sc.episodes[e];
        const int len = ep.end_frame - ep.start_frame + 1;
        const int n_fix = static_cast<int>(std::lround(ep.fixation_ratio * len));
        std::vector<bool>& plan = fixation_plan[e];
        plan.assign(len, false);
        std::fill(plan.begin(), plan.begin() + n_fix, true);
        for (int i = len - 1; i > 0; --i) {
            const int k = static_cast<int>(uniform01(rng) * (i + 1));
            std::swap(plan[i], plan[k]);
        }
    }

    for (int f = 0; f < sc.n_frames; ++f) {
        std::vector<BBox> live;
        for (size_t o = 0; o < sc.objects.size(); ++o) {
            if (!sc.objects[o].alive_at(f)) continue;
            const BBox box = sc.objects[o].box_at(f);
            live.push_back(box);
            Detection d;
            d.frame = f;
            d.bbox = box;
            d.class_id = sc.objects[o].class_id;
            d.confidence = sc.objects[o].confidence;
            ds.detections.by_frame[f].push_back(d);
        }

        GazeSample g;
        g.frame = f;
        const int e = episode_of[f];
        if (e >= 0) {
            const SynthEpisode& ep = sc.episodes[e];
            const bool fix = fixation_plan[e][f - ep.start_frame];
            const bool blink = !fix && uniform01(rng) < sc.blink_rate;
            if (blink) {
                g.pattern = GazePattern::Blink;
            } else {
                g.pattern = fix ? GazePattern::Fixation : GazePattern::Saccade;
                const BBox box = sc.objects[ep.object].box_at(f);
                g.x = box.x + box.w * (0.05 + 0.9 * uniform01(rng));
                g.y = box.y + box.h * (0.05 + 0.9 * uniform01(rng));
                g.has_position = true;
            }
        } else {
            if (uniform01(rng) < sc.blink_rate) {
                g.pattern = GazePattern::Blink;
            } else {
                g.pattern = uniform01(rng) < sc.saccade_rate ? GazePattern::Saccade
                                                             : GazePattern::Fixation;
                // Wandering gaze: anywhere the detector sees nothing.
                bool placed = false;
                for (int attempt = 0; attempt < 1000 && !placed; ++attempt) {
                    const double x = sc.width * uniform01(rng);
                    const double y = sc.height * uniform01(rng);
                    bool inside = false;
                    for (const BBox& b : live)
                        if (b.contains(x, y)) {
                            inside = true;
                            break;
                        }
                    if (!inside) {
                        g.x = x;
                        g.y = y;
                        g.has_position = true;
                        placed = true;
                    }
                }
                if (!placed)
                    throw ParseError("scenario: objects cover the frame, cannot place "
                                     "background gaze at frame " + std::to_string(f));
            }
        }
        ds.gaze.push_back(g);
    }

    nlohmann::ordered_json truth;
    truth["meta"] = {{"n_frames", sc.n_frames},
                     {"fps", sc.fps},
                     {"width", sc.width},
                     {"height", sc.height}};
    truth["tasks"] = nlohmann::ordered_json::array();
    for (size_t e = 0; e < sc.episodes.size(); ++e) {
        const SynthEpisode& ep = sc.episodes[e];
        TaskAnnotation t;
        t.start_frame = ep.start_frame;
        t.end_frame = ep.end_frame;
        t.label = ep.label;
        ds.tasks.push_back(t);
        int n_fix = 0;
        for (bool b : fixation_plan[e]) n_fix += b ? 1 : 0;
        const int len = ep.end_frame - ep.start_frame + 1;
        truth["tasks"].push_back({{"start", ep.start_frame},
                                  {"end", ep.end_frame},
                                  {"label", ep.label},
                                  {"object", ep.object},
                                  {"fixation_frames", n_fix},
                                  {"fixation_ratio", static_cast<double>(n_fix) / len}});
    }
    ds.truth_json = truth.dump(2) + "\n";
    return ds;
}

void write_dataset(const SynthDataset& ds, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    {
        std::ofstream out(fs::path(dir) / "gaze.csv");
        write_gaze_csv(out, ds.gaze);
    }
    {
        std::ofstream out(fs::path(dir) / "detections.jsonl");
        write_detections_jsonl(out, ds.detections);
    }
    {
        std::ofstream out(fs::path(dir) / "tasks.csv");
        write_tasks_csv(out, ds.tasks);
    }
    {
        std::ofstream out(fs::path(dir) / "truth.json");
        out << ds.truth_json;
    }
}

}  // namespace gazeff
