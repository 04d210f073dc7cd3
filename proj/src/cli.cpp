#include "gazeff/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "gazeff/config.hpp"
#include "gazeff/eval.hpp"
#include "gazeff/ingest.hpp"
#include "gazeff/numio.hpp"
#include "gazeff/pipeline.hpp"
#include "gazeff/synth.hpp"

namespace gazeff {

namespace {

struct ConfigFlags {
    std::string config_path;
    std::optional<double> fps, iou_min, gap_tolerance_s, alpha_s, threshold_percentile,
        min_seg_s, smooth_s, target_speedup, lambda_emphasis, gamma_semantic;
    std::optional<int> width, height, p_max;
};

void add_config_flags(CLI::App* cmd, ConfigFlags& f) {
    cmd->add_option("--config", f.config_path, "key=value config file");
    cmd->add_option("--fps", f.fps, "video frame rate");
    cmd->add_option("--width", f.width, "frame width in pixels");
    cmd->add_option("--height", f.height, "frame height in pixels");
    cmd->add_option("--iou-min,--iou_min", f.iou_min, "min IoU to keep a focus track alive");
    cmd->add_option("--gap-tolerance-s,--gap_tolerance_s", f.gap_tolerance_s,
                    "seconds of lost focus a track survives");
    cmd->add_option("--alpha-s,--alpha_s", f.alpha_s, "seconds before novelty decay starts");
    cmd->add_option("--threshold-percentile,--threshold_percentile", f.threshold_percentile,
                    "relevance percentile over nonzero scores");
    cmd->add_option("--min-seg-s,--min_seg_s", f.min_seg_s, "minimum segment length, seconds");
    cmd->add_option("--smooth-s,--smooth_s", f.smooth_s, "profile box-filter width, seconds");
    cmd->add_option("--target-speedup,--target_speedup", f.target_speedup,
                    "required overall speed-up F");
    cmd->add_option("--p-max,--p_max", f.p_max, "largest per-segment rate");
    cmd->add_option("--lambda-emphasis,--lambda_emphasis", f.lambda_emphasis,
                    "weight of the relevant-segment emphasis penalty");
    cmd->add_option("--gamma-semantic,--gamma_semantic", f.gamma_semantic,
                    "weight of the semantic term in the sampling cost");
}

PipelineConfig resolve_config(const ConfigFlags& f) {
    PipelineConfig cfg;
    if (!f.config_path.empty()) cfg = load_config_file(f.config_path, cfg);
    if (f.fps) cfg.fps = *f.fps;
    if (f.width) cfg.width = *f.width;
    if (f.height) cfg.height = *f.height;
    if (f.iou_min) cfg.iou_min = *f.iou_min;
    if (f.gap_tolerance_s) cfg.gap_tolerance_s = *f.gap_tolerance_s;
    if (f.alpha_s) cfg.alpha_s = *f.alpha_s;
    if (f.threshold_percentile) cfg.threshold_percentile = *f.threshold_percentile;
    if (f.min_seg_s) cfg.min_seg_s = *f.min_seg_s;
    if (f.smooth_s) cfg.smooth_s = *f.smooth_s;
    if (f.target_speedup) cfg.target_speedup = *f.target_speedup;
    if (f.p_max) cfg.p_max = *f.p_max;
    if (f.lambda_emphasis) cfg.lambda_emphasis = *f.lambda_emphasis;
    if (f.gamma_semantic) cfg.gamma_semantic = *f.gamma_semantic;
    cfg.validate();
    return cfg;
}

nlohmann::ordered_json config_json(const PipelineConfig& cfg) {
    return {{"fps", cfg.fps},
            {"width", cfg.width},
            {"height", cfg.height},
            {"iou_min", cfg.iou_min},
            {"gap_tolerance_s", cfg.gap_tolerance_s},
            {"alpha_s", cfg.alpha_s},
            {"threshold_percentile", cfg.threshold_percentile},
            {"min_seg_s", cfg.min_seg_s},
            {"smooth_s", cfg.smooth_s},
            {"target_speedup", cfg.target_speedup},
            {"p_max", cfg.p_max},
            {"lambda_emphasis", cfg.lambda_emphasis},
            {"gamma_semantic", cfg.gamma_semantic}};
}

std::ifstream open_input(const std::string& path, const char* what) {
    std::ifstream in(path);
    if (!in) throw ConfigError(std::string("cannot open ") + what + " file: " + path);
    return in;
}

std::ofstream open_output(const std::string& path, const char* what) {
    std::ofstream out(path);
    if (!out) throw ConfigError(std::string("cannot write ") + what + " file: " + path);
    return out;
}

struct RawInputs {
    std::string gaze_path;
    std::string detections_path;
    int n_frames = 0;
};

SemanticProfile profile_from_raw(const RawInputs& raw, const PipelineConfig& cfg,
                                 std::vector<GazeSample>* gaze_out = nullptr) {
    auto gaze_in = open_input(raw.gaze_path, "gaze");
    std::vector<GazeSample> gaze = parse_gaze(gaze_in);
    auto det_in = open_input(raw.detections_path, "detections");
    DetectionSet dets = parse_detections(det_in, cfg.width, cfg.height);
    if (dets.skipped > 0)
        std::cerr << "warning: skipped " << dets.skipped << " degenerate box(es)\n";
    std::vector<FrameContext> ctxs = align(gaze, dets, raw.n_frames, cfg.width, cfg.height);
    if (gaze_out) *gaze_out = std::move(gaze);
    return score_video(ctxs, cfg).profile;
}

nlohmann::ordered_json selection_report(const SelectionResult& result, int n_frames,
                                        const PipelineConfig& cfg) {
    nlohmann::ordered_json segs = nlohmann::ordered_json::array();
    for (size_t k = 0; k < result.segments.size(); ++k) {
        const Segment& s = result.segments[k];
        segs.push_back({{"start", s.start_frame},
                        {"end", s.end_frame},
                        {"label", to_string(s.label)},
                        {"mean_score", s.mean_score},
                        {"rate", result.plan.rates[k]}});
    }
    return {{"n_frames", n_frames},
            {"config", config_json(cfg)},
            {"achieved_speedup", result.achieved_speedup},
            {"allocation",
             {{"objective", result.plan.objective}, {"saturated", result.plan.saturated}}},
            {"segments", std::move(segs)},
            {"selected", result.selected}};
}

SelectionResult load_report(const std::string& path, double& target_speedup, int& n_frames) {
    auto in = open_input(path, "report");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("report: bad JSON: ") + e.what());
    }
    SelectionResult result;
    try {
        n_frames = j.at("n_frames").get<int>();
        target_speedup = j.at("config").at("target_speedup").get<double>();
        for (const auto& js : j.at("segments")) {
            Segment s;
            s.start_frame = js.at("start").get<int>();
            s.end_frame = js.at("end").get<int>();
            s.label = js.at("label").get<std::string>() == "relevant" ? SegmentLabel::Relevant
                                                                      : SegmentLabel::NonRelevant;
            s.mean_score = js.value("mean_score", 0.0);
            result.segments.push_back(s);
            result.plan.rates.push_back(js.at("rate").get<int>());
        }
        result.selected = j.at("selected").get<std::vector<int>>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("report: ") + e.what());
    }
    if (result.selected.empty()) throw ParseError("report: empty selection");
    result.plan.target_speedup = target_speedup;
    result.plan.emphasis_cap = target_speedup / 2.0;
    result.achieved_speedup =
        static_cast<double>(n_frames) / static_cast<double>(result.selected.size());
    return result;
}

int cmd_score(const ConfigFlags& flags, const RawInputs& raw, const std::string& out_profile) {
    PipelineConfig cfg = resolve_config(flags);
    SemanticProfile profile = profile_from_raw(raw, cfg);
    auto out = open_output(out_profile, "profile");
    write_profile_csv(out, profile);
    return 0;
}

int cmd_select(const ConfigFlags& flags, const std::string& profile_path, const RawInputs& raw,
               const std::string& out_frames, const std::string& out_report, int jobs) {
    PipelineConfig cfg = resolve_config(flags);
    if (jobs < 1) throw ConfigError("--jobs must be >= 1");

    SemanticProfile profile;
    if (!profile_path.empty()) {
        auto in = open_input(profile_path, "profile");
        profile = read_profile_csv(in);
    } else {
        profile = profile_from_raw(raw, cfg);
    }

    SelectionResult result = select_from_profile(profile, cfg, jobs);
    {
        auto out = open_output(out_frames, "frames");
        for (int f : result.selected) out << format_int(f) << '\n';
    }
    {
        auto out = open_output(out_report, "report");
        out << selection_report(result, profile.n_frames(), cfg).dump(2) << '\n';
    }
    if (result.plan.saturated)
        std::cerr << "warning: p_max below target speed-up, returned the boundary plan\n";
    return 0;
}

int cmd_eval(const std::string& report_path, const std::string& tasks_path,
             const std::string& gaze_path, const std::string& out_eval) {
    double target_speedup = 0.0;
    int n_frames = 0;
    SelectionResult result = load_report(report_path, target_speedup, n_frames);
    auto tasks_in = open_input(tasks_path, "tasks");
    const std::vector<TaskAnnotation> tasks = parse_tasks(tasks_in);
    auto gaze_in = open_input(gaze_path, "gaze");
    const std::vector<GazeSample> gaze = parse_gaze(gaze_in);

    const EvalReport report = evaluate(result, target_speedup, tasks, gaze);

    nlohmann::ordered_json ht = nlohmann::ordered_json::array();
    for (const HighAttentionTask& h : report.high_attention)
        ht.push_back({{"start", h.task.start_frame},
                      {"end", h.task.end_frame},
                      {"label", h.task.label},
                      {"fixation_ratio", h.fixation_ratio}});
    nlohmann::ordered_json em = nlohmann::ordered_json::array();
    for (const EmphasizedSegment& e : report.emphasized)
        em.push_back({{"start", e.start_frame}, {"end", e.end_frame}, {"rate", e.rate}});

    nlohmann::ordered_json j{{"h_count", static_cast<int>(report.high_attention.size())},
                             {"high_attention_tasks", std::move(ht)},
                             {"ea_count", report.ea.count},
                             {"ea_defined", report.ea.defined},
                             {"ea_ratio", report.ea.defined
                                              ? nlohmann::ordered_json(report.ea.ratio)
                                              : nlohmann::ordered_json(nullptr)},
                             {"speedup_error", report.speedup_error},
                             {"jitter", report.jitter},
                             {"emphasized_segments", std::move(em)}};
    if (out_eval.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        auto out = open_output(out_eval, "eval");
        out << j.dump(2) << '\n';
    }
    return 0;
}

int cmd_synth(const std::string& scenario_path, std::uint64_t seed, const std::string& out_dir) {
    auto in = open_input(scenario_path, "scenario");
    const Scenario scenario = parse_scenario(in);
    const SynthDataset dataset = synth_scenario(scenario, seed);
    write_dataset(dataset, out_dir);
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"gaze-driven semantic fast-forward for first-person videos"};
    app.require_subcommand(1);

    ConfigFlags score_flags, select_flags;
    RawInputs score_raw, select_raw;
    std::string out_profile;
    CLI::App* score = app.add_subcommand("score", "score frames into a semantic profile");
    add_config_flags(score, score_flags);
    score->add_option("--gaze", score_raw.gaze_path, "gaze CSV")->required();
    score->add_option("--detections", score_raw.detections_path, "detections JSONL")->required();
    score->add_option("--frames", score_raw.n_frames, "number of video frames")->required();
    score->add_option("--out-profile", out_profile, "output profile CSV")->required();

    std::string profile_path, out_frames, out_report;
    int jobs = 1;
    CLI::App* select = app.add_subcommand("select", "pick frames to meet the target speed-up");
    add_config_flags(select, select_flags);
    select->add_option("--profile", profile_path, "profile CSV from 'score'");
    select->add_option("--gaze", select_raw.gaze_path, "gaze CSV");
    select->add_option("--detections", select_raw.detections_path, "detections JSONL");
    select->add_option("--frames", select_raw.n_frames, "number of video frames");
    select->add_option("--out-frames", out_frames, "output selected frame indices")->required();
    select->add_option("--out-report", out_report, "output selection report JSON")->required();
    select->add_option("--jobs", jobs, "worker threads for per-segment sampling");

    std::string report_path, tasks_path, eval_gaze_path, out_eval;
    CLI::App* eval = app.add_subcommand("eval", "score a selection against task annotations");
    eval->add_option("--report", report_path, "selection report JSON")->required();
    eval->add_option("--tasks", tasks_path, "tasks CSV")->required();
    eval->add_option("--gaze", eval_gaze_path, "gaze CSV")->required();
    eval->add_option("--out-eval", out_eval, "output eval JSON (stdout when omitted)");

    std::string scenario_path, out_dir;
    std::uint64_t seed = 0;
    CLI::App* synth = app.add_subcommand("synth", "generate a synthetic dataset");
    synth->add_option("--scenario", scenario_path, "scenario JSON")->required();
    synth->add_option("--seed", seed, "random seed");
    synth->add_option("--out-dir", out_dir, "output dataset directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (score->parsed()) return cmd_score(score_flags, score_raw, out_profile);
        if (select->parsed()) {
            if (profile_path.empty() &&
                (select_raw.gaze_path.empty() || select_raw.detections_path.empty() ||
                 select_raw.n_frames <= 0))
                throw ConfigError(
                    "select needs --profile or all of --gaze/--detections/--frames");
            return cmd_select(select_flags, profile_path, select_raw, out_frames, out_report,
                              jobs);
        }
        if (eval->parsed()) return cmd_eval(report_path, tasks_path, eval_gaze_path, out_eval);
        if (synth->parsed()) return cmd_synth(scenario_path, seed, out_dir);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
    return 1;
}

}  // namespace gazeff
