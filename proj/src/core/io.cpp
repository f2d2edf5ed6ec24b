/*
Copyright 2026 track3d authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "core/io.hpp"

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "core/location.hpp"

namespace track3d {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

namespace {

[[noreturn]] void fail_line(const std::string& path, std::size_t line, const std::string& msg) {
    throw parse_error(path + ":" + std::to_string(line) + ": " + msg);
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw parse_error("cannot open " + path);
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw parse_error("cannot open " + path + " for writing");
    return out;
}

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& path,
                std::size_t line) {
    for (const auto& [key, _] : j.items())
        if (!allowed.count(key))
            fail_line(path, line, "unknown key '" + key + "'");
}

std::vector<double> number_array(const json& j, const char* key, const std::string& path,
                                 std::size_t line) {
    if (!j.is_array())
        fail_line(path, line, std::string(key) + " must be an array");
    std::vector<double> v;
    v.reserve(j.size());
    for (const auto& e : j) {
        if (!e.is_number())
            fail_line(path, line, std::string(key) + " must contain numbers");
        v.push_back(e.get<double>());
    }
    return v;
}

void append_array(std::string& out, const std::vector<double>& v) {
    out += '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            out += ',';
        out += format_double(v[i]);
    }
    out += ']';
}

std::string json_string(const std::string& s) {
    return json(s).dump();
}

AppearanceMap load_uv_map(const std::string& path) {
    std::ifstream in = open_input(path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw parse_error(path + ": " + e.what());
    }
    check_keys(j, {"height", "width", "texture", "visibility"}, path, 1);
    AppearanceMap m;
    m.height = j.at("height").get<int>();
    m.width = j.at("width").get<int>();
    m.texture = number_array(j.at("texture"), "texture", path, 1);
    m.visibility = number_array(j.at("visibility"), "visibility", path, 1);
    m.validate();
    return m;
}

void write_uv_map(const std::string& path, const AppearanceMap& m) {
    std::ofstream out = open_output(path);
    std::string line = "{\"height\":" + std::to_string(m.height) +
                       ",\"width\":" + std::to_string(m.width) + ",\"texture\":";
    append_array(line, m.texture);
    line += ",\"visibility\":";
    append_array(line, m.visibility);
    line += "}";
    out << line << "\n";
}

}  // namespace

std::vector<Detection> parse_detections(const std::string& path) {
    static const std::set<std::string> kKeys = {"frame", "id",   "bbox",       "x",     "y",
                                                "z",     "n",    "pose",       "appearance",
                                                "uv_ref", "pred_pose"};
    std::ifstream in = open_input(path);
    const fs::path dir = fs::path(path).parent_path();

    std::vector<Detection> out;
    std::string line;
    std::size_t line_no = 0;
    long prev_frame = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#')
            continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            fail_line(path, line_no, e.what());
        }
        if (!j.is_object())
            fail_line(path, line_no, "row is not an object");
        check_keys(j, kKeys, path, line_no);

        Detection d;
        try {
            d.frame = j.at("frame").get<long>();
            d.id = j.at("id").get<std::string>();
            const auto bbox = number_array(j.at("bbox"), "bbox", path, line_no);
            if (bbox.size() != 4)
                fail_line(path, line_no, "bbox must have 4 entries");
            std::copy(bbox.begin(), bbox.end(), d.bbox.begin());

            const bool has_z = j.contains("z");
            const bool has_n = j.contains("n");
            if (has_z == has_n)
                fail_line(path, line_no, "exactly one of z / n required");
            const double x = j.at("x").get<double>();
            const double y = j.at("y").get<double>();
            if (has_z) {
                const double z = j.at("z").get<double>();
                if (!(z > 0.0))
                    fail_line(path, line_no, "z must be > 0");
                d.location = Location3D::from_nearness(x, y, to_nearness(z));
            } else {
                d.location = Location3D::from_nearness(x, y, j.at("n").get<double>());
            }

            d.pose_embedding = number_array(j.at("pose"), "pose", path, line_no);

            const bool has_app = j.contains("appearance");
            const bool has_uv = j.contains("uv_ref");
            if (has_app == has_uv)
                fail_line(path, line_no, "exactly one of appearance / uv_ref required");
            if (has_app) {
                d.appearance_embedding =
                    number_array(j.at("appearance"), "appearance", path, line_no);
            } else {
                const std::string ref = j.at("uv_ref").get<std::string>();
                d.appearance_map = load_uv_map((dir / ref).string());
            }

            if (j.contains("pred_pose")) {
                std::vector<std::vector<double>> rows;
                if (!j.at("pred_pose").is_array())
                    fail_line(path, line_no, "pred_pose must be an array of arrays");
                for (const auto& row : j.at("pred_pose"))
                    rows.push_back(number_array(row, "pred_pose", path, line_no));
                d.predicted_poses = std::move(rows);
            }
            d.validate();
        } catch (const json::exception& e) {
            fail_line(path, line_no, e.what());
        } catch (const std::invalid_argument& e) {
            fail_line(path, line_no, e.what());
        }

        if (d.frame < prev_frame)
            fail_line(path, line_no, "rows not sorted by frame");
        prev_frame = d.frame;
        out.push_back(std::move(d));
    }
    return out;
}

void write_detections(const std::string& path, const std::vector<Detection>& detections,
                      const std::string& header_note) {
    std::ofstream out = open_output(path);
    if (!header_note.empty())
        out << "# " << header_note << "\n";

    fs::path uv_dir;
    for (const auto& d : detections) {
        std::string line = "{\"frame\":" + std::to_string(d.frame) +
                           ",\"id\":" + json_string(d.id) + ",\"bbox\":";
        append_array(line, {d.bbox[0], d.bbox[1], d.bbox[2], d.bbox[3]});
        line += ",\"x\":" + format_double(d.location.x);
        line += ",\"y\":" + format_double(d.location.y);
        line += ",\"n\":" + format_double(d.location.n);
        line += ",\"pose\":";
        append_array(line, d.pose_embedding);
        if (d.appearance_embedding) {
            line += ",\"appearance\":";
            append_array(line, *d.appearance_embedding);
        } else if (d.appearance_map) {
            if (uv_dir.empty()) {
                uv_dir = fs::path(path).concat(".uv");
                fs::create_directories(uv_dir);
            }
            const std::string ref = (fs::path(path).filename().string() + ".uv/") + d.id + ".json";
            write_uv_map((fs::path(path).parent_path() / ref).string(), *d.appearance_map);
            line += ",\"uv_ref\":" + json_string(ref);
        }
        if (d.predicted_poses) {
            line += ",\"pred_pose\":[";
            for (std::size_t r = 0; r < d.predicted_poses->size(); ++r) {
                if (r)
                    line += ',';
                append_array(line, (*d.predicted_poses)[r]);
            }
            line += ']';
        }
        line += "}";
        out << line << "\n";
    }
}

std::vector<GroundTruthRow> parse_ground_truth(const std::string& path) {
    static const std::set<std::string> kKeys = {"frame", "id",   "gt_id", "bbox",      "x",
                                                "y",     "n",    "pose",  "appearance"};
    std::ifstream in = open_input(path);
    std::vector<GroundTruthRow> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#')
            continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            fail_line(path, line_no, e.what());
        }
        check_keys(j, kKeys, path, line_no);
        GroundTruthRow r;
        try {
            r.frame = j.at("frame").get<long>();
            r.detection_id = j.at("id").get<std::string>();
            r.gt_id = j.at("gt_id").get<long>();
            const auto bbox = number_array(j.at("bbox"), "bbox", path, line_no);
            if (bbox.size() != 4)
                fail_line(path, line_no, "bbox must have 4 entries");
            std::copy(bbox.begin(), bbox.end(), r.bbox.begin());
            r.x = j.at("x").get<double>();
            r.y = j.at("y").get<double>();
            r.n = j.at("n").get<double>();
            r.pose = number_array(j.at("pose"), "pose", path, line_no);
            r.appearance = number_array(j.at("appearance"), "appearance", path, line_no);
        } catch (const json::exception& e) {
            fail_line(path, line_no, e.what());
        }
        out.push_back(std::move(r));
    }
    return out;
}

void write_ground_truth(const std::string& path, const std::vector<GroundTruthRow>& rows) {
    std::ofstream out = open_output(path);
    for (const auto& r : rows) {
        std::string line = "{\"frame\":" + std::to_string(r.frame) +
                           ",\"id\":" + json_string(r.detection_id) +
                           ",\"gt_id\":" + std::to_string(r.gt_id) + ",\"bbox\":";
        append_array(line, {r.bbox[0], r.bbox[1], r.bbox[2], r.bbox[3]});
        line += ",\"x\":" + format_double(r.x);
        line += ",\"y\":" + format_double(r.y);
        line += ",\"n\":" + format_double(r.n);
        line += ",\"pose\":";
        append_array(line, r.pose);
        line += ",\"appearance\":";
        append_array(line, r.appearance);
        line += "}";
        out << line << "\n";
    }
}

std::set<long> parse_shot_file(const std::string& path) {
    std::ifstream in = open_input(path);
    std::set<long> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#')
            continue;
        try {
            std::size_t pos = 0;
            const long frame = std::stol(line, &pos);
            while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos])))
                ++pos;
            if (pos != line.size())
                fail_line(path, line_no, "expected a single frame index");
            out.insert(frame);
        } catch (const std::logic_error&) {
            fail_line(path, line_no, "expected a frame index");
        }
    }
    return out;
}

void write_shot_file(const std::string& path, const std::vector<long>& frames) {
    std::ofstream out = open_output(path);
    for (long f : frames)
        out << f << "\n";
}

namespace {

PoseBackend backend_from_name(const std::string& name, const std::string& path) {
    if (name == "last_value")
        return PoseBackend::kLastValue;
    if (name == "linear_extrapolation")
        return PoseBackend::kLinearExtrapolation;
    if (name == "external")
        return PoseBackend::kExternal;
    throw parse_error(path + ": unknown pose_backend '" + name + "'");
}

std::string backend_name(PoseBackend b) {
    switch (b) {
        case PoseBackend::kLastValue: return "last_value";
        case PoseBackend::kLinearExtrapolation: return "linear_extrapolation";
        case PoseBackend::kExternal: return "external";
    }
    return "linear_extrapolation";
}

EncoderMode encoder_from_name(const std::string& name, const std::string& path) {
    if (name == "passthrough")
        return EncoderMode::kPassthrough;
    if (name == "downsample_flatten")
        return EncoderMode::kDownsampleFlatten;
    throw parse_error(path + ": unknown encoder_mode '" + name + "'");
}

std::string encoder_name(EncoderMode m) {
    return m == EncoderMode::kPassthrough ? "passthrough" : "downsample_flatten";
}

}  // namespace

BetaConfig parse_config(const std::string& path) {
    static const std::set<std::string> kKeys = {
        "beta_a",         "beta_p",        "beta_xy",       "beta_n",       "beta_th",
        "alpha_0",        "w",             "confidence",    "t_max",        "c",
        "pose_window",    "delta_floor_xy", "delta_floor_n", "normalized_cost",
        "use_appearance", "use_pose",      "use_xy",        "use_nearness",
        "pose_backend",   "encoder_mode",  "encoder_grid",  "map_size"};
    std::ifstream in = open_input(path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw parse_error(path + ": " + e.what());
    }
    if (!j.is_object())
        throw parse_error(path + ": config must be a JSON object");
    check_keys(j, kKeys, path, 1);

    BetaConfig cfg;
    try {
        if (j.contains("beta_a")) cfg.beta_a = j.at("beta_a").get<double>();
        if (j.contains("beta_p")) cfg.beta_p = j.at("beta_p").get<double>();
        if (j.contains("beta_xy")) cfg.beta_xy = j.at("beta_xy").get<double>();
        if (j.contains("beta_n")) cfg.beta_n = j.at("beta_n").get<double>();
        if (j.contains("beta_th")) cfg.beta_th = j.at("beta_th").get<double>();
        if (j.contains("alpha_0")) cfg.alpha_0 = j.at("alpha_0").get<double>();
        if (j.contains("w")) cfg.window = j.at("w").get<int>();
        if (j.contains("confidence")) cfg.confidence = j.at("confidence").get<double>();
        if (j.contains("t_max")) cfg.t_max = j.at("t_max").get<int>();
        if (j.contains("c")) cfg.horizon = j.at("c").get<int>();
        if (j.contains("pose_window")) cfg.pose_window = j.at("pose_window").get<int>();
        if (j.contains("delta_floor_xy")) cfg.delta_floor_xy = j.at("delta_floor_xy").get<double>();
        if (j.contains("delta_floor_n")) cfg.delta_floor_n = j.at("delta_floor_n").get<double>();
        if (j.contains("normalized_cost")) cfg.normalized_cost = j.at("normalized_cost").get<bool>();
        if (j.contains("use_appearance")) cfg.cues.appearance = j.at("use_appearance").get<bool>();
        if (j.contains("use_pose")) cfg.cues.pose = j.at("use_pose").get<bool>();
        if (j.contains("use_xy")) cfg.cues.xy = j.at("use_xy").get<bool>();
        if (j.contains("use_nearness")) cfg.cues.nearness = j.at("use_nearness").get<bool>();
        if (j.contains("pose_backend"))
            cfg.pose_backend = backend_from_name(j.at("pose_backend").get<std::string>(), path);
        if (j.contains("encoder_mode"))
            cfg.encoder_mode = encoder_from_name(j.at("encoder_mode").get<std::string>(), path);
        if (j.contains("encoder_grid")) cfg.encoder_grid = j.at("encoder_grid").get<int>();
        if (j.contains("map_size")) cfg.map_size = j.at("map_size").get<int>();
    } catch (const json::exception& e) {
        throw parse_error(path + ": " + e.what());
    }
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw parse_error(path + ": " + e.what());
    }
    return cfg;
}

void write_config(const std::string& path, const BetaConfig& cfg) {
    std::ofstream out = open_output(path);
    out << "{\n";
    out << "  \"beta_a\": " << format_double(cfg.beta_a) << ",\n";
    out << "  \"beta_p\": " << format_double(cfg.beta_p) << ",\n";
    out << "  \"beta_xy\": " << format_double(cfg.beta_xy) << ",\n";
    out << "  \"beta_n\": " << format_double(cfg.beta_n) << ",\n";
    out << "  \"beta_th\": " << format_double(cfg.beta_th) << ",\n";
    out << "  \"alpha_0\": " << format_double(cfg.alpha_0) << ",\n";
    out << "  \"w\": " << cfg.window << ",\n";
    out << "  \"confidence\": " << format_double(cfg.confidence) << ",\n";
    out << "  \"t_max\": " << cfg.t_max << ",\n";
    out << "  \"c\": " << cfg.horizon << ",\n";
    out << "  \"pose_window\": " << cfg.pose_window << ",\n";
    out << "  \"delta_floor_xy\": " << format_double(cfg.delta_floor_xy) << ",\n";
    out << "  \"delta_floor_n\": " << format_double(cfg.delta_floor_n) << ",\n";
    out << "  \"normalized_cost\": " << (cfg.normalized_cost ? "true" : "false") << ",\n";
    out << "  \"use_appearance\": " << (cfg.cues.appearance ? "true" : "false") << ",\n";
    out << "  \"use_pose\": " << (cfg.cues.pose ? "true" : "false") << ",\n";
    out << "  \"use_xy\": " << (cfg.cues.xy ? "true" : "false") << ",\n";
    out << "  \"use_nearness\": " << (cfg.cues.nearness ? "true" : "false") << ",\n";
    out << "  \"pose_backend\": \"" << backend_name(cfg.pose_backend) << "\",\n";
    out << "  \"encoder_mode\": \"" << encoder_name(cfg.encoder_mode) << "\",\n";
    out << "  \"encoder_grid\": " << cfg.encoder_grid << ",\n";
    out << "  \"map_size\": " << cfg.map_size << "\n";
    out << "}\n";
}

std::vector<TrackRow> parse_track_output(const std::string& path) {
    static const std::set<std::string> kKeys = {"frame", "detection_id", "track_id", "cost",
                                                "matched"};
    std::ifstream in = open_input(path);
    std::vector<TrackRow> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#')
            continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            fail_line(path, line_no, e.what());
        }
        check_keys(j, kKeys, path, line_no);
        TrackRow r;
        try {
            r.frame = j.at("frame").get<long>();
            r.detection_id = j.at("detection_id").get<std::string>();
            r.track_id = j.at("track_id").get<long>();
            r.cost = j.at("cost").get<double>();
            r.matched = j.at("matched").get<bool>();
        } catch (const json::exception& e) {
            fail_line(path, line_no, e.what());
        }
        out.push_back(std::move(r));
    }
    return out;
}

void write_track_output(const std::string& path, const TrackOutput& output) {
    std::ofstream out = open_output(path);
    for (const auto& frame : output.frames) {
        for (const auto& rec : frame.records) {
            std::string line = "{\"frame\":" + std::to_string(frame.frame) +
                               ",\"detection_id\":" + json_string(rec.detection_id) +
                               ",\"track_id\":" + std::to_string(rec.track_id) +
                               ",\"cost\":" + format_double(rec.cost) +
                               ",\"matched\":" + (rec.matched ? "true" : "false") + "}";
            out << line << "\n";
        }
    }
}

MetricsReport parse_report(const std::string& path) {
    std::ifstream in = open_input(path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw parse_error(path + ": " + e.what());
    }
    MetricsReport r;
    try {
        r.frames = j.at("frames").get<long>();
        r.gt_total = j.at("gt_total").get<long>();
        r.pred_total = j.at("pred_total").get<long>();
        r.matches = j.at("matches").get<long>();
        r.fn = j.at("fn").get<long>();
        r.fp = j.at("fp").get<long>();
        r.id_switches = j.at("id_switches").get<long>();
        r.mota = j.at("mota").get<double>();
        r.idf1 = j.at("idf1").get<double>();
        if (j.contains("hota") && !j.at("hota").is_null())
            r.hota = j.at("hota").get<double>();
    } catch (const json::exception& e) {
        throw parse_error(path + ": " + e.what());
    }
    return r;
}

void write_report(const std::string& path, const MetricsReport& r) {
    std::ofstream out = open_output(path);
    out << "{\n";
    out << "  \"frames\": " << r.frames << ",\n";
    out << "  \"gt_total\": " << r.gt_total << ",\n";
    out << "  \"pred_total\": " << r.pred_total << ",\n";
    out << "  \"matches\": " << r.matches << ",\n";
    out << "  \"fn\": " << r.fn << ",\n";
    out << "  \"fp\": " << r.fp << ",\n";
    out << "  \"id_switches\": " << r.id_switches << ",\n";
    out << "  \"mota\": " << format_double(r.mota) << ",\n";
    out << "  \"idf1\": " << format_double(r.idf1) << ",\n";
    out << "  \"hota\": " << (r.hota ? format_double(*r.hota) : "null") << "\n";
    out << "}\n";
}

void write_distances(const std::string& path, const LabeledDistances& distances) {
    std::ofstream out = open_output(path);
    const auto dump = [&out](const char* cue, const std::vector<LabeledSample>& samples) {
        for (const auto& s : samples) {
            out << "{\"cue\":\"" << cue << "\",\"distance\":" << format_double(s.distance)
                << ",\"inlier\":" << (s.inlier ? "true" : "false") << "}\n";
        }
    };
    dump("appearance", distances.appearance);
    dump("pose", distances.pose);
    dump("xy", distances.xy);
    dump("nearness", distances.nearness);
}

void pipeline_track(const std::string& detections_path, const std::string& config_path,
                    const std::string& shots_path, const std::string& out_path) {
    const std::vector<Detection> stream = parse_detections(detections_path);
    BetaConfig cfg;
    if (!config_path.empty())
        cfg = parse_config(config_path);
    std::set<long> shots;
    if (!shots_path.empty())
        shots = parse_shot_file(shots_path);
    const TrackOutput output = run_tracker(stream, cfg, shots);
    write_track_output(out_path, output);
}

void pipeline_simulate(const std::string& preset, int agents, std::uint64_t seed,
                       const std::string& out_dir) {
    const Scenario scenario = preset_scenario(preset, seed, agents);
    const SimulationOutput sim = render_detections(scenario);
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    write_detections((dir / "detections.jsonl").string(), sim.detections,
                     "preset=" + scenario.name + " " + sim.rng_note);
    write_ground_truth((dir / "gt.jsonl").string(), sim.ground_truth);
    write_shot_file((dir / "shots.txt").string(), sim.shot_frames);
}

namespace {

std::map<std::string, long> detection_agent_map(const std::vector<GroundTruthRow>& rows) {
    std::map<std::string, long> map;
    for (const auto& r : rows)
        if (!r.detection_id.empty())
            map[r.detection_id] = r.gt_id;
    return map;
}

}  // namespace

void pipeline_tune(const std::string& detections_path, const std::string& gt_path,
                   const std::string& out_config_path) {
    const std::vector<Detection> stream = parse_detections(detections_path);
    const std::vector<GroundTruthRow> gt = parse_ground_truth(gt_path);
    const BetaConfig base;
    const HarvestResult harvest = harvest_distances(stream, detection_agent_map(gt), base);
    const BetaConfig initial = init_betas(harvest.distances, base);
    const BetaConfig tuned = optimize_betas(initial, harvest.frames);
    write_config(out_config_path, tuned);
}

void pipeline_evaluate(const std::string& pred_path, const std::string& gt_path,
                       const std::string& report_path) {
    const std::vector<TrackRow> pred_rows = parse_track_output(pred_path);
    const std::vector<GroundTruthRow> gt_rows = parse_ground_truth(gt_path);

    FrameBoxes gt;
    std::map<std::string, const GroundTruthRow*> by_detection;
    for (const auto& r : gt_rows) {
        if (r.gt_id >= 0)
            gt[r.frame].push_back({r.gt_id, {r.bbox[0], r.bbox[1], r.bbox[2], r.bbox[3]}});
        if (!r.detection_id.empty())
            by_detection[r.detection_id] = &r;
    }

    FrameBoxes pred;
    for (const auto& r : pred_rows) {
        const auto it = by_detection.find(r.detection_id);
        if (it == by_detection.end())
            throw parse_error("evaluate: detection '" + r.detection_id +
                              "' missing from the ground-truth sidecar");
        const auto& g = *it->second;
        pred[r.frame].push_back({r.track_id, {g.bbox[0], g.bbox[1], g.bbox[2], g.bbox[3]}});
    }

    write_report(report_path, compute_metrics(gt, pred));
}

void pipeline_distances(const std::string& detections_path, const std::string& gt_path,
                        const std::string& out_path) {
    const std::vector<Detection> stream = parse_detections(detections_path);
    const std::vector<GroundTruthRow> gt = parse_ground_truth(gt_path);
    const BetaConfig base;
    const HarvestResult harvest = harvest_distances(stream, detection_agent_map(gt), base);
    write_distances(out_path, harvest.distances);
}

}  // namespace track3d
