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

// Drives the installed CLI binary end to end through std::system.

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "core/io.hpp"

namespace fs = std::filesystem;

static int g_checks = 0;

#define EXPECT(cond)                                                               \
    do {                                                                           \
        ++g_checks;                                                                \
        if (!(cond)) {                                                             \
            std::fprintf(stderr, "FAILED %s:%d: %s\n", __FILE__, __LINE__, #cond); \
            return 1;                                                              \
        }                                                                          \
    } while (0)

static int run(const std::string& args) {
    const std::string cmd = std::string(TRACK3D_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

static std::string slurp(const std::string& path) {
    std::ifstream in(path);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

int main() {
    const fs::path dir = fs::temp_directory_path() / ("track3d_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const std::string d = dir.string();

    // identical seeds produce identical files
    EXPECT(run("simulate --preset crossing --seed 7 --out " + d + "/sim1") == 0);
    EXPECT(run("simulate --preset crossing --seed 7 --out " + d + "/sim2") == 0);
    EXPECT(slurp(d + "/sim1/detections.jsonl") == slurp(d + "/sim2/detections.jsonl"));
    EXPECT(slurp(d + "/sim1/gt.jsonl") == slurp(d + "/sim2/gt.jsonl"));
    EXPECT(!slurp(d + "/sim1/detections.jsonl").empty());

    // track -> evaluate on the noise-free crossing reaches a perfect report
    EXPECT(run("track --detections " + d + "/sim1/detections.jsonl --out " + d + "/tracks.jsonl") ==
           0);
    EXPECT(run("evaluate --pred " + d + "/tracks.jsonl --gt " + d + "/sim1/gt.jsonl --report " +
               d + "/report.json") == 0);
    const track3d::MetricsReport report = track3d::parse_report(d + "/report.json");
    EXPECT(report.mota == 1.0);
    EXPECT(report.idf1 == 1.0);
    EXPECT(report.id_switches == 0);

    // shot flag changes the association outcome on a shot-cut scenario
    EXPECT(run("simulate --preset shot_cut --seed 3 --out " + d + "/cut") == 0);
    EXPECT(run("track --detections " + d + "/cut/detections.jsonl --shots " + d +
               "/cut/shots.txt --out " + d + "/cut_with.jsonl") == 0);
    EXPECT(run("track --detections " + d + "/cut/detections.jsonl --out " + d +
               "/cut_without.jsonl") == 0);
    EXPECT(slurp(d + "/cut_with.jsonl") != slurp(d + "/cut_without.jsonl"));

    // tune emits a loadable config
    EXPECT(run("tune --detections " + d + "/sim1/detections.jsonl --gt " + d +
               "/sim1/gt.jsonl --out " + d + "/tuned.json") == 0);
    EXPECT(run("track --detections " + d + "/sim1/detections.jsonl --config " + d +
               "/tuned.json --out " + d + "/tracks2.jsonl") == 0);

    // distances harvest
    EXPECT(run("distances --detections " + d + "/sim1/detections.jsonl --gt " + d +
               "/sim1/gt.jsonl --out " + d + "/dist.jsonl") == 0);
    EXPECT(slurp(d + "/dist.jsonl").find("\"inlier\":") != std::string::npos);

    // input problems exit 1, unknown flags are rejected by the parser
    EXPECT(run("track --detections " + d + "/absent.jsonl --out " + d + "/x.jsonl") == 1);
    EXPECT(run("track --nonsense-flag foo") != 0);
    EXPECT(run("simulate --preset bogus --out " + d + "/bogus") == 1);

    fs::remove_all(dir);
    std::printf("cli: %d checks passed\n", g_checks);
    return 0;
}
