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

/*
 * C interface of the track3d engine: an online multi-person tracker that
 * forecasts each track's appearance, image location, depth and pose, fuses
 * the per-cue likelihoods into one association cost and solves a thresholded
 * Hungarian assignment per frame.
 *
 * Two levels are exposed:
 *   - session calls (t3d_tracker_*) for embedding the online tracker,
 *   - pipeline calls (t3d_run_*) mirroring the CLI subcommands, file in /
 *     file out.
 *
 * All functions return T3D_OK on success; t3d_last_error() describes the
 * most recent failure on the calling thread.
 */

#ifndef TRACK3D_H
#define TRACK3D_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#ifndef T3D_API
#if defined(_WIN32)
#define T3D_API __declspec(dllexport)
#else
#define T3D_API __attribute__((visibility("default")))
#endif
#endif

typedef enum t3d_status {
    T3D_OK = 0,
    T3D_ERR_INVALID_ARGUMENT = 1, /* bad parameter or malformed input data */
    T3D_ERR_IO = 2,               /* file missing or unreadable/unwritable */
    T3D_ERR_STATE = 3,            /* call breaks session sequencing */
    T3D_ERR_INTERNAL = 4          /* engine invariant violated */
} t3d_status;

typedef struct t3d_config t3d_config;   /* opaque */
typedef struct t3d_tracker t3d_tracker; /* opaque */

T3D_API const char* t3d_version(void);

/* Static name of a status code ("T3D_OK", ...). */
T3D_API const char* t3d_status_name(t3d_status status);

/* Message of the last failure on this thread; empty string if none. */
T3D_API const char* t3d_last_error(void);

/* ---- configuration ----------------------------------------------------- */

T3D_API t3d_status t3d_config_create(t3d_config** out_config);
T3D_API t3d_status t3d_config_load(const char* path, t3d_config** out_config);
T3D_API t3d_status t3d_config_save(const t3d_config* config, const char* path);
T3D_API void t3d_config_destroy(t3d_config* config);

/* Numeric fields by config-file key (beta_a, beta_th, w, t_max, ...).
 * Booleans read/write as 0/1. */
T3D_API t3d_status t3d_config_set(t3d_config* config, const char* key, double value);
T3D_API t3d_status t3d_config_get(const t3d_config* config, const char* key, double* out_value);

/* ---- online tracking session ------------------------------------------ */

/* One detection handed to the tracker. Depth arrives in exactly one form:
 * leave use_nearness at 0 and provide depth_z > 0, or set use_nearness
 * nonzero and fill nearness (= log(1/z)); the other field is ignored.
 * appearance/appearance_len may describe an embedding of any fixed
 * dimension; pose likewise. predicted_poses is an optional row-major
 * [pred_rows x pose_len] block of future pose embeddings for the external
 * pose backend, or NULL. */
typedef struct t3d_detection {
    int64_t frame;
    const char* id; /* may be NULL: the session names it d<frame>_<index> */
    double bbox[4]; /* x_min, y_min, width, height */
    double x;
    double y;
    double depth_z;
    double nearness;
    int use_nearness; /* nonzero: take nearness, ignore depth_z */
    const double* appearance;
    size_t appearance_len;
    const double* pose;
    size_t pose_len;
    const double* predicted_poses;
    size_t pred_rows;
} t3d_detection;

typedef struct t3d_match {
    int64_t track_id;
    double cost;    /* accepted association cost; 0 for spawned tracks */
    int matched;    /* 0 when the detection started a new track */
} t3d_match;

/* Shot boundaries are frames whose association must ignore location
 * continuity (first frame after a cut). */
T3D_API t3d_status t3d_tracker_create(const t3d_config* config, t3d_tracker** out_tracker);
T3D_API t3d_status t3d_tracker_add_shot_boundary(t3d_tracker* tracker, int64_t frame);
T3D_API void t3d_tracker_destroy(t3d_tracker* tracker);

/* Advance one frame. Frames must strictly increase across calls; every
 * detection is labeled (matched or spawned) and out_matches receives
 * detection_count entries in input order. */
T3D_API t3d_status t3d_tracker_step(t3d_tracker* tracker, int64_t frame,
                                    const t3d_detection* detections, size_t detection_count,
                                    t3d_match* out_matches);

T3D_API t3d_status t3d_tracker_active_tracks(const t3d_tracker* tracker, size_t* out_count);

/* ---- file pipelines (the CLI surface) ---------------------------------- */

/* config_path and shots_path may be NULL or empty. */
T3D_API t3d_status t3d_run_track(const char* detections_path, const char* config_path,
                                 const char* shots_path, const char* out_path);

/* Presets: crossing, occlusion, appearance_twins, shot_cut, crowd.
 * agents only applies to crowd (pass 0 for the default). Writes
 * detections.jsonl, gt.jsonl and shots.txt into out_dir. */
T3D_API t3d_status t3d_run_simulate(const char* preset, int agents, uint64_t seed,
                                    const char* out_dir);

T3D_API t3d_status t3d_run_tune(const char* detections_path, const char* gt_path,
                                const char* out_config_path);

T3D_API t3d_status t3d_run_evaluate(const char* pred_path, const char* gt_path,
                                    const char* report_path);

T3D_API t3d_status t3d_run_distances(const char* detections_path, const char* gt_path,
                                     const char* out_path);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TRACK3D_H */
