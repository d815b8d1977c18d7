/* Copyright 2026 The tabletale Authors.
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the tabletale engine. All handles are opaque. Every
 * function returning tt_status leaves a message for the calling thread in
 * tt_last_error() when it fails. Strings returned through char** are
 * heap-allocated and released with tt_string_free.
 */
#ifndef TABLETALE_TABLETALE_H_
#define TABLETALE_TABLETALE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TT_API __declspec(dllexport)
#else
#define TT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tt_status {
  TT_OK = 0,
  TT_ERR_INVALID_ARGUMENT = 1,
  TT_ERR_IO = 2,
  TT_ERR_SCHEMA_MISMATCH = 3,
  TT_ERR_MALFORMED_RECORD = 4,
  TT_ERR_NON_MONOTONIC_FRAME = 5,
  TT_ERR_STREAM_ORDER = 6,
  TT_ERR_INSUFFICIENT_SAMPLES = 7,
  TT_ERR_BASELINE_NOT_CALIBRATED = 8,
  TT_ERR_INCOMPATIBLE_CHARTS = 9,
  TT_ERR_NOT_COMPOSITE = 10,
  TT_ERR_ORACLE_UNAVAILABLE = 11,
  TT_ERR_PROTOCOL = 12,
  TT_ERR_UNKNOWN_SCENARIO = 13,
  TT_ERR_VALIDATION = 14,
  TT_ERR_NETWORK = 15,
  TT_ERR_INTERNAL = 99
} tt_status;

typedef struct tt_presentation tt_presentation;
typedef struct tt_stream tt_stream;
typedef struct tt_oracle_script tt_oracle_script;
typedef struct tt_replay_result tt_replay_result;
typedef struct tt_session tt_session;
typedef struct tt_server tt_server;

/* ---- errors and strings ------------------------------------------------ */

/* Message of the last failure on this thread ("" if none). */
TT_API const char* tt_last_error(void);
/* 1-based input line of the last failure, or 0 when not line-specific. */
TT_API size_t tt_last_error_line(void);
TT_API const char* tt_status_name(tt_status status);
TT_API void tt_string_free(char* s);
TT_API const char* tt_version(void);

/* ---- configuration ----------------------------------------------------- */

/* Validates a config file (resolving "extends"). `report` receives a JSON
 * array of issues {severity, code, path, message}. Parse failures of the
 * file itself are returned as errors, not issues. */
TT_API tt_status tt_validate_config_file(const char* path, char** report, size_t* errors,
                                         size_t* warnings);

/* Fails with TT_ERR_VALIDATION when the config has errors. */
TT_API tt_status tt_presentation_load(const char* path, tt_presentation** out);
TT_API void tt_presentation_free(tt_presentation* p);

/* ---- streams ----------------------------------------------------------- */

TT_API tt_status tt_stream_load(const char* path, tt_stream** out);
TT_API size_t tt_stream_frame_count(const tt_stream* s);
TT_API void tt_stream_free(tt_stream* s);

TT_API tt_status tt_oracle_script_load(const char* path, tt_oracle_script** out);
TT_API void tt_oracle_script_free(tt_oracle_script* s);

/* Writes a generated stream to `out_path`. */
TT_API tt_status tt_synth(const char* scenario, uint64_t seed, const char* out_path);
/* Newline-separated scenario names. */
TT_API tt_status tt_synth_scenarios(char** names);

/* ---- replay and bench -------------------------------------------------- */

/* Oracle precedence: `remote_endpoint` ("host:port"), then `script`, then
 * the script embedded in the stream header. Both may be NULL. */
TT_API tt_status tt_replay(const tt_stream* stream, const tt_presentation* presentation,
                           const tt_oracle_script* script, const char* remote_endpoint,
                           tt_replay_result** out);
TT_API tt_status tt_replay_write_logs(const tt_replay_result* r, const char* events_path,
                                      const char* render_path);
/* Interleaved log identical to the live service's recorded outbound log. */
TT_API tt_status tt_replay_write_session_log(const tt_replay_result* r, const char* path);
/* JSON {frames, events, counts{kind: n}, latencyMs{median, p95, mean, max}}. */
TT_API tt_status tt_replay_summary(const tt_replay_result* r, char** json);
TT_API void tt_replay_free(tt_replay_result* r);

/* JSON {repeat, framesPerRun, medianMs, p95Ms, meanMs, maxMs, varianceMs2,
 * runMediansMs[], runP95sMs[], runMedianVarianceMs2}. */
TT_API tt_status tt_bench(const tt_stream* stream, const tt_presentation* presentation,
                          const tt_oracle_script* script, int repeat, char** json);

/* ---- embedded session -------------------------------------------------- */

/* A session fed one stream line at a time. The first line must be a stream
 * header; later lines are frames or controls. */
TT_API tt_status tt_session_create(const tt_presentation* presentation, tt_session** out);
/* `output` receives the newline-terminated outbound lines (headers after the
 * stream header, event and render records after a frame, "" after a
 * control). */
TT_API tt_status tt_session_push_line(tt_session* s, const char* line, char** output);
TT_API void tt_session_free(tt_session* s);

/* ---- live service ------------------------------------------------------ */

typedef struct tt_server_options {
  const char* host;            /* NULL: 127.0.0.1 */
  int port;                    /* 0: any free port */
  int max_sessions;            /* 0: unlimited */
  const char* oracle_endpoint; /* NULL: scripted oracle from client header */
  const char* record_prefix;   /* NULL: no recording */
} tt_server_options;

TT_API tt_status tt_server_create(const tt_presentation* presentation,
                                  const tt_server_options* options, tt_server** out);
TT_API int tt_server_port(const tt_server* s);
/* Blocks until tt_server_stop or max_sessions sessions have ended. */
TT_API tt_status tt_server_run(tt_server* s);
/* Safe to call from another thread or a signal-driven watcher. */
TT_API void tt_server_stop(tt_server* s);
TT_API void tt_server_free(tt_server* s);

#ifdef __cplusplus
}
#endif

#endif /* TABLETALE_TABLETALE_H_ */
