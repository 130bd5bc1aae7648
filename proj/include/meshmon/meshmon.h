/* meshmon: mesh + powerline network characterization and de-tangled-mesh
 * anomaly detection.
 *
 * C interface of the shared library. All heap objects are opaque handles
 * released with the matching *_free function; every fallible call returns a
 * meshmon_status and leaves a human-readable message in meshmon_last_error()
 * (thread-local) on failure. Strings returned through char** are owned by
 * the caller and released with meshmon_string_free().
 */

#ifndef MESHMON_H
#define MESHMON_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum meshmon_status {
    MESHMON_OK = 0,
    MESHMON_ERR_INVALID_ARGUMENT = 1,
    MESHMON_ERR_NOT_FOUND = 2,
    MESHMON_ERR_INCONSISTENT_EVIDENCE = 3,
    MESHMON_ERR_ZERO_PATH_GROUP = 4,
    MESHMON_ERR_DEGENERATE_CHANNEL = 5,
    MESHMON_ERR_INCOMPLETE_OBSERVATION = 6,
    MESHMON_ERR_CONFIG = 7,
    MESHMON_ERR_IO = 8,
    MESHMON_ERR_INTERNAL = 9
} meshmon_status;

typedef struct meshmon_config meshmon_config;
typedef struct meshmon_topology meshmon_topology;
typedef struct meshmon_profile meshmon_profile;
typedef struct meshmon_report meshmon_report;

const char* meshmon_version(void);
const char* meshmon_status_name(meshmon_status status);

/* Message for the most recent failure on this thread ("" when none). */
const char* meshmon_last_error(void);

void meshmon_string_free(char* text);

/* ------------------------------------------------------------------ */
/* Experiment configuration                                            */
/* ------------------------------------------------------------------ */

meshmon_status meshmon_config_default(meshmon_config** out);
meshmon_status meshmon_config_from_json(const char* json_text, meshmon_config** out);
meshmon_status meshmon_config_load(const char* path, meshmon_config** out);
meshmon_status meshmon_config_to_json(const meshmon_config* config, char** json_out);

/* Flag-style override. Keys: scenario, seed, trials, threads, out,
 * rows, cols, window, k-sigma, sensitivity-delta, max-hops, detangle
 * (comma-separated labels), pdr-mode (per-bit|paper), q-mode
 * (gaussian-tail|erfc), cfr, hop-latency-mean, intermittent-probability,
 * mesh-area, grid-size, plc-nodes, gw-latency. */
meshmon_status meshmon_config_set(meshmon_config* config, const char* key, const char* value);

void meshmon_config_free(meshmon_config* config);

/* ------------------------------------------------------------------ */
/* Topology                                                            */
/* ------------------------------------------------------------------ */

meshmon_status meshmon_topology_grid(int rows, int cols, int scenario, meshmon_topology** out);
meshmon_status meshmon_topology_from_config(const meshmon_config* config,
                                            meshmon_topology** out);
meshmon_status meshmon_topology_from_json(const char* json_text, meshmon_topology** out);
meshmon_status meshmon_topology_to_json(const meshmon_topology* topology, char** json_out);
meshmon_status meshmon_topology_detangle(const meshmon_topology* topology,
                                         const char* const* labels, size_t n_labels,
                                         meshmon_topology** out);
int meshmon_topology_node_count(const meshmon_topology* topology);
int meshmon_topology_link_count(const meshmon_topology* topology);

/* Simple-path count of the destination-oriented DAG between two nodes. */
meshmon_status meshmon_topology_path_count(const meshmon_topology* topology, const char* src,
                                           const char* dst, int64_t* count_out);

void meshmon_topology_free(meshmon_topology* topology);

/* ------------------------------------------------------------------ */
/* Pipeline runs (each writes its files under the config's out_dir)    */
/* ------------------------------------------------------------------ */

meshmon_status meshmon_run_characterize(const meshmon_config* config, meshmon_profile** out);
meshmon_status meshmon_profile_to_json(const meshmon_profile* profile, char** json_out);
void meshmon_profile_free(meshmon_profile* profile);

/* Either observations_path or detangle labels must be given; the latter
 * simulates one observation epoch of the de-tangled mesh. */
meshmon_status meshmon_run_detect(const meshmon_config* config, const char* profile_path,
                                  const char* observations_path, const char* const* detangle,
                                  size_t n_detangle, meshmon_report** out);
meshmon_status meshmon_report_to_json(const meshmon_report* report, char** json_out);
int meshmon_report_any_anomaly(const meshmon_report* report);
void meshmon_report_free(meshmon_report* report);

meshmon_status meshmon_run_plc(const meshmon_config* config, const char* cfr_path,
                               char** metrics_json_out);
meshmon_status meshmon_run_hybrid(const meshmon_config* config, char** summary_json_out);

/* ------------------------------------------------------------------ */
/* Direct numeric helpers                                              */
/* ------------------------------------------------------------------ */

meshmon_status meshmon_hybrid_pdr(double pdr_ble, double pdr_plc, int alpha, int beta,
                                  double* out);
meshmon_status meshmon_hybrid_latency(double l_ble_ms, double l_gw_ms, double tau_rms_ms,
                                      double l_relay_ms, int alpha, int beta, double* out);
meshmon_status meshmon_scale_units(double mesh_area_m2, double grid_size_m2, int plc_nodes,
                                   int* alpha_out, int* beta_out);
meshmon_status meshmon_noise_psd(double f_hz, double df_hz, double* dbm_per_hz_out);
meshmon_status meshmon_ber_bpsk(double sinr, int use_erfc, double* out);
meshmon_status meshmon_pdr_plc(double ber, int n_bits, int paper_literal, double* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MESHMON_H */
