#ifndef TERASIM_H
#define TERASIM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TsStatus {
  TS_STATUS_OK = 0,
  TS_STATUS_NULL_POINTER = 1,
  TS_STATUS_INVALID_INPUT = 2,
  TS_STATUS_PARSE = 3,
  TS_STATUS_IO = 4,
  TS_STATUS_OUT_OF_BAND = 5,
  TS_STATUS_NUMERICAL = 6,
  TS_STATUS_PANIC = 7,
} TsStatus;

typedef enum TsApproxModel {
  // 275 to 400 GHz.
  TS_APPROX_MODEL_BAND275_TO400 = 0,
  // 100 to 450 GHz.
  TS_APPROX_MODEL_BAND100_TO450 = 1,
} TsApproxModel;

// Opaque line database.
typedef struct TsLineDatabase TsLineDatabase;

// Opaque propagation medium.
typedef struct TsMedium TsMedium;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. The pointer is
// valid until the next failing call on the same thread.
const char *ts_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *ts_version(void);

// Bundled line list. Never fails.
struct TsLineDatabase *ts_linedb_bundled(void);

// # Safety
// `path` must be a NUL-terminated string and `out` a writable pointer.
enum TsStatus ts_linedb_load(const char *path, struct TsLineDatabase **out);

// # Safety
// `db` must be NULL or a live handle.
uintptr_t ts_linedb_len(const struct TsLineDatabase *db);

// # Safety
// `db` must be NULL or a handle not yet freed.
void ts_linedb_free(struct TsLineDatabase *db);

// # Safety
// `out` must be a writable pointer.
enum TsStatus ts_medium_new(double temperature_k, double pressure_atm, struct TsMedium **out);

// Adds a species; isotope 0 matches every isotope of the gas.
//
// # Safety
// `medium` must be a live handle.
enum TsStatus ts_medium_add_species(struct TsMedium *medium,
                                    uint16_t gas_id,
                                    uint16_t isotope_id,
                                    double mixing_ratio);

// # Safety
// `medium` must be NULL or a handle not yet freed.
void ts_medium_free(struct TsMedium *medium);

// Line-by-line absorption coefficient in 1/m.
//
// # Safety
// Handles must be live and `out` writable.
enum TsStatus ts_absorption_exact(const struct TsMedium *medium,
                                  const struct TsLineDatabase *db,
                                  double frequency_hz,
                                  double *out);

// Closed-form absorption coefficient in 1/m for water-vapour ratio `mu`.
// Outside the model band this fails with `OUT_OF_BAND` unless `force`.
//
// # Safety
// `out` must be writable.
enum TsStatus ts_absorption_approx(double frequency_hz,
                                   double mu,
                                   enum TsApproxModel model,
                                   bool force,
                                   double *out);

// Complex LoS path gain for absorption `k_per_m`.
//
// # Safety
// `out_re` and `out_im` must be writable.
enum TsStatus ts_los_path_gain(double frequency_hz,
                               double distance_m,
                               double k_per_m,
                               double *out_re,
                               double *out_im);

// # Safety
// `out` must be writable.
enum TsStatus ts_rayleigh_distance(uintptr_t m,
                                   uintptr_t n,
                                   double delta_r_m,
                                   double delta_t_m,
                                   double wavelength_m,
                                   double *out);

// SA spacing that makes the LoS channel orthogonal; `z` must be odd.
//
// # Safety
// `out` must be writable.
enum TsStatus ts_optimal_sa_spacing(uint32_t z,
                                    double distance_m,
                                    double wavelength_m,
                                    uintptr_t m,
                                    double *out);

// Bits per spatial-modulation symbol.
//
// # Safety
// `out` must be writable.
enum TsStatus ts_sm_bit_count(uintptr_t num_sas,
                              uintptr_t q,
                              uintptr_t constellation_order,
                              uint32_t *out);

// Bits per generalized index-modulation symbol with the standard antenna
// binomial.
//
// # Safety
// `out` must be writable.
enum TsStatus ts_gim_bit_count(uint64_t total_bands,
                               uint64_t active_bands,
                               uint64_t total_antennas,
                               uint64_t active_antennas,
                               uintptr_t constellation_order,
                               uint32_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TERASIM_H */
