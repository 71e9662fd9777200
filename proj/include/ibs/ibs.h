#ifndef IBS_IBS_H
#define IBS_IBS_H

#include <stddef.h>

#if defined(IBS_BUILDING_LIBRARY)
#define IBS_API __attribute__((visibility("default")))
#else
#define IBS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ibs_status {
  IBS_OK = 0,
  IBS_ERR_INVALID_ARGUMENT = 1,
  IBS_ERR_CONFIG = 2,
  IBS_ERR_IO = 3,
  IBS_ERR_MARGIN = 4,
  IBS_ERR_NUMERICAL = 5,
  IBS_ERR_INTERNAL = 6
} ibs_status;

typedef enum ibs_termination {
  IBS_COMPLETED = 0,
  IBS_MARGIN_ABORT = 1,
  IBS_NAN_ABORT = 2
} ibs_termination;

typedef struct ibs_config ibs_config;
typedef struct ibs_state ibs_state;

typedef struct ibs_record {
  double t;
  double energy;
  double dissipation;
  double area;
  double perimeter;
  double closure_defect;
  double beta1;
  double beta2;
  double H1, H2, H2_5;
  double h0, h1_5;
  double a[4]; /* a_1..a_4 */
  double b[4];
  double fuglede;
  double gage; /* NaN when not convex */
} ibs_record;

typedef struct ibs_run_summary {
  ibs_termination termination;
  long steps;
  double final_time;
} ibs_run_summary;

typedef void (*ibs_criterion_callback)(int id, const char* name, int passed, const char* detail, double seconds,
                                       void* user);

IBS_API const char* ibs_version(void);
/* Message of the last failed call on this thread; empty when none. */
IBS_API const char* ibs_last_error(void);

IBS_API ibs_status ibs_config_load(const char* path, ibs_config** out);
IBS_API ibs_status ibs_config_parse(const char* text, ibs_config** out);
IBS_API ibs_status ibs_config_set_out_dir(ibs_config* config, const char* dir);
IBS_API const char* ibs_config_out_dir(const ibs_config* config);
IBS_API void ibs_config_free(ibs_config* config);

IBS_API ibs_status ibs_state_from_preset(const ibs_config* config, ibs_state** out);
IBS_API ibs_status ibs_state_load(const char* snapshot_path, ibs_state** out);
IBS_API ibs_status ibs_state_save(const ibs_state* state, const char* snapshot_path);
IBS_API int ibs_state_size(const ibs_state* state);
IBS_API void ibs_state_free(ibs_state* state);

/* Runs the configured preset and writes outputs into the configured directory. */
IBS_API ibs_status ibs_run(const ibs_config* config, ibs_run_summary* summary);

/* config may be NULL for default force parameters. */
IBS_API ibs_status ibs_diagnose(const ibs_state* state, const ibs_config* config, ibs_record* out);

/* ids may be NULL (all criteria); *failed receives the number of failing criteria. */
IBS_API ibs_status ibs_verify(const int* ids, size_t count, ibs_criterion_callback callback, void* user, int* failed);
IBS_API int ibs_criterion_count(void);

#ifdef __cplusplus
}
#endif

#endif
