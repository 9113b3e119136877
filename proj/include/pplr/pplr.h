#ifndef PPLR_PPLR_H
#define PPLR_PPLR_H

/* C interface to the pplr library.
 *
 * Every function returns a pplr_status. On failure pplr_last_error()
 * describes the problem; the message belongs to the calling thread and stays
 * valid until that thread's next pplr call. Strings returned through char**
 * are owned by the caller and released with pplr_string_free(). */

#include <stddef.h>
#include <stdint.h>

#if defined(PPLR_BUILDING_LIBRARY)
#define PPLR_API __attribute__((visibility("default")))
#else
#define PPLR_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pplr_status {
  PPLR_OK = 0,
  PPLR_ERR_INVALID_ARGUMENT = 1,
  PPLR_ERR_DATA = 2,
  PPLR_ERR_PROTOCOL = 3,
  PPLR_ERR_OVERFLOW = 4,
  PPLR_ERR_DEADLOCK = 5,
  PPLR_ERR_IO = 6,
  PPLR_ERR_INTERNAL = 7
} pplr_status;

typedef enum pplr_format { PPLR_FORMAT_TEXT = 0, PPLR_FORMAT_JSON = 1 } pplr_format;

typedef struct pplr_config pplr_config;
typedef struct pplr_dataset pplr_dataset;
typedef struct pplr_result pplr_result;

PPLR_API const char* pplr_version(void);
PPLR_API const char* pplr_last_error(void);
PPLR_API const char* pplr_status_name(pplr_status status);
PPLR_API void pplr_string_free(char* s);

/* --- configuration ---------------------------------------------------- */

/* protocol: olr, bmpc, cmpc, accurate-bmpc or accurate-cmpc. */
PPLR_API pplr_status pplr_config_new(const char* protocol, pplr_config** out);
PPLR_API void pplr_config_free(pplr_config* cfg);

/* Integer keys: iters, sigmoid-degree, parties, frac-bits, inv-iters, seed,
 * standardize (0/1), repeats, data-owners.
 * Real keys: split.
 * String keys: protocol, sigmoid (exact|poly), data.
 * Combinations are checked by pplr_config_validate and by every entry point
 * that takes a config. */
PPLR_API pplr_status pplr_config_set_int(pplr_config* cfg, const char* key, int64_t value);
PPLR_API pplr_status pplr_config_set_real(pplr_config* cfg, const char* key, double value);
PPLR_API pplr_status pplr_config_set_string(pplr_config* cfg, const char* key,
                                            const char* value);
PPLR_API pplr_status pplr_config_validate(const pplr_config* cfg);
/* Effective configuration as JSON. */
PPLR_API pplr_status pplr_config_json(const pplr_config* cfg, char** out);

/* --- datasets ---------------------------------------------------------- */

PPLR_API pplr_status pplr_dataset_load_csv(const char* path, pplr_dataset** out);
PPLR_API pplr_status pplr_dataset_synthetic(size_t records, size_t features, uint64_t seed,
                                            double noise, pplr_dataset** out);
/* features counts the intercept column. */
PPLR_API pplr_status pplr_dataset_shape(const pplr_dataset* d, size_t* records,
                                        size_t* features);
PPLR_API void pplr_dataset_free(pplr_dataset* d);

/* --- training ---------------------------------------------------------- */

PPLR_API pplr_status pplr_train(const pplr_dataset* d, const pplr_config* cfg,
                                pplr_result** out);
PPLR_API void pplr_result_free(pplr_result* r);

/* Coefficients in raw feature units, intercept first. The array stays owned
 * by the result. */
PPLR_API pplr_status pplr_result_beta(const pplr_result* r, const double** beta,
                                      size_t* count);
PPLR_API pplr_status pplr_result_metrics(const pplr_result* r, double* accuracy_percent,
                                         double* auc, double* seconds);
PPLR_API pplr_status pplr_result_comm(const pplr_result* r, uint64_t* multiplications,
                                      uint64_t* messages, uint64_t* bytes);
PPLR_API pplr_status pplr_result_report(const pplr_result* r, pplr_format format,
                                        char** out);
/* One coefficient per line. */
PPLR_API pplr_status pplr_result_write_model(const pplr_result* r, const char* path);

/* --- experiments ------------------------------------------------------- */

/* Timing sweep over synthetic data as CSV. Uses the config's protocol only
 * when all_protocols is 0, otherwise OLR, BMPC and CMPC. */
PPLR_API pplr_status pplr_bench(const pplr_config* cfg, const size_t* records,
                                size_t n_records, const size_t* features, size_t n_features,
                                int all_protocols, char** csv_out);

PPLR_API pplr_status pplr_comm_report(const pplr_dataset* d, const pplr_config* cfg,
                                      pplr_format format, char** out);

PPLR_API pplr_status pplr_reproduce_tables(const char* data_dir, const pplr_config* cfg,
                                           pplr_format format, char** out);

#ifdef __cplusplus
}
#endif

#endif /* PPLR_PPLR_H */
