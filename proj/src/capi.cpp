#include "ibs/ibs.h"

#include <string>

#include "ibs/acceptance.hpp"
#include "ibs/diagnostics.hpp"
#include "ibs/error.hpp"
#include "ibs/io.hpp"

struct ibs_config {
  ibs::SimConfig value;
};

struct ibs_state {
  ibs::CurveState value;
};

namespace {

thread_local std::string last_error;

ibs_status status_of(ibs::ErrorKind kind) {
  switch (kind) {
    case ibs::ErrorKind::Config: return IBS_ERR_CONFIG;
    case ibs::ErrorKind::Io: return IBS_ERR_IO;
    case ibs::ErrorKind::InvalidArgument:
    case ibs::ErrorKind::Domain: return IBS_ERR_INVALID_ARGUMENT;
    case ibs::ErrorKind::WellStretchedViolation:
    case ibs::ErrorKind::SelfIntersection:
    case ibs::ErrorKind::NonClosable: return IBS_ERR_MARGIN;
    case ibs::ErrorKind::Singularity:
    case ibs::ErrorKind::NumericalBreakdown: return IBS_ERR_NUMERICAL;
  }
  return IBS_ERR_INTERNAL;
}

template <class F>
ibs_status guarded(F&& f) {
  last_error.clear();
  try {
    f();
    return IBS_OK;
  } catch (const ibs::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::exception& e) {
    last_error = e.what();
    return IBS_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return IBS_ERR_INTERNAL;
  }
}

ibs_status null_argument(const char* what) {
  last_error = std::string(what) + " is null";
  return IBS_ERR_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

const char* ibs_version(void) { return IBS_VERSION; }

const char* ibs_last_error(void) { return last_error.c_str(); }

ibs_status ibs_config_load(const char* path, ibs_config** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  return guarded([&] { *out = new ibs_config{ibs::parse_config(path)}; });
}

ibs_status ibs_config_parse(const char* text, ibs_config** out) {
  if (!text) return null_argument("text");
  if (!out) return null_argument("out");
  return guarded([&] { *out = new ibs_config{ibs::parse_config_text(text)}; });
}

ibs_status ibs_config_set_out_dir(ibs_config* config, const char* dir) {
  if (!config) return null_argument("config");
  if (!dir || !*dir) return null_argument("dir");
  return guarded([&] { config->value.out_dir = dir; });
}

const char* ibs_config_out_dir(const ibs_config* config) { return config ? config->value.out_dir.c_str() : ""; }

void ibs_config_free(ibs_config* config) { delete config; }

ibs_status ibs_state_from_preset(const ibs_config* config, ibs_state** out) {
  if (!config) return null_argument("config");
  if (!out) return null_argument("out");
  return guarded([&] { *out = new ibs_state{ibs::preset_state(config->value.preset, config->value)}; });
}

ibs_status ibs_state_load(const char* path, ibs_state** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  return guarded([&] { *out = new ibs_state{ibs::load_snapshot(path)}; });
}

ibs_status ibs_state_save(const ibs_state* state, const char* path) {
  if (!state) return null_argument("state");
  if (!path) return null_argument("path");
  return guarded([&] { ibs::write_snapshot(path, state->value); });
}

int ibs_state_size(const ibs_state* state) { return state ? state->value.n : 0; }

void ibs_state_free(ibs_state* state) { delete state; }

ibs_status ibs_run(const ibs_config* config, ibs_run_summary* summary) {
  if (!config) return null_argument("config");
  return guarded([&] {
    const ibs::RunResult r = ibs::run_to_directory(config->value, config->value.out_dir);
    if (summary) {
      summary->termination = static_cast<ibs_termination>(r.termination);
      summary->steps = r.steps;
      summary->final_time = r.final_state.time;
    }
    if (r.termination != ibs::Termination::Completed) last_error = r.message;
  });
}

ibs_status ibs_diagnose(const ibs_state* state, const ibs_config* config, ibs_record* out) {
  if (!state) return null_argument("state");
  if (!out) return null_argument("out");
  return guarded([&] {
    const ibs::ForceParams params = config ? config->value.params : ibs::ForceParams{};
    const ibs::DiagnosticsRecord r = ibs::diagnose_state(state->value, params);
    *out = ibs_record{};
    out->t = r.t;
    out->energy = r.energy;
    out->dissipation = r.dissipation;
    out->area = r.area;
    out->perimeter = r.perimeter;
    out->closure_defect = r.closure_defect;
    out->beta1 = r.beta1;
    out->beta2 = r.beta2;
    out->H1 = r.H1;
    out->H2 = r.H2;
    out->H2_5 = r.H2_5;
    out->h0 = r.h0;
    out->h1_5 = r.h1_5;
    for (int k = 1; k <= 4; ++k) {
      out->a[k - 1] = r.a[k];
      out->b[k - 1] = r.b[k];
    }
    out->fuglede = r.fuglede;
    out->gage = r.gage;
  });
}

ibs_status ibs_verify(const int* ids, size_t count, ibs_criterion_callback callback, void* user, int* failed) {
  if (count > 0 && !ids) return null_argument("ids");
  return guarded([&] {
    std::vector<int> only(ids, ids + count);
    int bad = 0;
    ibs::run_acceptance(only, [&](const ibs::CriterionResult& r) {
      if (!r.passed) ++bad;
      if (callback) callback(r.id, r.name.c_str(), r.passed ? 1 : 0, r.detail.c_str(), r.seconds, user);
    });
    if (failed) *failed = bad;
  });
}

int ibs_criterion_count(void) { return ibs::kCriterionCount; }

}  // extern "C"
