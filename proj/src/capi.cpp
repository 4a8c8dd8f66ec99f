#include "exdyn/exdyn.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "exdyn/config.hpp"
#include "exdyn/errors.hpp"
#include "report_json.hpp"

struct exdyn_config {
  exdyn::RunConfig config;
};

struct exdyn_run_result {
  exdyn::ExecuteResult result;
};

struct exdyn_model {
  exdyn::ModelSpec spec;
};

struct exdyn_operator {
  exdyn::SectorOperator op;
};

struct exdyn_report {
  exdyn::CheckReport report;
  std::string json;
};

namespace {

thread_local std::string last_error;

exdyn_status fail(exdyn_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <class F>
exdyn_status guarded(F&& f) {
  try {
    last_error.clear();
    f();
    return EXDYN_OK;
  } catch (const exdyn::ConfigError& e) {
    return fail(EXDYN_ERR_CONFIG, e.what());
  } catch (const exdyn::ParameterError& e) {
    return fail(EXDYN_ERR_PARAMETER, e.what());
  } catch (const exdyn::CapacityError& e) {
    return fail(EXDYN_ERR_CAPACITY, e.what());
  } catch (const exdyn::ConditioningError& e) {
    return fail(EXDYN_ERR_CONDITIONING, e.what());
  } catch (const exdyn::ShapeError& e) {
    return fail(EXDYN_ERR_SHAPE, e.what());
  } catch (const exdyn::ModelError& e) {
    return fail(EXDYN_ERR_MODEL, e.what());
  } catch (const exdyn::DescriptorError& e) {
    return fail(EXDYN_ERR_DESCRIPTOR, e.what());
  } catch (const exdyn::MultiplicityError& e) {
    return fail(EXDYN_ERR_MULTIPLICITY, e.what());
  } catch (const exdyn::IoError& e) {
    return fail(EXDYN_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(EXDYN_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(EXDYN_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(EXDYN_ERR_INTERNAL, "unknown error");
  }
}

}  // namespace

extern "C" {

const char* exdyn_last_error(void) { return last_error.c_str(); }

const char* exdyn_version(void) { return "0.1.0"; }

exdyn_status exdyn_config_parse(const char* text, exdyn_config** out) {
  if (!text || !out) return fail(EXDYN_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new exdyn_config{exdyn::parse_config(text)}; });
}

exdyn_status exdyn_config_load(const char* path, exdyn_config** out) {
  if (!path || !out) return fail(EXDYN_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new exdyn_config{exdyn::load_config(path)}; });
}

exdyn_status exdyn_config_set_seed(exdyn_config* config, uint64_t seed) {
  if (!config) return fail(EXDYN_ERR_INVALID_ARGUMENT, "null config");
  config->config.seed = seed;
  return EXDYN_OK;
}

exdyn_status exdyn_config_set_arithmetic(exdyn_config* config, const char* mode) {
  if (!config || !mode) return fail(EXDYN_ERR_INVALID_ARGUMENT, "null argument");
  const std::string m = mode;
  if (m == "exact") {
    config->config.arithmetic.mode = exdyn::Arithmetic::Mode::exact;
  } else if (m == "float") {
    config->config.arithmetic.mode = exdyn::Arithmetic::Mode::floating;
  } else {
    return fail(EXDYN_ERR_INVALID_ARGUMENT, "arithmetic must be 'exact' or 'float', got '" + m + "'");
  }
  return EXDYN_OK;
}

void exdyn_config_free(exdyn_config* config) { delete config; }

exdyn_status exdyn_execute(const exdyn_config* config, const char* out_dir, int jobs, exdyn_run_result** out) {
  if (!config || !out) return fail(EXDYN_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto r = exdyn::execute(config->config, out_dir ? out_dir : "", jobs > 0 ? static_cast<unsigned>(jobs) : 1u);
    *out = new exdyn_run_result{std::move(r)};
  });
}

int exdyn_run_result_exit_code(const exdyn_run_result* result) { return result ? result->result.exit_code : -1; }

const char* exdyn_run_result_summary(const exdyn_run_result* result) {
  return result ? result->result.summary.c_str() : "";
}

void exdyn_run_result_free(exdyn_run_result* result) { delete result; }

exdyn_status exdyn_model_parse(const char* text, exdyn_model** out) {
  if (!text || !out) return fail(EXDYN_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new exdyn_model{exdyn::parse_model_spec(text)}; });
}

void exdyn_model_free(exdyn_model* model) { delete model; }

exdyn_status exdyn_transition_operator(const exdyn_model* model, long nmax, exdyn_operator** out) {
  if (!model || !out) return fail(EXDYN_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new exdyn_operator{exdyn::transition_operator(model->spec, nmax)}; });
}

exdyn_status exdyn_operator_block_size(const exdyn_operator* op, long sector, size_t* rows, size_t* cols) {
  if (!op || !rows || !cols) return fail(EXDYN_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto& block = op->op.block(sector);
    *rows = block.rows();
    *cols = block.cols();
  });
}

exdyn_status exdyn_operator_entry(const exdyn_operator* op, long sector, size_t row, size_t col, char* buf,
                                  size_t buflen, size_t* needed) {
  if (!op) return fail(EXDYN_ERR_INVALID_ARGUMENT, "null operator");
  std::string text;
  const exdyn_status st = guarded([&] {
    const auto& block = op->op.block(sector);
    if (row >= block.rows() || col >= block.cols()) throw exdyn::ShapeError("entry outside the block");
    text = exdyn::to_string(block.at(row, col));
  });
  if (st != EXDYN_OK) return st;
  if (needed) *needed = text.size() + 1;
  if (!buf || buflen < text.size() + 1) return fail(EXDYN_ERR_BUFFER_TOO_SMALL, "buffer too small");
  std::memcpy(buf, text.c_str(), text.size() + 1);
  return EXDYN_OK;
}

void exdyn_operator_free(exdyn_operator* op) { delete op; }

exdyn_status exdyn_check_self_duality(const exdyn_model* model, long nmax, exdyn_report** out) {
  if (!model || !out) return fail(EXDYN_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    const auto pi = exdyn::transition_operator(model->spec, nmax);
    auto report = exdyn::check_self_duality(pi, exdyn::duality_function(model->spec), nmax);
    report.model = model->spec.to_string();
    auto json = exdyn::report_to_json(report).dump(2);
    *out = new exdyn_report{std::move(report), std::move(json)};
  });
}

int exdyn_report_passed(const exdyn_report* report) { return report && report->report.ok() ? 1 : 0; }

const char* exdyn_report_json(const exdyn_report* report) { return report ? report->json.c_str() : ""; }

void exdyn_report_free(exdyn_report* report) { delete report; }

}  // extern "C"
