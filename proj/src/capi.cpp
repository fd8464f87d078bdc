#include "mehlerkit/mehlerkit.h"

#include <string>

#include "errors.hpp"
#include "runner.hpp"

struct mehlerkit_result {
  std::string json;
  std::string text;
  bool passed = false;
};

namespace {
thread_local std::string g_last_error;
}

extern "C" {

const char* mehlerkit_version(void) { return mehlerkit::version_string(); }

const char* mehlerkit_status_name(mehlerkit_status status) {
  switch (status) {
    case MEHLERKIT_OK: return "ok";
    case MEHLERKIT_ERR_CONFIG: return "config-error";
    case MEHLERKIT_ERR_BUDGET: return "budget-exceeded";
    case MEHLERKIT_ERR_INTERNAL: return "internal-error";
  }
  return "unknown";
}

mehlerkit_status mehlerkit_run(const char* config_json, mehlerkit_result** out) {
  if (out) *out = nullptr;
  g_last_error.clear();
  if (!config_json || !out) {
    g_last_error = "null argument";
    return MEHLERKIT_ERR_CONFIG;
  }
  try {
    mehlerkit::RunConfig cfg = mehlerkit::parse_config(config_json);
    mehlerkit::RunOutput ro = mehlerkit::run(cfg);
    auto* result = new mehlerkit_result;
    result->json = ro.json.dump(2);
    result->text = ro.text;
    result->passed = ro.passed;
    *out = result;
    return ro.budget_exceeded ? MEHLERKIT_ERR_BUDGET : MEHLERKIT_OK;
  } catch (const mehlerkit::ConfigError& e) {
    g_last_error = e.what();
    return MEHLERKIT_ERR_CONFIG;
  } catch (const mehlerkit::BudgetError& e) {
    g_last_error = e.what();
    return MEHLERKIT_ERR_BUDGET;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MEHLERKIT_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return MEHLERKIT_ERR_INTERNAL;
  }
}

const char* mehlerkit_result_json(const mehlerkit_result* result) {
  return result ? result->json.c_str() : "";
}

const char* mehlerkit_result_text(const mehlerkit_result* result) {
  return result ? result->text.c_str() : "";
}

int mehlerkit_result_passed(const mehlerkit_result* result) {
  return result && result->passed ? 1 : 0;
}

void mehlerkit_result_free(mehlerkit_result* result) { delete result; }

const char* mehlerkit_last_error(void) { return g_last_error.c_str(); }

}  // extern "C"
