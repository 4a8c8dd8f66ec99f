#include <cstdio>
#include <cstring>
#include <string>

#include "doctest.h"
#include "exdyn/exdyn.h"

TEST_CASE("models and operators through the C API") {
  exdyn_model* model = nullptr;
  REQUIRE(exdyn_model_parse("IEM(1,1)", &model) == EXDYN_OK);
  exdyn_operator* op = nullptr;
  REQUIRE(exdyn_transition_operator(model, 2, &op) == EXDYN_OK);

  size_t rows = 0;
  size_t cols = 0;
  REQUIRE(exdyn_operator_block_size(op, 2, &rows, &cols) == EXDYN_OK);
  CHECK(rows == 3);
  CHECK(cols == 3);

  // Sector 2 is ordered (0,2), (1,1), (2,0).
  size_t needed = 0;
  CHECK(exdyn_operator_entry(op, 2, 1, 0, nullptr, 0, &needed) == EXDYN_ERR_BUFFER_TOO_SMALL);
  CHECK(needed == 4);
  char buf[16];
  REQUIRE(exdyn_operator_entry(op, 2, 1, 0, buf, sizeof buf, &needed) == EXDYN_OK);
  CHECK(std::string(buf) == "1/4");
  REQUIRE(exdyn_operator_entry(op, 2, 1, 1, buf, sizeof buf, nullptr) == EXDYN_OK);
  CHECK(std::string(buf) == "1/2");
  CHECK(exdyn_operator_entry(op, 2, 5, 0, buf, sizeof buf, nullptr) == EXDYN_ERR_SHAPE);
  CHECK(exdyn_operator_block_size(op, 7, &rows, &cols) != EXDYN_OK);
  CHECK(std::strlen(exdyn_last_error()) > 0);

  exdyn_operator_free(op);
  exdyn_model_free(model);
}

TEST_CASE("errors map to status codes") {
  exdyn_model* model = nullptr;
  CHECK(exdyn_model_parse("IEM(0,1)", &model) == EXDYN_ERR_PARAMETER);
  CHECK(model == nullptr);
  CHECK(exdyn_model_parse(nullptr, &model) == EXDYN_ERR_INVALID_ARGUMENT);

  REQUIRE(exdyn_model_parse("RIEM(2,1;3,1)", &model) == EXDYN_OK);
  exdyn_operator* op = nullptr;
  CHECK(exdyn_transition_operator(model, 4, &op) == EXDYN_ERR_CAPACITY);
  exdyn_model_free(model);

  exdyn_config* config = nullptr;
  CHECK(exdyn_config_parse("command = verify-all\nbogus = 1\n", &config) == EXDYN_ERR_CONFIG);
  CHECK(std::string(exdyn_last_error()).find("line 2") != std::string::npos);
  CHECK(exdyn_config_load("/nonexistent/run.cfg", &config) == EXDYN_ERR_IO);
}

TEST_CASE("self-duality reports") {
  exdyn_model* good = nullptr;
  exdyn_model* bad = nullptr;
  REQUIRE(exdyn_model_parse("IEM(2,1;2,3)", &good) == EXDYN_OK);
  REQUIRE(exdyn_model_parse("IEM(1,1;2,1)", &bad) == EXDYN_OK);
  exdyn_report* r = nullptr;
  REQUIRE(exdyn_check_self_duality(good, 5, &r) == EXDYN_OK);
  CHECK(exdyn_report_passed(r) == 1);
  CHECK(std::string(exdyn_report_json(r)).find("\"verdict\": \"pass\"") != std::string::npos);
  exdyn_report_free(r);
  REQUIRE(exdyn_check_self_duality(bad, 4, &r) == EXDYN_OK);
  CHECK(exdyn_report_passed(r) == 0);
  CHECK(std::string(exdyn_report_json(r)).find("witness") != std::string::npos);
  exdyn_report_free(r);
  exdyn_model_free(good);
  exdyn_model_free(bad);
}

TEST_CASE("configs execute through the C API") {
  exdyn_config* config = nullptr;
  REQUIRE(exdyn_config_parse("command = verify-algebra\nmodel = RW\nnmax = 4\n", &config) == EXDYN_OK);
  CHECK(exdyn_config_set_arithmetic(config, "float") == EXDYN_OK);
  CHECK(exdyn_config_set_arithmetic(config, "other") == EXDYN_ERR_INVALID_ARGUMENT);
  CHECK(exdyn_config_set_seed(config, 99) == EXDYN_OK);
  exdyn_run_result* result = nullptr;
  const std::string out = std::string(P_tmpdir) + "/exdyn-capi-test";
  REQUIRE(exdyn_execute(config, out.c_str(), 2, &result) == EXDYN_OK);
  CHECK(exdyn_run_result_exit_code(result) == 0);
  CHECK(std::string(exdyn_run_result_summary(result)).find("0 failed") != std::string::npos);
  exdyn_run_result_free(result);
  exdyn_config_free(config);
  CHECK(std::string(exdyn_version()) == "0.1.0");
}
