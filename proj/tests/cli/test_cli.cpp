#include "doctest.h"
#include "nhspec/errors.hpp"
#include "run_config.hpp"
#include "runner.hpp"

using namespace nhspec;
using namespace nhspec::cli;
using nlohmann::json;

namespace {

RunConfig dimer(double g, double k) {
  RunConfig c;
  c.model = ModelKind::Dimer;
  c.parameters = {{"g", g}, {"k", k}};
  return c;
}

}  // namespace

TEST_CASE("sweep argument parsing") {
  const auto s = SweepSpec::parse("g:0:2:21");
  CHECK(s.parameter == "g");
  CHECK(s.steps == 21);
  CHECK(s.value(0) == 0.0);
  CHECK(s.value(20) == 2.0);
  CHECK(s.value(10) == doctest::Approx(1.0));
  CHECK_THROWS(SweepSpec::parse("g:0:2"));
  CHECK_THROWS(SweepSpec::parse("g:0:x:3"));
}

TEST_CASE("parameter validation names the valid set") {
  RunConfig c;
  c.model = ModelKind::Cubic;
  c.parameters["gamma"] = 1.0;
  try {
    c.validate();
    FAIL("expected a ParameterError");
  } catch (const ParameterError& e) {
    CHECK(std::string(e.what()).find("gamma") != std::string::npos);
  }
  CHECK_NOTHROW(dimer(0.5, 1.0).validate());
  CHECK(valid_parameters(ModelKind::PU).size() == 5);
}

TEST_CASE("config merge and round trip") {
  RunConfig c;
  c.merge_json(json{{"model", "pu"}, {"parameters", {{"omega2", 3.0}}}, {"truncation", {10, 12}}, {"tolerances", {{"real", 1e-9}}}});
  CHECK(c.model == ModelKind::PU);
  CHECK(c.parameters.at("omega2") == 3.0);
  CHECK(c.truncation == std::vector<int>{10, 12});
  CHECK(c.tol_real == 1e-9);
  RunConfig copy;
  copy.merge_json(c.to_json());
  CHECK(copy.to_json() == c.to_json());
  CHECK_THROWS(c.merge_json(json{{"no_such_key", 1}}));
}

TEST_CASE("matrix text parsing") {
  const CMatrix m = parse_matrix_text("2\n1,0 0,-1\n2.5,0 0,0\n");
  CHECK(m(0, 1) == Complex(0, -1));
  CHECK(m(1, 0) == Complex(2.5, 0));
  CHECK_THROWS_AS(parse_matrix_text("2\n1,0 1,0\n0,0\n"), ParameterError);
  CHECK_THROWS_AS(parse_matrix_text("1\n1;0\n"), ParameterError);
  CHECK_THROWS_AS(parse_matrix_text("1\n1,0 2,0\n"), ParameterError);
  CHECK_THROWS_AS(parse_matrix_text("0\n"), ParameterError);
}

TEST_CASE("spectrum report for the dimer") {
  const auto r = run_spectrum(dimer(0.6, 1.0));
  CHECK(r.exit_code == kExitOk);
  REQUIRE(r.json["eigenvalues"].size() == 2);
  CHECK(r.json["eigenvalues"][0]["re"].get<double>() == doctest::Approx(-0.8));
  CHECK(r.json["classification"]["phase"] == "unbroken");
  CHECK(r.json["flags"]["antilinear_symmetric"] == true);
  CHECK(r.json["residuals"]["biorthogonality"].get<double>() < 1e-12);
  CHECK(r.json.contains("version"));

  const auto broken = run_spectrum(dimer(1.0, 0.6));
  CHECK(broken.json["classification"]["phase"] == "broken");
  CHECK(broken.json["flags"]["broken_phase"] == true);

  const auto rendered = r.render(OutputFormat::Json);
  CHECK(json::parse(rendered) == r.json);
  CHECK(r.render(OutputFormat::Csv).rfind("index,re,im\n", 0) == 0);
}

TEST_CASE("levels option never splits a conjugate pair") {
  RunConfig c;
  c.model = ModelKind::PU;
  c.parameters = {{"alpha", 1.0}, {"beta", 0.5}};
  c.truncation = {12, 12};
  c.levels = 2;
  const auto r = run_spectrum(c);
  const auto& ev = r.json["eigenvalues"];
  REQUIRE(ev.size() == 3);
  CHECK(ev[1]["im"].get<double>() == doctest::Approx(-ev[2]["im"].get<double>()));
  CHECK(r.json["flags"]["levels_cut"] == true);
}

TEST_CASE("sweep locates the dimer exceptional point") {
  RunConfig c = dimer(0.0, 1.0);
  c.sweep = SweepSpec::parse("g:0:2:41");
  const auto r = run_sweep(c);
  CHECK(r.exit_code == kExitOk);
  CHECK(r.json["flags"]["transition_found"] == true);
  CHECK(r.json["exceptional_point"]["estimate"].get<double>() == doctest::Approx(1.0));
  CHECK(r.json["steps"].size() == 41);
}

TEST_CASE("overlap report") {
  RunConfig c = dimer(0.5, 1.0);
  c.t_steps = 11;
  const auto r = run_overlap(c);
  CHECK(r.exit_code == kExitOk);
  CHECK(r.json["flags"]["time_independent"] == true);
  CHECK(r.json["flags"]["selection_rule"] == true);
}

TEST_CASE("checks pass for the built-in models") {
  for (const auto kind : {ModelKind::Dimer, ModelKind::Cubic, ModelKind::Harmonic}) {
    RunConfig c;
    c.model = kind;
    if (kind != ModelKind::Dimer) c.truncation = {16};
    const auto r = run_checks(c);
    INFO(r.json.dump(1));
    CHECK(r.exit_code == kExitOk);
    CHECK(r.json["flags"]["passed"] == true);
  }
}

TEST_CASE("checks fail for a conjugation-asymmetric custom matrix") {
  RunConfig c;
  c.model = ModelKind::CustomMatrixFile;
  c.matrix_file = NHSPEC_CLI_DATA "/corrupted.txt";
  const auto r = run_checks(c);
  CHECK(r.exit_code == kExitChecksFailed);
  CHECK(r.json["flags"]["passed"] == false);
}

TEST_CASE("error report shape") {
  const auto r = error_report("parameter", "bad value");
  CHECK(r.exit_code == kExitError);
  CHECK(r.json["error"]["kind"] == "parameter");
  CHECK(r.json["error"]["message"] == "bad value");
}
