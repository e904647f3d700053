#include <doctest.h>

#include "gdrazin/verify.hpp"
#include "support.hpp"

using namespace testing_support;

TEST_CASE("an empty run is ok") {
  VerifyOptions o;
  o.count = 0;
  VerifyReport rep = run_verification(o);
  CHECK(rep.records.empty());
  CHECK(rep.ok());
  json doc = verification_to_json(rep, o);
  CHECK(doc["summary"]["total"] == 0);
  CHECK(doc["version"] == version());
}

TEST_CASE("fixture family") {
  VerifyOptions o;
  o.families = {Family::G3};
  VerifyReport rep = run_verification(o);
  REQUIRE(rep.records.size() == 2);
  CHECK(rep.records[0].theorem == Theorem::T31);
  CHECK(rep.records[0].agree);
  // The printed block formula doubles the diagonal terms.
  CHECK(rep.records[1].theorem == Theorem::T43);
  CHECK_FALSE(rep.records[1].agree);
  CHECK(rep.records[1].max_residual == doctest::Approx(1.0));
  CHECK_FALSE(rep.ok());
}

TEST_CASE("record order does not depend on the number of jobs") {
  VerifyOptions o;
  o.families = {Family::G2, Family::G5};
  o.g5_targets = {Theorem::T41, Theorem::C32};
  o.count = 8;
  VerifyReport serial = run_verification(o);
  o.jobs = 4;
  VerifyReport parallel = run_verification(o);
  REQUIRE(serial.records.size() == parallel.records.size());
  for (std::size_t k = 0; k < serial.records.size(); ++k) {
    CHECK(serial.records[k].id == parallel.records[k].id);
    CHECK(serial.records[k].formula_digest == parallel.records[k].formula_digest);
  }
  CHECK(serial.ok());
}

TEST_CASE("approx runs agree within tolerance") {
  VerifyOptions o;
  o.families = {Family::G1, Family::G2, Family::G4};
  o.count = 10;
  o.backend = Backend::approx;
  VerifyReport rep = run_verification(o);
  CHECK(rep.summary.disagree == 0);
  CHECK(rep.summary.errors == 0);
}

TEST_CASE("budget exhaustion is counted, not fatal") {
  VerifyOptions o;
  o.families = {Family::G5};
  o.count = 2;
  o.budget = 0;
  VerifyReport rep = run_verification(o);
  CHECK(rep.summary.budget_exhausted == 2);
  CHECK(rep.ok());
}
