#include <doctest.h>

#include "gdrazin/scalar.hpp"
#include "gdrazin/errors.hpp"

using gdrazin::GaussRational;

TEST_CASE("gaussian rationals parse and print canonically") {
  CHECK(GaussRational::parse("1/2-3/4i").to_canonical() == "1/2-3/4i");
  CHECK(GaussRational::parse("2i") == GaussRational(0, 2));
  CHECK(GaussRational::parse("-i") == GaussRational(0, -1));
  CHECK(GaussRational::parse(" 3 ") == GaussRational(3));
  CHECK(GaussRational::parse("1/2+-3/4i") == GaussRational::parse("1/2-3/4i"));
  CHECK(GaussRational::parse("4/6").to_canonical() == "2/3");
  CHECK(GaussRational(0, 2).to_canonical() == "0/1+2/1i");
  CHECK(GaussRational(0, 2).to_compact() == "2i");
  CHECK(GaussRational(mpq_class(1, 2), -1).to_compact() == "1/2-i");
}

TEST_CASE("canonical strings round-trip") {
  for (const char* s : {"0/1", "-7/3", "5/1+1/9i", "0/1-2/1i", "-1/2-1/3i"}) {
    auto v = GaussRational::parse(s);
    CHECK(GaussRational::parse(v.to_canonical()) == v);
    CHECK(GaussRational::parse(v.to_compact()) == v);
  }
}

TEST_CASE("malformed scalars are rejected") {
  for (const char* s : {"", "abc", "1/0", "2ii", "1//2"}) CHECK_THROWS_AS(GaussRational::parse(s), gdrazin::ParseError);
}

TEST_CASE("field arithmetic") {
  const GaussRational i = GaussRational::i();
  CHECK(i * i == GaussRational(-1));
  const GaussRational z(mpq_class(1, 2), mpq_class(-3, 4));
  CHECK(z * z.inverse() == GaussRational(1));
  CHECK((z + z) / GaussRational(2) == z);
  CHECK((z - z).is_zero());
  CHECK(z.conj() == GaussRational(mpq_class(1, 2), mpq_class(3, 4)));
  CHECK_THROWS(GaussRational(0).inverse());
  CHECK(z.to_complex() == std::complex<double>(0.5, -0.75));
}

TEST_CASE("backend names") {
  CHECK(gdrazin::backend_from_string("exact") == gdrazin::Backend::exact);
  CHECK(gdrazin::to_string(gdrazin::Backend::approx) == "approx");
  CHECK_THROWS(gdrazin::backend_from_string("float"));
}
