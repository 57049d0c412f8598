#include "doctest.h"

#include "arbiter/decimal.hpp"

using arbiter::Decimal;

TEST_CASE("parse and render") {
  CHECK(Decimal::parse("0.7")->to_string() == "0.7");
  CHECK(Decimal::parse("100000")->to_string() == "100000");
  CHECK(Decimal::parse("-2.25")->to_string() == "-2.25");
  CHECK(Decimal::parse("1.50")->to_string() == "1.5");
  CHECK_FALSE(Decimal::parse("1e5").has_value());
  CHECK_FALSE(Decimal::parse(".5").has_value());
  CHECK_FALSE(Decimal::parse("").has_value());
  CHECK((Decimal(1) / Decimal(3)).to_string() == "1/3");
}

TEST_CASE("exact boundary arithmetic") {
  const Decimal seven_tenths = *Decimal::parse("0.7");
  CHECK(seven_tenths * Decimal(80000) == Decimal(56000));
  CHECK(*Decimal::parse("1.5") * Decimal(80000) == Decimal(120000));
  const Decimal growth = (Decimal(1) + *Decimal::parse("0.5")).pow(2);
  CHECK(Decimal(70000) * growth == Decimal(157500));
  CHECK(*Decimal::parse("0.1") + *Decimal::parse("0.2") == *Decimal::parse("0.3"));
}

TEST_CASE("ordering") {
  CHECK(Decimal(3) < Decimal(4));
  CHECK(*Decimal::parse("-0.5") < Decimal(0));
  CHECK(Decimal(2).pow(0) == Decimal(1));
  CHECK(Decimal(7).is_integer());
  CHECK_FALSE(Decimal::parse("7.5")->is_integer());
}

TEST_CASE("twelve significant digits") {
  CHECK(arbiter::round_significant12(0.1 + 0.2) == arbiter::round_significant12(0.3));
  CHECK(arbiter::round_significant12(123456789012345.0) == 123456789012000.0);
}
