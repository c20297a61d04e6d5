#include <random>

#include "doctest.h"
#include "golden.hpp"
#include "puresets/errors.hpp"
#include "puresets/limits.hpp"
#include "puresets/pure_set.hpp"

using namespace puresets;

TEST_CASE("depth-3 table: codes, strings and depths") {
  for (const auto& row : golden::rows) {
    CAPTURE(row.code);
    PureSet x = decode(Code(row.code));
    CHECK(print_braces(x, BracesStyle::plain) == row.plain);
    CHECK(print_braces(x, BracesStyle::commas) == row.commas);
    CHECK(print_braces(x, BracesStyle::commas_empty) == row.commas_empty);
    CHECK(x.depth() == row.depth);
    CHECK((row.code == 0 ? std::string() : x.code().get_str(2)) == row.binary);
    CHECK(parse_braces(row.plain).code() == row.code);
    CHECK(parse_braces(row.commas).code() == row.code);
    CHECK(parse_braces(row.commas_empty).code() == row.code);
  }
}

TEST_CASE("printing code 14") {
  CHECK(print_braces(decode(14)) == "{{{{}}{}}{{{}}}{{}}}");
  CHECK(print_braces(decode(11), BracesStyle::commas_empty) ==
        "{{{\xE2\x88\x85},\xE2\x88\x85},{\xE2\x88\x85},\xE2\x88\x85}");
}

TEST_CASE("parse accepts whitespace, zero and unsorted elements") {
  CHECK(parse_braces("  { {  } }\n").code() == 1);
  CHECK(parse_braces("{0,{0}}").code() == 3);
  CHECK(parse_braces("{{},{{}}}").code() == 3);
  CHECK(parse_braces("{{}{}}").code() == 1);  // duplicates collapse
  CHECK(parse_braces("0").code() == 0);
}

TEST_CASE("parse errors carry byte offsets") {
  auto offset_of = [](std::string_view s) -> long {
    try {
      parse_braces(s);
    } catch (const SyntaxError& e) {
      return static_cast<long>(e.offset());
    }
    return -1;
  };
  CHECK(offset_of("{{}") == 0);
  CHECK(offset_of("{}}") == 2);
  CHECK(offset_of("{,}") == 1);
  CHECK(offset_of("{{},}") == 4);
  CHECK(offset_of("{{},,{}}") == 4);
  CHECK(offset_of("{a}") == 1);
  CHECK(offset_of("{}{}") == 2);
  CHECK(offset_of("") == 0);
}

TEST_CASE("encode/decode and print/parse round trips over S_4") {
  for (std::uint32_t c = 0; c < 65536; ++c) {
    PureSet x = decode(c);
    REQUIRE(encode(x) == c);
    if (c % 7 == 0) {
      for (auto style : {BracesStyle::plain, BracesStyle::commas, BracesStyle::commas_empty})
        REQUIRE(parse_braces(print_braces(x, style)) == x);
    }
  }
}

TEST_CASE("random wide codes round trip") {
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(12345);
  for (int i = 0; i < 20; ++i) {
    mpz_class n = rng.get_z_bits(3000 + 97 * i);
    PureSet x = decode(n);
    CHECK(encode(x) == n);
    CHECK(parse_braces(print_braces(x, BracesStyle::commas)).code() == n);
    CHECK(from_dyck(to_dyck(x)) == x);
  }
}

TEST_CASE("elements are strictly decreasing by code") {
  PureSet x = PureSet::from_elements({decode(1), decode(7), decode(0), decode(7), decode(3)});
  REQUIRE(x.size() == 4);
  for (std::size_t i = 1; i < x.size(); ++i) CHECK(x.elements()[i - 1].code() > x.elements()[i].code());
  CHECK(x.code() == (1 << 7) + (1 << 3) + 2 + 1);
  CHECK(x.contains(decode(3)));
  CHECK(!x.contains(decode(2)));
}

TEST_CASE("named families") {
  const unsigned mat[] = {0, 1, 2, 4, 16, 65536};
  for (unsigned k = 0; k < 6; ++k) {
    CHECK(matryoshka(k).code() == mat[k]);
    CHECK(matryoshka(k).depth() == k);
  }
  // c_{n+1} = 2^{c_n} + c_n
  mpz_class c = 0;
  for (unsigned k = 0; k < 6; ++k) {
    PureSet v = von_neumann(k);
    CHECK(v.code() == c);
    CHECK(v.size() == k);
    CHECK(v.depth() == k);
    CHECK(is_transitive(v));
    mpz_class next = 0;
    mpz_setbit(next.get_mpz_t(), c.get_ui());
    c = next + c;
  }
  CHECK(von_neumann(3).code() == 11);
  const unsigned uni[] = {1, 3, 15, 65535};
  for (unsigned k = 0; k < 4; ++k) CHECK(universe(k).code() == uni[k]);
  CHECK(universe(4).code() == mpz_class(1) * 0 + ((mpz_class(1) << 65536) - 1));
  CHECK(universe(4).size() == 65536);
  CHECK(is_transitive(universe(3)));
  CHECK(!is_transitive(decode(2)));
}

TEST_CASE("Dyck encoding") {
  CHECK(to_dyck(decode(0)).to_string() == "UD");
  CHECK(to_dyck(decode(3)).to_string() == "UUUDDUDD");
  CHECK(to_dyck(decode(3)).to_string(true) == "11100100");
  CHECK(from_dyck(DyckWord::parse("UUDUUDDD")).code() == 3);
  CHECK(from_dyck(DyckWord::parse("1 1 0 1 1 0 0 0")).code() == 3);
  for (std::uint32_t c = 0; c < 65536; c += (c < 16 ? 1 : 37)) {
    PureSet x = decode(c);
    DyckWord w = to_dyck(x);
    CHECK(w.is_strict_excursion());
    CHECK(w.max_height() == x.depth() + 1);
    CHECK(from_dyck(w) == x);
    CHECK(DyckWord::parse(w.to_string()) == w);
  }
  for (const char* bad : {"UDUD", "UUD", "DU", "U", "UDD", ""}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(from_dyck(DyckWord::parse(bad)), InvalidExcursion);
  }
  CHECK_THROWS_AS(DyckWord::parse("UXD"), SyntaxError);
}

TEST_CASE("bit budget") {
  const std::string wide = print_braces(von_neumann(5));
  ScopedLimits guard({100, 6, 7});
  CHECK_THROWS_AS(PureSet::from_elements({decode(200)}), CapacityError);
  CHECK_THROWS_AS(decode(mpz_class(1) << 150), CapacityError);
  CHECK_THROWS_AS(matryoshka(6), CapacityError);
  CHECK_NOTHROW(PureSet::from_elements({decode(99)}));
  CHECK_THROWS_AS(parse_braces(wide), CapacityError);
  CHECK_NOTHROW(parse_braces(print_braces(von_neumann(4))));
}
