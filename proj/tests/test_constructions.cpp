#include <doctest.h>

#include "oracle.hpp"
#include "pdakit/constructions.hpp"
#include "pdakit/errors.hpp"

using namespace pdakit;

namespace {

PdaParams counted(const PdaArray& arr) {
  CHECK(oracle::check(arr).all());
  return params_of(arr);
}

}  // namespace

TEST_SUITE("constructions") {

TEST_CASE("general family") {
  CHECK(equivalent(construct_general({3, 2, 2, 1}), oracle::load_fixture("general_3_2_2_1.pda")));
  CHECK(counted(construct_general({3, 2, 2, 1})) == PdaParams{6, 18, 12, 9});
  CHECK(counted(construct_general({3, 1, 2, 1})) == PdaParams{6, 9, 3, 18});
  const auto p = counted(construct_general({2, 1, 2, 1}));
  CHECK(p == PdaParams{4, 4, 2, 4});
  CHECK(p.memory_ratio() == Rational(1, 2));
  CHECK(p.rate() == 1);
}

TEST_CASE("special family") {
  CHECK(equivalent(construct_special({3, 2, 2, 1}), oracle::load_fixture("special_3_2_2.pda")));
  CHECK(counted(construct_special({3, 2, 2, 1})) == PdaParams{9, 18, 12, 9});
  const auto yctc = counted(construct_special({3, 1, 2, 1}));
  CHECK(yctc == PdaParams{9, 9, 3, 18});
  CHECK(yctc.rate() == 2);
  const auto p = counted(construct_special({2, 1, 1, 1}));
  CHECK(p == PdaParams{4, 2, 1, 2});
  CHECK(p.memory_ratio() == Rational(1, 2));
  CHECK(p.rate() == 1);
}

TEST_CASE("extended general family") {
  CHECK(equivalent(construct_ext_general({3, 2, 2, 1}), oracle::load_fixture("ext_general_3_2_2_1.pda")));
  CHECK(counted(construct_ext_general({3, 2, 2, 1})) == PdaParams{12, 9, 6, 9});
  CHECK(counted(construct_ext_general({3, 1, 2, 1})) == PdaParams{6, 9, 3, 18});
  CHECK(counted(construct_ext_general({2, 1, 3, 2})) == PdaParams{12, 8, 6, 8});
}

TEST_CASE("extended special family") {
  CHECK(equivalent(construct_ext_special({3, 2, 2, 1}), oracle::load_fixture("ext_special_3_2_2.pda")));
  CHECK(counted(construct_ext_special({3, 2, 2, 1})) == PdaParams{15, 9, 6, 9});
  CHECK(counted(construct_ext_special({3, 1, 2, 1})) == PdaParams{9, 9, 3, 18});
  CHECK(counted(construct_ext_special({2, 1, 1, 1})) == PdaParams{4, 2, 1, 2});
}

TEST_CASE("w = 1 makes the special and extended special families coincide") {
  for (std::uint32_t q = 2; q <= 5; ++q)
    for (std::uint32_t m = 1; m <= 3; ++m)
      CHECK(equivalent(construct_special({q, 1, m, 1}), construct_ext_special({q, 1, m, 1})));
}

TEST_CASE("MN family") {
  CHECK(construct_mn(4, 2) == oracle::load_fixture("mn_4_2.pda"));
  CHECK(construct_mn(2, 1) == PdaArray::from_rows({{0, 1}, {1, 0}}));
  const auto p = counted(construct_mn(5, 2));
  CHECK(p == PdaParams{5, 10, 4, 10});
  CHECK(p.rate() == 1);
  for (std::uint32_t k = 2; k <= 8; ++k) {
    for (std::uint32_t t = 1; t < k; ++t) {
      const auto arr = construct_mn(k, t);
      CHECK(verify_pda(arr).valid);
      CHECK(params_of(arr) == mn_params(k, t));
      CHECK(params_of(arr).rate() == Rational(k - t, t + 1));
    }
  }
  CHECK_THROWS_AS(construct_mn(4, 4), DomainError);
  CHECK_THROWS_AS(construct_mn(1, 1), DomainError);
}

TEST_CASE("sweep: every construction is a PDA with the predicted parameters") {
  int built = 0;
  for (auto family : {Family::General, Family::Special, Family::ExtGeneral, Family::ExtSpecial}) {
    const bool special = family == Family::Special || family == Family::ExtSpecial;
    for (std::uint32_t q = 2; q <= 6; ++q)
      for (std::uint32_t z = 1; z < q; ++z)
        for (std::uint32_t t = 1; t <= (special ? 1u : 2u); ++t)
          for (std::uint32_t m = t + 1; m <= 4; ++m) {
            const ConstructionParams p{q, z, m, t};
            const auto expect = theorem_params(family, p);
            if (expect.users * expect.subpackets > 100'000) continue;
            const auto arr = construct(family, p);
            CAPTURE(family_name(family));
            CAPTURE(q);
            CAPTURE(z);
            CAPTURE(m);
            CAPTURE(t);
            CHECK(verify_pda(arr).valid);
            CHECK(params_of(arr) == expect);
            ++built;
          }
  }
  CHECK(built > 100);
}

TEST_CASE("verifier and naive oracle agree on small constructions") {
  for (auto family : {Family::General, Family::Special, Family::ExtGeneral, Family::ExtSpecial})
    for (std::uint32_t q = 2; q <= 4; ++q)
      for (std::uint32_t z = 1; z < q; ++z) {
        const auto arr = construct(family, {q, z, 2, 1});
        CHECK(oracle::check(arr).all());
      }
}

TEST_CASE("known-scheme specializations") {
  for (std::uint32_t q = 2; q <= 5; ++q)
    for (std::uint32_t t = 1; t <= 2; ++t)
      for (std::uint32_t m = t + 1; m <= 3; ++m) {
        const BigInt qm = ipow(BigInt(q), m);
        const BigInt K = binomial(m, t) * ipow(BigInt(q), t);
        const BigInt lower = ipow(BigInt(q - 1), t);
        const auto a = params_of(construct_general({q, 1, m, t}));
        CHECK(a == PdaParams{K, qm, qm - ipow(BigInt(q), m - t) * lower, lower * qm});
        CHECK(a.rate() == Rational(lower));
        const auto b = params_of(construct_general({q, q - 1, m, t}));
        CHECK(b == PdaParams{K, lower * qm, lower * qm - lower * ipow(BigInt(q), m - t), qm});
        CHECK(b.memory_ratio() == 1 - Rational(1, ipow(BigInt(q), t)));
        CHECK(b.rate() == Rational(1, lower));
      }
}

TEST_CASE("theorem parameters at full scale") {
  const auto special = theorem_params(Family::Special, {15, 10, 26, 1});
  CHECK(special.users == 405);
  CHECK(special.rate() == Rational(5, 2));
  CHECK(log_of(special.subpackets) == doctest::Approx(71.1025).epsilon(1e-6));
  const auto ext = theorem_params(Family::ExtSpecial, {9, 6, 22, 1});
  CHECK(ext.users == 405);
  CHECK(ext.rate() == 3);
  CHECK(log_of(ext.subpackets) == doctest::Approx(48.3389).epsilon(1e-6));
  CHECK(theorem_params(Family::Special, {3, 2, 134, 1}).subpackets == 2 * ipow(BigInt(3), 134));
}

TEST_CASE("domain checks") {
  CHECK_THROWS_AS(construct_general({3, 2, 2, 2}), DomainError);
  CHECK_THROWS_AS(construct_general({3, 3, 2, 1}), DomainError);
  CHECK_THROWS_AS(construct_general({3, 0, 2, 1}), DomainError);
  CHECK_THROWS_AS(construct_general({1, 1, 2, 1}), DomainError);
  CHECK_THROWS_AS(construct_special({3, 2, 2, 2}), DomainError);
  CHECK_THROWS_AS(construct_ext_special({3, 2, 0, 1}), DomainError);
  try {
    construct_general({3, 2, 2, 2});
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("t < m") != std::string::npos);
  }
}

TEST_CASE("the cell cap refuses large arrays before allocating") {
  CHECK_THROWS_AS(construct_special({3, 2, 134, 1}), CapacityError);
  CHECK_THROWS_AS(construct_general({3, 2, 3, 1}, BuildOptions{100}), CapacityError);
  CHECK_THROWS_AS(construct_mn(40, 20), CapacityError);
}

TEST_CASE("construction is deterministic") {
  CHECK(construct_ext_general({4, 3, 3, 2}) == construct_ext_general({4, 3, 3, 2}));
  CHECK(emit_pda(construct_special({5, 3, 2, 1})) == emit_pda(construct_special({5, 3, 2, 1})));
}

}  // TEST_SUITE
