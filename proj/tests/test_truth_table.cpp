#include "doctest.h"

#include <bit>
#include <string>

#include "rbn/errors.hpp"

#include "rbn/rng.hpp"
#include "rbn/truth_table.hpp"

using namespace rbn;

TEST_CASE("text form lists entry 0 first and slot 1 is the high bit") {
  const auto nand = TruthTable::parse("1110");
  CHECK(nand.to_string() == "1110");
  const Bit zz[] = {0, 0}, oo[] = {1, 1}, zo[] = {0, 1}, oz[] = {1, 0};
  CHECK(nand.eval(zz) == 1);
  CHECK(nand.eval(oo) == 0);

  const auto exor = TruthTable::parse("0110");
  CHECK(exor.eval(zo) == 1);
  CHECK(exor.eval(oz) == 1);
  CHECK(exor.eval(oo) == 0);

  const auto first = TruthTable::parse("0011");  // copies slot 1
  CHECK(first.eval(oz) == 1);
  CHECK(first.eval(zo) == 0);

  const Bit three[] = {1, 0, 0};
  CHECK(msb_first_index(three) == 4);
}

TEST_CASE("gate tables") {
  CHECK(gate_table(Gate::And, 2).to_string() == "0001");
  CHECK(gate_table(Gate::Nand, 2).to_string() == "1110");
  CHECK(gate_table(Gate::Or, 2).to_string() == "0111");
  CHECK(gate_table(Gate::Nor, 2).to_string() == "1000");
  CHECK(gate_table(Gate::And, 3).to_string() == "00000001");
  CHECK(as_gate(TruthTable::parse("0111")) == Gate::Or);
  CHECK_FALSE(as_gate(TruthTable::parse("0110")).has_value());
  CHECK(gate_name(Gate::Nor) == "NOR");
}

TEST_CASE("parse rejects malformed tables") {
  CHECK_THROWS_AS(TruthTable::parse("111"), Error);
  CHECK_THROWS_AS(TruthTable::parse("11x0"), Error);
  CHECK_THROWS_AS(TruthTable::parse(""), Error);
  CHECK_NOTHROW(TruthTable::parse("01"));
}

TEST_CASE("refunc step examples") {
  CHECK(refunc_step(TruthTable::parse("1110"), 0).to_string() == "0110");
  CHECK(refunc_step(TruthTable::parse("0000"), 0).to_string() == "0000");
  CHECK(refunc_step(TruthTable::parse("0000"), 1).to_string() == "1000");
  CHECK(refunc_step(TruthTable::parse("1111"), 1).to_string() == "1111");
  CHECK(refunc_step(TruthTable::parse("1101"), 1).to_string() == "1111");
}

TEST_CASE("refunc moves Hamming weight one step toward the target") {
  Rng rng(99);
  for (int i = 0; i < 4000; ++i) {
    const int arity = static_cast<int>(rng.below(6)) + 1;
    const std::uint64_t full = arity == 6 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (1 << arity)) - 1);
    const TruthTable t(arity, rng.next() & full);
    const Bit e = rng.coin();
    const TruthTable after = refunc_step(t, e);
    const int w = t.ones(), w2 = after.ones();
    const int saturated = e ? static_cast<int>(t.size()) : 0;
    if (w == saturated) {
      CHECK(after == t);
    } else {
      CHECK(w2 == (e ? w + 1 : w - 1));
      // exactly one differing position, and it is the lowest mismatch
      const std::uint64_t diff = t.bits() ^ after.bits();
      REQUIRE(std::popcount(diff) == 1);
      const std::uint64_t mismatch = (e ? ~t.bits() : t.bits()) & full;
      CHECK(diff == (mismatch & (~mismatch + 1)));
    }
  }
}

TEST_CASE("rewire table enforces the shift range") {
  RewireTable r(2, 3);
  CHECK(r.rows() == 4);
  r.set_shift(3, 2, -5);
  CHECK(r.shift(3, 2) == -5);
  CHECK(r.row(3)[2] == -5);
  CHECK_THROWS_AS(r.set_shift(0, 0, 6), ContractError);
  CHECK_THROWS_AS(r.set_shift(0, 0, -6), ContractError);
}
