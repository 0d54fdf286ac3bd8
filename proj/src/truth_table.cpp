#include "rbn/truth_table.hpp"

#include <bit>

#include "rbn/errors.hpp"

namespace rbn {

BitTable::BitTable(int arity, std::uint64_t bits) : arity_(arity) {
  if (arity < 0 || arity > kMaxArity)
    throw ContractError("table arity " + std::to_string(arity) + " outside [0, 6]");
  bits_ = bits & mask();
}

std::uint64_t BitTable::mask() const {
  return arity_ == kMaxArity ? ~std::uint64_t{0} : (std::uint64_t{1} << size()) - 1;
}

BitTable BitTable::parse(std::string_view text) {
  const auto n = text.size();
  if (n == 0 || !std::has_single_bit(n) || n > (std::size_t{1} << kMaxArity))
    throw Error("table '" + std::string(text) + "' must have 2^k characters, k <= 6");
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (text[i] == '1')
      bits |= std::uint64_t{1} << i;
    else if (text[i] != '0')
      throw Error("table '" + std::string(text) + "' contains a character other than 0/1");
  }
  return BitTable(std::countr_zero(n), bits);
}

void BitTable::set(std::size_t index, Bit value) {
  if (value)
    bits_ |= std::uint64_t{1} << index;
  else
    bits_ &= ~(std::uint64_t{1} << index);
}

void BitTable::flip(std::size_t index) { bits_ ^= std::uint64_t{1} << index; }

int BitTable::ones() const { return std::popcount(bits_); }

std::string BitTable::to_string() const {
  std::string out(size(), '0');
  for (std::size_t i = 0; i < size(); ++i)
    if ((*this)[i]) out[i] = '1';
  return out;
}

TruthTable TruthTable::constant(int arity, Bit value) {
  return TruthTable(arity, value ? ~std::uint64_t{0} : 0);
}

TruthTable refunc_step(const TruthTable& table, Bit target) {
  // Entries that differ from the target, as a bit set.
  const std::uint64_t differ = (target ? ~table.bits() : table.bits()) & table.mask();
  if (differ == 0) return table;
  TruthTable out = table;
  out.flip(static_cast<std::size_t>(std::countr_zero(differ)));
  return out;
}

RewireTable::RewireTable(int control_arity, int slots)
    : control_arity_(control_arity), slots_(slots),
      shifts_((std::size_t{1} << control_arity) * static_cast<std::size_t>(slots), 0) {
  if (control_arity < 0 || control_arity > kMaxArity || slots < 0)
    throw ContractError("bad rewire table shape");
}

void RewireTable::set_shift(std::size_t r, int slot, int value) {
  if (value < -kMaxShift || value > kMaxShift)
    throw ContractError("rewire shift " + std::to_string(value) + " outside [-5, 5]");
  shifts_[r * static_cast<std::size_t>(slots_) + static_cast<std::size_t>(slot)] =
      static_cast<std::int8_t>(value);
}

TruthTable gate_table(Gate gate, int arity) {
  const TruthTable all_ones = TruthTable::constant(arity, 1);
  const std::uint64_t last = std::uint64_t{1} << (all_ones.size() - 1);
  switch (gate) {
    case Gate::And:
      return TruthTable(arity, last);
    case Gate::Nand:
      return TruthTable(arity, all_ones.bits() & ~last);
    case Gate::Or:
      return TruthTable(arity, all_ones.bits() & ~std::uint64_t{1});
    case Gate::Nor:
      return TruthTable(arity, 1);
  }
  return {};
}

std::optional<Gate> as_gate(const TruthTable& table) {
  for (Gate g : kGates)
    if (gate_table(g, table.arity()) == table) return g;
  return std::nullopt;
}

std::string_view gate_name(Gate gate) {
  switch (gate) {
    case Gate::And: return "AND";
    case Gate::Nand: return "NAND";
    case Gate::Or: return "OR";
    case Gate::Nor: return "NOR";
  }
  return "?";
}

}  // namespace rbn
