#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rbn {

using Bit = std::uint8_t;

inline constexpr int kMaxArity = 6;
inline constexpr int kMaxShift = 5;

// Joint-state index of a list of bits; the first bit is the most significant.
inline std::uint32_t msb_first_index(std::span<const Bit> bits) {
  std::uint32_t index = 0;
  for (Bit b : bits) index = (index << 1) | (b & 1u);
  return index;
}

// 2^arity bits packed into one word. Bit i holds the entry for joint index i;
// the text form writes entry 0 first, so NAND over two inputs reads "1110".
class BitTable {
 public:
  BitTable() = default;
  BitTable(int arity, std::uint64_t bits);

  static BitTable parse(std::string_view text);

  int arity() const { return arity_; }
  std::size_t size() const { return std::size_t{1} << arity_; }
  std::uint64_t bits() const { return bits_; }
  std::uint64_t mask() const;

  Bit operator[](std::size_t index) const { return static_cast<Bit>((bits_ >> index) & 1u); }
  void set(std::size_t index, Bit value);
  void flip(std::size_t index);

  int ones() const;
  std::string to_string() const;

  friend bool operator==(const BitTable&, const BitTable&) = default;

 protected:
  std::uint64_t bits_ = 0;
  int arity_ = 0;
};

// A node's Boolean function.
class TruthTable : public BitTable {
 public:
  using BitTable::BitTable;
  TruthTable(const BitTable& t) : BitTable(t) {}  // NOLINT(google-explicit-constructor)

  static TruthTable parse(std::string_view text) { return TruthTable(BitTable::parse(text)); }
  static TruthTable constant(int arity, Bit value);

  Bit eval(std::span<const Bit> inputs) const { return (*this)[msb_first_index(inputs)]; }
  // Fraction of 1 entries.
  double bias() const { return static_cast<double>(ones()) / static_cast<double>(size()); }
};

// Target bit per joint state of the functional-control inputs.
class RefuncTable : public BitTable {
 public:
  using BitTable::BitTable;
  RefuncTable(const BitTable& t) : BitTable(t) {}  // NOLINT(google-explicit-constructor)

  static RefuncTable parse(std::string_view text) { return RefuncTable(BitTable::parse(text)); }
};

// Flips the lowest-index entry that differs from `target`; a table already
// saturated at `target` comes back unchanged.
TruthTable refunc_step(const TruthTable& table, Bit target);

// Per joint state of the structural-control inputs, one signed shift per
// regulatory connection slot.
class RewireTable {
 public:
  RewireTable() = default;
  RewireTable(int control_arity, int slots);

  int control_arity() const { return control_arity_; }
  int slots() const { return slots_; }
  std::size_t rows() const { return std::size_t{1} << control_arity_; }

  std::span<const std::int8_t> row(std::size_t r) const {
    return {shifts_.data() + r * static_cast<std::size_t>(slots_), static_cast<std::size_t>(slots_)};
  }
  int shift(std::size_t r, int slot) const { return shifts_[r * static_cast<std::size_t>(slots_) + static_cast<std::size_t>(slot)]; }
  void set_shift(std::size_t r, int slot, int value);

  std::span<const std::int8_t> data() const { return shifts_; }

  friend bool operator==(const RewireTable&, const RewireTable&) = default;

 private:
  int control_arity_ = 0;
  int slots_ = 0;
  std::vector<std::int8_t> shifts_;
};

enum class Gate { And, Nand, Or, Nor };

inline constexpr Gate kGates[] = {Gate::And, Gate::Nand, Gate::Or, Gate::Nor};

TruthTable gate_table(Gate gate, int arity);
std::optional<Gate> as_gate(const TruthTable& table);
std::string_view gate_name(Gate gate);

}  // namespace rbn
