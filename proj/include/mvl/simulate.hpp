/*!
  \file simulate.hpp
  \brief Levelized simulation, oracle verification and equivalence checking

  Circuit ports are grouped into operands by name: `a0`, `a1`, ... form
  operand `a` (index = trailing digits, least significant first), while a
  name without trailing digits (`cin`) is an operand of its own. The output
  side is read as one number, taking the output ports in declaration order
  as mixed-radix digits.

  Input vectors are enumerated with ports sorted by name and the first port
  varying fastest.
*/

#pragma once

#include <mvl/logic.hpp>
#include <mvl/netlist.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mvl
{

using Assignment = std::map<std::string, LogicLevel>;

/*! \brief A netlist compiled to lookup tables in topological order. */
class Simulator
{
public:
  explicit Simulator( Netlist const& netlist );

  /// Circuit inputs, sorted by name: the order `run` expects.
  std::vector<PortSpec> const& inputs() const noexcept { return inputs_; }
  /// Circuit outputs in declaration order.
  std::vector<PortSpec> const& outputs() const noexcept { return outputs_; }

  void run( std::span<int const> inputs, std::span<int> outputs ) const;

private:
  struct Table
  {
    std::vector<int> strides;
    std::size_t outputs;
    std::vector<std::uint8_t> rows;
  };
  struct Step
  {
    Table const* table;
    std::vector<std::uint32_t> in;
    std::vector<std::uint32_t> out;
  };

  std::vector<PortSpec> inputs_;
  std::vector<PortSpec> outputs_;
  std::vector<std::uint32_t> input_nets_;
  std::vector<std::uint32_t> output_nets_;
  std::vector<Step> steps_;
  std::map<PrimitiveSpec const*, Table> tables_;
  std::size_t net_count_{ 0 };
};

std::map<std::string, LogicLevel> evaluate( Netlist const& netlist, Assignment const& assignment );

/// Operand name -> integer value.
using OperandValues = std::map<std::string, std::uint64_t>;
using Oracle = std::function<std::uint64_t( OperandValues const& )>;

/// Sum of every input operand (a + b + cin).
Oracle sum_oracle();
/// Product of operands `a` and `b`.
Oracle product_oracle();

struct Mismatch
{
  /// Input port -> value, in enumeration order.
  std::vector<std::pair<std::string, int>> inputs;
  std::uint64_t expected;
  std::uint64_t actual;
};

struct VerifyReport
{
  std::uint64_t total_vectors{ 0 };
  std::vector<Mismatch> mismatches;
  bool exhaustive{ false };
  std::optional<std::uint64_t> seed;
};

inline constexpr std::uint64_t default_vector_cap = std::uint64_t{ 1 } << 20;

/// Number of input vectors, or nullopt when it exceeds 2^63.
std::optional<std::uint64_t> input_space( Netlist const& netlist );

VerifyReport verify_exhaustive( Netlist const& netlist, Oracle const& oracle, std::uint64_t cap = default_vector_cap );

/*! \brief Corner vectors plus `samples` uniform vectors from a fixed-seed mt19937_64.

  Corners are all-zero, all-max and each single input at max.
*/
VerifyReport verify_sampled( Netlist const& netlist, Oracle const& oracle, std::uint64_t samples, std::uint64_t seed );

/*! \brief Exhaustive output comparison of two circuits.

  Operands of the same name must match port for port, or, with a code map,
  relate one quaternary digit to two bits (wire 0 at the even index).
  Mismatch values are both expressed in the layout of `a`'s outputs.
*/
VerifyReport equiv_check( Netlist const& a, Netlist const& b, std::optional<CodeMap> code = std::nullopt,
                          std::uint64_t cap = default_vector_cap );

} // namespace mvl
