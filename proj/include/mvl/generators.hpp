/*!
  \file generators.hpp
  \brief Adder and multiplier circuit generators

  Port naming is shared by every generator: operands `a0..`, `b0..` and
  carry in `cin`; adders drive `s0..` then `cout`, multipliers drive `p0..`.
*/

#pragma once

#include <mvl/catalog.hpp>
#include <mvl/logic.hpp>
#include <mvl/netlist.hpp>

#include <optional>
#include <string>
#include <vector>

namespace mvl
{

struct GeneratorConfig
{
  CodeKind code_map{ CodeKind::positional };
  /// Cost used for every 1-digit quaternary multiplier.
  int qmul_tc_choice{ 54 };
  /// Buffer every net above this fan-out after generation (via `generate`).
  std::optional<int> max_fanout;
  /// Quaternary full adder cell used by ripple chains and Wallace trees.
  std::string adder_variant{ "roosta_3ps" };

  void check( Catalog const& catalog ) const;
};

/// One instance of `cell` with circuit ports named after the cell ports.
Netlist gen_cell_wrapper( PrimitivePtr const& cell );

Netlist gen_binary_rca( Catalog const& catalog, int n_bits );

/*! \brief Chain of quaternary full adders with binary carries.

  `variant` is a catalog full adder tag (`roosta_3ps`, `ebrahimi`, ...), or
  `v1_structural` / `v2_decomposed` to chain the structural generators.
*/
Netlist gen_quaternary_rca( Catalog const& catalog, int n_digits, std::string const& variant,
                            GeneratorConfig const& config = {} );

/// Decoders + 2-bit binary ripple adder + encoder.
Netlist gen_v1_adder( Catalog const& catalog, GeneratorConfig const& config = {} );

/*! \brief Quaternary full adder built from the 3*f3 + 2*f2 + f1 split of its truth table.

  Each non-empty indicator becomes a binary cell; `3*f3 + 2*f2 + f1` is
  rebuilt by a positional encoder fed with X = f3|f2 and Y = f3|f1. The
  indicator cells carry no transistor count.
*/
Netlist gen_v2_decomposed( Catalog const& catalog );

Netlist gen_wallace_binary( Catalog const& catalog, int n_bits );

/*! \brief N x N digit multiplier reduced with mixed-radix quaternary adders.

  Each 1-digit multiplier emits a quaternary product in its column and a
  ternary carry in the next one. Columns are reduced LSB first, three
  operands at a time: (q, q, t) by Q332, (q, q, b) by the quaternary full
  adder, anything with at most one quaternary operand by Q322; a leftover
  pair uses QHA32/QHA31. A final ripple over the two remaining rows yields
  2N digits.
*/
Netlist gen_wallace_quaternary( Catalog const& catalog, int n_digits, GeneratorConfig const& config = {} );

/// Decoders + binary 2N x 2N Wallace core + encoders.
Netlist gen_v1_multiplier( Catalog const& catalog, int n_digits, GeneratorConfig const& config = {} );

std::vector<std::string> generator_names();

/*! \brief Runs a generator by name and applies `config.max_fanout` buffering.

  For `cell`, `variant` is the catalog key `name[:variant]`.
*/
Netlist generate( Catalog const& catalog, std::string const& generator, std::optional<int> n, std::string const& variant,
                  GeneratorConfig const& config = {} );

} // namespace mvl
