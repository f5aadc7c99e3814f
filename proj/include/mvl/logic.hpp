/*!
  \file logic.hpp
  \brief Value domains and arithmetic oracles for radix 2/3/4 signals

  Everything here is a pure function over small integers. Circuits built by
  the generators are checked against these functions, so they are written
  directly from the arithmetic and never from a circuit.
*/

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace mvl
{

/*! \brief A digit value within an explicit radix. */
class LogicLevel
{
public:
  LogicLevel( int radix, int value );

  int radix() const noexcept { return radix_; }
  int value() const noexcept { return value_; }

  auto operator<=>( LogicLevel const& ) const = default;

private:
  int radix_;
  int value_;
};

inline LogicLevel quaternary( int value ) { return LogicLevel{ 4, value }; }
inline LogicLevel ternary( int value ) { return LogicLevel{ 3, value }; }
inline LogicLevel binary( int value ) { return LogicLevel{ 2, value }; }

/*! \brief Little-endian multi-digit operand with a uniform radix. */
class DigitVector
{
public:
  explicit DigitVector( int radix, std::vector<int> digits = {} );

  static DigitVector from_value( int radix, std::uint64_t value, std::size_t width );

  int radix() const noexcept { return radix_; }
  std::size_t size() const noexcept { return digits_.size(); }
  bool empty() const noexcept { return digits_.empty(); }
  LogicLevel operator[]( std::size_t i ) const { return LogicLevel{ radix_, digits_.at( i ) }; }
  std::vector<int> const& digits() const noexcept { return digits_; }

  /*! \brief Sum of digits[i] * radix^i. */
  std::uint64_t value() const;

  bool operator==( DigitVector const& ) const = default;

private:
  int radix_;
  std::vector<int> digits_;
};

enum class ThresholdKind
{
  nqi,
  iqi,
  pqi
};

/*! \brief Negative/intermediate/positive quaternary threshold inverters.

  Output is 3 when the input is at or below the threshold (0, 1 or 2
  respectively) and 0 otherwise.
*/
LogicLevel threshold( ThresholdKind kind, LogicLevel q );

/// Standard quaternary complement, 3 - q.
LogicLevel complement( LogicLevel q );

/// Quaternary NAND, 3 - min(a, b).
LogicLevel nand( LogicLevel a, LogicLevel b );

LogicLevel successor( LogicLevel q );

struct SumDigit
{
  LogicLevel sum;
  LogicLevel carry;
};

/*! \brief One-digit addition with a binary carry in.

  sum = (a + b + ci) mod radix, carry = (a + b + ci) div radix.
*/
SumDigit add_oracle( int radix, LogicLevel a, LogicLevel b, LogicLevel ci );

struct ProductDigit
{
  LogicLevel product;
  LogicLevel carry; ///< radix 3: 3 * 3 = 21 in base 4
};

ProductDigit mul_digit_oracle( LogicLevel a, LogicLevel b );

/*! \brief Two-wire codes for a quaternary digit.

  `gray` is the 4-to-2 decoder table verbatim (Q=0 -> X=1,Y=0 ...).
  `positional` is Q = 2X + Y. Each code names which wire is emitted first
  when a digit is flattened into a bit vector.
*/
enum class CodeKind
{
  gray,
  positional
};

struct BitPair
{
  int x;
  int y;
  bool operator==( BitPair const& ) const = default;
};

BitPair gray_decode( LogicLevel q );
LogicLevel gray_encode( int x, int y );

class CodeMap
{
public:
  explicit CodeMap( CodeKind kind ) : kind_( kind ) {}

  CodeKind kind() const noexcept { return kind_; }

  BitPair forward( LogicLevel q ) const;
  LogicLevel inverse( BitPair bits ) const;

  /// Wires in emission order: wire 0 first, then wire 1.
  std::pair<int, int> wires( LogicLevel q ) const;
  LogicLevel from_wires( int wire0, int wire1 ) const;

private:
  CodeKind kind_;
};

DigitVector radix_convert( DigitVector const& quaternary_digits, CodeMap const& map );
DigitVector radix_convert_inverse( DigitVector const& bits, CodeMap const& map );

/*! \brief A quaternary-valued function over a declared mixed-radix domain. */
struct TruthTable
{
  std::vector<int> input_radices;
  std::map<std::vector<int>, LogicLevel> rows;
};

/*! \brief Supports of the indicator functions of output values 3, 2 and 1. */
struct Decomposition
{
  std::vector<int> input_radices;
  std::set<std::vector<int>> f3;
  std::set<std::vector<int>> f2;
  std::set<std::vector<int>> f1;

  /// 3*f3 + 2*f2 + 1*f1 at one point of the domain.
  int recompose( std::vector<int> const& inputs ) const;
};

Decomposition decompose_quaternary( TruthTable const& table );

/// Every point of the mixed-radix domain, first coordinate varying fastest.
std::vector<std::vector<int>> enumerate_domain( std::vector<int> const& radices );

} // namespace mvl
