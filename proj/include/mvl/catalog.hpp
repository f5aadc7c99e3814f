/*!
  \file catalog.hpp
  \brief Primitive cell library with behaviors and transistor counts
*/

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mvl
{

enum class PortDirection
{
  input,
  output
};

struct PortSpec
{
  std::string name;
  PortDirection direction;
  int radix;

  bool operator==( PortSpec const& ) const = default;
};

/// Maps input port values (declaration order) to output port values.
using Behavior = std::function<void( std::span<int const> inputs, std::span<int> outputs )>;

/*! \brief A transistor count as published: exact, or a range when the source only gives bounds. */
struct TcRange
{
  int low;
  int high;

  bool exact() const noexcept { return low == high; }
  bool operator==( TcRange const& ) const = default;
};

struct PrimitiveSpec
{
  std::string name;
  std::string variant{ "baseline" };
  std::vector<PortSpec> ports;
  Behavior behavior;
  std::optional<TcRange> reported_tc;
  int supply_rails{ 1 };
  std::string rail_voltages;
  std::string source;
  /// Binary cell processing the same function, for ratio checks.
  std::string counterpart;
  std::string note;
  /// Set by configuration; wins over `reported_tc`.
  std::optional<int> tc_override;

  /*! \brief Count used for derived totals.

    Override if set, else the reported count (the low end of a range), else
    nothing: an unspecified count is never treated as zero.
  */
  std::optional<int> effective_tc() const;

  std::vector<PortSpec> inputs() const;
  std::vector<PortSpec> outputs() const;

  std::string key() const { return variant == "baseline" ? name : name + ":" + variant; }
};

using PrimitivePtr = std::shared_ptr<PrimitiveSpec const>;

/*! \brief A multi-cell result reported as a single number (e.g. a whole multiplier). */
struct ReportedComposite
{
  std::string name;
  std::string label;
  int reported_tc;
  std::string source;
};

enum class MixedAdderKind
{
  q332,
  q322,
  qha32,
  qha31
};

PrimitiveSpec mixed_radix_adder_spec( MixedAdderKind kind );

class Catalog
{
public:
  static Catalog builtin();

  void add( PrimitiveSpec spec );
  void add( ReportedComposite composite );

  /*! \brief Look up a cell. An empty variant matches only when the name is unambiguous. */
  PrimitivePtr get( std::string const& name, std::string const& variant = {} ) const;
  PrimitivePtr find( std::string const& name, std::string const& variant = {} ) const;

  /// The quaternary full adder cell carrying `variant` (e.g. "roosta_3ps").
  PrimitivePtr qfa( std::string const& variant ) const;

  std::optional<ReportedComposite> composite( std::string const& name ) const;

  std::vector<PrimitivePtr> const& primitives() const noexcept { return cells_; }
  std::vector<ReportedComposite> const& composites() const noexcept { return composites_; }

  /*! \brief A copy with transistor-count overrides applied.

    Keys are `name` (all variants) or `name:variant`.
  */
  Catalog with_overrides( std::map<std::string, int> const& overrides ) const;

private:
  std::vector<PrimitivePtr> cells_;
  std::vector<ReportedComposite> composites_;
};

} // namespace mvl
