/*!
  \file report.hpp
  \brief Transistor-count metrics, baseline comparisons and comparison tables
*/

#pragma once

#include <mvl/catalog.hpp>
#include <mvl/generators.hpp>
#include <mvl/netlist.hpp>

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mvl
{

struct CostReport
{
  std::string circuit;
  /// Sum of component counts over the flattened netlist.
  int derived_tc{ 0 };
  /// Cell key -> instances whose count is unspecified (excluded from `derived_tc`).
  std::map<std::string, int> unspecified;
  std::optional<int> reported_tc;
  int net_count{ 0 };
  /// Sum of sink endpoints over all nets.
  int endpoint_count{ 0 };
  /// Maximum over components.
  int supply_rails{ 0 };
  /// Radix -> number of nets.
  std::map<int, int> radix_profile;
  /// Cell key -> instance count.
  std::map<std::string, int> cell_counts;
  /// Largest port radix of the circuit.
  int radix{ 2 };
  std::vector<std::string> notes;

  /// Reported count when present, else the derived one.
  int tc() const { return reported_tc.value_or( derived_tc ); }
};

CostReport metrics( Netlist const& netlist );

enum class TcSource
{
  reported,
  derived
};

struct ComparisonRow
{
  std::string subject;
  std::string baseline;
  int subject_tc;
  int baseline_tc;
  TcSource subject_source;
  TcSource baseline_source;
  double tc_ratio;
  double information_ratio;
  double endpoint_ratio;
  /// The subject spends more transistors per bit of information than the baseline.
  bool tc_exceeds_information;
  bool endpoints_exceed_information;
};

/*! \brief Subject against baseline; `radices` defaults to the circuits' own port radices.

  Throws `Error` (zero_baseline) when the baseline count is 0.
*/
ComparisonRow compare( CostReport const& subject, CostReport const& baseline,
                       std::optional<std::pair<int, int>> radices = std::nullopt );

/// Two decimals, trailing zeros trimmed: 2.93, 5.5, 4.
std::string format_ratio( double ratio );

struct TableRow
{
  std::string label;
  CostReport cost;
  std::optional<double> tc_ratio;
  double information_ratio;
};

struct ComparisonTable
{
  std::string which;
  std::string title;
  std::vector<TableRow> rows;
  std::vector<std::string> footnotes;
};

std::vector<std::string> table_names();

/// One of `nand`, `adders`, `multipliers`.
ComparisonTable comparison_table( std::string_view which, Catalog const& catalog, GeneratorConfig const& config = {} );

enum class Format
{
  md,
  csv,
  json
};

Format parse_format( std::string_view text );

std::string render( ComparisonTable const& table, Format format );
std::string render( CostReport const& report, Format format );
std::string render( Catalog const& catalog, Format format );

/// A quaternary cell against its binary counterpart.
struct ThesisRow
{
  std::string subject;
  std::string baseline;
  double tc_ratio;
  double information_ratio;
  bool holds;
};

/// Every catalog cell with a binary counterpart, both with a known count.
std::vector<ThesisRow> thesis_check( Catalog const& catalog );

} // namespace mvl
