#include <mvl/error.hpp>
#include <mvl/report.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>
#include <json.hpp>

namespace mvl
{

namespace
{

using json = nlohmann::ordered_json;

double information( int radix ) { return std::log2( static_cast<double>( radix ) ); }

std::string csv_field( std::string const& s )
{
  if ( s.find_first_of( ",\"\n" ) == std::string::npos )
  {
    return s;
  }
  std::string r = "\"";
  for ( auto c : s )
  {
    r += c == '"' ? std::string( "\"\"" ) : std::string( 1, c );
  }
  return r + "\"";
}

std::string optional_int( std::optional<int> v ) { return v ? std::to_string( *v ) : std::string{}; }

std::string unspecified_summary( std::map<std::string, int> const& unspecified )
{
  std::vector<std::string> parts;
  for ( auto const& [key, count] : unspecified )
  {
    parts.push_back( fmt::format( "{} x{}", key, count ) );
  }
  return fmt::format( "{}", fmt::join( parts, ", " ) );
}

std::string tc_range( PrimitiveSpec const& cell )
{
  if ( !cell.reported_tc )
  {
    return "unspecified";
  }
  return cell.reported_tc->exact() ? std::to_string( cell.reported_tc->low )
                                   : fmt::format( "{}..{}", cell.reported_tc->low, cell.reported_tc->high );
}

std::string port_list( PrimitiveSpec const& cell )
{
  std::vector<std::string> in, out;
  for ( auto const& p : cell.ports )
  {
    ( p.direction == PortDirection::input ? in : out ).push_back( fmt::format( "{}:{}", p.name, p.radix ) );
  }
  return fmt::format( "{} -> {}", fmt::join( in, " " ), fmt::join( out, " " ) );
}

json cost_json( CostReport const& r )
{
  json j;
  j["name"] = r.circuit;
  j["derived_tc"] = r.derived_tc;
  j["reported_tc"] = r.reported_tc ? json( *r.reported_tc ) : json( nullptr );
  j["unspecified"] = r.unspecified;
  j["net_count"] = r.net_count;
  j["endpoint_count"] = r.endpoint_count;
  j["supply_rails"] = r.supply_rails;
  json profile = json::object();
  for ( auto const& [radix, count] : r.radix_profile )
  {
    profile[std::to_string( radix )] = count;
  }
  j["radix_profile"] = profile;
  j["cells"] = r.cell_counts;
  j["notes"] = r.notes;
  return j;
}

std::string const csv_header = "name,derived_tc,reported_tc,net_count,endpoint_count,supply_rails,tc_ratio,information_ratio\n";

std::string csv_row( CostReport const& r, std::optional<double> tc_ratio, std::optional<double> information_ratio )
{
  return fmt::format( "{},{},{},{},{},{},{},{}\n", csv_field( r.circuit ), r.derived_tc, optional_int( r.reported_tc ), r.net_count,
                      r.endpoint_count, r.supply_rails, tc_ratio ? format_ratio( *tc_ratio ) : "",
                      information_ratio ? format_ratio( *information_ratio ) : "" );
}

} // namespace

CostReport metrics( Netlist const& netlist )
{
  auto const flat = flatten( netlist );
  CostReport r;
  r.circuit = netlist.name();
  r.reported_tc = netlist.reported_tc();
  r.notes = netlist.notes();
  for ( auto const& inst : flat.instances() )
  {
    auto const& cell = *inst.primitive();
    ++r.cell_counts[cell.key()];
    r.supply_rails = std::max( r.supply_rails, cell.supply_rails );
    if ( auto const tc = cell.effective_tc() )
    {
      r.derived_tc += *tc;
    }
    else
    {
      ++r.unspecified[cell.key()];
    }
  }
  r.net_count = static_cast<int>( flat.nets().size() );
  for ( auto const& [id, net] : flat.nets() )
  {
    ++r.radix_profile[net.radix];
  }
  auto const fanout = fanout_map( flat );
  r.endpoint_count = std::accumulate( fanout.begin(), fanout.end(), 0, []( int acc, auto const& kv ) { return acc + kv.second; } );
  for ( auto const& p : flat.interface() )
  {
    r.radix = std::max( r.radix, p.radix );
  }

  if ( !r.unspecified.empty() )
  {
    int const total = std::accumulate( r.unspecified.begin(), r.unspecified.end(), 0,
                                       []( int acc, auto const& kv ) { return acc + kv.second; } );
    r.notes.push_back( fmt::format( "derived count excludes {} instances with unspecified transistor count: {}", total,
                                    unspecified_summary( r.unspecified ) ) );
  }
  if ( r.reported_tc && *r.reported_tc != r.derived_tc )
  {
    r.notes.push_back( fmt::format( "discrepancy: derived {} T vs reported {} T ({:+} T)", r.derived_tc, *r.reported_tc,
                                    *r.reported_tc - r.derived_tc ) );
  }
  return r;
}

ComparisonRow compare( CostReport const& subject, CostReport const& baseline, std::optional<std::pair<int, int>> radices )
{
  auto const [subject_radix, baseline_radix] = radices.value_or( std::pair{ subject.radix, baseline.radix } );
  if ( baseline.tc() == 0 )
  {
    throw Error( errc::zero_baseline, fmt::format( "baseline '{}' has a transistor count of 0", baseline.circuit ) );
  }
  ComparisonRow row;
  row.subject = subject.circuit;
  row.baseline = baseline.circuit;
  row.subject_tc = subject.tc();
  row.baseline_tc = baseline.tc();
  row.subject_source = subject.reported_tc ? TcSource::reported : TcSource::derived;
  row.baseline_source = baseline.reported_tc ? TcSource::reported : TcSource::derived;
  row.tc_ratio = static_cast<double>( row.subject_tc ) / row.baseline_tc;
  row.information_ratio = information( subject_radix ) / information( baseline_radix );
  row.endpoint_ratio = baseline.endpoint_count ? static_cast<double>( subject.endpoint_count ) / baseline.endpoint_count : 0.0;
  row.tc_exceeds_information = row.tc_ratio > row.information_ratio;
  row.endpoints_exceed_information = row.endpoint_ratio > row.information_ratio;
  return row;
}

std::string format_ratio( double ratio )
{
  auto s = fmt::format( "{:.2f}", ratio );
  s.erase( s.find_last_not_of( '0' ) + 1 );
  if ( s.back() == '.' )
  {
    s.pop_back();
  }
  return s;
}

std::vector<std::string> table_names() { return { "nand", "adders", "multipliers" }; }

ComparisonTable comparison_table( std::string_view which, Catalog const& catalog, GeneratorConfig const& config )
{
  ComparisonTable t;
  t.which = std::string( which );

  auto cell_cost = [&]( std::string const& name, std::string const& variant = {} ) {
    return metrics( gen_cell_wrapper( catalog.get( name, variant ) ) );
  };
  auto add_row = [&]( std::string label, CostReport cost, CostReport const& baseline ) {
    auto const cmp = compare( cost, baseline );
    t.rows.push_back( { std::move( label ), std::move( cost ), cmp.tc_ratio, cmp.information_ratio } );
  };

  if ( which == "nand" )
  {
    t.title = "2-input NAND gate transistor count";
    auto const baseline = cell_cost( "nand2_binary" );
    add_row( "4-V NAND (Sharifi)", cell_cost( "nand2_quaternary", "sharifi" ), baseline );
    add_row( "4-V NAND (Ebrahimi)", cell_cost( "nand2_quaternary", "ebrahimi" ), baseline );
    add_row( "binary NAND", baseline, baseline );
  }
  else if ( which == "adders" )
  {
    t.title = "Adder transistor count and 4V/2V transistor ratios";
    auto const baseline = cell_cost( "full_adder_binary" );
    auto structural_v1 = [&]( std::string const& variant ) {
      auto const cell = catalog.get( "qfa_v1", variant );
      auto cost = metrics( gen_v1_adder( catalog, config ) );
      cost.circuit = cell->key();
      cost.reported_tc = cell->effective_tc();
      cost.supply_rails = cell->supply_rails;
      return cost;
    };
    add_row( "V1 3 PS", structural_v1( "3ps" ), baseline );
    add_row( "V1 1 PS", structural_v1( "1ps" ), baseline );
    add_row( "V2 (Ebrahimi)", cell_cost( "qfa_v2", "ebrahimi" ), baseline );
    add_row( "V3 (Moaiyeri)", cell_cost( "qfa_v3", "moaiyeri" ), baseline );
    add_row( "V3 (Roosta) 3 PS", cell_cost( "qfa_v3", "roosta_3ps" ), baseline );
    add_row( "V3 (Roosta) 1 PS", cell_cost( "qfa_v3", "roosta_1ps" ), baseline );
    t.footnotes.push_back( fmt::format( "ratios against {} ({} T)", baseline.circuit, baseline.tc() ) );
    auto const b3 = catalog.get( "qfa_v3", "roosta_3ps_buffered" );
    auto const b1 = catalog.get( "qfa_v3", "roosta_1ps_buffered" );
    t.footnotes.push_back( fmt::format( "with fan-out buffering: {} {} T, {} {} T", b3->key(), b3->effective_tc().value(), b1->key(),
                                        b1->effective_tc().value() ) );
  }
  else if ( which == "multipliers" )
  {
    t.title = "Quaternary multiplier transistor counts";
    auto const baseline = metrics( gen_wallace_binary( catalog, 8 ) );
    add_row( "8x8 bit multiplier", baseline, baseline );
    add_row( "4x4 Q multiplier, encoder and decoder", metrics( gen_v1_multiplier( catalog, 4, config ) ), baseline );
    add_row( "4x4 Q multiplier, direct implementation", metrics( gen_wallace_quaternary( catalog, 4, config ) ), baseline );
    t.footnotes.push_back( fmt::format( "ratios against {} ({} T)", baseline.circuit, baseline.tc() ) );
  }
  else
  {
    throw Error( errc::invalid_value, fmt::format( "unknown table '{}' (nand, adders, multipliers)", which ) );
  }

  for ( auto const& row : t.rows )
  {
    if ( row.tc_ratio && std::abs( std::round( *row.tc_ratio * 100 ) / 100 - *row.tc_ratio ) > 1e-9 )
    {
      t.footnotes.push_back( fmt::format( "{}: exact ratio {:.4f}", row.cost.circuit, *row.tc_ratio ) );
    }
    for ( auto const& note : row.cost.notes )
    {
      t.footnotes.push_back( fmt::format( "{}: {}", row.cost.circuit, note ) );
    }
  }
  return t;
}

Format parse_format( std::string_view text )
{
  if ( text == "md" )
  {
    return Format::md;
  }
  if ( text == "csv" )
  {
    return Format::csv;
  }
  if ( text == "json" )
  {
    return Format::json;
  }
  throw Error( errc::invalid_value, fmt::format( "unknown format '{}' (md, csv, json)", text ) );
}

std::string render( ComparisonTable const& table, Format format )
{
  switch ( format )
  {
  case Format::csv:
  {
    std::string s = csv_header;
    for ( auto const& row : table.rows )
    {
      s += csv_row( row.cost, row.tc_ratio, row.information_ratio );
    }
    return s;
  }
  case Format::json:
  {
    json j;
    j["table"] = table.which;
    j["title"] = table.title;
    j["rows"] = json::array();
    for ( auto const& row : table.rows )
    {
      auto r = cost_json( row.cost );
      r["label"] = row.label;
      r["tc_ratio"] = row.tc_ratio ? json( *row.tc_ratio ) : json( nullptr );
      r["information_ratio"] = row.information_ratio;
      j["rows"].push_back( r );
    }
    j["footnotes"] = table.footnotes;
    return j.dump( 2 ) + "\n";
  }
  case Format::md:
  default:
  {
    std::string s = fmt::format( "### {}\n\n", table.title );
    s += "| name | circuit | derived_tc | reported_tc | net_count | endpoint_count | supply_rails | tc_ratio | information_ratio |\n";
    s += "|---|---|---:|---:|---:|---:|---:|---:|---:|\n";
    for ( auto const& row : table.rows )
    {
      auto const& c = row.cost;
      s += fmt::format( "| {} | {} | {} | {} | {} | {} | {} | {} | {} |\n", c.circuit, row.label, c.derived_tc, optional_int( c.reported_tc ),
                        c.net_count, c.endpoint_count, c.supply_rails, row.tc_ratio ? format_ratio( *row.tc_ratio ) : "",
                        format_ratio( row.information_ratio ) );
    }
    if ( !table.footnotes.empty() )
    {
      s += "\n";
      for ( std::size_t i = 0; i < table.footnotes.size(); ++i )
      {
        s += fmt::format( "[{}] {}\n", i + 1, table.footnotes[i] );
      }
    }
    return s;
  }
  }
}

std::string render( CostReport const& report, Format format )
{
  switch ( format )
  {
  case Format::csv:
    return csv_header + csv_row( report, std::nullopt, std::nullopt );
  case Format::json:
    return cost_json( report ).dump( 2 ) + "\n";
  case Format::md:
  default:
  {
    std::string s = fmt::format( "### {}\n\n| metric | value |\n|---|---|\n", report.circuit );
    s += fmt::format( "| derived_tc | {} |\n", report.derived_tc );
    s += fmt::format( "| reported_tc | {} |\n", report.reported_tc ? std::to_string( *report.reported_tc ) : "none" );
    s += fmt::format( "| unspecified | {} |\n", report.unspecified.empty() ? "none" : unspecified_summary( report.unspecified ) );
    s += fmt::format( "| net_count | {} |\n", report.net_count );
    s += fmt::format( "| endpoint_count | {} |\n", report.endpoint_count );
    s += fmt::format( "| supply_rails | {} |\n", report.supply_rails );
    std::vector<std::string> profile;
    for ( auto const& [radix, count] : report.radix_profile )
    {
      profile.push_back( fmt::format( "radix {}: {}", radix, count ) );
    }
    s += fmt::format( "| radix_profile | {} |\n", fmt::join( profile, ", " ) );
    for ( auto const& [key, count] : report.cell_counts )
    {
      s += fmt::format( "| cells.{} | {} |\n", key, count );
    }
    if ( !report.notes.empty() )
    {
      s += "\n";
      for ( std::size_t i = 0; i < report.notes.size(); ++i )
      {
        s += fmt::format( "[{}] {}\n", i + 1, report.notes[i] );
      }
    }
    return s;
  }
  }
}

std::string render( Catalog const& catalog, Format format )
{
  switch ( format )
  {
  case Format::csv:
  {
    std::string s = "name,variant,ports,reported_tc,supply_rails,source,counterpart\n";
    for ( auto const& c : catalog.primitives() )
    {
      s += fmt::format( "{},{},{},{},{},{},{}\n", c->name, c->variant, port_list( *c ), tc_range( *c ), c->supply_rails, csv_field( c->source ),
                        c->counterpart );
    }
    return s;
  }
  case Format::json:
  {
    json j = json::array();
    for ( auto const& c : catalog.primitives() )
    {
      json e;
      e["name"] = c->name;
      e["variant"] = c->variant;
      e["ports"] = json::array();
      for ( auto const& p : c->ports )
      {
        e["ports"].push_back(
            { { "name", p.name }, { "direction", p.direction == PortDirection::input ? "input" : "output" }, { "radix", p.radix } } );
      }
      if ( c->reported_tc )
      {
        e["reported_tc"] = { { "low", c->reported_tc->low }, { "high", c->reported_tc->high } };
      }
      else
      {
        e["reported_tc"] = nullptr;
      }
      e["effective_tc"] = c->effective_tc() ? json( *c->effective_tc() ) : json( nullptr );
      e["supply_rails"] = c->supply_rails;
      e["rail_voltages"] = c->rail_voltages;
      e["source"] = c->source;
      e["counterpart"] = c->counterpart;
      e["note"] = c->note;
      j.push_back( e );
    }
    return j.dump( 2 ) + "\n";
  }
  case Format::md:
  default:
  {
    std::string s = "| name | variant | ports | reported_tc | supply_rails | source | counterpart |\n|---|---|---|---:|---:|---|---|\n";
    for ( auto const& c : catalog.primitives() )
    {
      s += fmt::format( "| {} | {} | {} | {} | {} | {} | {} |\n", c->name, c->variant, port_list( *c ), tc_range( *c ), c->supply_rails,
                        c->source, c->counterpart );
    }
    return s;
  }
  }
}

std::vector<ThesisRow> thesis_check( Catalog const& catalog )
{
  std::vector<ThesisRow> rows;
  for ( auto const& cell : catalog.primitives() )
  {
    if ( cell->counterpart.empty() )
    {
      continue;
    }
    auto const binary = catalog.get( cell->counterpart );
    auto const tc = cell->effective_tc();
    auto const base = binary->effective_tc();
    if ( !tc || !base || *base == 0 )
    {
      continue;
    }
    int radix = 2, base_radix = 2;
    for ( auto const& p : cell->ports )
    {
      radix = std::max( radix, p.radix );
    }
    for ( auto const& p : binary->ports )
    {
      base_radix = std::max( base_radix, p.radix );
    }
    ThesisRow r{ cell->key(), binary->key(), static_cast<double>( *tc ) / *base, information( radix ) / information( base_radix ), false };
    r.holds = r.tc_ratio > r.information_ratio;
    rows.push_back( r );
  }
  return rows;
}

} // namespace mvl
