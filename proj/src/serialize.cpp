#include <mvl/error.hpp>
#include <mvl/logic.hpp>
#include <mvl/serialize.hpp>

#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

namespace mvl
{

namespace
{

using json = nlohmann::ordered_json;

std::string direction_name( PortDirection d ) { return d == PortDirection::input ? "input" : "output"; }

PortDirection parse_direction( std::string const& s )
{
  if ( s == "input" )
  {
    return PortDirection::input;
  }
  if ( s == "output" )
  {
    return PortDirection::output;
  }
  throw Error( errc::parse_error, fmt::format( "unknown port direction '{}'", s ) );
}

json port_json( PortSpec const& p ) { return { { "name", p.name }, { "direction", direction_name( p.direction ) }, { "radix", p.radix } }; }

/// Output rows of `cell` over its inputs, first input varying fastest.
json truth_table( PrimitiveSpec const& cell )
{
  std::vector<int> radices;
  for ( auto const& p : cell.inputs() )
  {
    radices.push_back( p.radix );
  }
  json rows = json::array();
  std::vector<int> out( cell.outputs().size() );
  for ( auto const& point : enumerate_domain( radices ) )
  {
    cell.behavior( point, out );
    rows.push_back( out );
  }
  return rows;
}

Behavior table_behavior( std::vector<PortSpec> const& inputs, std::vector<std::vector<int>> rows )
{
  std::vector<std::size_t> strides;
  std::size_t stride = 1;
  for ( auto const& p : inputs )
  {
    strides.push_back( stride );
    stride *= static_cast<std::size_t>( p.radix );
  }
  if ( rows.size() != stride )
  {
    throw Error( errc::non_total_table, fmt::format( "truth table has {} rows, expected {}", rows.size(), stride ) );
  }
  return [strides = std::move( strides ), rows = std::move( rows )]( std::span<int const> i, std::span<int> o ) {
    std::size_t index = 0;
    for ( std::size_t k = 0; k < strides.size(); ++k )
    {
      index += strides[k] * static_cast<std::size_t>( i[k] );
    }
    std::copy( rows[index].begin(), rows[index].end(), o.begin() );
  };
}

json cell_json( PrimitiveSpec const& cell, Catalog const& catalog )
{
  json j;
  j["name"] = cell.name;
  j["variant"] = cell.variant;
  j["tc"] = cell.effective_tc() ? json( *cell.effective_tc() ) : json( nullptr );
  if ( !catalog.find( cell.name, cell.variant ) )
  {
    j["supply_rails"] = cell.supply_rails;
    j["source"] = cell.source;
    j["ports"] = json::array();
    for ( auto const& p : cell.ports )
    {
      j["ports"].push_back( port_json( p ) );
    }
    j["table"] = truth_table( cell );
  }
  return j;
}

PrimitivePtr cell_from_json( json const& j, Catalog const& catalog )
{
  auto const name = j.at( "name" ).get<std::string>();
  auto const variant = j.at( "variant" ).get<std::string>();
  std::optional<int> tc;
  if ( !j.at( "tc" ).is_null() )
  {
    tc = j.at( "tc" ).get<int>();
  }
  if ( !j.contains( "table" ) )
  {
    auto cell = catalog.find( name, variant );
    if ( !cell )
    {
      throw Error( errc::unknown_cell, fmt::format( "cell '{}:{}' is neither in the catalog nor embedded", name, variant ) );
    }
    if ( tc && cell->effective_tc() != tc )
    {
      auto copy = *cell;
      copy.tc_override = tc;
      cell = std::make_shared<PrimitiveSpec const>( std::move( copy ) );
    }
    return cell;
  }
  PrimitiveSpec s;
  s.name = name;
  s.variant = variant;
  for ( auto const& p : j.at( "ports" ) )
  {
    s.ports.push_back( { p.at( "name" ).get<std::string>(), parse_direction( p.at( "direction" ).get<std::string>() ), p.at( "radix" ).get<int>() } );
  }
  s.behavior = table_behavior( s.inputs(), j.at( "table" ).get<std::vector<std::vector<int>>>() );
  s.tc_override = tc;
  s.supply_rails = j.value( "supply_rails", 1 );
  s.source = j.value( "source", std::string{} );
  return std::make_shared<PrimitiveSpec const>( std::move( s ) );
}

} // namespace

std::string to_json( Netlist const& netlist, Catalog const& catalog )
{
  auto const flat = flatten( netlist );
  json j;
  j["name"] = flat.name();
  if ( flat.reported_tc() )
  {
    j["reported_tc"] = *flat.reported_tc();
  }
  j["notes"] = flat.notes();
  j["ports"] = json::array();
  for ( auto const* side : { &flat.inputs(), &flat.outputs() } )
  {
    for ( auto const& t : *side )
    {
      auto p = port_json( t.port );
      p["net"] = t.net;
      j["ports"].push_back( p );
    }
  }

  std::map<std::string, PrimitiveSpec const*> cells;
  for ( auto const& inst : flat.instances() )
  {
    cells.emplace( inst.primitive()->key(), inst.primitive().get() );
  }
  j["cells"] = json::array();
  for ( auto const& [key, cell] : cells )
  {
    j["cells"].push_back( cell_json( *cell, catalog ) );
  }

  j["instances"] = json::array();
  for ( auto const& inst : flat.instances() )
  {
    json bindings = json::object();
    for ( auto const& [port, net] : inst.bindings )
    {
      bindings[port] = net;
    }
    j["instances"].push_back( { { "id", inst.id },
                                { "cell", inst.primitive()->name },
                                { "variant", inst.primitive()->variant },
                                { "bindings", bindings } } );
  }
  j["nets"] = json::array();
  for ( auto const& [id, net] : flat.nets() )
  {
    j["nets"].push_back( { { "id", id }, { "radix", net.radix } } );
  }
  return j.dump( 2 ) + "\n";
}

Netlist from_json( std::string const& text, Catalog const& catalog )
{
  try
  {
    auto const j = json::parse( text );
    NetlistBuilder b( j.at( "name" ).get<std::string>() );
    if ( j.contains( "reported_tc" ) )
    {
      b.set_reported_tc( j.at( "reported_tc" ).get<int>() );
    }
    for ( auto const& note : j.value( "notes", json::array() ) )
    {
      b.add_note( note.get<std::string>() );
    }
    for ( auto const& p : j.at( "ports" ) )
    {
      auto const name = p.at( "name" ).get<std::string>();
      auto const radix = p.at( "radix" ).get<int>();
      auto const net = p.at( "net" ).get<std::string>();
      if ( parse_direction( p.at( "direction" ).get<std::string>() ) == PortDirection::input )
      {
        if ( net != name )
        {
          throw Error( errc::parse_error, fmt::format( "input port '{}' must drive the net of the same name", name ) );
        }
        b.add_input( name, radix );
      }
      else
      {
        b.add_output( name, radix, net );
      }
    }
    for ( auto const& net : j.at( "nets" ) )
    {
      auto const id = net.at( "id" ).get<std::string>();
      if ( !b.has_net( id ) )
      {
        b.add_net( id, net.at( "radix" ).get<int>() );
      }
    }
    std::map<std::string, PrimitivePtr> cells;
    for ( auto const& c : j.at( "cells" ) )
    {
      auto cell = cell_from_json( c, catalog );
      cells.emplace( cell->key(), std::move( cell ) );
    }
    for ( auto const& inst : j.at( "instances" ) )
    {
      PrimitiveSpec key_of;
      key_of.name = inst.at( "cell" ).get<std::string>();
      key_of.variant = inst.value( "variant", std::string{ "baseline" } );
      auto it = cells.find( key_of.key() );
      PrimitivePtr cell = it != cells.end() ? it->second : catalog.find( key_of.name, key_of.variant );
      if ( !cell )
      {
        throw Error( errc::unknown_cell, fmt::format( "instance '{}' uses unknown cell '{}'", inst.at( "id" ).get<std::string>(), key_of.key() ) );
      }
      b.add_instance( inst.at( "id" ).get<std::string>(), cell, inst.at( "bindings" ).get<std::map<std::string, std::string>>() );
    }
    return std::move( b ).build();
  }
  catch ( nlohmann::json::exception const& e )
  {
    throw Error( errc::parse_error, e.what() );
  }
}

Netlist read_netlist( std::string const& path, Catalog const& catalog )
{
  std::ifstream in( path );
  if ( !in )
  {
    throw Error( errc::parse_error, fmt::format( "cannot read '{}'", path ) );
  }
  std::ostringstream text;
  text << in.rdbuf();
  return from_json( text.str(), catalog );
}

void write_netlist( std::string const& path, Netlist const& netlist, Catalog const& catalog )
{
  std::ofstream out( path );
  if ( !out )
  {
    throw Error( errc::parse_error, fmt::format( "cannot write '{}'", path ) );
  }
  out << to_json( netlist, catalog );
}

} // namespace mvl
