#include <mvl/error.hpp>
#include <mvl/netlist.hpp>

#include <algorithm>
#include <set>
#include <tuple>
#include <utility>

#include <fmt/format.h>

namespace mvl
{

std::vector<PortSpec> cell_ports( Cell const& cell )
{
  if ( auto const* p = std::get_if<PrimitivePtr>( &cell ) )
  {
    return ( *p )->ports;
  }
  return std::get<NetlistPtr>( cell )->interface();
}

std::string cell_name( Cell const& cell )
{
  if ( auto const* p = std::get_if<PrimitivePtr>( &cell ) )
  {
    return ( *p )->key();
  }
  return std::get<NetlistPtr>( cell )->name();
}

std::vector<PortSpec> Netlist::interface() const
{
  std::vector<PortSpec> ports;
  for ( auto const& t : inputs_ )
  {
    ports.push_back( t.port );
  }
  for ( auto const& t : outputs_ )
  {
    ports.push_back( t.port );
  }
  return ports;
}

Instance const& Netlist::instance( std::string const& id ) const
{
  auto const it = std::find_if( instances_.begin(), instances_.end(), [&]( auto const& i ) { return i.id == id; } );
  if ( it == instances_.end() )
  {
    throw Error( errc::invalid_value, fmt::format( "no instance '{}' in {}", id, name_ ) );
  }
  return *it;
}

bool Netlist::hierarchical() const
{
  return std::any_of( instances_.begin(), instances_.end(), []( auto const& i ) { return !i.is_primitive(); } );
}

NetlistBuilder::NetlistBuilder( std::string name )
{
  n_.name_ = std::move( name );
}

NetlistBuilder::NetlistBuilder( Netlist from )
    : n_( std::move( from ) )
{
  for ( std::size_t i = 0; i < n_.instances_.size(); ++i )
  {
    index_[n_.instances_[i].id] = i;
  }
}

std::string NetlistBuilder::add_input( std::string const& name, int radix )
{
  add_net( name, radix );
  n_.inputs_.push_back( { { name, PortDirection::input, radix }, name } );
  return name;
}

void NetlistBuilder::add_output( std::string const& name, int radix, std::string const& net )
{
  n_.outputs_.push_back( { { name, PortDirection::output, radix }, net } );
}

void NetlistBuilder::add_net( std::string const& id, int radix )
{
  if ( !n_.nets_.emplace( id, Net{ id, radix } ).second )
  {
    throw Error( errc::invalid_value, fmt::format( "duplicate net '{}'", id ) );
  }
}

void NetlistBuilder::add_instance( std::string const& id, Cell cell, std::map<std::string, std::string> bindings )
{
  if ( !index_.emplace( id, n_.instances_.size() ).second )
  {
    throw Error( errc::invalid_value, fmt::format( "duplicate instance '{}'", id ) );
  }
  n_.instances_.push_back( { id, std::move( cell ), std::move( bindings ) } );
}

std::map<std::string, std::string> NetlistBuilder::place( std::string const& id, Cell cell,
                                                          std::map<std::string, std::string> inputs )
{
  std::map<std::string, std::string> created;
  for ( auto const& p : cell_ports( cell ) )
  {
    if ( p.direction == PortDirection::output )
    {
      auto net = id + "." + p.name;
      add_net( net, p.radix );
      inputs[p.name] = net;
      created[p.name] = net;
    }
  }
  add_instance( id, std::move( cell ), std::move( inputs ) );
  return created;
}

Instance& NetlistBuilder::instance( std::string const& id )
{
  auto const it = index_.find( id );
  if ( it == index_.end() )
  {
    throw Error( errc::invalid_value, fmt::format( "no instance '{}'", id ) );
  }
  return n_.instances_[it->second];
}

void NetlistBuilder::rebind( std::string const& inst, std::string const& port, std::string const& net )
{
  instance( inst ).bindings[port] = net;
}

void NetlistBuilder::rebind_output( std::string const& port, std::string const& net )
{
  for ( auto& t : n_.outputs_ )
  {
    if ( t.port.name == port )
    {
      t.net = net;
      return;
    }
  }
  throw Error( errc::invalid_value, fmt::format( "no output port '{}'", port ) );
}

void NetlistBuilder::merge_net( std::string const& from, std::string const& to )
{
  if ( from == to )
  {
    return;
  }
  for ( auto& i : n_.instances_ )
  {
    for ( auto& [port, net] : i.bindings )
    {
      if ( net == from )
      {
        net = to;
      }
    }
  }
  for ( auto* terminals : { &n_.inputs_, &n_.outputs_ } )
  {
    for ( auto& t : *terminals )
    {
      if ( t.net == from )
      {
        t.net = to;
      }
    }
  }
  n_.nets_.erase( from );
}

std::vector<Instance> NetlistBuilder::take_instances()
{
  index_.clear();
  return std::exchange( n_.instances_, {} );
}

void NetlistBuilder::set_reported_tc( std::optional<int> tc )
{
  n_.reported_tc_ = tc;
}

void NetlistBuilder::add_note( std::string note )
{
  n_.notes_.push_back( std::move( note ) );
}

int NetlistBuilder::net_radix( std::string const& id ) const
{
  auto const it = n_.nets_.find( id );
  if ( it == n_.nets_.end() )
  {
    throw Error( errc::invalid_value, fmt::format( "no net '{}'", id ) );
  }
  return it->second.radix;
}

std::string_view to_string( IssueKind kind )
{
  switch ( kind )
  {
  case IssueKind::cycle: return "cycle";
  case IssueKind::multiple_drivers: return "multiple_drivers";
  case IssueKind::radix_mismatch: return "radix_mismatch";
  case IssueKind::undriven_output: return "undriven_output";
  case IssueKind::undriven_net: return "undriven_net";
  case IssueKind::unbound_port: return "unbound_port";
  case IssueKind::unknown_port: return "unknown_port";
  case IssueKind::unknown_net: return "unknown_net";
  case IssueKind::duplicate_port: return "duplicate_port";
  case IssueKind::invalid_subcircuit: return "invalid_subcircuit";
  case IssueKind::unconnected_net: return "unconnected_net";
  }
  return "unknown";
}

bool ValidationReport::ok() const
{
  return std::none_of( issues.begin(), issues.end(), []( auto const& i ) { return i.severity == Severity::error; } );
}

std::size_t ValidationReport::count( IssueKind kind ) const
{
  return static_cast<std::size_t>( std::count_if( issues.begin(), issues.end(), [kind]( auto const& i ) { return i.kind == kind; } ) );
}

std::size_t ValidationReport::warnings() const
{
  return static_cast<std::size_t>(
      std::count_if( issues.begin(), issues.end(), []( auto const& i ) { return i.severity == Severity::warning; } ) );
}

namespace
{

struct Endpoint
{
  std::string instance; ///< empty for a circuit port
  std::string port;

  auto key() const { return std::tuple{ instance.empty(), instance, port }; }
  bool operator<( Endpoint const& o ) const { return key() < o.key(); }
};

struct Connectivity
{
  std::map<std::string, std::vector<Endpoint>> drivers;
  std::map<std::string, std::vector<Endpoint>> sinks;
  std::vector<std::vector<std::size_t>> successors;
};

Connectivity connect( Netlist const& n )
{
  Connectivity c;
  for ( auto const& t : n.inputs() )
  {
    c.drivers[t.net].push_back( { {}, t.port.name } );
  }
  for ( auto const& t : n.outputs() )
  {
    c.sinks[t.net].push_back( { {}, t.port.name } );
  }
  std::map<std::string, std::vector<std::size_t>> driving, reading;
  for ( std::size_t i = 0; i < n.instances().size(); ++i )
  {
    auto const& inst = n.instances()[i];
    for ( auto const& p : cell_ports( inst.cell ) )
    {
      auto const it = inst.bindings.find( p.name );
      if ( it == inst.bindings.end() )
      {
        continue;
      }
      if ( p.direction == PortDirection::output )
      {
        c.drivers[it->second].push_back( { inst.id, p.name } );
        driving[it->second].push_back( i );
      }
      else
      {
        c.sinks[it->second].push_back( { inst.id, p.name } );
        reading[it->second].push_back( i );
      }
    }
  }
  c.successors.resize( n.instances().size() );
  for ( auto const& [net, from] : driving )
  {
    auto const r = reading.find( net );
    if ( r == reading.end() )
    {
      continue;
    }
    for ( auto d : from )
    {
      c.successors[d].insert( c.successors[d].end(), r->second.begin(), r->second.end() );
    }
  }
  for ( auto& [net, v] : c.sinks )
  {
    std::sort( v.begin(), v.end() );
  }
  return c;
}

// Kahn's algorithm; a result shorter than the instance list means a cycle.
std::vector<std::size_t> kahn( Netlist const& n, Connectivity const& c )
{
  auto const& insts = n.instances();
  std::vector<std::size_t> indegree( insts.size(), 0 );
  for ( auto const& succ : c.successors )
  {
    for ( auto s : succ )
    {
      ++indegree[s];
    }
  }
  std::set<std::pair<std::string, std::size_t>> ready;
  for ( std::size_t i = 0; i < insts.size(); ++i )
  {
    if ( indegree[i] == 0 )
    {
      ready.emplace( insts[i].id, i );
    }
  }
  std::vector<std::size_t> order;
  order.reserve( insts.size() );
  while ( !ready.empty() )
  {
    auto const i = ready.begin()->second;
    ready.erase( ready.begin() );
    order.push_back( i );
    for ( auto s : c.successors[i] )
    {
      if ( --indegree[s] == 0 )
      {
        ready.emplace( insts[s].id, s );
      }
    }
  }
  return order;
}

} // namespace

ValidationReport validate( Netlist const& n )
{
  ValidationReport r;
  auto error = [&]( IssueKind k, std::string subject, std::string message ) {
    r.issues.push_back( { k, Severity::error, std::move( subject ), std::move( message ) } );
  };
  auto net_of = [&]( std::string const& id ) -> Net const* {
    auto const it = n.nets().find( id );
    return it == n.nets().end() ? nullptr : &it->second;
  };

  std::set<std::string> port_names;
  for ( auto const* terminals : { &n.inputs(), &n.outputs() } )
  {
    for ( auto const& t : *terminals )
    {
      if ( !port_names.insert( t.port.name ).second )
      {
        error( IssueKind::duplicate_port, t.port.name, fmt::format( "port '{}' declared twice", t.port.name ) );
      }
      auto const* net = net_of( t.net );
      if ( !net )
      {
        error( IssueKind::unknown_net, t.net, fmt::format( "port '{}' refers to unknown net '{}'", t.port.name, t.net ) );
        continue;
      }
      bool const is_input = t.port.direction == PortDirection::input;
      int const from = is_input ? t.port.radix : net->radix;
      int const to = is_input ? net->radix : t.port.radix;
      if ( from > to )
      {
        error( IssueKind::radix_mismatch, t.port.name,
               fmt::format( "port '{}' (radix {}) on net '{}' (radix {})", t.port.name, t.port.radix, t.net, net->radix ) );
      }
    }
  }

  for ( auto const& inst : n.instances() )
  {
    auto const ports = cell_ports( inst.cell );
    for ( auto const& p : ports )
    {
      auto const it = inst.bindings.find( p.name );
      if ( it == inst.bindings.end() )
      {
        error( IssueKind::unbound_port, inst.id, fmt::format( "{}: port '{}' is not bound", inst.id, p.name ) );
        continue;
      }
      auto const* net = net_of( it->second );
      if ( !net )
      {
        error( IssueKind::unknown_net, inst.id, fmt::format( "{}.{}: unknown net '{}'", inst.id, p.name, it->second ) );
        continue;
      }
      int const from = p.direction == PortDirection::input ? net->radix : p.radix;
      int const to = p.direction == PortDirection::input ? p.radix : net->radix;
      if ( from > to )
      {
        error( IssueKind::radix_mismatch, inst.id,
               fmt::format( "{}.{} (radix {}) on net '{}' (radix {})", inst.id, p.name, p.radix, net->id, net->radix ) );
      }
    }
    for ( auto const& [port, net] : inst.bindings )
    {
      if ( std::none_of( ports.begin(), ports.end(), [&]( auto const& p ) { return p.name == port; } ) )
      {
        error( IssueKind::unknown_port, inst.id, fmt::format( "{}: cell {} has no port '{}'", inst.id, cell_name( inst.cell ), port ) );
      }
    }
    if ( auto const* sub = std::get_if<NetlistPtr>( &inst.cell ) )
    {
      auto const inner = validate( **sub );
      for ( auto const& issue : inner.issues )
      {
        if ( issue.severity == Severity::error )
        {
          error( IssueKind::invalid_subcircuit, inst.id, fmt::format( "{}: {}", inst.id, issue.message ) );
        }
      }
    }
  }

  auto const c = connect( n );
  std::set<std::string> output_nets;
  for ( auto const& t : n.outputs() )
  {
    output_nets.insert( t.net );
    auto const d = c.drivers.find( t.net );
    if ( net_of( t.net ) && ( d == c.drivers.end() || d->second.empty() ) )
    {
      error( IssueKind::undriven_output, t.port.name, fmt::format( "output '{}' is not driven", t.port.name ) );
    }
  }
  for ( auto const& [id, net] : n.nets() )
  {
    auto const d = c.drivers.find( id );
    auto const s = c.sinks.find( id );
    std::size_t const drivers = d == c.drivers.end() ? 0 : d->second.size();
    std::size_t const sinks = s == c.sinks.end() ? 0 : s->second.size();
    if ( drivers > 1 )
    {
      error( IssueKind::multiple_drivers, id, fmt::format( "net '{}' has {} drivers", id, drivers ) );
    }
    if ( drivers == 0 && sinks > 0 && !output_nets.count( id ) )
    {
      error( IssueKind::undriven_net, id, fmt::format( "net '{}' has sinks but no driver", id ) );
    }
    if ( sinks == 0 )
    {
      r.issues.push_back( { IssueKind::unconnected_net, Severity::warning, id, fmt::format( "net '{}' has no sinks", id ) } );
    }
  }

  auto const order = kahn( n, c );
  if ( order.size() != n.instances().size() )
  {
    std::vector<bool> placed( n.instances().size(), false );
    for ( auto i : order )
    {
      placed[i] = true;
    }
    std::vector<std::string> stuck;
    for ( std::size_t i = 0; i < placed.size(); ++i )
    {
      if ( !placed[i] )
      {
        stuck.push_back( n.instances()[i].id );
      }
    }
    std::sort( stuck.begin(), stuck.end() );
    error( IssueKind::cycle, stuck.front(), fmt::format( "combinational cycle through {}", fmt::join( stuck, ", " ) ) );
  }
  return r;
}

void require_valid( Netlist const& n )
{
  auto const r = validate( n );
  if ( r.ok() )
  {
    return;
  }
  std::vector<std::string> messages;
  for ( auto const& i : r.issues )
  {
    if ( i.severity == Severity::error )
    {
      messages.push_back( fmt::format( "{}: {}", to_string( i.kind ), i.message ) );
    }
  }
  auto const kind = r.count( IssueKind::cycle ) ? errc::cycle : errc::invalid_netlist;
  throw Error( kind, fmt::format( "netlist '{}' is invalid: {}", n.name(), fmt::join( messages, "; " ) ) );
}

std::vector<std::size_t> topo_order( Netlist const& n )
{
  require_valid( n );
  return kahn( n, connect( n ) );
}

std::map<std::string, int> fanout_map( Netlist const& n )
{
  auto const c = connect( n );
  std::map<std::string, int> fanout;
  for ( auto const& [id, net] : n.nets() )
  {
    auto const s = c.sinks.find( id );
    fanout[id] = s == c.sinks.end() ? 0 : static_cast<int>( s->second.size() );
  }
  return fanout;
}

Netlist flatten( Netlist const& n )
{
  if ( !n.hierarchical() )
  {
    return n;
  }
  require_valid( n );

  NetlistBuilder b( n );
  auto const instances = b.take_instances();
  std::vector<std::pair<std::string, std::string>> aliases;
  for ( auto const& inst : instances )
  {
    if ( inst.is_primitive() )
    {
      b.add_instance( inst.id, inst.cell, inst.bindings );
      continue;
    }
    auto const sub = flatten( *std::get<NetlistPtr>( inst.cell ) );
    std::map<std::string, std::string> net_map;
    for ( auto const& t : sub.inputs() )
    {
      net_map[t.net] = inst.bindings.at( t.port.name );
    }
    for ( auto const& t : sub.outputs() )
    {
      auto const& outer = inst.bindings.at( t.port.name );
      auto const [it, fresh] = net_map.emplace( t.net, outer );
      if ( !fresh )
      {
        // pass-through or one inner net on several outputs
        aliases.emplace_back( outer, it->second );
      }
    }
    for ( auto const& [id, net] : sub.nets() )
    {
      if ( !net_map.count( id ) )
      {
        auto mapped = inst.id + "/" + id;
        b.add_net( mapped, net.radix );
        net_map[id] = std::move( mapped );
      }
    }
    for ( auto const& si : sub.instances() )
    {
      std::map<std::string, std::string> bindings;
      for ( auto const& [port, net] : si.bindings )
      {
        bindings[port] = net_map.at( net );
      }
      b.add_instance( inst.id + "/" + si.id, si.cell, std::move( bindings ) );
    }
  }
  for ( auto const& [from, to] : aliases )
  {
    b.merge_net( from, to );
  }
  return std::move( b ).build();
}

BufferLibrary default_buffers( Catalog const& catalog )
{
  return { { 2, catalog.get( "buffer_binary" ) }, { 3, catalog.get( "buffer_ternary" ) }, { 4, catalog.get( "buffer_quaternary" ) } };
}

Netlist insert_buffers( Netlist const& netlist, int max_fanout, BufferLibrary const& buffers )
{
  if ( max_fanout < 2 )
  {
    throw Error( errc::invalid_value, fmt::format( "max_fanout must be at least 2, got {}", max_fanout ) );
  }
  auto const flat = flatten( netlist );
  require_valid( flat );
  auto const c = connect( flat );

  std::vector<std::string> overloaded;
  for ( auto const& [net, sinks] : c.sinks )
  {
    if ( static_cast<int>( sinks.size() ) > max_fanout )
    {
      int const radix = flat.nets().at( net ).radix;
      auto const it = buffers.find( radix );
      if ( it == buffers.end() || !it->second )
      {
        throw Error( errc::missing_buffer, fmt::format( "no buffer cell for radix {} (net '{}')", radix, net ) );
      }
      auto const ports = it->second->ports;
      if ( ports.size() != 2 || ports[0].radix != radix || ports[1].radix != radix )
      {
        throw Error( errc::missing_buffer, fmt::format( "buffer {} is not a radix-{} identity cell", it->second->key(), radix ) );
      }
      overloaded.push_back( net );
    }
  }

  NetlistBuilder b( flat );
  for ( auto const& net : overloaded )
  {
    auto const& buffer = buffers.at( flat.nets().at( net ).radix );
    auto const in = buffer->ports[0].name;
    auto const out = buffer->ports[1].name;
    auto sinks = c.sinks.at( net );
    for ( int level = 0; static_cast<int>( sinks.size() ) > max_fanout; ++level )
    {
      auto const groups = ( sinks.size() + max_fanout - 1 ) / max_fanout;
      std::vector<Endpoint> next;
      for ( std::size_t g = 0; g < groups; ++g )
      {
        auto const id = fmt::format( "buf[{}]{}.{}", net, level, g );
        auto const driven = b.place( id, buffer, { { in, net } } ).at( out );
        auto const first = g * max_fanout;
        auto const last = std::min( sinks.size(), first + max_fanout );
        for ( auto k = first; k < last; ++k )
        {
          if ( sinks[k].instance.empty() )
          {
            b.rebind_output( sinks[k].port, driven );
          }
          else
          {
            b.rebind( sinks[k].instance, sinks[k].port, driven );
          }
        }
        next.push_back( { id, in } );
      }
      sinks = std::move( next );
    }
  }
  return std::move( b ).build();
}

} // namespace mvl
