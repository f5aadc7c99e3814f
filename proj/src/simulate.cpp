#include <mvl/error.hpp>
#include <mvl/simulate.hpp>

#include <algorithm>
#include <cctype>
#include <limits>
#include <random>

#include <fmt/format.h>

namespace mvl
{

Simulator::Simulator( Netlist const& netlist )
{
  auto const flat = flatten( netlist );
  auto const order = topo_order( flat );

  std::map<std::string, std::uint32_t> index;
  for ( auto const& [id, net] : flat.nets() )
  {
    index.emplace( id, static_cast<std::uint32_t>( index.size() ) );
  }
  net_count_ = index.size();

  auto inputs = flat.inputs();
  std::sort( inputs.begin(), inputs.end(), []( auto const& x, auto const& y ) { return x.port.name < y.port.name; } );
  for ( auto const& t : inputs )
  {
    inputs_.push_back( t.port );
    input_nets_.push_back( index.at( t.net ) );
  }
  for ( auto const& t : flat.outputs() )
  {
    outputs_.push_back( t.port );
    output_nets_.push_back( index.at( t.net ) );
  }

  for ( auto i : order )
  {
    auto const& inst = flat.instances()[i];
    auto const& spec = inst.primitive();
    auto [it, fresh] = tables_.try_emplace( spec.get() );
    auto& table = it->second;
    auto const ins = spec->inputs();
    auto const outs = spec->outputs();
    if ( fresh )
    {
      std::vector<int> radices;
      int stride = 1;
      for ( auto const& p : ins )
      {
        table.strides.push_back( stride );
        radices.push_back( p.radix );
        stride *= p.radix;
      }
      table.outputs = outs.size();
      table.rows.reserve( static_cast<std::size_t>( stride ) * outs.size() );
      std::vector<int> result( outs.size() );
      for ( auto const& point : enumerate_domain( radices ) )
      {
        spec->behavior( point, result );
        for ( std::size_t k = 0; k < outs.size(); ++k )
        {
          if ( result[k] < 0 || result[k] >= outs[k].radix )
          {
            throw Error( errc::invalid_value, fmt::format( "cell {} drives {} on radix-{} port '{}'", spec->key(), result[k],
                                                           outs[k].radix, outs[k].name ) );
          }
          table.rows.push_back( static_cast<std::uint8_t>( result[k] ) );
        }
      }
    }
    Step step{ &table, {}, {} };
    for ( auto const& p : ins )
    {
      step.in.push_back( index.at( inst.bindings.at( p.name ) ) );
    }
    for ( auto const& p : outs )
    {
      step.out.push_back( index.at( inst.bindings.at( p.name ) ) );
    }
    steps_.push_back( std::move( step ) );
  }
}

void Simulator::run( std::span<int const> inputs, std::span<int> outputs ) const
{
  std::vector<std::uint8_t> v( net_count_, 0 );
  for ( std::size_t i = 0; i < input_nets_.size(); ++i )
  {
    v[input_nets_[i]] = static_cast<std::uint8_t>( inputs[i] );
  }
  for ( auto const& s : steps_ )
  {
    std::size_t row = 0;
    for ( std::size_t k = 0; k < s.in.size(); ++k )
    {
      row += static_cast<std::size_t>( v[s.in[k]] ) * s.table->strides[k];
    }
    auto const* r = &s.table->rows[row * s.table->outputs];
    for ( std::size_t k = 0; k < s.out.size(); ++k )
    {
      v[s.out[k]] = r[k];
    }
  }
  for ( std::size_t i = 0; i < output_nets_.size(); ++i )
  {
    outputs[i] = v[output_nets_[i]];
  }
}

std::map<std::string, LogicLevel> evaluate( Netlist const& netlist, Assignment const& assignment )
{
  Simulator const sim( netlist );
  std::vector<int> in;
  for ( auto const& p : sim.inputs() )
  {
    auto const it = assignment.find( p.name );
    if ( it == assignment.end() )
    {
      throw Error( errc::incomplete_assignment, fmt::format( "no value for input '{}'", p.name ) );
    }
    if ( it->second.radix() > p.radix )
    {
      throw Error( errc::radix_mismatch, fmt::format( "input '{}' is radix {}, got a radix-{} value", p.name, p.radix, it->second.radix() ) );
    }
    in.push_back( it->second.value() );
  }
  for ( auto const& [name, level] : assignment )
  {
    if ( std::none_of( sim.inputs().begin(), sim.inputs().end(), [&]( auto const& p ) { return p.name == name; } ) )
    {
      throw Error( errc::invalid_value, fmt::format( "'{}' is not an input of {}", name, netlist.name() ) );
    }
  }
  std::vector<int> out( sim.outputs().size() );
  sim.run( in, out );
  std::map<std::string, LogicLevel> result;
  for ( std::size_t i = 0; i < out.size(); ++i )
  {
    result.emplace( sim.outputs()[i].name, LogicLevel{ sim.outputs()[i].radix, out[i] } );
  }
  return result;
}

namespace
{

struct OperandDigit
{
  std::string group;
  int index;
};

OperandDigit split_port( std::string const& name )
{
  auto pos = name.size();
  while ( pos > 0 && std::isdigit( static_cast<unsigned char>( name[pos - 1] ) ) )
  {
    --pos;
  }
  if ( pos == 0 || pos == name.size() )
  {
    return { name, 0 };
  }
  return { name.substr( 0, pos ), std::stoi( name.substr( pos ) ) };
}

/// Ports of each operand, least significant first, as positions into a port list.
std::map<std::string, std::vector<std::size_t>> group_ports( std::vector<PortSpec> const& ports )
{
  std::map<std::string, std::vector<std::pair<int, std::size_t>>> tmp;
  for ( std::size_t i = 0; i < ports.size(); ++i )
  {
    auto const d = split_port( ports[i].name );
    tmp[d.group].emplace_back( d.index, i );
  }
  std::map<std::string, std::vector<std::size_t>> groups;
  for ( auto& [g, v] : tmp )
  {
    std::sort( v.begin(), v.end() );
    for ( auto const& [idx, pos] : v )
    {
      groups[g].push_back( pos );
    }
  }
  return groups;
}

OperandValues operand_values( std::vector<PortSpec> const& ports, std::map<std::string, std::vector<std::size_t>> const& groups,
                              std::span<int const> values )
{
  OperandValues r;
  for ( auto const& [g, positions] : groups )
  {
    std::uint64_t v = 0, weight = 1;
    for ( auto pos : positions )
    {
      v += weight * static_cast<std::uint64_t>( values[pos] );
      weight *= static_cast<std::uint64_t>( ports[pos].radix );
    }
    r[g] = v;
  }
  return r;
}

std::uint64_t pack( std::vector<PortSpec> const& ports, std::span<int const> values )
{
  std::uint64_t v = 0, weight = 1;
  for ( std::size_t i = 0; i < ports.size(); ++i )
  {
    v += weight * static_cast<std::uint64_t>( values[i] );
    weight *= static_cast<std::uint64_t>( ports[i].radix );
  }
  return v;
}

std::optional<std::uint64_t> product_of_radices( std::vector<PortSpec> const& ports )
{
  std::uint64_t total = 1;
  for ( auto const& p : ports )
  {
    if ( total > std::numeric_limits<std::uint64_t>::max() / 2 / static_cast<std::uint64_t>( p.radix ) )
    {
      return std::nullopt;
    }
    total *= static_cast<std::uint64_t>( p.radix );
  }
  return total;
}

void require_packable( Simulator const& sim )
{
  if ( !product_of_radices( sim.outputs() ) )
  {
    throw Error( errc::unsupported, "output space does not fit in 63 bits" );
  }
}

/// Advances a mixed-radix counter, first position fastest.
void increment( std::vector<int>& digits, std::vector<PortSpec> const& ports )
{
  for ( std::size_t i = 0; i < digits.size(); ++i )
  {
    if ( ++digits[i] < ports[i].radix )
    {
      return;
    }
    digits[i] = 0;
  }
}

Mismatch witness( std::vector<PortSpec> const& ports, std::vector<int> const& in, std::uint64_t expected, std::uint64_t actual )
{
  Mismatch m{ {}, expected, actual };
  for ( std::size_t i = 0; i < ports.size(); ++i )
  {
    m.inputs.emplace_back( ports[i].name, in[i] );
  }
  return m;
}

class OracleCheck
{
public:
  OracleCheck( Netlist const& netlist, Oracle const& oracle )
      : sim_( netlist ), oracle_( oracle ), groups_( group_ports( sim_.inputs() ) ), out_( sim_.outputs().size() )
  {
    require_packable( sim_ );
  }

  Simulator const& sim() const { return sim_; }

  void check( std::vector<int> const& in, VerifyReport& report )
  {
    sim_.run( in, out_ );
    auto const expected = oracle_( operand_values( sim_.inputs(), groups_, in ) );
    auto const actual = pack( sim_.outputs(), out_ );
    ++report.total_vectors;
    if ( expected != actual )
    {
      report.mismatches.push_back( witness( sim_.inputs(), in, expected, actual ) );
    }
  }

private:
  Simulator sim_;
  Oracle const& oracle_;
  std::map<std::string, std::vector<std::size_t>> groups_;
  std::vector<int> out_;
};

} // namespace

Oracle sum_oracle()
{
  return []( OperandValues const& v ) {
    std::uint64_t total = 0;
    for ( auto const& [name, value] : v )
    {
      total += value;
    }
    return total;
  };
}

Oracle product_oracle()
{
  return []( OperandValues const& v ) {
    auto const a = v.find( "a" );
    auto const b = v.find( "b" );
    if ( a == v.end() || b == v.end() || v.size() != 2 )
    {
      throw Error( errc::incompatible_signature, "product oracle needs exactly operands 'a' and 'b'" );
    }
    return a->second * b->second;
  };
}

std::optional<std::uint64_t> input_space( Netlist const& netlist )
{
  std::vector<PortSpec> ports;
  for ( auto const& t : netlist.inputs() )
  {
    ports.push_back( t.port );
  }
  return product_of_radices( ports );
}

VerifyReport verify_exhaustive( Netlist const& netlist, Oracle const& oracle, std::uint64_t cap )
{
  auto const space = input_space( netlist );
  if ( !space || *space > cap )
  {
    throw Error( errc::input_space_too_large,
                 fmt::format( "{} has more than {} input vectors; use sampled verification", netlist.name(), cap ) );
  }
  OracleCheck check( netlist, oracle );
  VerifyReport report;
  report.exhaustive = true;
  std::vector<int> in( check.sim().inputs().size(), 0 );
  for ( std::uint64_t n = 0; n < *space; ++n )
  {
    check.check( in, report );
    increment( in, check.sim().inputs() );
  }
  return report;
}

VerifyReport verify_sampled( Netlist const& netlist, Oracle const& oracle, std::uint64_t samples, std::uint64_t seed )
{
  OracleCheck check( netlist, oracle );
  auto const& ports = check.sim().inputs();
  VerifyReport report;
  report.seed = seed;

  std::vector<int> in( ports.size(), 0 );
  check.check( in, report );
  for ( std::size_t i = 0; i < ports.size(); ++i )
  {
    in[i] = ports[i].radix - 1;
  }
  check.check( in, report );
  for ( std::size_t i = 0; i < ports.size(); ++i )
  {
    std::fill( in.begin(), in.end(), 0 );
    in[i] = ports[i].radix - 1;
    check.check( in, report );
  }

  std::mt19937_64 rng( seed );
  for ( std::uint64_t n = 0; n < samples; ++n )
  {
    for ( std::size_t i = 0; i < ports.size(); ++i )
    {
      in[i] = static_cast<int>( rng() % static_cast<std::uint64_t>( ports[i].radix ) );
    }
    check.check( in, report );
  }
  return report;
}

namespace
{

enum class Relation
{
  direct,
  digits_to_bits, ///< `a` side quaternary, `b` side binary
  bits_to_digits
};

struct GroupLink
{
  std::vector<std::size_t> a;
  std::vector<std::size_t> b;
  Relation relation;
};

std::vector<GroupLink> link_groups( std::vector<PortSpec> const& a_ports, std::vector<PortSpec> const& b_ports,
                                    std::optional<CodeMap> const& code, char const* side )
{
  auto const ga = group_ports( a_ports );
  auto const gb = group_ports( b_ports );
  auto incompatible = [&]( std::string const& why ) {
    return Error( errc::incompatible_signature, fmt::format( "{} signatures differ: {}", side, why ) );
  };
  if ( ga.size() != gb.size() )
  {
    throw incompatible( "different operand sets" );
  }
  auto all_radix = []( std::vector<PortSpec> const& ports, std::vector<std::size_t> const& pos, int radix ) {
    return std::all_of( pos.begin(), pos.end(), [&]( auto p ) { return ports[p].radix == radix; } );
  };

  std::vector<GroupLink> links;
  for ( auto const& [name, pa] : ga )
  {
    auto const it = gb.find( name );
    if ( it == gb.end() )
    {
      throw incompatible( fmt::format( "operand '{}' missing", name ) );
    }
    auto const& pb = it->second;
    bool same = pa.size() == pb.size();
    for ( std::size_t i = 0; same && i < pa.size(); ++i )
    {
      same = a_ports[pa[i]].radix == b_ports[pb[i]].radix;
    }
    if ( same )
    {
      links.push_back( { pa, pb, Relation::direct } );
      continue;
    }
    bool const a_digits = pb.size() == 2 * pa.size() && all_radix( a_ports, pa, 4 ) && all_radix( b_ports, pb, 2 );
    bool const a_bits = pa.size() == 2 * pb.size() && all_radix( a_ports, pa, 2 ) && all_radix( b_ports, pb, 4 );
    if ( !a_digits && !a_bits )
    {
      throw incompatible( fmt::format( "operand '{}' has unrelated widths or radices", name ) );
    }
    if ( !code )
    {
      throw incompatible( fmt::format( "operand '{}' needs a code map", name ) );
    }
    links.push_back( { pa, pb, a_digits ? Relation::digits_to_bits : Relation::bits_to_digits } );
  }
  return links;
}

/// Copies values of one side into the other side's port positions.
void transfer( std::vector<GroupLink> const& links, CodeMap const& code, std::span<int const> from, std::span<int> to, bool a_to_b )
{
  for ( auto const& l : links )
  {
    auto const& src = a_to_b ? l.a : l.b;
    auto const& dst = a_to_b ? l.b : l.a;
    auto relation = l.relation;
    if ( !a_to_b && relation != Relation::direct )
    {
      relation = relation == Relation::digits_to_bits ? Relation::bits_to_digits : Relation::digits_to_bits;
    }
    switch ( relation )
    {
    case Relation::direct:
      for ( std::size_t i = 0; i < src.size(); ++i )
      {
        to[dst[i]] = from[src[i]];
      }
      break;
    case Relation::digits_to_bits:
      for ( std::size_t i = 0; i < src.size(); ++i )
      {
        auto const [w0, w1] = code.wires( quaternary( from[src[i]] ) );
        to[dst[2 * i]] = w0;
        to[dst[2 * i + 1]] = w1;
      }
      break;
    case Relation::bits_to_digits:
      for ( std::size_t i = 0; i < dst.size(); ++i )
      {
        to[dst[i]] = code.from_wires( from[src[2 * i]], from[src[2 * i + 1]] ).value();
      }
      break;
    }
  }
}

} // namespace

VerifyReport equiv_check( Netlist const& a, Netlist const& b, std::optional<CodeMap> code, std::uint64_t cap )
{
  Simulator const sa( a );
  Simulator const sb( b );
  auto const in_links = link_groups( sa.inputs(), sb.inputs(), code, "input" );
  auto const out_links = link_groups( sa.outputs(), sb.outputs(), code, "output" );
  require_packable( sa );
  auto const map = code.value_or( CodeMap{ CodeKind::positional } );

  auto const space = product_of_radices( sa.inputs() );
  if ( !space || *space > cap )
  {
    throw Error( errc::input_space_too_large, fmt::format( "{} has more than {} input vectors", a.name(), cap ) );
  }

  VerifyReport report;
  report.exhaustive = true;
  std::vector<int> ia( sa.inputs().size(), 0 ), ib( sb.inputs().size(), 0 );
  std::vector<int> oa( sa.outputs().size() ), ob( sb.outputs().size() ), ob_as_a( sa.outputs().size() );
  for ( std::uint64_t n = 0; n < *space; ++n )
  {
    transfer( in_links, map, ia, ib, true );
    sa.run( ia, oa );
    sb.run( ib, ob );
    transfer( out_links, map, ob, ob_as_a, false );
    auto const expected = pack( sa.outputs(), oa );
    auto const actual = pack( sa.outputs(), ob_as_a );
    ++report.total_vectors;
    if ( expected != actual )
    {
      report.mismatches.push_back( witness( sa.inputs(), ia, expected, actual ) );
    }
    increment( ia, sa.inputs() );
  }
  return report;
}

} // namespace mvl
