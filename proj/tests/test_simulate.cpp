#include <catch2/catch_amalgamated.hpp>

#include <mvl/error.hpp>
#include <mvl/generators.hpp>
#include <mvl/simulate.hpp>

using namespace mvl;

namespace
{

Catalog const& catalog()
{
  static auto const c = Catalog::builtin();
  return c;
}

/// `n` with the output of instance `id` replaced by its complement on a binary net.
Netlist inject_fault( Netlist const& n, std::string const& id, std::string const& port )
{
  NetlistBuilder b( n );
  auto const original = n.instance( id ).bindings.at( port );
  auto const faulty = original + ".faulty";
  b.add_net( faulty, 2 );
  b.rebind( id, port, faulty );
  b.place( "fault", catalog().get( "inverter_binary" ), { { "a", faulty } } );
  b.merge_net( "fault.y", original );
  return std::move( b ).build();
}

} // namespace

TEST_CASE( "evaluate single cells", "[simulate]" )
{
  auto const fa = gen_cell_wrapper( catalog().get( "full_adder_binary" ) );
  auto const r = evaluate( fa, { { "a", binary( 1 ) }, { "b", binary( 1 ) }, { "cin", binary( 1 ) } } );
  CHECK( r.at( "sum" ).value() == 1 );
  CHECK( r.at( "cout" ).value() == 1 );

  auto const qfa = gen_cell_wrapper( catalog().get( "qfa_v3", "roosta_3ps" ) );
  auto const q = evaluate( qfa, { { "a", quaternary( 1 ) }, { "b", quaternary( 2 ) }, { "ci", binary( 1 ) } } );
  CHECK( q.at( "s" ).value() == 0 );
  CHECK( q.at( "co" ).value() == 1 );

  auto const dec = gen_cell_wrapper( catalog().get( "decoder_q_to_b", "gray" ) );
  auto const d = evaluate( dec, { { "q", quaternary( 2 ) } } );
  CHECK( d.at( "x" ).value() == 0 );
  CHECK( d.at( "y" ).value() == 1 );
}

TEST_CASE( "evaluate errors", "[simulate]" )
{
  auto const fa = gen_cell_wrapper( catalog().get( "full_adder_binary" ) );
  try
  {
    evaluate( fa, { { "a", binary( 1 ) }, { "b", binary( 1 ) } } );
    FAIL( "expected an incomplete assignment error" );
  }
  catch ( Error const& e )
  {
    CHECK( e.kind() == errc::incomplete_assignment );
  }
  try
  {
    evaluate( fa, { { "a", quaternary( 1 ) }, { "b", binary( 1 ) }, { "cin", binary( 0 ) } } );
    FAIL( "expected a radix mismatch" );
  }
  catch ( Error const& e )
  {
    CHECK( e.kind() == errc::radix_mismatch );
  }
}

TEST_CASE( "evaluate is pure", "[simulate][property]" )
{
  auto const n = gen_wallace_quaternary( catalog(), 2 );
  Assignment const in{ { "a0", quaternary( 3 ) }, { "a1", quaternary( 2 ) }, { "b0", quaternary( 1 ) }, { "b1", quaternary( 3 ) } };
  auto const first = evaluate( n, in );
  for ( int i = 0; i < 5; ++i )
  {
    CHECK( evaluate( n, in ) == first );
  }
  // 11 * 13 = 143 = 2033 in base 4
  CHECK( first.at( "p0" ).value() == 3 );
  CHECK( first.at( "p1" ).value() == 3 );
  CHECK( first.at( "p2" ).value() == 0 );
  CHECK( first.at( "p3" ).value() == 2 );
}

TEST_CASE( "simulator port order", "[simulate]" )
{
  Simulator const sim( gen_binary_rca( catalog(), 2 ) );
  std::vector<std::string> names;
  for ( auto const& p : sim.inputs() )
  {
    names.push_back( p.name );
  }
  CHECK( names == std::vector<std::string>{ "a0", "a1", "b0", "b1", "cin" } );
  std::vector<int> out( 3 );
  sim.run( std::vector<int>{ 1, 1, 1, 1, 0 }, out );
  CHECK( out == std::vector<int>{ 0, 1, 1 } );
}

TEST_CASE( "exhaustive verification", "[simulate]" )
{
  for ( auto const& cell : catalog().primitives() )
  {
    if ( cell->name.starts_with( "qfa_" ) )
    {
      auto const r = verify_exhaustive( gen_cell_wrapper( cell ), sum_oracle() );
      CHECK( r.total_vectors == 32 );
      CHECK( r.exhaustive );
      CHECK( r.mismatches.empty() );
    }
  }
  auto const m = verify_exhaustive( gen_wallace_quaternary( catalog(), 2 ), product_oracle() );
  CHECK( m.total_vectors == 256 );
  CHECK( m.mismatches.empty() );

  CHECK_THROWS_AS( verify_exhaustive( gen_binary_rca( catalog(), 16 ), sum_oracle() ), Error );
  CHECK( input_space( gen_binary_rca( catalog(), 16 ) ) == std::uint64_t{ 1 } << 33 );
}

TEST_CASE( "fault injection is caught with a witness", "[simulate]" )
{
  auto const good = gen_binary_rca( catalog(), 2 );
  auto const bad = inject_fault( good, "fa1", "sum" );
  CHECK( validate( bad ).ok() );
  auto const r = verify_exhaustive( bad, sum_oracle() );
  CHECK( r.total_vectors == 32 );
  REQUIRE( r.mismatches.size() == 32 );
  auto const& w = r.mismatches.front();
  CHECK( w.inputs == std::vector<std::pair<std::string, int>>{ { "a0", 0 }, { "a1", 0 }, { "b0", 0 }, { "b1", 0 }, { "cin", 0 } } );
  CHECK( w.expected == 0 );
  CHECK( w.actual == 2 );

  auto const e = equiv_check( good, bad );
  CHECK( e.mismatches.size() == 32 );
}

TEST_CASE( "sampled verification", "[simulate]" )
{
  auto const n = gen_binary_rca( catalog(), 16 );
  auto const r = verify_sampled( n, sum_oracle(), 10000, 42 );
  CHECK_FALSE( r.exhaustive );
  CHECK( r.seed == 42u );
  CHECK( r.total_vectors == 10000 + 2 + 33 );
  CHECK( r.mismatches.empty() );

  auto const bad = inject_fault( gen_binary_rca( catalog(), 2 ), "fa0", "cout" );
  auto const a = verify_sampled( bad, sum_oracle(), 200, 5 );
  auto const b = verify_sampled( bad, sum_oracle(), 200, 5 );
  CHECK_FALSE( a.mismatches.empty() );
  REQUIRE( a.mismatches.size() == b.mismatches.size() );
  for ( std::size_t i = 0; i < a.mismatches.size(); ++i )
  {
    CHECK( a.mismatches[i].inputs == b.mismatches[i].inputs );
  }
}

TEST_CASE( "equivalence checking", "[simulate]" )
{
  auto const q4 = gen_quaternary_rca( catalog(), 4, "roosta_3ps" );
  auto const r = equiv_check( q4, q4 );
  CHECK( r.mismatches.empty() );
  CHECK( r.total_vectors == 4u * 4 * 4 * 4 * 4 * 4 * 4 * 4 * 2 );

  auto const b8 = gen_binary_rca( catalog(), 8 );
  auto const cross = equiv_check( q4, b8, CodeMap{ CodeKind::positional } );
  CHECK( cross.total_vectors == std::uint64_t{ 1 } << 17 );
  CHECK( cross.mismatches.empty() );
  CHECK( equiv_check( b8, q4, CodeMap{ CodeKind::positional } ).mismatches.empty() );

  // the gray code is not positional, so a binary adder behind it is not a quaternary adder
  CHECK_FALSE( equiv_check( q4, b8, CodeMap{ CodeKind::gray } ).mismatches.empty() );

  CHECK_THROWS_AS( equiv_check( q4, b8 ), Error );
  CHECK_THROWS_AS( equiv_check( q4, gen_binary_rca( catalog(), 6 ), CodeMap{ CodeKind::positional } ), Error );
}

TEST_CASE( "equivalence is symmetric in mismatch count", "[simulate][property]" )
{
  auto const good = gen_binary_rca( catalog(), 3 );
  for ( auto const* id : { "fa0", "fa1", "fa2" } )
  {
    for ( auto const* port : { "sum", "cout" } )
    {
      auto const bad = inject_fault( good, id, port );
      CHECK( equiv_check( good, bad ).mismatches.size() == equiv_check( bad, good ).mismatches.size() );
    }
  }
}
