#include <catch2/catch_amalgamated.hpp>

#include <mvl/catalog.hpp>
#include <mvl/error.hpp>
#include <mvl/logic.hpp>

#include <fstream>
#include <fmt/format.h>
#include <sstream>

using namespace mvl;

namespace
{

std::vector<int> run( PrimitiveSpec const& cell, std::vector<int> const& inputs )
{
  std::vector<int> out( cell.outputs().size() );
  cell.behavior( inputs, out );
  return out;
}

struct FixtureRow
{
  std::string half;
  int a, b, ci, qs, qc;
  std::string note;
};

std::vector<FixtureRow> load_adder_fixture()
{
  std::ifstream in( MVL_FIXTURE_DIR "/quaternary_adder_table.csv" );
  REQUIRE( in );
  std::vector<FixtureRow> rows;
  std::string line;
  bool header = true;
  while ( std::getline( in, line ) )
  {
    if ( line.empty() || line[0] == '#' )
    {
      continue;
    }
    if ( std::exchange( header, false ) )
    {
      continue;
    }
    std::istringstream fields( line );
    std::vector<std::string> f;
    for ( std::string s; std::getline( fields, s, ',' ); )
    {
      f.push_back( s );
    }
    f.resize( 7 );
    rows.push_back( { f[0], std::stoi( f[1] ), std::stoi( f[2] ), std::stoi( f[3] ), std::stoi( f[4] ), std::stoi( f[5] ), f[6] } );
  }
  return rows;
}

} // namespace

TEST_CASE( "builtin transistor counts", "[catalog]" )
{
  auto const c = Catalog::builtin();
  auto tc = [&]( std::string const& name, std::string const& variant = {} ) { return c.get( name, variant )->effective_tc(); };

  CHECK( tc( "inverter_binary" ) == 2 );
  CHECK( tc( "nand2_binary" ) == 4 );
  CHECK( tc( "xor2_binary" ) == 10 );
  CHECK( tc( "and2_binary" ) == 6 );
  CHECK( tc( "full_adder_binary" ) == 28 );
  CHECK( tc( "half_adder_binary" ) == 16 );
  CHECK( tc( "inverter_quaternary" ) == 10 );
  CHECK( tc( "nand2_quaternary", "sharifi" ) == 20 );
  CHECK( tc( "nand2_quaternary", "ebrahimi" ) == 16 );
  CHECK( tc( "decoder_q_to_b", "gray" ) == 14 );
  CHECK( tc( "encoder_b_to_q", "gray" ) == 12 );
  CHECK( tc( "qfa_v1", "3ps" ) == 112 );
  CHECK( tc( "qfa_v1", "1ps" ) == 112 );
  CHECK( tc( "qfa_v2", "ebrahimi" ) == 111 );
  CHECK( tc( "qfa_v3", "moaiyeri" ) == 154 );
  CHECK( tc( "qfa_v3", "roosta_3ps" ) == 82 );
  CHECK( tc( "qfa_v3", "roosta_1ps" ) == 130 );
  CHECK( tc( "qfa_v3", "roosta_3ps_buffered" ) == 100 );
  CHECK( tc( "qfa_v3", "roosta_1ps_buffered" ) == 148 );
  CHECK( tc( "buffer_binary" ) == 4 );
  CHECK( tc( "buffer_quaternary" ) == 20 );

  auto const qmul = c.get( "qmul_digit" );
  REQUIRE( qmul->reported_tc );
  CHECK( qmul->reported_tc->low == 54 );
  CHECK( qmul->reported_tc->high == 76 );

  for ( auto const* name : { "nqi_detector", "iqi_detector", "pqi_detector", "q332", "q322", "qha32", "qha31" } )
  {
    CHECK_FALSE( tc( name ).has_value() );
  }
  CHECK( c.get( "inverter_quaternary" )->supply_rails == 3 );
  CHECK( c.get( "qfa_v3", "roosta_1ps" )->supply_rails == 1 );
  CHECK( c.get( "qfa_v3", "roosta_3ps" )->supply_rails == 3 );
}

TEST_CASE( "catalog invariants", "[catalog]" )
{
  auto const catalog = Catalog::builtin();
  for ( auto const& cell : catalog.primitives() )
  {
    INFO( cell->key() );
    CHECK( cell->supply_rails >= 1 );
    CHECK( ( !cell->reported_tc || cell->reported_tc->low >= 0 ) );
    CHECK( !cell->source.empty() );
    std::vector<int> radices;
    for ( auto const& p : cell->inputs() )
    {
      radices.push_back( p.radix );
    }
    // behavior is total and stays within the output radices
    for ( auto const& point : enumerate_domain( radices ) )
    {
      auto const out = run( *cell, point );
      auto const outs = cell->outputs();
      for ( std::size_t i = 0; i < out.size(); ++i )
      {
        REQUIRE( out[i] >= 0 );
        REQUIRE( out[i] < outs[i].radix );
      }
    }
  }
}

TEST_CASE( "lookup errors", "[catalog]" )
{
  auto const c = Catalog::builtin();
  CHECK_THROWS_AS( c.get( "no_such_cell" ), Error );
  CHECK_THROWS_AS( c.get( "qfa_v3", "no_such_variant" ), Error );
  CHECK_THROWS_AS( c.get( "nand2_quaternary" ), Error );
  CHECK( c.find( "no_such_cell" ) == nullptr );
  CHECK_THROWS_AS( c.qfa( "no_such_variant" ), Error );
  CHECK( c.qfa( "roosta_3ps" )->name == "qfa_v3" );
}

TEST_CASE( "quaternary cells match the oracles", "[catalog]" )
{
  auto const c = Catalog::builtin();
  for ( auto const& cell : c.primitives() )
  {
    if ( !cell->name.starts_with( "qfa_" ) )
    {
      continue;
    }
    INFO( cell->key() );
    for ( auto const& p : enumerate_domain( { 4, 4, 2 } ) )
    {
      auto const r = add_oracle( 4, quaternary( p[0] ), quaternary( p[1] ), binary( p[2] ) );
      REQUIRE( run( *cell, p ) == std::vector<int>{ r.sum.value(), r.carry.value() } );
    }
  }
  auto const qmul = c.get( "qmul_digit" );
  int max_carry = 0;
  for ( auto const& p : enumerate_domain( { 4, 4 } ) )
  {
    auto const r = mul_digit_oracle( quaternary( p[0] ), quaternary( p[1] ) );
    auto const out = run( *qmul, p );
    REQUIRE( out == std::vector<int>{ r.product.value(), r.carry.value() } );
    max_carry = std::max( max_carry, out[1] );
  }
  CHECK( max_carry == 2 );

  for ( int q = 0; q < 4; ++q )
  {
    CHECK( run( *c.get( "inverter_quaternary" ), { q } )[0] == 3 - q );
    CHECK( run( *c.get( "nqi_detector" ), { q } )[0] == threshold( ThresholdKind::nqi, quaternary( q ) ).value() );
    CHECK( run( *c.get( "iqi_detector" ), { q } )[0] == threshold( ThresholdKind::iqi, quaternary( q ) ).value() );
    CHECK( run( *c.get( "pqi_detector" ), { q } )[0] == threshold( ThresholdKind::pqi, quaternary( q ) ).value() );
    auto const g = gray_decode( quaternary( q ) );
    CHECK( run( *c.get( "decoder_q_to_b", "gray" ), { q } ) == std::vector<int>{ g.x, g.y } );
    CHECK( run( *c.get( "encoder_b_to_q", "gray" ), { g.x, g.y } )[0] == q );
    CHECK( run( *c.get( "decoder_q_to_b", "positional" ), { q } ) == std::vector<int>{ q / 2, q % 2 } );
    for ( int r = 0; r < 4; ++r )
    {
      CHECK( run( *c.get( "nand2_quaternary", "sharifi" ), { q, r } )[0] == 3 - std::min( q, r ) );
    }
  }
}

TEST_CASE( "mixed-radix adders", "[catalog]" )
{
  auto const q332 = mixed_radix_adder_spec( MixedAdderKind::q332 );
  auto const q322 = mixed_radix_adder_spec( MixedAdderKind::q322 );
  auto const qha32 = mixed_radix_adder_spec( MixedAdderKind::qha32 );
  auto const qha31 = mixed_radix_adder_spec( MixedAdderKind::qha31 );

  CHECK( run( q332, { 3, 3, 2 } ) == std::vector<int>{ 0, 2 } );
  CHECK( run( qha31, { 3, 1 } ) == std::vector<int>{ 0, 1 } );
  CHECK( run( qha32, { 0, 0 } ) == std::vector<int>{ 0, 0 } );

  auto radices = []( PrimitiveSpec const& s ) {
    std::vector<int> r;
    for ( auto const& p : s.ports )
    {
      r.push_back( p.radix );
    }
    return r;
  };
  CHECK( radices( q332 ) == std::vector<int>{ 4, 4, 3, 4, 3 } );
  CHECK( radices( q322 ) == std::vector<int>{ 4, 3, 3, 4, 2 } );
  CHECK( radices( qha32 ) == std::vector<int>{ 4, 3, 4, 2 } );
  CHECK( radices( qha31 ) == std::vector<int>{ 4, 2, 4, 2 } );

  for ( auto const* s : { &q332, &q322, &qha32, &qha31 } )
  {
    std::vector<int> in;
    for ( auto const& p : s->inputs() )
    {
      in.push_back( p.radix );
    }
    for ( auto const& p : enumerate_domain( in ) )
    {
      int sum = 0;
      for ( auto v : p )
      {
        sum += v;
      }
      auto const out = run( *s, p );
      REQUIRE( 4 * out[1] + out[0] == sum );
      REQUIRE( out[1] < s->outputs()[1].radix );
    }
  }
}

TEST_CASE( "overrides", "[catalog]" )
{
  auto const c = Catalog::builtin().with_overrides( { { "half_adder_binary", 14 }, { "q332", 90 }, { "qfa_v3:moaiyeri", 150 } } );
  CHECK( c.get( "half_adder_binary" )->effective_tc() == 14 );
  CHECK( c.get( "q332" )->effective_tc() == 90 );
  CHECK( c.get( "qfa_v3", "moaiyeri" )->effective_tc() == 150 );
  CHECK( c.get( "qfa_v3", "roosta_3ps" )->effective_tc() == 82 );
  CHECK( Catalog::builtin().get( "half_adder_binary" )->effective_tc() == 16 );
  CHECK_THROWS_AS( Catalog::builtin().with_overrides( { { "no_such_cell", 1 } } ), Error );
  CHECK_THROWS_AS( Catalog::builtin().with_overrides( { { "qfa_v3:nope", 1 } } ), Error );
}

TEST_CASE( "composites", "[catalog]" )
{
  auto const c = Catalog::builtin();
  CHECK( c.composite( "wallace_binary_8" )->reported_tc == 1892 );
  CHECK( c.composite( "v1_multiplier_4" )->reported_tc == 2032 );
  CHECK( c.composite( "wallace_quaternary_4" )->reported_tc == 2888 );
  CHECK_FALSE( c.composite( "wallace_binary_4" ).has_value() );
}

TEST_CASE( "printed adder table errata", "[catalog][fixture]" )
{
  auto const rows = load_adder_fixture();
  REQUIRE( rows.size() == 32 );
  std::vector<std::string> errata;
  for ( auto const& row : rows )
  {
    auto const r = add_oracle( 4, quaternary( row.a ), quaternary( row.b ), binary( row.ci ) );
    bool const matches = r.sum.value() == row.qs && r.carry.value() == row.qc;
    INFO( row.half << " " << row.a << row.b << row.ci );
    CHECK( matches == row.note.empty() );
    if ( !matches )
    {
      errata.push_back( fmt::format( "{}:{}{}{}", row.half, row.a, row.b, row.ci ) );
    }
  }
  CHECK( errata == std::vector<std::string>{ "left:330", "right:230" } );

  // the misprinted right-half row agrees with arithmetic once its carry in is read as 1
  auto const fixed = add_oracle( 4, quaternary( 2 ), quaternary( 3 ), binary( 1 ) );
  CHECK( fixed.sum.value() == 2 );
  CHECK( fixed.carry.value() == 1 );

  // every row in a half shares that half's carry in, except the erratum
  for ( auto const& row : rows )
  {
    if ( row.note.empty() )
    {
      CHECK( row.ci == ( row.half == "right" ? 1 : 0 ) );
    }
  }
}
