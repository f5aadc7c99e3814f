/*!
  \file acceptance.cpp
  \brief One PASS/FAIL line per acceptance criterion

  Exits non-zero when any criterion fails.
*/

#include <mvl/cli.hpp>
#include <mvl/generators.hpp>
#include <mvl/report.hpp>
#include <mvl/simulate.hpp>

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

using namespace mvl;

namespace
{

Catalog const& catalog()
{
  static auto const c = Catalog::builtin();
  return c;
}

/// Collects failure reasons for one criterion.
class Check
{
public:
  void expect( bool condition, std::string const& what )
  {
    if ( !condition )
    {
      failures_.push_back( what );
    }
  }

  std::vector<std::string> const& failures() const { return failures_; }

private:
  std::vector<std::string> failures_;
};

double seconds_since( std::chrono::steady_clock::time_point start )
{
  return std::chrono::duration<double>( std::chrono::steady_clock::now() - start ).count();
}

std::vector<std::vector<std::string>> csv_rows( std::string const& text )
{
  std::vector<std::vector<std::string>> rows;
  std::istringstream in( text );
  for ( std::string line; std::getline( in, line ); )
  {
    std::istringstream fields( line );
    std::vector<std::string> row;
    for ( std::string f; std::getline( fields, f, ',' ); )
    {
      row.push_back( f );
    }
    rows.push_back( row );
  }
  return rows;
}

std::pair<int, std::string> cli( std::vector<std::string> const& args )
{
  std::ostringstream out, err;
  int const code = run_cli( args, out, err );
  return { code, out.str() + err.str() };
}

void quaternary_adders( Check& c )
{
  auto const start = std::chrono::steady_clock::now();
  int cells = 0;
  for ( auto const& cell : catalog().primitives() )
  {
    if ( cell->name.starts_with( "qfa_" ) )
    {
      auto const r = verify_exhaustive( gen_cell_wrapper( cell ), sum_oracle() );
      c.expect( r.total_vectors == 32 && r.mismatches.empty(), fmt::format( "{}:{} mismatches", cell->name, cell->variant ) );
      ++cells;
    }
  }
  for ( auto const* variant : { "v1_structural", "v2_decomposed" } )
  {
    auto const r = verify_exhaustive( gen_quaternary_rca( catalog(), 1, variant ), sum_oracle() );
    c.expect( r.total_vectors == 32 && r.mismatches.empty(), fmt::format( "{} mismatches", variant ) );
  }
  c.expect( cells >= 6, fmt::format( "only {} catalog adder variants", cells ) );

  std::ifstream in( MVL_FIXTURE_DIR "/quaternary_adder_table.csv" );
  c.expect( static_cast<bool>( in ), "adder table fixture missing" );
  std::vector<std::string> errata;
  bool header = true;
  for ( std::string line; std::getline( in, line ); )
  {
    if ( line.empty() || line[0] == '#' || std::exchange( header, false ) )
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
    int const a = std::stoi( f[1] ), b = std::stoi( f[2] ), ci = std::stoi( f[3] );
    auto const r = add_oracle( 4, quaternary( a ), quaternary( b ), binary( ci ) );
    bool const matches = r.sum.value() == std::stoi( f[4] ) && r.carry.value() == std::stoi( f[5] );
    c.expect( matches == f[6].empty(), fmt::format( "fixture row {}:{}{}{} disagrees with its note", f[0], a, b, ci ) );
    if ( !matches )
    {
      errata.push_back( fmt::format( "{}:{}{}{}", f[0], a, b, ci ) );
    }
  }
  c.expect( errata == std::vector<std::string>{ "left:330", "right:230" }, "unexpected erratum rows" );
  double const elapsed = seconds_since( start );
  c.expect( elapsed < 1.0, fmt::format( "took {:.3f} s", elapsed ) );
}

void multipliers( Check& c )
{
  auto const start = std::chrono::steady_clock::now();
  auto const q = gen_wallace_quaternary( catalog(), 4 );
  auto const h = gen_v1_multiplier( catalog(), 4 );
  auto const b = gen_wallace_binary( catalog(), 8 );
  for ( auto const* n : { &q, &h, &b } )
  {
    auto const r = verify_exhaustive( *n, product_oracle() );
    c.expect( r.total_vectors == 65536 && r.mismatches.empty(),
              fmt::format( "{}: {} vectors, {} mismatches", n->name(), r.total_vectors, r.mismatches.size() ) );
  }
  auto const e = equiv_check( q, h );
  c.expect( e.total_vectors == 65536 && e.mismatches.empty(), "quaternary and hybrid multipliers differ" );
  double const elapsed = seconds_since( start );
  c.expect( elapsed < 60.0, fmt::format( "took {:.3f} s", elapsed ) );
}

void tables( Check& c )
{
  struct Expected
  {
    std::string table;
    std::vector<int> tc;
    std::vector<double> ratios;
    double tolerance;
  };
  std::vector<Expected> const expected{ { "nand", { 20, 16, 4 }, { 5, 4, 1 }, 0.0 },
                                        { "adders", { 112, 112, 111, 154, 82, 130 }, { 4, 4, 4, 5.5, 2.9, 4.65 }, 0.1 },
                                        { "multipliers", { 1892, 2032, 2888 }, {}, 0.0 } };
  for ( auto const& x : expected )
  {
    auto const [code, text] = cli( { "report", "--table", x.table, "--format", "csv" } );
    c.expect( code == 0, fmt::format( "report --table {} exited {}", x.table, code ) );
    auto const rows = csv_rows( text );
    std::vector<int> tc;
    std::vector<double> ratios;
    for ( std::size_t i = 1; i < rows.size(); ++i )
    {
      if ( rows[i].size() < 7 )
      {
        continue;
      }
      tc.push_back( std::stoi( rows[i][2] ) );
      ratios.push_back( rows[i][6].empty() ? 0.0 : std::stod( rows[i][6] ) );
    }
    c.expect( tc == x.tc, fmt::format( "{}: counts {}", x.table, fmt::join( tc, " " ) ) );
    if ( !x.ratios.empty() )
    {
      bool within = ratios.size() == x.ratios.size();
      for ( std::size_t i = 0; within && i < ratios.size(); ++i )
      {
        within = std::abs( ratios[i] - x.ratios[i] ) <= x.tolerance + 1e-9;
      }
      c.expect( within, fmt::format( "{}: ratios {}", x.table, fmt::join( ratios, " " ) ) );
    }
  }
}

void thesis( Check& c )
{
  auto const rows = thesis_check( catalog() );
  c.expect( !rows.empty(), "no counterpart pairs" );
  for ( auto const& r : rows )
  {
    c.expect( r.tc_ratio > r.information_ratio && r.information_ratio == 2.0,
              fmt::format( "{} vs {}: {:.2f}", r.subject, r.baseline, r.tc_ratio ) );
  }
}

void codecs( Check& c )
{
  for ( int q = 0; q < 4; ++q )
  {
    auto const bits = gray_decode( quaternary( q ) );
    c.expect( gray_encode( bits.x, bits.y ).value() == q, fmt::format( "gray roundtrip at {}", q ) );
  }
  for ( int x = 0; x < 2; ++x )
  {
    for ( int y = 0; y < 2; ++y )
    {
      auto const bits = gray_decode( gray_encode( x, y ) );
      c.expect( bits.x == x && bits.y == y, fmt::format( "gray roundtrip at {}{}", x, y ) );
    }
  }
  for ( int q = 0; q < 3; ++q )
  {
    auto const a = gray_decode( quaternary( q ) ), b = gray_decode( quaternary( q + 1 ) );
    c.expect( ( a.x != b.x ) + ( a.y != b.y ) == 1, fmt::format( "gray adjacency at {}", q ) );
  }
  CodeMap const positional{ CodeKind::positional };
  std::mt19937_64 rng( 2024 );
  for ( int i = 0; i < 10000; ++i )
  {
    std::vector<int> digits( 1 + rng() % 16 );
    for ( auto& d : digits )
    {
      d = static_cast<int>( rng() % 4 );
    }
    DigitVector const v( 4, digits );
    auto const bits = radix_convert( v, positional );
    if ( bits.value() != v.value() || radix_convert_inverse( bits, positional ) != v )
    {
      c.expect( false, fmt::format( "positional conversion changed vector {}", i ) );
      break;
    }
  }
}

void structure( Check& c )
{
  int ands = 0;
  for ( auto const& inst : gen_wallace_binary( catalog(), 8 ).instances() )
  {
    ands += inst.is_primitive() && inst.primitive()->name == "and2_binary";
  }
  c.expect( ands == 64, fmt::format( "{} AND instances", ands ) );

  auto const q = gen_wallace_quaternary( catalog(), 4 );
  int digits = 0;
  for ( auto const& inst : q.instances() )
  {
    if ( inst.is_primitive() && inst.primitive()->name == "qmul_digit" )
    {
      ++digits;
      auto const radix = q.nets().at( inst.bindings.at( "c" ) ).radix;
      c.expect( radix == 3, fmt::format( "{} carry has radix {}", inst.id, radix ) );
    }
  }
  c.expect( digits == 16, fmt::format( "{} digit multipliers", digits ) );
}

void buffering( Check& c )
{
  std::vector<Netlist> circuits{ gen_binary_rca( catalog(), 4 ),          gen_quaternary_rca( catalog(), 4, "roosta_3ps" ),
                                 gen_v1_adder( catalog() ),               gen_v2_decomposed( catalog() ),
                                 gen_wallace_binary( catalog(), 8 ),      gen_wallace_quaternary( catalog(), 4 ),
                                 gen_v1_multiplier( catalog(), 4 ) };
  auto const buffers = default_buffers( catalog() );
  for ( auto const& n : circuits )
  {
    auto const b = insert_buffers( n, 4, buffers );
    for ( auto const& [net, sinks] : fanout_map( flatten( b ) ) )
    {
      c.expect( sinks <= 4, fmt::format( "{}: net {} has {} sinks", n.name(), net, sinks ) );
    }
    c.expect( metrics( b ).derived_tc >= metrics( n ).derived_tc, fmt::format( "{}: count decreased", n.name() ) );
    auto const e = equiv_check( n, b );
    c.expect( e.mismatches.empty(), fmt::format( "{}: {} mismatches after buffering", n.name(), e.mismatches.size() ) );
  }
  auto const b3 = catalog().get( "qfa_v3", "roosta_3ps_buffered" );
  auto const b1 = catalog().get( "qfa_v3", "roosta_1ps_buffered" );
  c.expect( b3->effective_tc() == 100 && b1->effective_tc() == 148, "buffered catalog counts" );
}

void discrepancies( Check& c )
{
  auto const adder = metrics( gen_v1_adder( catalog() ) );
  c.expect( adder.derived_tc == 96 && adder.reported_tc == 112, "V1 adder counts" );
  auto const adder_md = render( adder, Format::md );
  c.expect( adder_md.find( "discrepancy: derived 96 T vs reported 112 T" ) != std::string::npos, "V1 adder note missing" );

  auto const core = metrics( gen_wallace_binary( catalog(), 8 ) ).derived_tc;
  int const interface = 8 * catalog().get( "decoder_q_to_b", "positional" )->effective_tc().value_or( 0 ) +
                        8 * catalog().get( "encoder_b_to_q", "positional" )->effective_tc().value_or( 0 );
  auto const mul = metrics( gen_v1_multiplier( catalog(), 4 ) );
  c.expect( mul.derived_tc == core + interface && mul.reported_tc == 2032,
            fmt::format( "V1 multiplier counts {} vs {} + {}", mul.derived_tc, core, interface ) );
  auto const mul_md = render( mul, Format::md );
  c.expect( mul_md.find( fmt::format( "discrepancy: derived {} T vs reported 2032 T", mul.derived_tc ) ) != std::string::npos,
            "V1 multiplier note missing" );
  c.expect( mul_md.find( "1892" ) != std::string::npos, "V1 multiplier core count missing" );
}

void determinism( Check& c )
{
  std::vector<std::vector<std::string>> const commands{ { "report", "--table", "adders" },
                                                        { "report", "--table", "multipliers", "--format", "json" },
                                                        { "report", "-c", "v1mul4" },
                                                        { "verify", "-c", "qmul4", "--exhaustive" },
                                                        { "verify", "-c", "brca16", "--samples", "2000", "--seed", "7" } };
  for ( auto const& args : commands )
  {
    auto const first = cli( args ), second = cli( args );
    c.expect( first.first == 0, fmt::format( "{} exited {}", fmt::join( args, " " ), first.first ) );
    c.expect( first == second, fmt::format( "{} differs between runs", fmt::join( args, " " ) ) );
  }
}

} // namespace

int main()
{
  std::vector<std::pair<std::string, std::function<void( Check& )>>> const criteria{
      { "quaternary adder correctness", quaternary_adders },
      { "multiplier correctness", multipliers },
      { "table reproduction", tables },
      { "tc ratio exceeds information ratio", thesis },
      { "codec properties", codecs },
      { "structural counts", structure },
      { "buffer pass", buffering },
      { "composition discrepancy notes", discrepancies },
      { "determinism", determinism } };

  int failed = 0;
  for ( std::size_t i = 0; i < criteria.size(); ++i )
  {
    Check check;
    auto const start = std::chrono::steady_clock::now();
    try
    {
      criteria[i].second( check );
    }
    catch ( std::exception const& e )
    {
      check.expect( false, fmt::format( "exception: {}", e.what() ) );
    }
    double const elapsed = seconds_since( start );
    bool const pass = check.failures().empty();
    failed += !pass;
    fmt::print( "{} {} {} ({:.2f} s)\n", pass ? "PASS" : "FAIL", i + 1, criteria[i].first, elapsed );
    for ( auto const& f : check.failures() )
    {
      fmt::print( "     {}\n", f );
    }
  }
  return failed == 0 ? 0 : 1;
}
