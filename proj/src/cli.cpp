#include <mvl/cli.hpp>
#include <mvl/config.hpp>
#include <mvl/error.hpp>
#include <mvl/generators.hpp>
#include <mvl/report.hpp>
#include <mvl/serialize.hpp>
#include <mvl/simulate.hpp>

#include <filesystem>
#include <ostream>
#include <regex>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

namespace mvl
{

namespace
{

struct Alias
{
  std::string generator;
  std::string variant;
  std::string oracle;
};

std::map<std::string, Alias> const aliases{
    { "brca", { "binary_rca", "", "add" } },          { "qrca", { "quaternary_rca", "", "add" } },
    { "v1add", { "v1_adder", "", "add" } },           { "v2add", { "v2_decomposed", "", "add" } },
    { "bmul", { "wallace_binary", "", "mul" } },      { "qmul", { "wallace_quaternary", "", "mul" } },
    { "v1mul", { "v1_multiplier", "", "mul" } },
};

struct Circuit
{
  Netlist netlist;
  std::string oracle;
};

/// A netlist file, or a builtin alias such as `qmul4` (`<alias><n>`).
Circuit resolve( std::string const& spec, Catalog const& catalog, GeneratorConfig const& config )
{
  static std::regex const pattern{ "([a-z0-9]*[a-z])([0-9]*)" };
  std::smatch m;
  if ( !std::filesystem::exists( spec ) && std::regex_match( spec, m, pattern ) )
  {
    if ( auto const it = aliases.find( m[1] ); it != aliases.end() )
    {
      std::optional<int> n;
      if ( m[2].length() )
      {
        n = std::stoi( m[2] );
      }
      return { generate( catalog, it->second.generator, n, it->second.variant, config ), it->second.oracle };
    }
  }
  return { read_netlist( spec, catalog ), "" };
}

Oracle oracle_for( std::string const& name )
{
  if ( name == "add" )
  {
    return sum_oracle();
  }
  if ( name == "mul" )
  {
    return product_oracle();
  }
  throw Error( errc::invalid_value, fmt::format( "unknown oracle '{}' (add, mul)", name ) );
}

CodeKind parse_code( std::string const& s )
{
  if ( s == "positional" )
  {
    return CodeKind::positional;
  }
  if ( s == "gray" )
  {
    return CodeKind::gray;
  }
  throw Error( errc::invalid_value, fmt::format( "unknown code map '{}' (positional, gray)", s ) );
}

void print_report( std::ostream& out, VerifyReport const& r )
{
  out << fmt::format( "{} vectors, {} mismatches ({})\n", r.total_vectors, r.mismatches.size(),
                      r.exhaustive ? "exhaustive" : fmt::format( "sampled, seed {}", r.seed.value_or( 0 ) ) );
  std::size_t const shown = std::min<std::size_t>( r.mismatches.size(), 10 );
  for ( std::size_t i = 0; i < shown; ++i )
  {
    auto const& m = r.mismatches[i];
    std::vector<std::string> inputs;
    for ( auto const& [name, value] : m.inputs )
    {
      inputs.push_back( fmt::format( "{}={}", name, value ) );
    }
    out << fmt::format( "mismatch {}: expected {}, got {}\n", fmt::join( inputs, " " ), m.expected, m.actual );
  }
  if ( shown < r.mismatches.size() )
  {
    out << fmt::format( "... {} more\n", r.mismatches.size() - shown );
  }
}

std::vector<std::string> split( std::string const& s, char sep )
{
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in( s );
  while ( std::getline( in, part, sep ) )
  {
    if ( !part.empty() )
    {
      parts.push_back( part );
    }
  }
  return parts;
}

} // namespace

int run_cli( std::vector<std::string> const& args, std::ostream& out, std::ostream& err )
{
  CLI::App app{ "Multi-valued logic circuit kit: build, simulate, verify and cost quaternary circuits", "mvlc" };
  app.require_subcommand( 1 );
  std::string config_path;
  app.add_option( "--config", config_path, "key = value configuration file" )->check( CLI::ExistingFile );

  auto* catalog_cmd = app.add_subcommand( "catalog", "Inspect the primitive catalog" );
  catalog_cmd->require_subcommand( 1 );
  auto* list_cmd = catalog_cmd->add_subcommand( "list", "One row per primitive" );
  std::string format = "md";
  list_cmd->add_option( "--format", format, "md, csv or json" );

  auto* build_cmd = app.add_subcommand( "build", "Generate a circuit as a JSON netlist" );
  std::string generator, variant, code, output;
  std::optional<int> n, max_fanout;
  build_cmd->add_option( "generator", generator, fmt::format( "{}", fmt::join( generator_names(), ", " ) ) )->required();
  build_cmd->add_option( "--n", n, "operand width in bits or digits" );
  build_cmd->add_option( "--variant", variant, "adder variant, or name[:variant] for `cell`" );
  build_cmd->add_option( "--code", code, "positional or gray" );
  build_cmd->add_option( "--max-fanout", max_fanout, "buffer nets above this fan-out" );
  build_cmd->add_option( "-o,--output", output, "output file (default: stdout)" );

  auto* sim_cmd = app.add_subcommand( "simulate", "Evaluate one input vector" );
  std::string circuit, inputs;
  sim_cmd->add_option( "-c,--circuit", circuit, "netlist file or builtin alias (e.g. qmul4)" )->required();
  sim_cmd->add_option( "--inputs", inputs, "port=value,..." )->required();

  auto* verify_cmd = app.add_subcommand( "verify", "Check a circuit against an arithmetic oracle" );
  std::string oracle;
  bool exhaustive = false;
  std::optional<std::uint64_t> samples;
  std::uint64_t seed = 1;
  verify_cmd->add_option( "-c,--circuit", circuit, "netlist file or builtin alias (e.g. qmul4)" )->required();
  verify_cmd->add_option( "--oracle", oracle, "add or mul (builtin aliases imply one)" );
  auto* exhaustive_flag = verify_cmd->add_flag( "--exhaustive", exhaustive, "enumerate every input vector" );
  verify_cmd->add_option( "--samples", samples, "random vectors on top of the corner cases" )->excludes( exhaustive_flag );
  verify_cmd->add_option( "--seed", seed, "sampling seed" );

  auto* equiv_cmd = app.add_subcommand( "equiv", "Exhaustive comparison of two circuits" );
  std::string first, second;
  equiv_cmd->add_option( "-a", first, "netlist file or builtin alias" )->required();
  equiv_cmd->add_option( "-b", second, "netlist file or builtin alias" )->required();
  std::string relate;
  equiv_cmd->add_option( "--code", relate, "relate quaternary digits to bit pairs: positional or gray" );

  auto* report_cmd = app.add_subcommand( "report", "Comparison tables and circuit metrics" );
  std::string table;
  auto* table_opt = report_cmd->add_option( "--table", table, "nand, adders or multipliers" );
  report_cmd->add_option( "-c,--circuit", circuit, "netlist file or builtin alias" )->excludes( table_opt );
  report_cmd->add_option( "--format", format, "md, csv or json" );

  std::vector<std::string> argv_storage{ "mvlc" };
  argv_storage.insert( argv_storage.end(), args.begin(), args.end() );
  std::vector<char const*> argv;
  for ( auto const& a : argv_storage )
  {
    argv.push_back( a.c_str() );
  }
  try
  {
    app.parse( static_cast<int>( argv.size() ), argv.data() );
  }
  catch ( CLI::ParseError const& e )
  {
    int const code = app.exit( e, out, err );
    return code == 0 ? 0 : 2;
  }

  try
  {
    Config config = config_path.empty() ? Config{} : load_config( config_path );
    if ( !code.empty() )
    {
      config.generator.code_map = parse_code( code );
    }
    if ( max_fanout )
    {
      config.generator.max_fanout = max_fanout;
    }
    auto const catalog = config.apply( Catalog::builtin() );
    auto const& gen = config.generator;

    if ( *list_cmd )
    {
      out << render( catalog, parse_format( format ) );
      return 0;
    }
    if ( *build_cmd )
    {
      auto const netlist = generate( catalog, generator, n, variant, gen );
      require_valid( netlist );
      if ( output.empty() )
      {
        out << to_json( netlist, catalog );
      }
      else
      {
        write_netlist( output, netlist, catalog );
        out << fmt::format( "wrote {} ({} instances)\n", output, flatten( netlist ).instances().size() );
      }
      return 0;
    }
    if ( *sim_cmd )
    {
      auto const c = resolve( circuit, catalog, gen );
      require_valid( c.netlist );
      std::map<std::string, int> radix;
      for ( auto const& t : c.netlist.inputs() )
      {
        radix[t.port.name] = t.port.radix;
      }
      Assignment assignment;
      for ( auto const& pair : split( inputs, ',' ) )
      {
        auto const eq = pair.find( '=' );
        if ( eq == std::string::npos )
        {
          throw Error( errc::invalid_value, fmt::format( "expected port=value, got '{}'", pair ) );
        }
        auto const name = pair.substr( 0, eq );
        auto const it = radix.find( name );
        if ( it == radix.end() )
        {
          throw Error( errc::invalid_value, fmt::format( "'{}' is not an input of {}", name, c.netlist.name() ) );
        }
        assignment.insert_or_assign( name, LogicLevel( it->second, std::stoi( pair.substr( eq + 1 ) ) ) );
      }
      auto const result = evaluate( c.netlist, assignment );
      for ( auto const& t : c.netlist.outputs() )
      {
        out << fmt::format( "{}={}\n", t.port.name, result.at( t.port.name ).value() );
      }
      return 0;
    }
    if ( *verify_cmd )
    {
      auto const c = resolve( circuit, catalog, gen );
      require_valid( c.netlist );
      auto const chosen = oracle.empty() ? c.oracle : oracle;
      if ( chosen.empty() )
      {
        throw Error( errc::invalid_value, "--oracle is required for netlist files" );
      }
      auto const space = input_space( c.netlist );
      bool const within_cap = space && *space <= default_vector_cap;
      VerifyReport report;
      if ( exhaustive || ( !samples && within_cap ) )
      {
        report = verify_exhaustive( c.netlist, oracle_for( chosen ) );
      }
      else
      {
        report = verify_sampled( c.netlist, oracle_for( chosen ), samples.value_or( 10000 ), seed );
      }
      print_report( out, report );
      return report.mismatches.empty() ? 0 : 1;
    }
    if ( *equiv_cmd )
    {
      auto const a = resolve( first, catalog, gen );
      auto const b = resolve( second, catalog, gen );
      require_valid( a.netlist );
      require_valid( b.netlist );
      std::optional<CodeMap> map;
      if ( !relate.empty() )
      {
        map = CodeMap{ parse_code( relate ) };
      }
      auto const report = equiv_check( a.netlist, b.netlist, map );
      print_report( out, report );
      return report.mismatches.empty() ? 0 : 1;
    }
    if ( *report_cmd )
    {
      if ( !table.empty() )
      {
        out << render( comparison_table( table, catalog, gen ), parse_format( format ) );
        return 0;
      }
      if ( circuit.empty() )
      {
        throw Error( errc::invalid_value, "report needs --table or --circuit" );
      }
      auto const c = resolve( circuit, catalog, gen );
      require_valid( c.netlist );
      out << render( metrics( c.netlist ), parse_format( format ) );
      return 0;
    }
  }
  catch ( Error const& e )
  {
    err << fmt::format( "error [{}]: {}\n", to_string( e.kind() ), e.what() );
    return 2;
  }
  catch ( std::exception const& e )
  {
    err << fmt::format( "error: {}\n", e.what() );
    return 2;
  }
  return 2;
}

} // namespace mvl
