/*!
  \file config.hpp
  \brief key = value configuration files

  Recognized keys: `qmul_tc_choice`, `max_fanout`, `code_map`
  (positional | gray), `adder_variant`, `half_adder_tc`, `nqi_tc`,
  `iqi_tc`, `pqi_tc`, and `tc.<cell>[:<variant>]` for any catalog cell.
  Everything after `#` is a comment; blank lines are ignored.
*/

#pragma once

#include <mvl/catalog.hpp>
#include <mvl/generators.hpp>

#include <map>
#include <string>
#include <string_view>

namespace mvl
{

struct Config
{
  GeneratorConfig generator;
  /// `name` or `name:variant` -> transistor count.
  std::map<std::string, int> tc_overrides;

  /// The catalog with every override applied; validates the generator settings against it.
  Catalog apply( Catalog const& catalog ) const;
};

/// Throws `Error` (parse_error) on malformed lines, unknown keys or bad values.
Config parse_config( std::string_view text );
Config load_config( std::string const& path );

} // namespace mvl
