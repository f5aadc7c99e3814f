/*!
  \file serialize.hpp
  \brief JSON netlist documents

  A document holds `name`, `reported_tc`, `notes`, `ports`, `cells`,
  `instances` and `nets`, with an explicit radix on every port and net.
  Netlists are written flattened. Cells found in the catalog are referenced
  by name and variant with their transistor count; other cells also carry
  their ports and full truth table.
*/

#pragma once

#include <mvl/catalog.hpp>
#include <mvl/netlist.hpp>

#include <string>

namespace mvl
{

std::string to_json( Netlist const& netlist, Catalog const& catalog );

/// Throws `Error` (parse_error, unknown_cell) on malformed documents.
Netlist from_json( std::string const& text, Catalog const& catalog );

Netlist read_netlist( std::string const& path, Catalog const& catalog );
void write_netlist( std::string const& path, Netlist const& netlist, Catalog const& catalog );

} // namespace mvl
