/*!
  \file cli.hpp
  \brief The `mvlc` command line

  Exit codes: 0 on success, 1 on a verification mismatch, 2 on usage or
  validation errors.
*/

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mvl
{

/// `args` excludes the program name.
int run_cli( std::vector<std::string> const& args, std::ostream& out, std::ostream& err );

} // namespace mvl
