#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mvl
{

enum class errc
{
  invalid_value,
  radix_mismatch,
  non_total_table,
  unknown_cell,
  unknown_variant,
  invalid_netlist,
  cycle,
  incomplete_assignment,
  input_space_too_large,
  incompatible_signature,
  missing_buffer,
  zero_baseline,
  parse_error,
  unsupported,
};

std::string_view to_string( errc kind );

/*! \brief The single exception type thrown by the library; `kind()` says what went wrong. */
class Error : public std::runtime_error
{
public:
  Error( errc kind, std::string const& what )
      : std::runtime_error( what ), kind_( kind )
  {
  }

  errc kind() const noexcept { return kind_; }

private:
  errc kind_;
};

} // namespace mvl
