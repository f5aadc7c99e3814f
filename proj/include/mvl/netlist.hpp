/*!
  \file netlist.hpp
  \brief Combinational netlists over catalog primitives

  A netlist is a set of instances connected by single-driver nets. Each net
  carries a radix; a net may feed any port whose radix is at least its own
  (a binary carry can enter a ternary-rated adder input, never the reverse).
  Instances refer either to a catalog primitive or to another netlist, and
  `flatten` expands the latter.
*/

#pragma once

#include <mvl/catalog.hpp>

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace mvl
{

class Netlist;
using NetlistPtr = std::shared_ptr<Netlist const>;
using Cell = std::variant<PrimitivePtr, NetlistPtr>;

std::vector<PortSpec> cell_ports( Cell const& cell );
std::string cell_name( Cell const& cell );

struct Instance
{
  std::string id;
  Cell cell;
  /// cell port name -> net id
  std::map<std::string, std::string> bindings;

  bool is_primitive() const { return std::holds_alternative<PrimitivePtr>( cell ); }
  PrimitivePtr const& primitive() const { return std::get<PrimitivePtr>( cell ); }
};

struct Net
{
  std::string id;
  int radix;
};

/// A circuit-level port and the net it connects to.
struct Terminal
{
  PortSpec port;
  std::string net;
};

class Netlist
{
public:
  std::string const& name() const noexcept { return name_; }
  std::vector<Terminal> const& inputs() const noexcept { return inputs_; }
  std::vector<Terminal> const& outputs() const noexcept { return outputs_; }
  std::vector<Instance> const& instances() const noexcept { return instances_; }
  std::map<std::string, Net> const& nets() const noexcept { return nets_; }

  /// A published count for the whole circuit, when one exists.
  std::optional<int> reported_tc() const noexcept { return reported_tc_; }
  std::vector<std::string> const& notes() const noexcept { return notes_; }

  std::vector<PortSpec> interface() const;
  Instance const& instance( std::string const& id ) const;
  bool hierarchical() const;

private:
  friend class NetlistBuilder;

  std::string name_;
  std::vector<Terminal> inputs_;
  std::vector<Terminal> outputs_;
  std::vector<Instance> instances_;
  std::map<std::string, Net> nets_;
  std::optional<int> reported_tc_;
  std::vector<std::string> notes_;
};

/*! \brief Single-owner construction of a netlist.

  The builder enforces only unique ids; everything else is checked by
  `validate`, so malformed circuits can be built on purpose.
*/
class NetlistBuilder
{
public:
  explicit NetlistBuilder( std::string name );
  explicit NetlistBuilder( Netlist from );

  /// Declares a circuit input driving a net of the same name.
  std::string add_input( std::string const& name, int radix );
  void add_output( std::string const& name, int radix, std::string const& net );
  void add_net( std::string const& id, int radix );
  void add_instance( std::string const& id, Cell cell, std::map<std::string, std::string> bindings );

  /*! \brief Places a cell and creates one net per output port, named `<id>.<port>`.

    Returns output port name -> new net id.
  */
  std::map<std::string, std::string> place( std::string const& id, Cell cell, std::map<std::string, std::string> inputs );

  void rebind( std::string const& instance, std::string const& port, std::string const& net );
  void rebind_output( std::string const& port, std::string const& net );
  /// Points every reference to `from` at `to` and drops `from`.
  void merge_net( std::string const& from, std::string const& to );

  /// Removes and returns every instance, keeping ports and nets.
  std::vector<Instance> take_instances();

  void set_reported_tc( std::optional<int> tc );
  void add_note( std::string note );

  bool has_net( std::string const& id ) const { return n_.nets_.count( id ) != 0; }
  int net_radix( std::string const& id ) const;

  Netlist build() const& { return n_; }
  Netlist build() && { return std::move( n_ ); }

private:
  Instance& instance( std::string const& id );

  Netlist n_;
  std::map<std::string, std::size_t> index_;
};

enum class IssueKind
{
  cycle,
  multiple_drivers,
  radix_mismatch,
  undriven_output,
  undriven_net,
  unbound_port,
  unknown_port,
  unknown_net,
  duplicate_port,
  invalid_subcircuit,
  unconnected_net,
};

std::string_view to_string( IssueKind kind );

enum class Severity
{
  error,
  warning
};

struct Issue
{
  IssueKind kind;
  Severity severity;
  /// Net or instance id the issue is about.
  std::string subject;
  std::string message;
};

struct ValidationReport
{
  std::vector<Issue> issues;

  bool ok() const;
  std::size_t count( IssueKind kind ) const;
  std::size_t warnings() const;
};

ValidationReport validate( Netlist const& netlist );

/// Throws `Error` (cycle or invalid_netlist) listing every error found by `validate`.
void require_valid( Netlist const& netlist );

/*! \brief Instance indices with every driver before its sinks.

  Among instances that are ready at the same time, the lexicographically
  smallest id goes first.
*/
std::vector<std::size_t> topo_order( Netlist const& netlist );

/*! \brief Sink endpoint count per net.

  Sinks are instance input pins and circuit output ports.
*/
std::map<std::string, int> fanout_map( Netlist const& netlist );

/// Expands every sub-netlist instance into primitives; ids become `outer/inner`.
Netlist flatten( Netlist const& netlist );

/// Buffer cell per net radix.
using BufferLibrary = std::map<int, PrimitivePtr>;

BufferLibrary default_buffers( Catalog const& catalog );

/*! \brief Splits every net with more than `max_fanout` sinks behind identity buffers.

  Sinks are grouped in canonical order into ceil(sinks / max_fanout)
  buffered nets; the original net then drives the buffers, and the step
  repeats until it too is within the limit. The input is flattened first
  and left untouched.
*/
Netlist insert_buffers( Netlist const& netlist, int max_fanout, BufferLibrary const& buffers );

} // namespace mvl
