#pragma once

#include "chronocheck/model.hpp"

#include <stdexcept>
#include <vector>

namespace chronocheck
{

struct ExplorationLimits
{
    std::size_t max_nodes = 100000;
    std::size_t max_depth = 64;
};

/// A reachable record state together with the events that occurred at least
/// once on the path that discovered it.
struct Node
{
    RecordState state;
    EventSet occurred;
    std::size_t depth = 0;
};

struct Edge
{
    std::size_t source = 0;
    std::size_t event = 0;
    std::size_t target = 0;
    std::vector< MonotonicityViolation > violations;
};

/// Labeled transition system over (record state, occurred events). Node 0
/// is the initial node; nodes and edges are in breadth-first discovery order
/// with events tried in declaration order.
struct ReachabilityGraph
{
    std::vector< Node > nodes;
    std::vector< Edge > edges;
    bool truncated = false;

    [[nodiscard]] const Node& initial() const { return nodes.front(); }
    [[nodiscard]] std::optional< std::size_t > find( const RecordState& state, EventSet occurred ) const;
};

/// Raised by strict exploration on the first record that grows.
class MonotonicityError : public std::runtime_error
{
public:
    MonotonicityError( std::string message, MonotonicityViolation violation, RecordState source )
        : std::runtime_error( std::move( message ) ), _violation{ std::move( violation ) },
          _source{ std::move( source ) }
    {}

    [[nodiscard]] const MonotonicityViolation& violation() const { return _violation; }
    [[nodiscard]] const RecordState& source() const { return _source; }

private:
    MonotonicityViolation _violation;
    RecordState _source;
};

ReachabilityGraph explore( const Model& model, const ExplorationLimits& limits = {}, bool strict = false );

/// Nodes whose record state is inconsistent under `mode`.
std::vector< std::size_t > check_gs( const Model& model, const ReachabilityGraph& graph, ConsistencyMode mode );

struct DiamondViolation
{
    RecordState state;
    std::size_t first = 0;  // e
    std::size_t second = 0; // f
    RecordState first_then_second; // U_f(U_e(R))
    RecordState second_then_first; // U_e(U_f(R))
};

/// Every distinct explored state against every unordered pair of independent events.
std::vector< DiamondViolation > check_diamond( const Model& model, const ReachabilityGraph& graph,
                                               ConsistencyMode mode );

struct MonotonicityFinding
{
    std::size_t edge = 0; // first edge exhibiting the violation
    RecordState source;
    MonotonicityViolation violation;
};

/// Violations recorded on edges, one entry per (event, source state, site).
std::vector< MonotonicityFinding > check_monotonicity( const ReachabilityGraph& graph );

struct ClockViolation
{
    std::size_t edge = 0;
    double before = 0;
    double after = 0;
};

/// Edges along which the information clock strictly decreases. The
/// comparison is made on the exact feasible-set measures.
std::vector< ClockViolation > check_clock_monotone( const Model& model, const ReachabilityGraph& graph );

} // namespace chronocheck
