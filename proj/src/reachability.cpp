#include "chronocheck/reachability.hpp"

#include <deque>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace chronocheck
{

namespace
{

struct NodeKey
{
    RecordState state;
    EventSet occurred;

    friend bool operator==( const NodeKey&, const NodeKey& ) = default;
};

struct NodeKeyHash
{
    std::size_t operator()( const NodeKey& k ) const noexcept
    {
        return k.state.hash() ^ ( std::hash< std::uint64_t >{}( k.occurred.bits() ) * 0x9e3779b97f4a7c15ULL );
    }
};

std::string describe( const Model& model, const MonotonicityViolation& v )
{
    return "event '" + v.event + "' enlarges the record at site '" + model.sites.at( v.site ) + "'";
}

} // namespace

std::optional< std::size_t > ReachabilityGraph::find( const RecordState& state, EventSet occurred ) const
{
    for ( std::size_t k = 0; k < nodes.size(); ++k )
        if ( nodes[ k ].occurred == occurred && nodes[ k ].state == state )
            return k;
    return std::nullopt;
}

ReachabilityGraph explore( const Model& model, const ExplorationLimits& limits, bool strict )
{
    ReachabilityGraph graph;
    std::unordered_map< NodeKey, std::size_t, NodeKeyHash > index;

    graph.nodes.push_back( { model.initial, EventSet{}, 0 } );
    index.emplace( NodeKey{ model.initial, EventSet{} }, 0 );
    if ( limits.max_nodes == 0 )
    {
        graph.truncated = !model.events.empty();
        return graph;
    }

    std::deque< std::size_t > frontier{ 0 };
    while ( !frontier.empty() )
    {
        auto current = frontier.front();
        frontier.pop_front();

        // Copy: push_back below may reallocate.
        const Node source = graph.nodes[ current ];
        for ( std::size_t e = 0; e < model.events.size(); ++e )
        {
            auto outcome = apply_event( model.events[ e ], source.state );
            if ( strict && !outcome.violations.empty() )
                throw MonotonicityError( describe( model, outcome.violations.front() ),
                                         outcome.violations.front(), source.state );

            NodeKey key{ std::move( outcome.next ), source.occurred.with( e ) };
            std::size_t target = 0;
            if ( auto it = index.find( key ); it != index.end() )
            {
                target = it->second;
            }
            else
            {
                if ( source.depth >= limits.max_depth || graph.nodes.size() >= limits.max_nodes )
                {
                    graph.truncated = true;
                    continue;
                }
                target = graph.nodes.size();
                graph.nodes.push_back( { key.state, key.occurred, source.depth + 1 } );
                index.emplace( std::move( key ), target );
                frontier.push_back( target );
            }
            graph.edges.push_back( { current, e, target, std::move( outcome.violations ) } );
        }
    }
    return graph;
}

std::vector< std::size_t > check_gs( const Model& model, const ReachabilityGraph& graph, ConsistencyMode mode )
{
    std::vector< std::size_t > out;
    for ( std::size_t k = 0; k < graph.nodes.size(); ++k )
        if ( !is_consistent( model.space, graph.nodes[ k ].state, mode ) )
            out.push_back( k );
    return out;
}

std::vector< DiamondViolation > check_diamond( const Model& model, const ReachabilityGraph& graph,
                                               ConsistencyMode mode )
{
    std::vector< DiamondViolation > out;
    std::unordered_set< RecordState > seen;
    for ( const auto& node : graph.nodes )
    {
        if ( !seen.insert( node.state ).second )
            continue;
        for ( std::size_t e = 0; e < model.events.size(); ++e )
        {
            for ( std::size_t f = e + 1; f < model.events.size(); ++f )
            {
                const auto& ev_e = model.events[ e ];
                const auto& ev_f = model.events[ f ];
                if ( !independent( ev_e, ev_f ) )
                    continue;
                auto ef = apply_event( ev_f, apply_event( ev_e, node.state ).next ).next;
                auto fe = apply_event( ev_e, apply_event( ev_f, node.state ).next ).next;
                if ( !equivalent( model.space, ef, fe, mode ) )
                    out.push_back( { node.state, e, f, std::move( ef ), std::move( fe ) } );
            }
        }
    }
    return out;
}

std::vector< MonotonicityFinding > check_monotonicity( const ReachabilityGraph& graph )
{
    std::vector< MonotonicityFinding > out;
    std::set< std::tuple< std::string, std::size_t, RecordState > > seen;
    for ( std::size_t k = 0; k < graph.edges.size(); ++k )
    {
        const auto& edge = graph.edges[ k ];
        const auto& source = graph.nodes[ edge.source ].state;
        for ( const auto& v : edge.violations )
            if ( seen.emplace( v.event, v.site, source ).second )
                out.push_back( { k, source, v } );
    }
    return out;
}

std::vector< ClockViolation > check_clock_monotone( const Model& model, const ReachabilityGraph& graph )
{
    std::vector< ClockViolation > out;
    for ( std::size_t k = 0; k < graph.edges.size(); ++k )
    {
        const auto& edge = graph.edges[ k ];
        const auto& before = graph.nodes[ edge.source ].state;
        const auto& after = graph.nodes[ edge.target ].state;
        if ( model.space.measure( feasible_set( after ) ) > model.space.measure( feasible_set( before ) ) )
            out.push_back( { k, information_content( model.space, before ), information_content( model.space, after ) } );
    }
    return out;
}

} // namespace chronocheck
