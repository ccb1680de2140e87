#include "chronocheck/chronology.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <queue>
#include <random>
#include <stdexcept>

namespace chronocheck
{

namespace
{

std::vector< std::vector< std::size_t > > successors( const InfluenceGraph& ig )
{
    std::vector< std::vector< std::size_t > > adj( ig.event_count );
    for ( const auto& [ pair, witness ] : ig.strong )
        adj[ pair.first ].push_back( pair.second );
    for ( auto& out : adj )
        std::sort( out.begin(), out.end() );
    return adj;
}

// Tarjan's algorithm; components come out in reverse topological order.
std::vector< std::vector< std::size_t > > strongly_connected_components( const std::vector< std::vector< std::size_t > >& adj )
{
    const std::size_t n = adj.size();
    constexpr std::size_t unvisited = static_cast< std::size_t >( -1 );
    std::vector< std::size_t > index( n, unvisited );
    std::vector< std::size_t > low( n, 0 );
    std::vector< bool > on_stack( n, false );
    std::vector< std::size_t > stack;
    std::vector< std::vector< std::size_t > > components;
    std::size_t counter = 0;

    std::function< void( std::size_t ) > visit = [ & ]( std::size_t v ) {
        index[ v ] = low[ v ] = counter++;
        stack.push_back( v );
        on_stack[ v ] = true;
        for ( auto w : adj[ v ] )
        {
            if ( index[ w ] == unvisited )
            {
                visit( w );
                low[ v ] = std::min( low[ v ], low[ w ] );
            }
            else if ( on_stack[ w ] )
            {
                low[ v ] = std::min( low[ v ], index[ w ] );
            }
        }
        if ( low[ v ] == index[ v ] )
        {
            std::vector< std::size_t > component;
            std::size_t w = 0;
            do
            {
                w = stack.back();
                stack.pop_back();
                on_stack[ w ] = false;
                component.push_back( w );
            } while ( w != v );
            std::sort( component.begin(), component.end() );
            components.push_back( std::move( component ) );
        }
    };

    for ( std::size_t v = 0; v < n; ++v )
        if ( index[ v ] == unvisited )
            visit( v );
    return components;
}

// Shortest cycle through `start` that stays inside `component`.
std::vector< std::size_t > shortest_cycle( const std::vector< std::vector< std::size_t > >& adj,
                                           const std::vector< std::size_t >& component, std::size_t start )
{
    constexpr std::size_t none = static_cast< std::size_t >( -1 );
    std::vector< std::size_t > parent( adj.size(), none );
    std::vector< bool > inside( adj.size(), false );
    for ( auto v : component )
        inside[ v ] = true;

    std::deque< std::size_t > queue{ start };
    std::vector< bool > seen( adj.size(), false );
    seen[ start ] = true;
    while ( !queue.empty() )
    {
        auto v = queue.front();
        queue.pop_front();
        for ( auto w : adj[ v ] )
        {
            if ( !inside[ w ] )
                continue;
            if ( w == start )
            {
                std::vector< std::size_t > cycle;
                for ( auto u = v; u != none; u = parent[ u ] )
                    cycle.push_back( u );
                std::reverse( cycle.begin(), cycle.end() );
                return cycle;
            }
            if ( !seen[ w ] )
            {
                seen[ w ] = true;
                parent[ w ] = v;
                queue.push_back( w );
            }
        }
    }
    return {};
}

std::set< EventPair > strong_edge_set( const InfluenceGraph& ig )
{
    std::set< EventPair > out;
    for ( const auto& [ pair, witness ] : ig.strong )
        out.insert( pair );
    return out;
}

RecordState run_schedule( const Model& model, const std::vector< std::size_t >& schedule )
{
    RecordState state = model.initial;
    for ( auto e : schedule )
        state = apply_event( model.events[ e ], state ).next;
    return state;
}

} // namespace

std::set< EventPair > Chronology::pairs() const
{
    std::set< EventPair > out;
    for ( std::size_t e = 0; e < event_count; ++e )
        for ( std::size_t f = 0; f < event_count; ++f )
            if ( reach[ e ][ f ] )
                out.emplace( e, f );
    return out;
}

CycleReport find_strong_cycles( const InfluenceGraph& ig )
{
    auto adj = successors( ig );
    auto components = strongly_connected_components( adj );
    std::sort( components.begin(), components.end() );

    CycleReport report;
    for ( const auto& component : components )
    {
        if ( component.size() < 2 )
            continue;
        report.cycles.push_back( shortest_cycle( adj, component, component.front() ) );
    }
    return report;
}

Chronology transitive_closure( const InfluenceGraph& ig, const std::vector< std::string >& names )
{
    const std::size_t n = ig.event_count;
    if ( names.size() != n )
        throw std::invalid_argument( "one name per event is required" );

    auto adj = successors( ig );
    Chronology chrono;
    chrono.event_count = n;
    chrono.reach.assign( n, std::vector< bool >( n, false ) );

    for ( std::size_t source = 0; source < n; ++source )
    {
        std::deque< std::size_t > queue{ source };
        std::vector< bool > seen( n, false );
        while ( !queue.empty() )
        {
            auto v = queue.front();
            queue.pop_front();
            for ( auto w : adj[ v ] )
            {
                chrono.reach[ source ][ w ] = true;
                if ( !seen[ w ] )
                {
                    seen[ w ] = true;
                    queue.push_back( w );
                }
            }
        }
        if ( chrono.reach[ source ][ source ] )
            chrono.acyclic = false;
    }
    if ( !chrono.acyclic )
        return chrono;

    std::vector< std::size_t > indegree( n, 0 );
    for ( const auto& out : adj )
        for ( auto w : out )
            ++indegree[ w ];

    auto later = [ & ]( std::size_t a, std::size_t b ) { return std::tie( names[ a ], a ) > std::tie( names[ b ], b ); };
    std::priority_queue< std::size_t, std::vector< std::size_t >, decltype( later ) > ready( later );
    for ( std::size_t v = 0; v < n; ++v )
        if ( indegree[ v ] == 0 )
            ready.push( v );

    std::vector< std::size_t > rank( n, 0 );
    std::size_t next = 0;
    while ( !ready.empty() )
    {
        auto v = ready.top();
        ready.pop();
        rank[ v ] = next++;
        for ( auto w : adj[ v ] )
            if ( --indegree[ w ] == 0 )
                ready.push( w );
    }
    chrono.rank = std::move( rank );
    return chrono;
}

std::vector< BDViolation > check_branch_determinacy( const Model& model, const ReachabilityGraph& graph,
                                                     const InfluenceGraph& ig, ConsistencyMode mode )
{
    std::vector< BDViolation > out;
    for ( const auto& [ pair, witness ] : ig.strong )
    {
        const auto& cause = model.events[ witness.cause ];
        const auto& effect = model.events[ witness.effect ];
        const auto& context = graph.nodes[ witness.node ].state;
        auto before = restrict( context, effect.support );
        auto after = restrict( apply_event( cause, context ).next, effect.support );

        for ( std::size_t n = 0; n < graph.nodes.size(); ++n )
        {
            const auto& node = graph.nodes[ n ];
            bool occurred = node.occurred.contains( witness.cause );
            const auto& reference = occurred ? after : before;
            if ( !equivalent( model.space, restrict( node.state, effect.support ), reference, mode ) )
                continue;

            const auto& expected = occurred ? witness.branch1 : witness.branch0;
            auto actual = apply_event( effect, node.state ).next[ witness.site ] & witness.observable;
            if ( !equivalent( model.space, expected, actual, mode ) )
                out.push_back( { witness, n, expected, std::move( actual ), occurred } );
        }
    }
    return out;
}

std::vector< std::vector< std::size_t > > trace_variants( const Model& model, const std::vector< std::size_t >& schedule,
                                                          std::size_t swaps, std::uint64_t seed )
{
    std::vector< std::vector< std::size_t > > out;
    auto swappable = [ & ]( const std::vector< std::size_t >& s ) {
        std::vector< std::size_t > positions;
        for ( std::size_t k = 0; k + 1 < s.size(); ++k )
            if ( s[ k ] != s[ k + 1 ] && independent( model.events[ s[ k ] ], model.events[ s[ k + 1 ] ] ) )
                positions.push_back( k );
        return positions;
    };

    for ( auto k : swappable( schedule ) )
    {
        auto variant = schedule;
        std::swap( variant[ k ], variant[ k + 1 ] );
        out.push_back( std::move( variant ) );
    }

    std::mt19937_64 rng( seed );
    for ( std::size_t chain = 0; chain < swaps; ++chain )
    {
        auto variant = schedule;
        auto length = 1 + rng() % ( 2 * std::max< std::size_t >( schedule.size(), 1 ) );
        for ( std::size_t step = 0; step < length; ++step )
        {
            auto positions = swappable( variant );
            if ( positions.empty() )
                break;
            auto k = positions[ rng() % positions.size() ];
            std::swap( variant[ k ], variant[ k + 1 ] );
        }
        out.push_back( std::move( variant ) );
    }
    return out;
}

TraceCheckReport check_trace_invariance( const Model& model, const std::vector< std::string >& schedule,
                                         std::size_t swaps, std::uint64_t seed, const ExplorationLimits& limits,
                                         ConsistencyMode mode )
{
    TraceCheckReport report;
    report.swaps = swaps;
    report.seed = seed;
    for ( const auto& name : schedule )
    {
        auto e = model.find_event( name );
        if ( !e )
            throw std::invalid_argument( "schedule names unknown event '" + name + "'" );
        report.schedule.push_back( *e );
    }

    auto graph = explore( model, limits );
    report.truncated = graph.truncated;
    report.diamond_violations = check_diamond( model, graph, mode );
    if ( !report.diamond_violations.empty() )
        return report;

    auto evaluate = [ & ]( std::vector< std::size_t > s ) {
        TraceVariant v;
        v.final_state = run_schedule( model, s );
        Model rooted = model;
        rooted.initial = v.final_state;
        auto rooted_graph = explore( rooted, limits );
        report.truncated = report.truncated || rooted_graph.truncated;
        v.strong_edges = strong_edge_set( build_influence_graphs( rooted, rooted_graph, mode ) );
        v.schedule = std::move( s );
        return v;
    };

    report.reference = evaluate( report.schedule );
    for ( auto& s : trace_variants( model, report.schedule, swaps, seed ) )
    {
        auto v = evaluate( std::move( s ) );
        ++report.variants_checked;
        if ( !equivalent( model.space, v.final_state, report.reference->final_state, mode )
             || v.strong_edges != report.reference->strong_edges )
            report.mismatches.push_back( std::move( v ) );
    }
    return report;
}

std::string_view to_string( Verdict verdict )
{
    switch ( verdict )
    {
    case Verdict::no_cycle:
        return "NO_CYCLE";
    case Verdict::cycle_explained:
        return "CYCLE_EXPLAINED";
    case Verdict::theorem_violation_suspected:
        return "THEOREM_VIOLATION_SUSPECTED";
    }
    return "UNKNOWN";
}

namespace
{

std::string subset_text( const Model& model, const Subset& s )
{
    std::string out = "{";
    bool first = true;
    for ( auto w : s.members() )
    {
        if ( !first )
            out += ",";
        out += model.space.label( w );
        first = false;
    }
    return out + "}";
}

std::string edge_text( const Model& model, const EventPair& p )
{
    return model.events[ p.first ].name + " => " + model.events[ p.second ].name;
}

ClaimCheck check_claim( const Model& model, const ReachabilityGraph& graph, const InfluenceGraph& ig,
                        const CycleClaim& claim, ConsistencyMode mode )
{
    ClaimCheck check{ claim, {}, {}, {} };
    std::vector< EventPair > edges;
    for ( std::size_t k = 0; k < claim.events.size(); ++k )
    {
        auto e = model.find_event( claim.events[ k ] );
        auto f = model.find_event( claim.events[ ( k + 1 ) % claim.events.size() ] );
        if ( !e || !f )
            throw std::invalid_argument( "claim names an unknown event" );
        edges.emplace_back( *e, *f );
    }

    for ( const auto& edge : edges )
    {
        if ( !ig.strong.contains( edge ) )
            check.missing_edges.push_back( edge );
        if ( claim.observable
             && !strong_influence_on( model, graph, edge.first, edge.second, *claim.observable, mode ) )
            check.observable_unwitnessed.push_back( edge );
    }

    std::string cycle_text;
    for ( const auto& name : claim.events )
        cycle_text += name + " => ";
    cycle_text += claim.events.front();

    if ( check.confirmed() )
    {
        check.note = "claimed strong-influence cycle " + cycle_text + " is witnessed";
        return check;
    }

    check.note = "claimed strong-influence cycle " + cycle_text + " is not witnessed under the strong-influence definition";
    if ( !check.missing_edges.empty() )
    {
        check.note += "; no witness for";
        for ( std::size_t k = 0; k < check.missing_edges.size(); ++k )
            check.note += ( k == 0 ? " " : ", " ) + edge_text( model, check.missing_edges[ k ] );
    }
    if ( !check.observable_unwitnessed.empty() )
    {
        check.note += "; observable " + subset_text( model, *claim.observable )
                      + " yields no exclusive, nontrivial branch pair at any explored state for";
        for ( std::size_t k = 0; k < check.observable_unwitnessed.size(); ++k )
            check.note += ( k == 0 ? " " : ", " ) + edge_text( model, check.observable_unwitnessed[ k ] );
    }
    return check;
}

} // namespace

TaxonomyReport diagnose( const Model& model, const ExplorationLimits& limits, ConsistencyMode mode )
{
    TaxonomyReport report;
    report.mode = mode;
    report.graph = explore( model, limits );
    report.truncated = report.graph.truncated;

    report.monotonicity_violations = check_monotonicity( report.graph );
    report.diamond_violations = check_diamond( model, report.graph, mode );
    report.gs_violations = check_gs( model, report.graph, mode );
    report.clock_violations = check_clock_monotone( model, report.graph );

    report.influence = build_influence_graphs( model, report.graph, mode );
    report.cycles = find_strong_cycles( report.influence );
    report.has_strong_cycle = !report.cycles.cycles.empty();

    std::vector< std::string > names;
    for ( const auto& e : model.events )
        names.push_back( e.name );
    report.chronology = transitive_closure( report.influence, names );

    report.bd_violations = check_branch_determinacy( model, report.graph, report.influence, mode );

    for ( const auto& claim : model.claims )
        report.claims.push_back( check_claim( model, report.graph, report.influence, claim, mode ) );

    if ( !report.has_strong_cycle )
        report.verdict = Verdict::no_cycle;
    else if ( !report.premises_clean() )
        report.verdict = Verdict::cycle_explained;
    else
        report.verdict = Verdict::theorem_violation_suspected;
    return report;
}

} // namespace chronocheck
