#include "chronocheck/chronology.hpp"

#include "support/fixtures.hpp"
#include "support/random_models.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace chronocheck;
using namespace chronocheck::testing;

namespace
{

InfluenceGraph graph_of( std::size_t n, const std::vector< EventPair >& edges )
{
    InfluenceGraph ig;
    ig.event_count = n;
    for ( const auto& [ e, f ] : edges )
    {
        StrongWitness w;
        w.cause = e;
        w.effect = f;
        ig.strong.emplace( EventPair{ e, f }, w );
    }
    return ig;
}

std::vector< std::string > names_of( std::size_t n )
{
    std::vector< std::string > names;
    for ( std::size_t k = 0; k < n; ++k )
        names.push_back( "e" + std::to_string( k ) );
    return names;
}

// Is there a nonempty path from `from` to `to`? Plain depth-first search.
bool path_exists( const InfluenceGraph& ig, std::size_t from, std::size_t to )
{
    std::vector< bool > seen( ig.event_count, false );
    std::vector< std::size_t > stack;
    for ( const auto& [ p, w ] : ig.strong )
        if ( p.first == from )
            stack.push_back( p.second );
    while ( !stack.empty() )
    {
        auto v = stack.back();
        stack.pop_back();
        if ( v == to )
            return true;
        if ( seen[ v ] )
            continue;
        seen[ v ] = true;
        for ( const auto& [ p, w ] : ig.strong )
            if ( p.first == v )
                stack.push_back( p.second );
    }
    return false;
}

InfluenceGraph random_graph( std::uint64_t seed )
{
    std::mt19937_64 rng( seed );
    std::size_t n = 1 + rng() % 8;
    double density = ( rng() % 100 ) / 250.0;
    bool dag = rng() % 2 == 0;
    std::vector< EventPair > edges;
    for ( std::size_t e = 0; e < n; ++e )
        for ( std::size_t f = 0; f < n; ++f )
            if ( e != f && ( !dag || e < f ) && std::uniform_real_distribution<>( 0, 1 )( rng ) < density )
                edges.emplace_back( e, f );
    return graph_of( n, edges );
}

} // namespace

TEST_CASE( "strong cycles" )
{
    CHECK( find_strong_cycles( graph_of( 3, { { 0, 1 }, { 1, 2 } } ) ).cycles.empty() );

    auto two = find_strong_cycles( graph_of( 2, { { 0, 1 }, { 1, 0 } } ) );
    REQUIRE( two.cycles.size() == 1 );
    CHECK( two.cycles[ 0 ] == std::vector< std::size_t >{ 0, 1 } );

    // a long and a short cycle through 0 inside one component
    auto nested = find_strong_cycles( graph_of( 4, { { 0, 1 }, { 1, 2 }, { 2, 3 }, { 3, 0 }, { 2, 0 } } ) );
    REQUIRE( nested.cycles.size() == 1 );
    CHECK( nested.cycles[ 0 ] == std::vector< std::size_t >{ 0, 1, 2 } );

    auto separate = find_strong_cycles( graph_of( 5, { { 0, 1 }, { 1, 0 }, { 2, 3 }, { 3, 4 }, { 4, 2 }, { 1, 2 } } ) );
    REQUIRE( separate.cycles.size() == 2 );
    CHECK( separate.cycles[ 0 ] == std::vector< std::size_t >{ 0, 1 } );
    CHECK( separate.cycles[ 1 ] == std::vector< std::size_t >{ 2, 3, 4 } );
}

TEST_CASE( "transitive closure and ranks" )
{
    auto chain = transitive_closure( graph_of( 3, { { 0, 1 }, { 1, 2 } } ), { "x", "y", "z" } );
    CHECK( chain.acyclic );
    CHECK( chain.pairs() == std::set< EventPair >{ { 0, 1 }, { 0, 2 }, { 1, 2 } } );
    REQUIRE( chain.rank );
    CHECK( *chain.rank == std::vector< std::size_t >{ 0, 1, 2 } );

    auto none = transitive_closure( graph_of( 3, {} ), { "c", "a", "b" } );
    CHECK( none.pairs().empty() );
    REQUIRE( none.rank );
    CHECK( *none.rank == std::vector< std::size_t >{ 2, 0, 1 } );

    auto cyclic = transitive_closure( graph_of( 3, { { 0, 1 }, { 1, 0 }, { 1, 2 } } ), names_of( 3 ) );
    CHECK_FALSE( cyclic.acyclic );
    CHECK_FALSE( cyclic.rank );
    CHECK( cyclic.precedes( 0, 0 ) );
    CHECK( cyclic.precedes( 0, 2 ) );
    CHECK_FALSE( cyclic.precedes( 2, 0 ) );

    CHECK_THROWS_AS( transitive_closure( graph_of( 2, {} ), { "only" } ), std::invalid_argument );

    auto m = fixture( "two_site.json" );
    auto g = explore( m );
    auto empty = transitive_closure( build_influence_graphs( m, g, m.mode ), { "e1", "e2" } );
    CHECK( empty.pairs().empty() );
    CHECK( *empty.rank == std::vector< std::size_t >{ 0, 1 } );

    auto gadget = fixture( "cycle_gadget.json" );
    auto gg = explore( gadget );
    auto order = transitive_closure( build_influence_graphs( gadget, gg, gadget.mode ), { "a", "b" } );
    CHECK( order.pairs() == std::set< EventPair >{ { 1, 0 } } );
    CHECK( *order.rank == std::vector< std::size_t >{ 1, 0 } );
}

TEST_CASE( "closure agrees with path search on random graphs" )
{
    for ( std::uint64_t seed = 0; seed < 300; ++seed )
    {
        auto ig = random_graph( seed );
        const auto n = ig.event_count;
        auto chrono = transitive_closure( ig, names_of( n ) );

        bool any_loop = false;
        for ( std::size_t e = 0; e < n; ++e )
        {
            for ( std::size_t f = 0; f < n; ++f )
                CHECK( chrono.precedes( e, f ) == path_exists( ig, e, f ) );
            any_loop = any_loop || chrono.precedes( e, e );
        }
        CHECK( chrono.acyclic == !any_loop );
        CHECK( chrono.acyclic == find_strong_cycles( ig ).cycles.empty() );

        if ( chrono.rank )
        {
            auto ranks = *chrono.rank;
            std::sort( ranks.begin(), ranks.end() );
            for ( std::size_t k = 0; k < n; ++k )
                CHECK( ranks[ k ] == k );
            for ( const auto& [ e, f ] : chrono.pairs() )
                CHECK( ( *chrono.rank )[ e ] < ( *chrono.rank )[ f ] );
        }

        for ( const auto& cycle : find_strong_cycles( ig ).cycles )
            for ( std::size_t k = 0; k < cycle.size(); ++k )
                CHECK( ig.strong.contains( { cycle[ k ], cycle[ ( k + 1 ) % cycle.size() ] } ) );
    }
}

TEST_CASE( "branch determinacy" )
{
    auto gadget = fixture( "cycle_gadget.json" );
    auto gg = explore( gadget );
    CHECK( check_branch_determinacy( gadget, gg, build_influence_graphs( gadget, gg, gadget.mode ), gadget.mode )
               .empty() );

    auto two = fixture( "two_site.json" );
    auto tg = explore( two );
    CHECK( check_branch_determinacy( two, tg, build_influence_graphs( two, tg, two.mode ), two.mode ).empty() );

    auto flip = fixture( "bd_flip.json" );
    auto fg = explore( flip );
    auto fig = build_influence_graphs( flip, fg, flip.mode );
    auto e = flip.find_event( "e" ).value();
    auto f = flip.find_event( "f" ).value();
    REQUIRE( fig.strong.size() == 1 );
    const auto& w = fig.strong.at( { e, f } );
    CHECK( w.observable == worlds( flip, { "0", "2" } ) );
    CHECK( w.branch0 == worlds( flip, { "2" } ) );
    CHECK( w.branch1 == worlds( flip, { "0" } ) );

    auto bd = check_branch_determinacy( flip, fg, fig, flip.mode );
    REQUIRE( bd.size() == 1 );
    CHECK( bd[ 0 ].cause_occurred );
    CHECK( bd[ 0 ].expected == worlds( flip, { "0" } ) );
    CHECK( bd[ 0 ].actual.is_empty() );
    CHECK( fg.nodes[ bd[ 0 ].node ].state == state( { worlds( flip, { "0", "1" } ), worlds( flip, { "0" } ) } ) );

    auto unforced = fixture( "unforced_cycle.json" );
    auto ug = explore( unforced );
    auto uig = build_influence_graphs( unforced, ug, unforced.mode );
    CHECK( uig.strong.size() == 2 );
    CHECK( check_branch_determinacy( unforced, ug, uig, unforced.mode ).empty() );
}

TEST_CASE( "trace invariance" )
{
    auto two = fixture( "two_site.json" );
    auto report = check_trace_invariance( two, { "e1", "e2" }, 5, 7, {}, two.mode );
    CHECK( report.invariant() );
    CHECK( report.variants_checked == 6 );
    REQUIRE( report.reference );
    CHECK( report.reference->final_state
           == state( { worlds( two, { "00", "01" } ), worlds( two, { "00", "10" } ) } ) );
    CHECK( report.reference->strong_edges.empty() );

    CHECK_THROWS_AS( check_trace_invariance( two, { "e1", "nope" }, 1, 0, {}, two.mode ), std::invalid_argument );

    auto flip = fixture( "bd_flip.json" );
    auto broken = check_trace_invariance( flip, { "e", "f", "g" }, 3, 0, {}, flip.mode );
    CHECK_FALSE( broken.invariant() );
    CHECK_FALSE( broken.diamond_violations.empty() );
    CHECK( broken.variants_checked == 0 );

    auto empty = check_trace_invariance( two, {}, 3, 0, {}, two.mode );
    CHECK( empty.invariant() );
    CHECK( empty.reference->final_state == two.initial );
}

TEST_CASE( "trace variants stay in the trace class" )
{
    for ( std::uint64_t seed = 0; seed < 60; ++seed )
    {
        auto m = suite_model( seed );
        if ( m.events.empty() )
            continue;
        std::mt19937_64 rng( seed );
        std::vector< std::size_t > schedule;
        for ( int k = 0; k < 6; ++k )
            schedule.push_back( rng() % m.events.size() );

        auto variants = trace_variants( m, schedule, 10, seed );
        CHECK( variants.size() >= 10 );
        auto sorted = schedule;
        std::sort( sorted.begin(), sorted.end() );
        for ( const auto& v : variants )
        {
            auto s = v;
            std::sort( s.begin(), s.end() );
            CHECK( s == sorted );
            // dependent events keep their relative order
            for ( std::size_t e = 0; e < m.events.size(); ++e )
                for ( std::size_t f = 0; f < m.events.size(); ++f )
                {
                    if ( independent( m.events[ e ], m.events[ f ] ) && e != f )
                        continue;
                    auto project = [ & ]( const std::vector< std::size_t >& x ) {
                        std::vector< std::size_t > out;
                        for ( auto k : x )
                            if ( k == e || k == f )
                                out.push_back( k );
                        return out;
                    };
                    CHECK( project( v ) == project( schedule ) );
                }
        }
    }
}

TEST_CASE( "diagnose verdicts" )
{
    auto two = fixture( "two_site.json" );
    auto clean = diagnose( two, {}, two.mode );
    CHECK( clean.verdict == Verdict::no_cycle );
    CHECK( clean.premises_clean() );
    CHECK( clean.influence.weak.empty() );
    CHECK( clean.chronology.pairs().empty() );

    auto gadget = fixture( "cycle_gadget.json" );
    auto g = diagnose( gadget, {}, gadget.mode );
    CHECK( g.verdict == Verdict::no_cycle );
    CHECK( g.gs_violations.size() == 2 );
    CHECK( g.monotonicity_violations.size() == 1 );
    CHECK( g.chronology.pairs() == std::set< EventPair >{ { 1, 0 } } );
    REQUIRE( g.claims.size() == 1 );
    CHECK_FALSE( g.claims[ 0 ].confirmed() );
    CHECK( g.claims[ 0 ].missing_edges == std::vector< EventPair >{ { 0, 1 } } );
    CHECK( g.claims[ 0 ].observable_unwitnessed.size() == 2 );
    CHECK( g.claims[ 0 ].note.find( "not witnessed" ) != std::string::npos );

    auto gs = fixture( "gs_cycle.json" );
    auto explained = diagnose( gs, {}, gs.mode );
    CHECK( explained.has_strong_cycle );
    CHECK( explained.verdict == Verdict::cycle_explained );
    CHECK_FALSE( explained.gs_violations.empty() );

    auto unforced = fixture( "unforced_cycle.json" );
    auto suspicious = diagnose( unforced, {}, unforced.mode );
    CHECK( suspicious.has_strong_cycle );
    CHECK( suspicious.premises_clean() );
    CHECK( suspicious.verdict == Verdict::theorem_violation_suspected );

    CHECK( to_string( Verdict::no_cycle ) == "NO_CYCLE" );
    CHECK( to_string( Verdict::cycle_explained ) == "CYCLE_EXPLAINED" );
    CHECK( to_string( Verdict::theorem_violation_suspected ) == "THEOREM_VIOLATION_SUSPECTED" );
}

TEST_CASE( "diagnose is consistent with its parts on random models" )
{
    for ( std::uint64_t seed = 0; seed < 100; ++seed )
    {
        auto m = suite_model( seed );
        auto r = diagnose( m, { 20000, 64 }, m.mode );
        CHECK( r.has_strong_cycle == !r.chronology.acyclic );
        if ( !r.has_strong_cycle )
            CHECK( r.verdict == Verdict::no_cycle );
        else if ( r.premises_clean() )
            CHECK( r.verdict == Verdict::theorem_violation_suspected );
        else
            CHECK( r.verdict == Verdict::cycle_explained );
        for ( const auto& [ p, w ] : r.influence.strong )
            CHECK( verify_strong_witness( m, r.graph, w, m.mode ) );
    }
}
