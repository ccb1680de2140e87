#include "random_models.hpp"

#include <algorithm>
#include <set>

namespace chronocheck::testing
{

namespace
{

std::size_t below( std::mt19937_64& rng, std::size_t n ) { return static_cast< std::size_t >( rng() % n ); }

bool chance( std::mt19937_64& rng, double p ) { return std::uniform_real_distribution< double >( 0.0, 1.0 )( rng ) < p; }

Subset random_subset( std::mt19937_64& rng, std::size_t worlds )
{
    Subset s( worlds );
    for ( std::size_t w = 0; w < worlds; ++w )
        if ( chance( rng, 0.5 ) )
            s.insert( w );
    return s;
}

Subset random_part_of( std::mt19937_64& rng, const Subset& whole )
{
    Subset s( whole.universe_size() );
    for ( auto w : whole.members() )
        if ( chance( rng, 0.6 ) )
            s.insert( w );
    return s;
}

} // namespace

Model random_model( std::uint64_t seed, const RandomModelConfig& config )
{
    std::mt19937_64 rng( seed * 0x9e3779b97f4a7c15ULL + 17 );
    const std::size_t worlds = 1 + below( rng, config.max_worlds );
    const std::size_t sites = 1 + below( rng, config.max_sites );
    const std::size_t events = 1 + below( rng, config.max_events );

    std::vector< std::string > labels;
    for ( std::size_t w = 0; w < worlds; ++w )
        labels.push_back( "w" + std::to_string( w ) );

    std::vector< Rational > weights( worlds, Rational( 1 ) );
    ConsistencyMode mode = ConsistencyMode::nonempty;
    if ( config.weighted )
    {
        static const Rational choices[] = { Rational( 0 ), Rational( 1 ), Rational( 2 ), Rational( 1, 2 ), Rational( 1, 3 ) };
        for ( auto& w : weights )
            w = choices[ below( rng, 5 ) ];
        weights[ below( rng, worlds ) ] = 1;
        if ( chance( rng, 0.5 ) )
            mode = ConsistencyMode::positive_measure;
    }

    PossibilitySpace space( labels, weights );

    std::set< Subset > pool_set{ space.all(), space.empty() };
    for ( int k = 0; k < 3; ++k )
        pool_set.insert( random_subset( rng, worlds ) );
    {
        std::vector< Subset > base( pool_set.begin(), pool_set.end() );
        for ( const auto& a : base )
            for ( const auto& b : base )
                pool_set.insert( a & b );
    }
    std::vector< Subset > pool( pool_set.begin(), pool_set.end() );
    auto from_pool = [ & ]() { return pool[ below( rng, pool.size() ) ]; };

    Model model{ space, {}, {}, {}, mode, {}, {} };
    for ( std::size_t s = 0; s < sites; ++s )
        model.sites.push_back( "s" + std::to_string( s ) );

    std::vector< Subset > initial;
    for ( std::size_t s = 0; s < sites; ++s )
        initial.push_back( chance( rng, 0.7 ) ? space.all() : from_pool() );
    model.initial = RecordState( std::move( initial ) );

    for ( std::size_t e = 0; e < events; ++e )
    {
        Event event;
        event.name = "e" + std::to_string( e );
        for ( std::size_t s = 0; s < sites; ++s )
            if ( chance( rng, 0.35 ) )
                event.support.push_back( s );
        if ( event.support.empty() && !chance( rng, 0.05 ) )
            event.support.push_back( below( rng, sites ) );

        if ( chance( rng, config.intersect_share ) )
        {
            event.kind = EventKind::intersect;
            for ( auto s : event.support )
                event.constraints.emplace( s, from_pool() );
        }
        else
        {
            event.kind = EventKind::table;
            const std::size_t rules = 1 + below( rng, 4 );
            for ( std::size_t r = 0; r < rules; ++r )
            {
                Rule rule;
                for ( auto s : event.support )
                    if ( chance( rng, 0.8 ) )
                        rule.guard.emplace( s, from_pool() );
                if ( sites > event.support.size() && chance( rng, config.nonlocal_guard ) )
                {
                    std::size_t s = below( rng, sites );
                    if ( !event.supports( s ) )
                        rule.guard.emplace( s, from_pool() );
                }
                for ( auto s : event.support )
                {
                    if ( !chance( rng, 0.9 ) )
                        continue;
                    auto g = rule.guard.find( s );
                    if ( g != rule.guard.end() && chance( rng, config.monotone_bias ) )
                        rule.result.emplace( s, chance( rng, 0.5 ) ? random_part_of( rng, g->second )
                                                                   : g->second & from_pool() );
                    else
                        rule.result.emplace( s, from_pool() );
                }
                event.rules.push_back( std::move( rule ) );
            }
        }
        model.events.push_back( std::move( event ) );
    }
    return model;
}

Model suite_model( std::uint64_t index )
{
    RandomModelConfig config;
    config.weighted = index % 4 == 3;
    return random_model( index, config );
}

} // namespace chronocheck::testing
