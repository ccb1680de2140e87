#include "chronocheck/model.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace chronocheck
{

std::optional< std::size_t > Model::find_event( std::string_view name ) const
{
    for ( std::size_t k = 0; k < events.size(); ++k )
        if ( events[ k ].name == name )
            return k;
    return std::nullopt;
}

std::optional< std::size_t > Model::find_site( std::string_view name ) const
{
    auto it = std::find( sites.begin(), sites.end(), name );
    if ( it == sites.end() )
        return std::nullopt;
    return static_cast< std::size_t >( it - sites.begin() );
}

std::vector< StaticDefect > validate_model( const Model& model )
{
    if ( model.sites.empty() )
        throw std::invalid_argument( "a model needs at least one site" );
    if ( model.events.size() > max_events )
        throw std::invalid_argument( "a model may declare at most " + std::to_string( max_events ) + " events" );

    std::set< std::string_view > names;
    for ( const auto& s : model.sites )
    {
        if ( s.empty() )
            throw std::invalid_argument( "site names must be nonempty" );
        if ( !names.insert( s ).second )
            throw std::invalid_argument( "duplicate site '" + s + "'" );
    }

    names.clear();
    for ( const auto& e : model.events )
    {
        if ( e.name.empty() )
            throw std::invalid_argument( "event names must be nonempty" );
        if ( !names.insert( e.name ).second )
            throw std::invalid_argument( "duplicate event '" + e.name + "'" );
        if ( !std::is_sorted( e.support.begin(), e.support.end() )
             || std::adjacent_find( e.support.begin(), e.support.end() ) != e.support.end() )
            throw std::invalid_argument( "support of '" + e.name + "' must be sorted and duplicate-free" );
    }

    if ( model.initial.site_count() != model.site_count() )
        throw std::invalid_argument( "initial state must hold one record per site" );
    for ( const auto& r : model.initial.records() )
        if ( r.universe_size() != model.space.size() )
            throw std::invalid_argument( "initial record does not match the possibility space" );

    std::vector< StaticDefect > defects;
    for ( const auto& e : model.events )
    {
        auto d = validate_event_static( e, model.space, model.site_count() );
        defects.insert( defects.end(), d.begin(), d.end() );
    }
    return defects;
}

} // namespace chronocheck
