#include "chronocheck/events.hpp"

#include <algorithm>
#include <stdexcept>

namespace chronocheck
{

namespace
{

bool guard_matches( const SiteMap& guard, const RecordState& state )
{
    for ( const auto& [ site, expected ] : guard )
        if ( site >= state.site_count() || state[ site ] != expected )
            return false;
    return true;
}

// Every state matched by `later` is also matched by `earlier`.
bool guard_covers( const SiteMap& earlier, const SiteMap& later )
{
    for ( const auto& [ site, set ] : earlier )
    {
        auto it = later.find( site );
        if ( it == later.end() || it->second != set )
            return false;
    }
    return true;
}

} // namespace

bool Event::supports( std::size_t site ) const
{
    return std::binary_search( support.begin(), support.end(), site );
}

UpdateOutcome apply_event( const Event& event, const RecordState& state )
{
    UpdateOutcome out{ state, {}, std::nullopt };

    if ( event.kind == EventKind::intersect )
    {
        for ( const auto& [ site, constraint ] : event.constraints )
            if ( event.supports( site ) && site < state.site_count() )
                out.next[ site ] &= constraint;
        return out;
    }

    for ( std::size_t r = 0; r < event.rules.size(); ++r )
    {
        const auto& rule = event.rules[ r ];
        if ( !guard_matches( rule.guard, state ) )
            continue;
        out.fired_rule = r;
        for ( const auto& [ site, replacement ] : rule.result )
            if ( event.supports( site ) && site < state.site_count() )
                out.next[ site ] = replacement;
        break;
    }

    for ( auto site : event.support )
    {
        if ( site >= state.site_count() )
            continue;
        auto added = out.next[ site ] - state[ site ];
        if ( !added.is_empty() )
            out.violations.push_back( { event.name, site, std::move( added ) } );
    }
    return out;
}

Subset write_effect( const Event& event, const RecordState& state, std::size_t site )
{
    if ( site >= state.site_count() )
        throw std::out_of_range( "unknown site index " + std::to_string( site ) );
    if ( !event.supports( site ) )
        return Subset::empty( state[ site ].universe_size() );
    return state[ site ] - apply_event( event, state ).next[ site ];
}

bool independent( const Event& e, const Event& f )
{
    return shared_sites( e, f ).empty();
}

std::vector< std::size_t > shared_sites( const Event& e, const Event& f )
{
    std::vector< std::size_t > out;
    std::set_intersection( e.support.begin(), e.support.end(), f.support.begin(), f.support.end(),
                           std::back_inserter( out ) );
    return out;
}

std::vector< StaticDefect > validate_event_static( const Event& event, const PossibilitySpace& space,
                                                   std::size_t site_count )
{
    std::vector< StaticDefect > defects;
    auto report = [ & ]( DefectSeverity severity, std::string kind, std::optional< std::size_t > rule,
                         std::optional< std::size_t > site, std::string message ) {
        defects.push_back( { severity, std::move( kind ), event.name, rule, site, std::move( message ) } );
    };

    for ( auto s : event.support )
        if ( s >= site_count )
            report( DefectSeverity::error, "site_range", std::nullopt, s, "support names a site outside the model" );

    auto check_sets = [ & ]( const SiteMap& map, std::optional< std::size_t > rule ) {
        for ( const auto& [ site, set ] : map )
        {
            if ( site >= site_count )
                report( DefectSeverity::error, "site_range", rule, site, "site outside the model" );
            if ( set.universe_size() != space.size() )
                report( DefectSeverity::error, "universe", rule, site, "set does not match the possibility space" );
        }
    };

    if ( event.kind == EventKind::intersect )
    {
        if ( !event.rules.empty() )
            report( DefectSeverity::error, "intersect_constraint", std::nullopt, std::nullopt,
                    "intersect events carry constraints, not rules" );
        check_sets( event.constraints, std::nullopt );
        for ( const auto& [ site, set ] : event.constraints )
            if ( !event.supports( site ) )
                report( DefectSeverity::error, "locality", std::nullopt, site, "constraint on a site outside the support" );
        for ( auto s : event.support )
            if ( !event.constraints.contains( s ) )
                report( DefectSeverity::error, "intersect_constraint", std::nullopt, s,
                        "supported site has no constraint" );
        return defects;
    }

    if ( !event.constraints.empty() )
        report( DefectSeverity::error, "intersect_constraint", std::nullopt, std::nullopt,
                "table events carry rules, not constraints" );

    for ( std::size_t r = 0; r < event.rules.size(); ++r )
    {
        const auto& rule = event.rules[ r ];
        check_sets( rule.guard, r );
        check_sets( rule.result, r );

        for ( const auto& [ site, set ] : rule.result )
            if ( !event.supports( site ) )
                report( DefectSeverity::error, "locality", r, site, "rule writes a site outside the support" );

        for ( const auto& [ site, set ] : rule.guard )
            if ( !event.supports( site ) && site < site_count )
                report( DefectSeverity::warning, "nonlocal_guard", r, site,
                        "guard reads a site outside the support" );

        for ( std::size_t earlier = 0; earlier < r; ++earlier )
        {
            if ( guard_covers( event.rules[ earlier ].guard, rule.guard ) )
            {
                report( DefectSeverity::warning, "shadowed_rule", r, std::nullopt,
                        "unreachable: rule " + std::to_string( earlier ) + " matches first" );
                break;
            }
        }

        for ( const auto& [ site, result ] : rule.result )
        {
            auto g = rule.guard.find( site );
            if ( g == rule.guard.end() || result.universe_size() != g->second.universe_size() )
                continue;
            if ( !result.is_subset_of( g->second ) )
                report( DefectSeverity::warning, "static_monotonicity", r, site,
                        "result is not contained in the guarded record" );
        }
    }
    return defects;
}

} // namespace chronocheck
