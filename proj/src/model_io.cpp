#include "chronocheck/model_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

namespace chronocheck
{

namespace
{

using nlohmann::json;
using nlohmann::ordered_json;

std::string child( const std::string& pointer, std::string_view key )
{
    std::string escaped;
    for ( char c : key )
    {
        if ( c == '~' )
            escaped += "~0";
        else if ( c == '/' )
            escaped += "~1";
        else
            escaped += c;
    }
    return pointer + "/" + escaped;
}

std::string child( const std::string& pointer, std::size_t index ) { return pointer + "/" + std::to_string( index ); }

void require_object( const json& j, const std::string& where, std::initializer_list< std::string_view > allowed )
{
    if ( !j.is_object() )
        throw ModelError( where, "expected an object" );
    for ( const auto& [ key, value ] : j.items() )
        if ( std::find( allowed.begin(), allowed.end(), key ) == allowed.end() )
            throw ModelError( child( where, key ), "unknown field" );
}

const json& require_array( const json& j, const std::string& where )
{
    if ( !j.is_array() )
        throw ModelError( where, "expected an array" );
    return j;
}

std::string require_string( const json& j, const std::string& where )
{
    if ( !j.is_string() )
        throw ModelError( where, "expected a string" );
    return j.get< std::string >();
}

std::vector< std::string > unique_names( const json& j, const std::string& where, std::string_view what )
{
    std::vector< std::string > out;
    std::set< std::string > seen;
    const auto& arr = require_array( j, where );
    for ( std::size_t k = 0; k < arr.size(); ++k )
    {
        auto name = require_string( arr[ k ], child( where, k ) );
        if ( name.empty() )
            throw ModelError( child( where, k ), std::string( what ) + " names must be nonempty" );
        if ( !seen.insert( name ).second )
            throw ModelError( child( where, k ), "duplicate " + std::string( what ) + " '" + name + "'" );
        out.push_back( std::move( name ) );
    }
    return out;
}

Subset parse_subset( const json& j, const std::string& where, const PossibilitySpace& space )
{
    Subset out = space.empty();
    const auto& arr = require_array( j, where );
    for ( std::size_t k = 0; k < arr.size(); ++k )
    {
        auto label = require_string( arr[ k ], child( where, k ) );
        auto w = space.find( label );
        if ( !w )
            throw ModelError( child( where, k ), "undeclared world '" + label + "'" );
        if ( out.contains( *w ) )
            throw ModelError( child( where, k ), "world '" + label + "' listed twice" );
        out.insert( *w );
    }
    return out;
}

std::size_t site_index( const Model& model, const std::string& name, const std::string& where )
{
    auto s = model.find_site( name );
    if ( !s )
        throw ModelError( where, "undeclared site '" + name + "'" );
    return *s;
}

SiteMap parse_site_map( const json& j, const std::string& where, const Model& model )
{
    if ( !j.is_object() )
        throw ModelError( where, "expected an object mapping sites to world lists" );
    SiteMap out;
    for ( const auto& [ key, value ] : j.items() )
    {
        auto at = child( where, key );
        out.emplace( site_index( model, key, at ), parse_subset( value, at, model.space ) );
    }
    return out;
}

Rational parse_weight( const json& j, const std::string& where )
{
    std::optional< Rational > value;
    if ( j.is_number() )
        value = parse_rational( j.dump() );
    else if ( j.is_string() )
        value = parse_rational( j.get< std::string >() );
    else
        throw ModelError( where, "expected a number or a rational string such as \"1/3\"" );

    if ( !value )
        throw ModelError( where, "not a finite rational weight" );
    if ( *value < 0 )
        throw ModelError( where, "negative weight" );
    return *value;
}

Event parse_event( const json& j, const std::string& where, const Model& model )
{
    require_object( j, where, { "name", "kind", "support", "rules", "constraints" } );
    Event event;

    if ( !j.contains( "name" ) )
        throw ModelError( where, "missing field 'name'" );
    event.name = require_string( j[ "name" ], child( where, "name" ) );

    if ( !j.contains( "kind" ) )
        throw ModelError( where, "missing field 'kind'" );
    auto kind = require_string( j[ "kind" ], child( where, "kind" ) );
    if ( kind == "table" )
        event.kind = EventKind::table;
    else if ( kind == "intersect" )
        event.kind = EventKind::intersect;
    else
        throw ModelError( child( where, "kind" ), "expected \"table\" or \"intersect\"" );

    if ( !j.contains( "support" ) )
        throw ModelError( where, "missing field 'support'" );
    auto support_at = child( where, "support" );
    auto support = unique_names( j[ "support" ], support_at, "site" );
    for ( std::size_t k = 0; k < support.size(); ++k )
        event.support.push_back( site_index( model, support[ k ], child( support_at, k ) ) );
    std::sort( event.support.begin(), event.support.end() );

    if ( event.kind == EventKind::table )
    {
        if ( j.contains( "constraints" ) )
            throw ModelError( child( where, "constraints" ), "table events take 'rules'" );
        if ( j.contains( "rules" ) )
        {
            auto rules_at = child( where, "rules" );
            const auto& rules = require_array( j[ "rules" ], rules_at );
            for ( std::size_t r = 0; r < rules.size(); ++r )
            {
                auto rule_at = child( rules_at, r );
                require_object( rules[ r ], rule_at, { "guard", "result" } );
                Rule rule;
                if ( rules[ r ].contains( "guard" ) )
                    rule.guard = parse_site_map( rules[ r ][ "guard" ], child( rule_at, "guard" ), model );
                if ( !rules[ r ].contains( "result" ) )
                    throw ModelError( rule_at, "missing field 'result'" );
                rule.result = parse_site_map( rules[ r ][ "result" ], child( rule_at, "result" ), model );
                event.rules.push_back( std::move( rule ) );
            }
        }
    }
    else
    {
        if ( j.contains( "rules" ) )
            throw ModelError( child( where, "rules" ), "intersect events take 'constraints'" );
        if ( !j.contains( "constraints" ) )
            throw ModelError( where, "missing field 'constraints'" );
        event.constraints = parse_site_map( j[ "constraints" ], child( where, "constraints" ), model );
    }
    return event;
}

// Points a static defect back at the part of the document that caused it.
std::string defect_location( const Model& model, const StaticDefect& d )
{
    auto e = model.find_event( d.event );
    std::string where = "/events/" + std::to_string( e.value_or( 0 ) );
    if ( d.rule )
        where += "/rules/" + std::to_string( *d.rule );
    return where;
}

ordered_json subset_json( const PossibilitySpace& space, const Subset& s )
{
    return subset_labels( space, s );
}

ordered_json site_map_json( const Model& model, const SiteMap& map )
{
    ordered_json out = ordered_json::object();
    for ( const auto& [ site, set ] : map )
        out[ model.sites[ site ] ] = subset_json( model.space, set );
    return out;
}

} // namespace

std::vector< std::string > subset_labels( const PossibilitySpace& space, const Subset& set )
{
    std::vector< std::string > out;
    for ( auto w : set.members() )
        out.push_back( space.label( w ) );
    return out;
}

Model parse_model( std::string_view text )
{
    json doc;
    try
    {
        doc = json::parse( text );
    }
    catch ( const json::parse_error& err )
    {
        std::size_t line = 1;
        std::size_t column = 1;
        auto limit = std::min< std::size_t >( err.byte > 0 ? err.byte - 1 : 0, text.size() );
        for ( std::size_t k = 0; k < limit; ++k )
        {
            if ( text[ k ] == '\n' )
            {
                ++line;
                column = 1;
            }
            else
            {
                ++column;
            }
        }
        throw ModelError( "line " + std::to_string( line ) + ", column " + std::to_string( column ),
                          "syntax error" );
    }

    require_object( doc, "", { "description", "worlds", "measure", "sites", "initial", "consistency_mode", "events",
                               "claims" } );

    if ( !doc.contains( "worlds" ) )
        throw ModelError( "", "missing field 'worlds'" );
    auto worlds = unique_names( doc[ "worlds" ], "/worlds", "world" );
    if ( worlds.empty() )
        throw ModelError( "/worlds", "at least one world is required" );

    std::vector< Rational > weights( worlds.size(), Rational( 1 ) );
    if ( doc.contains( "measure" ) )
    {
        const auto& measure = doc[ "measure" ];
        if ( !measure.is_object() )
            throw ModelError( "/measure", "expected an object mapping worlds to weights" );
        std::vector< bool > assigned( worlds.size(), false );
        for ( const auto& [ label, weight ] : measure.items() )
        {
            auto at = child( "/measure", label );
            auto it = std::find( worlds.begin(), worlds.end(), label );
            if ( it == worlds.end() )
                throw ModelError( at, "undeclared world '" + label + "'" );
            auto w = static_cast< std::size_t >( it - worlds.begin() );
            weights[ w ] = parse_weight( weight, at );
            assigned[ w ] = true;
        }
        for ( std::size_t w = 0; w < worlds.size(); ++w )
            if ( !assigned[ w ] )
                throw ModelError( "/measure", "no weight for world '" + worlds[ w ] + "'" );
    }

    std::optional< PossibilitySpace > space;
    try
    {
        space.emplace( worlds, weights );
    }
    catch ( const std::invalid_argument& err )
    {
        throw ModelError( "/measure", err.what() );
    }

    Model model{ *space, {}, {}, {}, ConsistencyMode::nonempty, {}, {} };

    if ( doc.contains( "description" ) )
        model.description = require_string( doc[ "description" ], "/description" );

    if ( !doc.contains( "sites" ) )
        throw ModelError( "", "missing field 'sites'" );
    model.sites = unique_names( doc[ "sites" ], "/sites", "site" );
    if ( model.sites.empty() )
        throw ModelError( "/sites", "at least one site is required" );

    model.initial = RecordState( std::vector< Subset >( model.sites.size(), model.space.all() ) );
    if ( doc.contains( "initial" ) )
        for ( const auto& [ site, records ] : parse_site_map( doc[ "initial" ], "/initial", model ) )
            model.initial[ site ] = records;

    if ( doc.contains( "consistency_mode" ) )
    {
        auto text_mode = require_string( doc[ "consistency_mode" ], "/consistency_mode" );
        auto mode = parse_consistency_mode( text_mode );
        if ( !mode || text_mode == "measure" )
            throw ModelError( "/consistency_mode", "expected \"nonempty\" or \"positive_measure\"" );
        model.mode = *mode;
    }

    if ( doc.contains( "events" ) )
    {
        const auto& events = require_array( doc[ "events" ], "/events" );
        if ( events.size() > max_events )
            throw ModelError( "/events", "at most " + std::to_string( max_events ) + " events are supported" );
        for ( std::size_t k = 0; k < events.size(); ++k )
        {
            auto event = parse_event( events[ k ], child( "/events", k ), model );
            if ( model.find_event( event.name ) )
                throw ModelError( child( child( "/events", k ), "name" ), "duplicate event '" + event.name + "'" );
            model.events.push_back( std::move( event ) );
        }
    }

    if ( doc.contains( "claims" ) )
    {
        const auto& claims = require_array( doc[ "claims" ], "/claims" );
        for ( std::size_t k = 0; k < claims.size(); ++k )
        {
            auto at = child( "/claims", k );
            require_object( claims[ k ], at, { "strong_cycle", "observable" } );
            if ( !claims[ k ].contains( "strong_cycle" ) )
                throw ModelError( at, "missing field 'strong_cycle'" );
            CycleClaim claim;
            const auto& cycle = require_array( claims[ k ][ "strong_cycle" ], child( at, "strong_cycle" ) );
            if ( cycle.size() < 2 )
                throw ModelError( child( at, "strong_cycle" ), "a cycle needs at least two events" );
            for ( std::size_t c = 0; c < cycle.size(); ++c )
            {
                auto cat = child( child( at, "strong_cycle" ), c );
                auto name = require_string( cycle[ c ], cat );
                if ( !model.find_event( name ) )
                    throw ModelError( cat, "undeclared event '" + name + "'" );
                claim.events.push_back( std::move( name ) );
            }
            if ( claims[ k ].contains( "observable" ) )
                claim.observable = parse_subset( claims[ k ][ "observable" ], child( at, "observable" ), model.space );
            model.claims.push_back( std::move( claim ) );
        }
    }

    for ( const auto& defect : validate_model( model ) )
        if ( defect.severity == DefectSeverity::error )
            throw ModelError( defect_location( model, defect ), defect.kind + ": event '" + defect.event + "': "
                                                                    + defect.message );
    return model;
}

Model load_model( const std::string& path )
{
    std::ifstream in( path, std::ios::binary );
    if ( !in )
        throw ModelError( path, "cannot open model file" );
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_model( buffer.str() );
}

std::string serialize_model( const Model& model )
{
    ordered_json doc;
    if ( !model.description.empty() )
        doc[ "description" ] = model.description;
    doc[ "worlds" ] = model.space.worlds();
    if ( !model.space.is_counting_measure() )
    {
        ordered_json measure = ordered_json::object();
        for ( std::size_t w = 0; w < model.space.size(); ++w )
        {
            const auto& weight = model.space.weights()[ w ];
            auto text = format_rational( weight );
            if ( boost::multiprecision::denominator( weight ) == 1 && text.size() <= 18 )
                measure[ model.space.label( w ) ] = std::stoll( text );
            else
                measure[ model.space.label( w ) ] = text;
        }
        doc[ "measure" ] = measure;
    }
    doc[ "sites" ] = model.sites;

    ordered_json initial = ordered_json::object();
    for ( std::size_t s = 0; s < model.site_count(); ++s )
        if ( model.initial[ s ] != model.space.all() )
            initial[ model.sites[ s ] ] = subset_json( model.space, model.initial[ s ] );
    if ( !initial.empty() )
        doc[ "initial" ] = initial;

    doc[ "consistency_mode" ] = std::string( to_string( model.mode ) );

    ordered_json events = ordered_json::array();
    for ( const auto& e : model.events )
    {
        ordered_json ev;
        ev[ "name" ] = e.name;
        ev[ "kind" ] = e.kind == EventKind::table ? "table" : "intersect";
        ordered_json support = ordered_json::array();
        for ( auto s : e.support )
            support.push_back( model.sites[ s ] );
        ev[ "support" ] = support;
        if ( e.kind == EventKind::table )
        {
            ordered_json rules = ordered_json::array();
            for ( const auto& r : e.rules )
            {
                ordered_json rule;
                rule[ "guard" ] = site_map_json( model, r.guard );
                rule[ "result" ] = site_map_json( model, r.result );
                rules.push_back( rule );
            }
            ev[ "rules" ] = rules;
        }
        else
        {
            ev[ "constraints" ] = site_map_json( model, e.constraints );
        }
        events.push_back( ev );
    }
    doc[ "events" ] = events;

    if ( !model.claims.empty() )
    {
        ordered_json claims = ordered_json::array();
        for ( const auto& c : model.claims )
        {
            ordered_json claim;
            claim[ "strong_cycle" ] = c.events;
            if ( c.observable )
                claim[ "observable" ] = subset_json( model.space, *c.observable );
            claims.push_back( claim );
        }
        doc[ "claims" ] = claims;
    }
    return doc.dump( 2 ) + "\n";
}

std::string model_digest( const Model& model )
{
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for ( unsigned char c : serialize_model( model ) )
    {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char buffer[ 17 ];
    std::snprintf( buffer, sizeof buffer, "%016llx", static_cast< unsigned long long >( hash ) );
    return buffer;
}

} // namespace chronocheck
