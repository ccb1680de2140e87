#include "chronocheck/report.hpp"

#include "chronocheck/model_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace chronocheck
{

namespace
{

using nlohmann::ordered_json;

ordered_json subset_json( const Model& model, const Subset& s ) { return subset_labels( model.space, s ); }

ordered_json clock_json( double value )
{
    if ( std::isinf( value ) )
        return value > 0 ? "inf" : "-inf";
    return value;
}

ordered_json occurred_json( const Model& model, EventSet occurred )
{
    ordered_json out = ordered_json::array();
    for ( std::size_t e = 0; e < model.events.size(); ++e )
        if ( occurred.contains( e ) )
            out.push_back( model.events[ e ].name );
    return out;
}

ordered_json node_json( const Model& model, const ReachabilityGraph& graph, std::size_t n )
{
    const auto& node = graph.nodes[ n ];
    ordered_json out;
    out[ "id" ] = n;
    out[ "state" ] = state_json( model, node.state );
    out[ "occurred" ] = occurred_json( model, node.occurred );
    out[ "depth" ] = node.depth;
    return out;
}

ordered_json monotonicity_json( const Model& model, const std::vector< MonotonicityFinding >& findings )
{
    ordered_json out = ordered_json::array();
    for ( const auto& f : findings )
    {
        ordered_json v;
        v[ "event" ] = f.violation.event;
        v[ "site" ] = model.sites[ f.violation.site ];
        v[ "state" ] = state_json( model, f.source );
        v[ "added" ] = subset_json( model, f.violation.added );
        out.push_back( v );
    }
    return out;
}

ordered_json diamond_json( const Model& model, const std::vector< DiamondViolation >& violations )
{
    ordered_json out = ordered_json::array();
    for ( const auto& d : violations )
    {
        ordered_json v;
        v[ "state" ] = state_json( model, d.state );
        v[ "e" ] = model.events[ d.first ].name;
        v[ "f" ] = model.events[ d.second ].name;
        v[ "e_then_f" ] = state_json( model, d.first_then_second );
        v[ "f_then_e" ] = state_json( model, d.second_then_first );
        out.push_back( v );
    }
    return out;
}

ordered_json gs_json( const Model& model, const ReachabilityGraph& graph, const std::vector< std::size_t >& nodes )
{
    ordered_json out = ordered_json::array();
    for ( auto n : nodes )
        out.push_back( node_json( model, graph, n ) );
    return out;
}

ordered_json clock_violations_json( const Model& model, const ReachabilityGraph& graph,
                                    const std::vector< ClockViolation >& violations )
{
    ordered_json out = ordered_json::array();
    for ( const auto& c : violations )
    {
        const auto& edge = graph.edges[ c.edge ];
        ordered_json v;
        v[ "source" ] = edge.source;
        v[ "event" ] = model.events[ edge.event ].name;
        v[ "target" ] = edge.target;
        v[ "before" ] = clock_json( c.before );
        v[ "after" ] = clock_json( c.after );
        out.push_back( v );
    }
    return out;
}

ordered_json weak_json( const Model& model, const ReachabilityGraph& graph, const WeakWitness& w,
                        ConsistencyMode mode )
{
    ordered_json out;
    out[ "cause" ] = model.events[ w.cause ].name;
    out[ "effect" ] = model.events[ w.effect ].name;
    out[ "node" ] = node_json( model, graph, w.node );
    out[ "site" ] = model.sites[ w.site ];
    out[ "delta_without" ] = subset_json( model, w.delta_without );
    out[ "delta_with" ] = subset_json( model, w.delta_with );
    auto b = check_binary_witness( model, graph, w, mode );
    ordered_json bj;
    bj[ "observable" ] = subset_json( model, b.observable );
    bj[ "without_cause" ] = subset_json( model, b.without_cause );
    bj[ "with_cause" ] = subset_json( model, b.with_cause );
    bj[ "separates" ] = b.separates;
    out[ "binary_witness" ] = bj;
    return out;
}

ordered_json strong_json( const Model& model, const ReachabilityGraph& graph, const StrongWitness& w )
{
    ordered_json out;
    out[ "cause" ] = model.events[ w.cause ].name;
    out[ "effect" ] = model.events[ w.effect ].name;
    out[ "node" ] = node_json( model, graph, w.node );
    out[ "site" ] = model.sites[ w.site ];
    out[ "observable" ] = subset_json( model, w.observable );
    out[ "branch0" ] = subset_json( model, w.branch0 );
    out[ "branch1" ] = subset_json( model, w.branch1 );
    return out;
}

ordered_json pairs_json( const Model& model, const std::set< EventPair >& pairs )
{
    ordered_json out = ordered_json::array();
    for ( const auto& [ e, f ] : pairs )
        out.push_back( { model.events[ e ].name, model.events[ f ].name } );
    return out;
}

ordered_json influence_json( const Model& model, const ReachabilityGraph& graph, const InfluenceGraph& ig,
                             ConsistencyMode mode )
{
    ordered_json out;
    ordered_json weak = ordered_json::array();
    for ( const auto& [ pair, w ] : ig.weak )
        weak.push_back( weak_json( model, graph, w, mode ) );
    ordered_json strong = ordered_json::array();
    for ( const auto& [ pair, s ] : ig.strong )
        strong.push_back( strong_json( model, graph, s ) );
    out[ "weak_edges" ] = weak;
    out[ "strong_edges" ] = strong;
    return out;
}

ordered_json cycles_json( const Model& model, const CycleReport& cycles )
{
    ordered_json out = ordered_json::array();
    for ( const auto& cycle : cycles.cycles )
    {
        ordered_json c = ordered_json::array();
        for ( auto e : cycle )
            c.push_back( model.events[ e ].name );
        out.push_back( c );
    }
    return out;
}

ordered_json chronology_json( const Model& model, const InfluenceGraph& ig, const Chronology& chrono,
                              const CycleReport& cycles )
{
    std::set< EventPair > strong;
    for ( const auto& [ pair, w ] : ig.strong )
        strong.insert( pair );

    ordered_json out;
    out[ "strong_edges" ] = pairs_json( model, strong );
    out[ "precedes" ] = pairs_json( model, chrono.pairs() );
    out[ "acyclic" ] = chrono.acyclic;
    if ( chrono.rank )
    {
        ordered_json ranks = ordered_json::object();
        for ( std::size_t e = 0; e < model.events.size(); ++e )
            ranks[ model.events[ e ].name ] = ( *chrono.rank )[ e ];
        out[ "linear_extension" ] = ranks;
    }
    else
    {
        out[ "linear_extension" ] = nullptr;
    }
    out[ "cycles" ] = cycles_json( model, cycles );
    return out;
}

ordered_json bd_json( const Model& model, const ReachabilityGraph& graph, const std::vector< BDViolation >& violations )
{
    ordered_json out = ordered_json::array();
    for ( const auto& v : violations )
    {
        ordered_json j;
        j[ "witness" ] = strong_json( model, graph, v.witness );
        j[ "node" ] = node_json( model, graph, v.node );
        j[ "cause_occurred" ] = v.cause_occurred;
        j[ "expected" ] = subset_json( model, v.expected );
        j[ "actual" ] = subset_json( model, v.actual );
        out.push_back( j );
    }
    return out;
}

ordered_json premise_json( ordered_json violations )
{
    ordered_json out;
    out[ "holds" ] = violations.empty();
    out[ "violations" ] = std::move( violations );
    return out;
}

ordered_json defect_json( const StaticDefect& d )
{
    ordered_json out;
    out[ "severity" ] = d.severity == DefectSeverity::error ? "error" : "warning";
    out[ "kind" ] = d.kind;
    out[ "event" ] = d.event;
    out[ "rule" ] = d.rule ? ordered_json( *d.rule ) : ordered_json( nullptr );
    out[ "site" ] = d.site ? ordered_json( *d.site ) : ordered_json( nullptr );
    out[ "message" ] = d.message;
    return out;
}

std::string truncation_warning( const ReachabilityGraph& graph )
{
    return "exploration stopped at a limit after " + std::to_string( graph.nodes.size() )
           + " nodes; results cover the explored region only";
}

std::string dot_escape( std::string_view text )
{
    std::string out;
    for ( char c : text )
    {
        if ( c == '"' || c == '\\' )
            out += '\\';
        out += c;
    }
    return out;
}

std::string dot_quote( std::string_view text ) { return "\"" + dot_escape( text ) + "\""; }

std::string state_text( const Model& model, const RecordState& state )
{
    std::string out = "(";
    for ( std::size_t s = 0; s < state.site_count(); ++s )
    {
        if ( s > 0 )
            out += ", ";
        out += "{";
        bool first = true;
        for ( auto w : state[ s ].members() )
        {
            if ( !first )
                out += ",";
            out += model.space.label( w );
            first = false;
        }
        out += "}";
    }
    return out + ")";
}

struct Context
{
    const Model& model;
    const CommandOptions& options;
    ConsistencyMode mode;
    CommandResult result;
    ordered_json warnings = ordered_json::array();
    ordered_json notes = ordered_json::array();
};

void run_validate( Context& ctx )
{
    ordered_json defects = ordered_json::array();
    for ( const auto& d : validate_model( ctx.model ) )
        defects.push_back( defect_json( d ) );
    ctx.result.exit_status = defects.empty() ? exit_clean : exit_violations;
    ctx.result.report[ "results" ][ "defects" ] = defects;
}

void run_explore( Context& ctx )
{
    auto graph = explore( ctx.model, ctx.options.limits, ctx.options.strict );
    auto gs = check_gs( ctx.model, graph, ctx.mode );
    auto mono = check_monotonicity( graph );
    auto diamond = check_diamond( ctx.model, graph, ctx.mode );
    auto clock = check_clock_monotone( ctx.model, graph );

    ordered_json states = ordered_json::array();
    std::unordered_set< RecordState > seen;
    for ( const auto& node : graph.nodes )
    {
        if ( !seen.insert( node.state ).second )
            continue;
        ordered_json s;
        s[ "state" ] = state_json( ctx.model, node.state );
        s[ "feasible" ] = subset_json( ctx.model, feasible_set( node.state ) );
        s[ "information" ] = clock_json( information_content( ctx.model.space, node.state ) );
        states.push_back( s );
    }

    auto& r = ctx.result.report[ "results" ];
    r[ "nodes" ] = graph.nodes.size();
    r[ "edges" ] = graph.edges.size();
    r[ "distinct_states" ] = seen.size();
    r[ "truncated" ] = graph.truncated;
    r[ "states" ] = states;
    r[ "gs" ] = premise_json( gs_json( ctx.model, graph, gs ) );
    r[ "monotonicity" ] = premise_json( monotonicity_json( ctx.model, mono ) );
    r[ "diamond" ] = premise_json( diamond_json( ctx.model, diamond ) );
    r[ "clock" ] = premise_json( clock_violations_json( ctx.model, graph, clock ) );

    if ( graph.truncated )
        ctx.warnings.push_back( truncation_warning( graph ) );
    bool clean = gs.empty() && mono.empty() && diamond.empty() && clock.empty();
    ctx.result.exit_status = clean ? exit_clean : exit_violations;
    ctx.result.dot = reachability_dot( ctx.model, graph, ctx.mode );
}

void run_influence( Context& ctx )
{
    auto graph = explore( ctx.model, ctx.options.limits, ctx.options.strict );
    auto ig = build_influence_graphs( ctx.model, graph, ctx.mode );
    auto& r = ctx.result.report[ "results" ];
    r = influence_json( ctx.model, graph, ig, ctx.mode );
    r[ "truncated" ] = graph.truncated;
    if ( graph.truncated )
        ctx.warnings.push_back( truncation_warning( graph ) );

    bool separated = true;
    for ( const auto& [ pair, w ] : ig.weak )
        if ( !check_binary_witness( ctx.model, graph, w, ctx.mode ).separates )
        {
            separated = false;
            ctx.warnings.push_back( "binary observable for weak edge " + ctx.model.events[ pair.first ].name + " -> "
                                    + ctx.model.events[ pair.second ].name
                                    + " does not separate the post-records" );
        }

    std::vector< std::string > names;
    for ( const auto& e : ctx.model.events )
        names.push_back( e.name );
    ctx.result.dot = influence_dot( ctx.model, ig, transitive_closure( ig, names ) );
    ctx.result.exit_status = separated ? exit_clean : exit_violations;
}

void run_chronology( Context& ctx )
{
    auto graph = explore( ctx.model, ctx.options.limits, ctx.options.strict );
    auto ig = build_influence_graphs( ctx.model, graph, ctx.mode );
    std::vector< std::string > names;
    for ( const auto& e : ctx.model.events )
        names.push_back( e.name );
    auto chrono = transitive_closure( ig, names );
    auto cycles = find_strong_cycles( ig );

    auto& r = ctx.result.report[ "results" ];
    r = chronology_json( ctx.model, ig, chrono, cycles );
    r[ "truncated" ] = graph.truncated;
    if ( graph.truncated )
        ctx.warnings.push_back( truncation_warning( graph ) );
    ctx.result.dot = influence_dot( ctx.model, ig, chrono );
    ctx.result.exit_status = cycles.cycles.empty() ? exit_clean : exit_violations;
}

void run_diagnose( Context& ctx )
{
    if ( ctx.options.strict )
        explore( ctx.model, ctx.options.limits, true );

    auto report = diagnose( ctx.model, ctx.options.limits, ctx.mode );
    ctx.result.report[ "results" ] = taxonomy_json( ctx.model, report );
    if ( report.truncated )
        ctx.warnings.push_back( truncation_warning( report.graph ) );
    for ( const auto& claim : report.claims )
        ctx.notes.push_back( claim.note );
    if ( report.verdict == Verdict::theorem_violation_suspected )
        ctx.notes.push_back( report.truncated
                                 ? "strong-influence cycle with every premise clean over a truncated exploration"
                                 : "strong-influence cycle with every premise clean over the full reachable region" );

    bool clean = report.premises_clean() && report.clock_violations.empty() && !report.has_strong_cycle;
    ctx.result.exit_status = clean ? exit_clean : exit_violations;
    ctx.result.dot = influence_dot( ctx.model, report.influence, report.chronology );
}

void run_trace_check( Context& ctx )
{
    if ( ctx.options.schedule.empty() )
        throw std::invalid_argument( "trace-check needs --schedule" );
    if ( ctx.options.strict )
        explore( ctx.model, ctx.options.limits, true );

    auto report = check_trace_invariance( ctx.model, ctx.options.schedule, ctx.options.swaps, ctx.options.seed,
                                          ctx.options.limits, ctx.mode );
    auto names = [ & ]( const std::vector< std::size_t >& s ) {
        ordered_json out = ordered_json::array();
        for ( auto e : s )
            out.push_back( ctx.model.events[ e ].name );
        return out;
    };
    auto variant_json = [ & ]( const TraceVariant& v ) {
        ordered_json out;
        out[ "schedule" ] = names( v.schedule );
        out[ "final_state" ] = state_json( ctx.model, v.final_state );
        out[ "strong_edges" ] = pairs_json( ctx.model, v.strong_edges );
        return out;
    };

    auto& r = ctx.result.report[ "results" ];
    r[ "schedule" ] = names( report.schedule );
    r[ "invariant" ] = report.invariant();
    r[ "diamond" ] = premise_json( diamond_json( ctx.model, report.diamond_violations ) );
    r[ "variants_checked" ] = report.variants_checked;
    r[ "reference" ] = report.reference ? variant_json( *report.reference ) : ordered_json( nullptr );
    ordered_json mismatches = ordered_json::array();
    for ( const auto& m : report.mismatches )
        mismatches.push_back( variant_json( m ) );
    r[ "mismatches" ] = mismatches;
    r[ "truncated" ] = report.truncated;
    if ( report.truncated )
        ctx.warnings.push_back( "exploration stopped at a limit; strong edges cover the explored region only" );
    ctx.result.exit_status = report.invariant() ? exit_clean : exit_violations;
}

} // namespace

ordered_json state_json( const Model& model, const RecordState& state )
{
    ordered_json out = ordered_json::object();
    for ( std::size_t s = 0; s < state.site_count(); ++s )
        out[ model.sites[ s ] ] = subset_json( model, state[ s ] );
    return out;
}

ordered_json taxonomy_json( const Model& model, const TaxonomyReport& report )
{
    ordered_json out;
    out[ "verdict" ] = std::string( to_string( report.verdict ) );
    out[ "has_strong_cycle" ] = report.has_strong_cycle;
    out[ "truncated" ] = report.truncated;
    out[ "nodes" ] = report.graph.nodes.size();
    out[ "edges" ] = report.graph.edges.size();

    ordered_json premises;
    premises[ "gs" ] = premise_json( gs_json( model, report.graph, report.gs_violations ) );
    premises[ "diamond" ] = premise_json( diamond_json( model, report.diamond_violations ) );
    premises[ "monotonicity" ] = premise_json( monotonicity_json( model, report.monotonicity_violations ) );
    premises[ "branch_determinacy" ] = premise_json( bd_json( model, report.graph, report.bd_violations ) );
    out[ "premises" ] = premises;
    out[ "clock" ] = premise_json( clock_violations_json( model, report.graph, report.clock_violations ) );
    out[ "influence" ] = influence_json( model, report.graph, report.influence, report.mode );
    out[ "chronology" ] = chronology_json( model, report.influence, report.chronology, report.cycles );

    ordered_json claims = ordered_json::array();
    for ( const auto& c : report.claims )
    {
        ordered_json j;
        j[ "strong_cycle" ] = c.claim.events;
        j[ "observable" ] = c.claim.observable ? subset_json( model, *c.claim.observable ) : ordered_json( nullptr );
        j[ "confirmed" ] = c.confirmed();
        ordered_json missing = ordered_json::array();
        for ( const auto& [ e, f ] : c.missing_edges )
            missing.push_back( { model.events[ e ].name, model.events[ f ].name } );
        j[ "missing_edges" ] = missing;
        ordered_json unwitnessed = ordered_json::array();
        for ( const auto& [ e, f ] : c.observable_unwitnessed )
            unwitnessed.push_back( { model.events[ e ].name, model.events[ f ].name } );
        j[ "observable_unwitnessed" ] = unwitnessed;
        j[ "note" ] = c.note;
        claims.push_back( j );
    }
    out[ "claims" ] = claims;
    return out;
}

CommandResult run_command( const Model& model, const CommandOptions& options )
{
    static const std::set< std::string > commands{ "validate", "explore", "influence",
                                                   "chronology", "diagnose", "trace-check" };
    if ( !commands.contains( options.command ) )
        throw std::invalid_argument( "unknown command '" + options.command + "'" );

    Context ctx{ model, options, options.mode.value_or( model.mode ), {} };
    auto& report = ctx.result.report;
    report[ "command" ] = options.command;

    ordered_json m;
    m[ "digest" ] = model_digest( model );
    m[ "worlds" ] = model.space.size();
    m[ "sites" ] = model.site_count();
    m[ "events" ] = model.events.size();
    if ( !model.description.empty() )
        m[ "description" ] = model.description;
    report[ "model" ] = m;

    ordered_json opts;
    opts[ "mode" ] = std::string( to_string( ctx.mode ) );
    opts[ "max_states" ] = options.limits.max_nodes;
    opts[ "max_depth" ] = options.limits.max_depth;
    opts[ "strict" ] = options.strict;
    if ( options.command == "trace-check" )
    {
        opts[ "schedule" ] = options.schedule;
        opts[ "swaps" ] = options.swaps;
        opts[ "seed" ] = options.seed;
    }
    report[ "options" ] = opts;
    report[ "results" ] = ordered_json::object();

    try
    {
        if ( options.command == "validate" )
            run_validate( ctx );
        else if ( options.command == "explore" )
            run_explore( ctx );
        else if ( options.command == "influence" )
            run_influence( ctx );
        else if ( options.command == "chronology" )
            run_chronology( ctx );
        else if ( options.command == "diagnose" )
            run_diagnose( ctx );
        else
            run_trace_check( ctx );
    }
    catch ( const MonotonicityError& err )
    {
        ordered_json v;
        v[ "event" ] = err.violation().event;
        v[ "site" ] = model.sites[ err.violation().site ];
        v[ "state" ] = state_json( model, err.source() );
        v[ "added" ] = subset_json( model, err.violation().added );
        report[ "results" ] = ordered_json::object();
        report[ "results" ][ "strict_monotonicity_error" ] = v;
        ctx.warnings.push_back( std::string( "strict mode: " ) + err.what() );
        ctx.result.exit_status = exit_violations;
        ctx.result.dot.reset();
    }

    report[ "warnings" ] = ctx.warnings;
    report[ "notes" ] = ctx.notes;
    report[ "exit_status" ] = ctx.result.exit_status;
    return std::move( ctx.result );
}

std::string render_report( const ordered_json& report ) { return report.dump( 2 ) + "\n"; }

std::string influence_dot( const Model& model, const InfluenceGraph& ig, const Chronology& chronology )
{
    std::ostringstream out;
    out << "digraph influence {\n";
    out << "  rankdir=LR;\n";
    out << "  node [shape=ellipse];\n";
    for ( const auto& e : model.events )
        out << "  " << dot_quote( e.name ) << ";\n";

    auto edge = [ & ]( const EventPair& p, std::string_view style, std::string_view label ) {
        out << "  " << dot_quote( model.events[ p.first ].name ) << " -> " << dot_quote( model.events[ p.second ].name )
            << " [style=" << style << ", label=" << dot_quote( label ) << "];\n";
    };
    for ( const auto& [ pair, w ] : ig.strong )
        edge( pair, "solid", "strong" );
    for ( const auto& [ pair, w ] : ig.weak )
        if ( !ig.strong.contains( pair ) )
            edge( pair, "dashed", "weak" );
    for ( const auto& pair : chronology.pairs() )
        if ( pair.first != pair.second && !ig.strong.contains( pair ) )
            edge( pair, "dotted", "precedes" );
    out << "}\n";
    return out.str();
}

std::string reachability_dot( const Model& model, const ReachabilityGraph& graph, ConsistencyMode mode )
{
    std::ostringstream out;
    out << "digraph reachability {\n";
    out << "  node [shape=box, fontname=\"monospace\"];\n";
    for ( std::size_t n = 0; n < graph.nodes.size(); ++n )
    {
        const auto& node = graph.nodes[ n ];
        std::string occurred;
        for ( std::size_t e = 0; e < model.events.size(); ++e )
            if ( node.occurred.contains( e ) )
                occurred += ( occurred.empty() ? "" : "," ) + model.events[ e ].name;
        out << "  n" << n << " [label=\"" << dot_escape( state_text( model, node.state ) ) << "\\n["
            << dot_escape( occurred ) << "]\"";
        if ( !is_consistent( model.space, node.state, mode ) )
            out << ", color=red";
        if ( n == 0 )
            out << ", peripheries=2";
        out << "];\n";
    }
    for ( const auto& edge : graph.edges )
    {
        out << "  n" << edge.source << " -> n" << edge.target << " [label=" << dot_quote( model.events[ edge.event ].name );
        if ( !edge.violations.empty() )
            out << ", color=red";
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

void export_dot( const std::string& dot, const std::string& path )
{
    std::ofstream file( path, std::ios::binary );
    if ( !file )
        throw std::runtime_error( "cannot write '" + path + "'" );
    file << dot;
    if ( !file )
        throw std::runtime_error( "failed writing '" + path + "'" );
}

} // namespace chronocheck
