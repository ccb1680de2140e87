// Command-line front end: loads a model file, runs one analysis and prints
// a JSON report. Exit status 0 = clean, 1 = violations found, 2 = usage or
// model error.

#include "chronocheck/model_io.hpp"
#include "chronocheck/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace
{

std::vector< std::string > split_schedule( const std::string& text )
{
    std::vector< std::string > out;
    std::stringstream in( text );
    std::string item;
    while ( std::getline( in, item, ',' ) )
        if ( !item.empty() )
            out.push_back( item );
    return out;
}

} // namespace

int main( int argc, char** argv )
{
    using namespace chronocheck;

    CLI::App app{ "Finite-model checker for monotone distributed record systems" };
    app.require_subcommand( 1 );

    std::string model_path;
    std::string mode_text;
    std::size_t max_states = ExplorationLimits{}.max_nodes;
    std::size_t max_depth = ExplorationLimits{}.max_depth;
    std::string schedule_text;
    std::size_t swaps = 20;
    std::uint64_t seed = 0;
    std::string dot_path;
    std::string json_path;
    bool strict = false;

    const std::vector< std::pair< std::string, std::string > > commands{
        { "validate", "Static checks of the model's events" },
        { "explore", "Reachable states with consistency, monotonicity, diamond and clock checks" },
        { "influence", "Weak and strong influence edges with witnesses" },
        { "chronology", "Precedence order, linear extension and strong-influence cycles" },
        { "diagnose", "Full premise check and cycle classification" },
        { "trace-check", "Schedule invariance across a trace class" },
    };

    for ( const auto& [ name, help ] : commands )
    {
        auto* sub = app.add_subcommand( name, help );
        sub->add_option( "model_file", model_path, "Model file (JSON)" );
        sub->add_option( "--model", model_path, "Model file (JSON)" );
        sub->add_option( "--mode", mode_text, "Consistency mode" )->check( CLI::IsMember( { "nonempty", "measure" } ) );
        sub->add_option( "--max-states", max_states, "Exploration node limit" )->check( CLI::PositiveNumber );
        sub->add_option( "--max-depth", max_depth, "Exploration depth limit" )->check( CLI::PositiveNumber );
        sub->add_option( "--dot", dot_path, "Write a DOT graph to this path" );
        sub->add_option( "--json", json_path, "Also write the report to this path" );
        sub->add_flag( "--strict", strict, "Treat monotonicity violations as hard errors" );
        if ( name == "trace-check" )
        {
            sub->add_option( "--schedule", schedule_text, "Comma-separated event names" )->required();
            sub->add_option( "--swaps", swaps, "Random swap chains to try" );
            sub->add_option( "--seed", seed, "Seed for the swap chains" );
        }
    }

    try
    {
        app.parse( argc, argv );
    }
    catch ( const CLI::CallForHelp& e )
    {
        return app.exit( e );
    }
    catch ( const CLI::CallForAllHelp& e )
    {
        return app.exit( e );
    }
    catch ( const CLI::ParseError& e )
    {
        app.exit( e );
        return exit_usage;
    }

    if ( model_path.empty() )
    {
        std::cerr << "error: a model file is required\n";
        return exit_usage;
    }

    CommandOptions options;
    options.command = app.get_subcommands().front()->get_name();
    if ( !mode_text.empty() )
        options.mode = parse_consistency_mode( mode_text );
    options.limits = { max_states, max_depth };
    options.schedule = split_schedule( schedule_text );
    options.swaps = swaps;
    options.seed = seed;
    options.strict = strict;

    try
    {
        auto model = load_model( model_path );
        auto result = run_command( model, options );
        auto text = render_report( result.report );
        std::cout << text;

        if ( !json_path.empty() )
        {
            std::ofstream out( json_path, std::ios::binary );
            if ( !out || !( out << text ) )
            {
                std::cerr << "error: cannot write '" << json_path << "'\n";
                return exit_usage;
            }
        }
        if ( !dot_path.empty() )
        {
            if ( !result.dot )
            {
                std::cerr << "error: '" << options.command << "' produces no graph\n";
                return exit_usage;
            }
            export_dot( *result.dot, dot_path );
        }
        return result.exit_status;
    }
    catch ( const ModelError& e )
    {
        std::cerr << "error: " << model_path << ": " << e.what() << "\n";
    }
    catch ( const std::exception& e )
    {
        std::cerr << "error: " << e.what() << "\n";
    }
    return exit_usage;
}
