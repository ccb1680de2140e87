#pragma once

#include "chronocheck/chronology.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace chronocheck
{

inline constexpr int exit_clean = 0;
inline constexpr int exit_violations = 1;
inline constexpr int exit_usage = 2;

struct CommandOptions
{
    std::string command; // validate, explore, influence, chronology, diagnose, trace-check
    std::optional< ConsistencyMode > mode; // overrides the model's mode
    ExplorationLimits limits;
    std::vector< std::string > schedule;
    std::size_t swaps = 20;
    std::uint64_t seed = 0;
    bool strict = false;
};

struct CommandResult
{
    nlohmann::ordered_json report;
    int exit_status = exit_clean;
    std::optional< std::string > dot;
};

/// Throws std::invalid_argument for an unknown command or an unusable
/// option (e.g. trace-check without a schedule).
CommandResult run_command( const Model& model, const CommandOptions& options );

/// Two-space indented JSON with a trailing newline.
std::string render_report( const nlohmann::ordered_json& report );

/// Events as vertices; strong edges solid, weak-only edges dashed and
/// precedence pairs implied only by transitivity dotted.
std::string influence_dot( const Model& model, const InfluenceGraph& ig, const Chronology& chronology );

/// Explored nodes labeled with their records; edges labeled with events,
/// red where a record grew. Inconsistent states are outlined in red.
std::string reachability_dot( const Model& model, const ReachabilityGraph& graph, ConsistencyMode mode );

/// Throws std::runtime_error when the file cannot be written.
void export_dot( const std::string& dot, const std::string& path );

nlohmann::ordered_json state_json( const Model& model, const RecordState& state );
nlohmann::ordered_json taxonomy_json( const Model& model, const TaxonomyReport& report );

} // namespace chronocheck
