#pragma once

#include "chronocheck/events.hpp"

#include <optional>
#include <string>
#include <vector>

namespace chronocheck
{

/// An asserted strong-influence cycle, e.g. one stated alongside a worked
/// example. Diagnosis checks it against what the definitions actually yield.
struct CycleClaim
{
    std::vector< std::string > events;  // e1 => e2 => ... => e1
    std::optional< Subset > observable; // the branching observable, if asserted

    friend bool operator==( const CycleClaim&, const CycleClaim& ) = default;
};

struct Model
{
    PossibilitySpace space;
    std::vector< std::string > sites;
    RecordState initial;
    std::vector< Event > events;
    ConsistencyMode mode = ConsistencyMode::nonempty;
    std::string description;
    std::vector< CycleClaim > claims;

    [[nodiscard]] std::optional< std::size_t > find_event( std::string_view name ) const;
    [[nodiscard]] std::optional< std::size_t > find_site( std::string_view name ) const;
    [[nodiscard]] std::size_t site_count() const { return sites.size(); }

    friend bool operator==( const Model&, const Model& ) = default;
};

/// Structural checks plus every event's static defects. Throws
/// std::invalid_argument on malformed structure (no sites, duplicate names,
/// too many events, initial state of the wrong shape).
std::vector< StaticDefect > validate_model( const Model& model );

} // namespace chronocheck
