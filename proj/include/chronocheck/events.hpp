#pragma once

#include "chronocheck/core.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace chronocheck
{

/// Models are limited to this many events so that occurrence sets fit a word.
inline constexpr std::size_t max_events = 64;

/// Set of event indices (declaration order within a model).
class EventSet
{
public:
    EventSet() = default;

    [[nodiscard]] bool contains( std::size_t event ) const { return ( _bits >> event ) & 1U; }
    void insert( std::size_t event ) { _bits |= std::uint64_t{ 1 } << event; }
    [[nodiscard]] EventSet with( std::size_t event ) const
    {
        EventSet s = *this;
        s.insert( event );
        return s;
    }
    [[nodiscard]] bool empty() const { return _bits == 0; }
    [[nodiscard]] std::uint64_t bits() const { return _bits; }

    friend bool operator==( const EventSet&, const EventSet& ) = default;
    friend auto operator<=>( const EventSet&, const EventSet& ) = default;

private:
    std::uint64_t _bits = 0;
};

enum class EventKind
{
    table,
    intersect,
};

/// Site-indexed sets; absent sites are wildcards in guards and untouched in results.
using SiteMap = std::map< std::size_t, Subset >;

/// One case of a guarded update table. The guard matches a state when every
/// listed site holds exactly the listed set.
struct Rule
{
    SiteMap guard;
    SiteMap result;

    friend bool operator==( const Rule&, const Rule& ) = default;
};

struct Event
{
    std::string name;
    std::vector< std::size_t > support; // sorted, unique
    EventKind kind = EventKind::table;
    std::vector< Rule > rules;          // table events, first match wins
    SiteMap constraints;                // intersect events, one per supported site

    [[nodiscard]] bool supports( std::size_t site ) const;

    friend bool operator==( const Event&, const Event& ) = default;
};

struct MonotonicityViolation
{
    std::string event;
    std::size_t site = 0;
    Subset added; // worlds present after the update but not before

    friend bool operator==( const MonotonicityViolation&, const MonotonicityViolation& ) = default;
};

struct UpdateOutcome
{
    RecordState next;
    std::vector< MonotonicityViolation > violations;
    std::optional< std::size_t > fired_rule;
};

/// Applies the update map of `event`. Sites outside the support are copied
/// unchanged; a table without a matching rule acts as the identity.
/// Records that grow are reported, never clipped.
UpdateOutcome apply_event( const Event& event, const RecordState& state );

/// R_i minus (U_e(R))_i, or the empty set for sites outside the support.
Subset write_effect( const Event& event, const RecordState& state, std::size_t site );

/// Disjoint supports.
bool independent( const Event& e, const Event& f );

std::vector< std::size_t > shared_sites( const Event& e, const Event& f );

enum class DefectSeverity
{
    error,
    warning,
};

struct StaticDefect
{
    DefectSeverity severity = DefectSeverity::error;
    std::string kind; // site_range, locality, intersect_constraint, universe, shadowed_rule, static_monotonicity, nonlocal_guard
    std::string event;
    std::optional< std::size_t > rule;
    std::optional< std::size_t > site;
    std::string message;
};

std::vector< StaticDefect > validate_event_static( const Event& event, const PossibilitySpace& space,
                                                   std::size_t site_count );

} // namespace chronocheck
