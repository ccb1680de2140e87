#pragma once

#include "chronocheck/reachability.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>

namespace chronocheck
{

/// e -> f: executing e first changes what f removes at a shared site.
struct WeakWitness
{
    std::size_t cause = 0;  // e
    std::size_t effect = 0; // f
    std::size_t node = 0;   // the reachable state R
    std::size_t site = 0;
    Subset delta_without; // write effect of f at R
    Subset delta_with;    // write effect of f at U_e(R)
};

/// e => f: executing e first flips which of two disjoint, nontrivial
/// constraints f enforces on the observable at a shared site.
struct StrongWitness
{
    std::size_t cause = 0;
    std::size_t effect = 0;
    std::size_t node = 0;
    std::size_t site = 0;
    Subset observable; // B
    Subset branch0;    // (U_f(R))_i & B
    Subset branch1;    // (U_f(U_e(R)))_i & B
};

using EventPair = std::pair< std::size_t, std::size_t >;

struct InfluenceGraph
{
    std::size_t event_count = 0;
    std::map< EventPair, WeakWitness > weak;
    std::map< EventPair, StrongWitness > strong;
};

/// First witness in node order, then site order.
std::optional< WeakWitness > weak_influence( const Model& model, const ReachabilityGraph& graph, std::size_t e,
                                             std::size_t f, ConsistencyMode mode );

struct BinaryWitness
{
    Subset observable;
    Subset without_cause; // (U_f(R))_i & B
    Subset with_cause;    // (U_f(U_e(R)))_i & B
    bool separates = false;
};

/// Builds B as the symmetric difference of the two write effects and reports
/// whether the post-f records restricted to B differ nontrivially.
BinaryWitness check_binary_witness( const Model& model, const ReachabilityGraph& graph, const WeakWitness& witness,
                                    ConsistencyMode mode );

class WitnessError : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

/// Same construction, throwing WitnessError when the post-check fails.
Subset binary_witness( const Model& model, const ReachabilityGraph& graph, const WeakWitness& witness,
                       ConsistencyMode mode );

/// Uses the canonical observable P0 symmetric-difference P1, which exists
/// exactly when both P0 \ P1 and P1 \ P0 are nontrivial.
std::optional< StrongWitness > strong_influence( const Model& model, const ReachabilityGraph& graph, std::size_t e,
                                                 std::size_t f, ConsistencyMode mode );

/// Largest space the brute-force search accepts.
inline constexpr std::size_t oracle_world_limit = 16;

/// Literal search over every observable B. Throws std::length_error above
/// oracle_world_limit worlds. Meant for cross-checking strong_influence.
std::optional< StrongWitness > strong_influence_oracle( const Model& model, const ReachabilityGraph& graph,
                                                        std::size_t e, std::size_t f, ConsistencyMode mode );

/// Literal check of the strong-influence conditions for one fixed observable.
std::optional< StrongWitness > strong_influence_on( const Model& model, const ReachabilityGraph& graph, std::size_t e,
                                                    std::size_t f, const Subset& observable, ConsistencyMode mode );

/// Replays the witness from its node and re-checks exclusivity and nontriviality.
bool verify_strong_witness( const Model& model, const ReachabilityGraph& graph, const StrongWitness& witness,
                            ConsistencyMode mode );

/// Both relations for every ordered pair of distinct events.
InfluenceGraph build_influence_graphs( const Model& model, const ReachabilityGraph& graph, ConsistencyMode mode );

} // namespace chronocheck
