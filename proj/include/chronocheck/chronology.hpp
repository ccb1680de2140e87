#pragma once

#include "chronocheck/influence.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace chronocheck
{

/// Transitive closure of strong influence plus, when it is acyclic, a
/// ranking that respects it.
struct Chronology
{
    std::size_t event_count = 0;
    std::vector< std::vector< bool > > reach; // reach[e][f]: e precedes f
    bool acyclic = true;
    std::optional< std::vector< std::size_t > > rank; // rank[e] = t(e)

    [[nodiscard]] bool precedes( std::size_t e, std::size_t f ) const { return reach[ e ][ f ]; }
    [[nodiscard]] std::set< EventPair > pairs() const;
};

struct CycleReport
{
    /// One representative per nontrivial strongly connected component, as
    /// e1, ..., ek with ek => e1 closing the cycle.
    std::vector< std::vector< std::size_t > > cycles;
};

CycleReport find_strong_cycles( const InfluenceGraph& ig );

/// Topological ranks break ties by `names` in lexicographic order.
Chronology transitive_closure( const InfluenceGraph& ig, const std::vector< std::string >& names );

struct BDViolation
{
    StrongWitness witness;
    std::size_t node = 0; // the history point that disagrees
    Subset expected;      // branch0 or branch1
    Subset actual;
    bool cause_occurred = false;
};

/// For every strong witness, compares the branch enforced at every explored
/// node whose records on the effect's support match the witness context.
std::vector< BDViolation > check_branch_determinacy( const Model& model, const ReachabilityGraph& graph,
                                                     const InfluenceGraph& ig, ConsistencyMode mode );

struct TraceVariant
{
    std::vector< std::size_t > schedule;
    RecordState final_state;
    std::set< EventPair > strong_edges;
};

struct TraceCheckReport
{
    std::vector< std::size_t > schedule;
    std::size_t swaps = 0;
    std::uint64_t seed = 0;
    std::vector< DiamondViolation > diamond_violations; // nonempty: nothing else was checked
    bool truncated = false;
    std::optional< TraceVariant > reference;
    std::size_t variants_checked = 0;
    std::vector< TraceVariant > mismatches;

    [[nodiscard]] bool invariant() const { return diamond_violations.empty() && mismatches.empty(); }
};

/// Replays `schedule` and members of its trace class (every single swap of
/// adjacent independent events plus `swaps` seeded random swap chains),
/// comparing final states and the strong edges found from each final state.
/// Throws std::invalid_argument on unknown event names.
TraceCheckReport check_trace_invariance( const Model& model, const std::vector< std::string >& schedule,
                                         std::size_t swaps, std::uint64_t seed, const ExplorationLimits& limits,
                                         ConsistencyMode mode );

/// Random members of the trace class of `schedule`, excluding itself.
std::vector< std::vector< std::size_t > > trace_variants( const Model& model, const std::vector< std::size_t >& schedule,
                                                          std::size_t swaps, std::uint64_t seed );

enum class Verdict
{
    no_cycle,
    cycle_explained,
    theorem_violation_suspected,
};

std::string_view to_string( Verdict verdict );

struct ClaimCheck
{
    CycleClaim claim;
    std::vector< EventPair > missing_edges;
    std::vector< EventPair > observable_unwitnessed; // edges with no witness on the claimed observable
    std::string note;

    [[nodiscard]] bool confirmed() const { return missing_edges.empty() && observable_unwitnessed.empty(); }
};

struct TaxonomyReport
{
    ConsistencyMode mode = ConsistencyMode::nonempty;
    ReachabilityGraph graph;
    InfluenceGraph influence;
    CycleReport cycles;
    Chronology chronology;
    bool has_strong_cycle = false;
    std::vector< std::size_t > gs_violations;
    std::vector< DiamondViolation > diamond_violations;
    std::vector< MonotonicityFinding > monotonicity_violations;
    std::vector< BDViolation > bd_violations;
    std::vector< ClockViolation > clock_violations;
    std::vector< ClaimCheck > claims;
    Verdict verdict = Verdict::no_cycle;
    bool truncated = false;

    [[nodiscard]] bool premises_clean() const
    {
        return gs_violations.empty() && diamond_violations.empty() && monotonicity_violations.empty()
               && bd_violations.empty();
    }
};

/// Runs every premise check (never stopping at the first failure), builds
/// the influence relations and classifies any strong-influence cycle.
TaxonomyReport diagnose( const Model& model, const ExplorationLimits& limits, ConsistencyMode mode );

} // namespace chronocheck
