#include "chronocheck/influence.hpp"

namespace chronocheck
{

namespace
{

struct PostRecords
{
    Subset without_cause; // P0
    Subset with_cause;    // P1
};

PostRecords post_records( const Model& model, const RecordState& state, std::size_t e, std::size_t f,
                          std::size_t site )
{
    const auto& cause = model.events[ e ];
    const auto& effect = model.events[ f ];
    auto after_cause = apply_event( cause, state ).next;
    return { apply_event( effect, state ).next[ site ], apply_event( effect, after_cause ).next[ site ] };
}

} // namespace

std::optional< WeakWitness > weak_influence( const Model& model, const ReachabilityGraph& graph, std::size_t e,
                                             std::size_t f, ConsistencyMode mode )
{
    const auto& cause = model.events.at( e );
    const auto& effect = model.events.at( f );
    auto shared = shared_sites( cause, effect );
    if ( shared.empty() )
        return std::nullopt;

    for ( std::size_t n = 0; n < graph.nodes.size(); ++n )
    {
        const auto& state = graph.nodes[ n ].state;
        auto after_cause = apply_event( cause, state ).next;
        for ( auto site : shared )
        {
            auto without = write_effect( effect, state, site );
            auto with = write_effect( effect, after_cause, site );
            if ( !equivalent( model.space, without, with, mode ) )
                return WeakWitness{ e, f, n, site, std::move( without ), std::move( with ) };
        }
    }
    return std::nullopt;
}

BinaryWitness check_binary_witness( const Model& model, const ReachabilityGraph& graph, const WeakWitness& witness,
                                    ConsistencyMode mode )
{
    const auto& state = graph.nodes.at( witness.node ).state;
    auto post = post_records( model, state, witness.cause, witness.effect, witness.site );
    BinaryWitness out;
    out.observable = witness.delta_with ^ witness.delta_without;
    out.without_cause = post.without_cause & out.observable;
    out.with_cause = post.with_cause & out.observable;
    out.separates = nontrivial( model.space, out.without_cause ^ out.with_cause, mode );
    return out;
}

Subset binary_witness( const Model& model, const ReachabilityGraph& graph, const WeakWitness& witness,
                       ConsistencyMode mode )
{
    auto checked = check_binary_witness( model, graph, witness, mode );
    if ( !checked.separates )
        throw WitnessError( "observable built from the write effects of '" + model.events[ witness.effect ].name
                            + "' does not separate its post-records with and without '"
                            + model.events[ witness.cause ].name + "'" );
    return checked.observable;
}

std::optional< StrongWitness > strong_influence( const Model& model, const ReachabilityGraph& graph, std::size_t e,
                                                 std::size_t f, ConsistencyMode mode )
{
    auto shared = shared_sites( model.events.at( e ), model.events.at( f ) );
    if ( shared.empty() )
        return std::nullopt;

    for ( std::size_t n = 0; n < graph.nodes.size(); ++n )
    {
        for ( auto site : shared )
        {
            auto post = post_records( model, graph.nodes[ n ].state, e, f, site );
            auto only_without = post.without_cause - post.with_cause;
            auto only_with = post.with_cause - post.without_cause;
            if ( nontrivial( model.space, only_without, mode ) && nontrivial( model.space, only_with, mode ) )
            {
                auto observable = only_without | only_with;
                return StrongWitness{ e, f, n, site, observable, post.without_cause & observable,
                                      post.with_cause & observable };
            }
        }
    }
    return std::nullopt;
}

std::optional< StrongWitness > strong_influence_oracle( const Model& model, const ReachabilityGraph& graph,
                                                        std::size_t e, std::size_t f, ConsistencyMode mode )
{
    const auto world_count = model.space.size();
    if ( world_count > oracle_world_limit )
        throw std::length_error( "brute-force observable search is limited to "
                                 + std::to_string( oracle_world_limit ) + " worlds" );

    auto shared = shared_sites( model.events.at( e ), model.events.at( f ) );
    for ( std::size_t n = 0; n < graph.nodes.size(); ++n )
    {
        for ( auto site : shared )
        {
            auto post = post_records( model, graph.nodes[ n ].state, e, f, site );
            for ( std::uint64_t mask = 0; mask < ( std::uint64_t{ 1 } << world_count ); ++mask )
            {
                Subset observable( world_count );
                for ( std::size_t w = 0; w < world_count; ++w )
                    if ( ( mask >> w ) & 1U )
                        observable.insert( w );
                auto branch0 = post.without_cause & observable;
                auto branch1 = post.with_cause & observable;
                bool exclusive = !nontrivial( model.space, branch0 & branch1, mode );
                if ( exclusive && nontrivial( model.space, branch0, mode ) && nontrivial( model.space, branch1, mode ) )
                    return StrongWitness{ e, f, n, site, observable, branch0, branch1 };
            }
        }
    }
    return std::nullopt;
}

std::optional< StrongWitness > strong_influence_on( const Model& model, const ReachabilityGraph& graph, std::size_t e,
                                                    std::size_t f, const Subset& observable, ConsistencyMode mode )
{
    auto shared = shared_sites( model.events.at( e ), model.events.at( f ) );
    for ( std::size_t n = 0; n < graph.nodes.size(); ++n )
    {
        for ( auto site : shared )
        {
            auto post = post_records( model, graph.nodes[ n ].state, e, f, site );
            auto branch0 = post.without_cause & observable;
            auto branch1 = post.with_cause & observable;
            if ( !nontrivial( model.space, branch0 & branch1, mode ) && nontrivial( model.space, branch0, mode )
                 && nontrivial( model.space, branch1, mode ) )
                return StrongWitness{ e, f, n, site, observable, branch0, branch1 };
        }
    }
    return std::nullopt;
}

bool verify_strong_witness( const Model& model, const ReachabilityGraph& graph, const StrongWitness& witness,
                            ConsistencyMode mode )
{
    if ( witness.node >= graph.nodes.size() )
        return false;
    const auto& cause = model.events.at( witness.cause );
    const auto& effect = model.events.at( witness.effect );
    if ( !cause.supports( witness.site ) || !effect.supports( witness.site ) )
        return false;

    auto post = post_records( model, graph.nodes[ witness.node ].state, witness.cause, witness.effect, witness.site );
    auto branch0 = post.without_cause & witness.observable;
    auto branch1 = post.with_cause & witness.observable;
    return branch0 == witness.branch0 && branch1 == witness.branch1
           && !nontrivial( model.space, branch0 & branch1, mode ) && nontrivial( model.space, branch0, mode )
           && nontrivial( model.space, branch1, mode );
}

InfluenceGraph build_influence_graphs( const Model& model, const ReachabilityGraph& graph, ConsistencyMode mode )
{
    InfluenceGraph ig;
    ig.event_count = model.events.size();
    for ( std::size_t e = 0; e < model.events.size(); ++e )
    {
        for ( std::size_t f = 0; f < model.events.size(); ++f )
        {
            if ( e == f )
                continue;
            if ( auto w = weak_influence( model, graph, e, f, mode ) )
                ig.weak.emplace( EventPair{ e, f }, std::move( *w ) );
            if ( auto s = strong_influence( model, graph, e, f, mode ) )
                ig.strong.emplace( EventPair{ e, f }, std::move( *s ) );
        }
    }
    return ig;
}

} // namespace chronocheck
