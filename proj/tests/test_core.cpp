#include "chronocheck/core.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace chronocheck;

namespace
{

PossibilitySpace two_worlds( Rational w0, Rational w1 ) { return PossibilitySpace( { "w0", "w1" }, { w0, w1 } ); }

Subset random_subset( std::mt19937_64& rng, std::size_t n )
{
    Subset s( n );
    for ( std::size_t w = 0; w < n; ++w )
        if ( rng() & 1U )
            s.insert( w );
    return s;
}

} // namespace

TEST_CASE( "subset algebra is exact" )
{
    auto a = Subset::of( 70, { 0, 3, 64, 69 } );
    auto b = Subset::of( 70, { 3, 5, 69 } );

    CHECK( ( a & b ) == Subset::of( 70, { 3, 69 } ) );
    CHECK( ( a | b ) == Subset::of( 70, { 0, 3, 5, 64, 69 } ) );
    CHECK( ( a - b ) == Subset::of( 70, { 0, 64 } ) );
    CHECK( ( a ^ b ) == Subset::of( 70, { 0, 5, 64 } ) );
    CHECK( a.complement().count() == 66 );
    CHECK( a.complement().complement() == a );
    CHECK( Subset::full( 70 ).count() == 70 );
    CHECK( a.members() == std::vector< std::size_t >{ 0, 3, 64, 69 } );
    CHECK_THROWS_AS( a.insert( 70 ), std::out_of_range );
    CHECK_THROWS_AS( (void)( a & Subset( 3 ) ), std::invalid_argument );
}

TEST_CASE( "possibility space rejects bad inputs" )
{
    CHECK_THROWS_AS( PossibilitySpace( std::vector< std::string >{} ), std::invalid_argument );
    CHECK_THROWS_AS( PossibilitySpace( { "x", "x" } ), std::invalid_argument );
    CHECK_THROWS_AS( PossibilitySpace( { "" } ), std::invalid_argument );
    CHECK_THROWS_AS( two_worlds( -1, 2 ), std::invalid_argument );
    CHECK_THROWS_AS( two_worlds( 0, 0 ), std::invalid_argument );
}

TEST_CASE( "feasible set" )
{
    PossibilitySpace bits( { "00", "01", "10", "11" } );
    auto at = [ & ]( std::initializer_list< std::size_t > m ) { return Subset::of( 4, m ); };

    SUBCASE( "single site" )
    {
        PossibilitySpace bit( { "0", "1" } );
        CHECK( feasible_set( RecordState( { Subset::of( 2, { 0 } ) } ) ) == Subset::of( 2, { 0 } ) );
    }
    SUBCASE( "unconstrained" )
    {
        CHECK( feasible_set( RecordState( { bits.all(), bits.all() } ) ) == bits.all() );
    }
    SUBCASE( "two tightened sites" )
    {
        // site 1 fixes the first bit, site 2 the second
        CHECK( feasible_set( RecordState( { at( { 0, 1 } ), at( { 0, 2 } ) } ) ) == at( { 0 } ) );
    }
}

TEST_CASE( "consistency modes" )
{
    auto counting = two_worlds( 1, 1 );
    auto empty = RecordState( { counting.empty() } );
    CHECK_FALSE( is_consistent( counting, empty, ConsistencyMode::nonempty ) );
    CHECK_FALSE( is_consistent( counting, empty, ConsistencyMode::positive_measure ) );
    CHECK( is_consistent( counting, RecordState( { counting.all(), counting.all() } ), ConsistencyMode::nonempty ) );

    auto skewed = two_worlds( 0, 1 );
    auto null_only = RecordState( { Subset::of( 2, { 0 } ) } );
    CHECK( is_consistent( skewed, null_only, ConsistencyMode::nonempty ) );
    CHECK_FALSE( is_consistent( skewed, null_only, ConsistencyMode::positive_measure ) );
}

TEST_CASE( "null equivalence and measure" )
{
    auto counting = two_worlds( 1, 1 );
    auto a = Subset::of( 2, { 0 } );
    auto b = Subset::of( 2, { 1 } );
    CHECK( null_equiv( counting, a, a ) );
    CHECK_FALSE( null_equiv( counting, a, b ) );

    auto skewed = two_worlds( 0, 1 );
    CHECK( null_equiv( skewed, skewed.all(), b ) );

    CHECK( measure_of( counting, counting.empty() ) == 0.0 );
    CHECK( measure_of( counting, counting.all() ) == 2.0 );
    CHECK( measure_of( two_worlds( Rational( 1, 4 ), Rational( 3, 4 ) ), a ) == 0.25 );
}

TEST_CASE( "information content" )
{
    auto counting = two_worlds( 1, 1 );
    CHECK( information_content( counting, RecordState( { counting.all() } ) ) == doctest::Approx( -std::log( 2.0 ) ) );
    CHECK( std::isinf( information_content( counting, RecordState( { counting.empty() } ) ) ) );
    CHECK( information_content( counting, RecordState( { Subset::of( 2, { 1 } ) } ) ) == 0.0 );
}

TEST_CASE( "restrict" )
{
    auto a = Subset::of( 3, { 0 } );
    auto b = Subset::of( 3, { 1, 2 } );
    RecordState r( { a, b } );

    auto first = restrict( r, { 0 } );
    CHECK( first.records == std::vector< Subset >{ a } );
    CHECK( restrict( r, { 1, 0 } ).records == r.records() );
    CHECK( restrict( r, {} ) == restrict( RecordState( { b } ), {} ) );
    CHECK_THROWS_AS( restrict( r, { 2 } ), std::out_of_range );

    PossibilitySpace skewed( { "x", "y", "z" }, { 0, 1, 1 } );
    auto with_null = restrict( RecordState( { Subset::of( 3, { 0, 1 } ) } ), { 0 } );
    auto without_null = restrict( RecordState( { Subset::of( 3, { 1 } ) } ), { 0 } );
    CHECK( equivalent( skewed, with_null, without_null, ConsistencyMode::positive_measure ) );
    CHECK_FALSE( equivalent( skewed, with_null, without_null, ConsistencyMode::nonempty ) );
}

TEST_CASE( "rational weights parse exactly" )
{
    CHECK( parse_rational( "0.1" ) == Rational( 1, 10 ) );
    CHECK( parse_rational( "1/3" ) == Rational( 1, 3 ) );
    CHECK( parse_rational( "2.5e-1" ) == Rational( 1, 4 ) );
    CHECK( parse_rational( "-3" ) == Rational( -3 ) );
    CHECK( parse_rational( "1E2" ) == Rational( 100 ) );
    CHECK( parse_rational( "0.75" ) == Rational( 3, 4 ) );
    CHECK( parse_rational( "0.125" ) == Rational( 1, 8 ) );
    CHECK( parse_rational( "007" ) == Rational( 7 ) );
    CHECK( parse_rational( "0" ) == Rational( 0 ) );
    CHECK( parse_rational( "0.0" ) == Rational( 0 ) );
    CHECK_FALSE( parse_rational( "abc" ) );
    CHECK_FALSE( parse_rational( "1/0" ) );
    CHECK_FALSE( parse_rational( "." ) );
    CHECK_FALSE( parse_rational( "" ) );

    CHECK( format_rational( Rational( 1, 4 ) ) == "0.25" );
    CHECK( format_rational( Rational( 1, 3 ) ) == "1/3" );
    CHECK( format_rational( Rational( 7 ) ) == "7" );
    CHECK( format_rational( Rational( -1, 20 ) ) == "-0.05" );
}

TEST_CASE( "null equivalence is an equivalence relation" )
{
    std::mt19937_64 rng( 7 );
    for ( int trial = 0; trial < 200; ++trial )
    {
        std::vector< std::string > labels;
        std::vector< Rational > weights;
        const std::size_t n = 1 + rng() % 6;
        for ( std::size_t w = 0; w < n; ++w )
        {
            labels.push_back( "w" + std::to_string( w ) );
            weights.emplace_back( static_cast< long >( rng() % 3 ) );
        }
        weights[ 0 ] = 1;
        PossibilitySpace space( labels, weights );
        auto a = random_subset( rng, n );
        auto b = random_subset( rng, n );
        auto c = random_subset( rng, n );

        CHECK( null_equiv( space, a, a ) );
        CHECK( null_equiv( space, a, b ) == null_equiv( space, b, a ) );
        if ( null_equiv( space, a, b ) && null_equiv( space, b, c ) )
            CHECK( null_equiv( space, a, c ) );

        PossibilitySpace counting( labels );
        CHECK( null_equiv( counting, a, b ) == ( a == b ) );
    }
}

TEST_CASE( "measure is finitely additive over partitions" )
{
    std::mt19937_64 rng( 11 );
    for ( int trial = 0; trial < 200; ++trial )
    {
        const std::size_t n = 1 + rng() % 10;
        std::vector< std::string > labels;
        std::vector< Rational > weights;
        for ( std::size_t w = 0; w < n; ++w )
        {
            labels.push_back( "w" + std::to_string( w ) );
            weights.emplace_back( static_cast< long >( rng() % 5 ), static_cast< long >( 1 + rng() % 4 ) );
        }
        weights[ 0 ] += 1;
        PossibilitySpace space( labels, weights );

        const std::size_t parts = 1 + rng() % 4;
        std::vector< Subset > partition( parts, space.empty() );
        for ( std::size_t w = 0; w < n; ++w )
            partition[ rng() % parts ].insert( w );

        Rational total = 0;
        for ( const auto& p : partition )
            total += space.measure( p );
        CHECK( total == space.measure( space.all() ) );
    }
}
