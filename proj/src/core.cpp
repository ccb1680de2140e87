#include "chronocheck/core.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace chronocheck
{

namespace
{

bool all_digits( std::string_view s )
{
    return !s.empty() && std::all_of( s.begin(), s.end(), []( unsigned char c ) { return std::isdigit( c ); } );
}

Rational pow10( long exponent )
{
    boost::multiprecision::cpp_int p = 1;
    for ( long k = 0; k < std::abs( exponent ); ++k )
        p *= 10;
    return exponent >= 0 ? Rational( p ) : Rational( boost::multiprecision::cpp_int( 1 ), p );
}

std::optional< Rational > parse_decimal( std::string_view text )
{
    bool negative = false;
    if ( !text.empty() && ( text.front() == '-' || text.front() == '+' ) )
    {
        negative = text.front() == '-';
        text.remove_prefix( 1 );
    }

    long exponent = 0;
    if ( auto e = text.find_first_of( "eE" ); e != std::string_view::npos )
    {
        auto exp_text = text.substr( e + 1 );
        bool exp_negative = false;
        if ( !exp_text.empty() && ( exp_text.front() == '-' || exp_text.front() == '+' ) )
        {
            exp_negative = exp_text.front() == '-';
            exp_text.remove_prefix( 1 );
        }
        if ( !all_digits( exp_text ) || exp_text.size() > 4 )
            return std::nullopt;
        exponent = std::stol( std::string( exp_text ) );
        if ( exp_negative )
            exponent = -exponent;
        text = text.substr( 0, e );
    }

    std::string digits;
    if ( auto dot = text.find( '.' ); dot != std::string_view::npos )
    {
        auto whole = text.substr( 0, dot );
        auto frac = text.substr( dot + 1 );
        if ( ( whole.empty() && frac.empty() ) || ( !whole.empty() && !all_digits( whole ) )
             || ( !frac.empty() && !all_digits( frac ) ) )
            return std::nullopt;
        digits = std::string( whole ) + std::string( frac );
        exponent -= static_cast< long >( frac.size() );
    }
    else
    {
        if ( !all_digits( text ) )
            return std::nullopt;
        digits = std::string( text );
    }
    if ( digits.empty() )
        return std::nullopt;
    digits.erase( 0, std::min( digits.find_first_not_of( '0' ), digits.size() - 1 ) );

    Rational value{ boost::multiprecision::cpp_int( digits ) };
    value *= pow10( exponent );
    return negative ? Rational( -value ) : value;
}

} // namespace

std::optional< Rational > parse_rational( std::string_view text )
{
    if ( auto slash = text.find( '/' ); slash != std::string_view::npos )
    {
        auto num = parse_decimal( text.substr( 0, slash ) );
        auto den = parse_decimal( text.substr( slash + 1 ) );
        if ( !num || !den || *den == 0 )
            return std::nullopt;
        return Rational( *num / *den );
    }
    return parse_decimal( text );
}

std::string format_rational( const Rational& value )
{
    using boost::multiprecision::cpp_int;
    cpp_int den = boost::multiprecision::denominator( value );
    cpp_int num = boost::multiprecision::numerator( value );
    if ( den == 1 )
        return num.str();

    // Finite decimal expansion iff the denominator has no prime factors besides 2 and 5.
    cpp_int rest = den;
    int twos = 0;
    int fives = 0;
    while ( rest % 2 == 0 )
    {
        rest /= 2;
        ++twos;
    }
    while ( rest % 5 == 0 )
    {
        rest /= 5;
        ++fives;
    }
    if ( rest != 1 )
        return num.str() + "/" + den.str();

    int places = std::max( twos, fives );
    cpp_int scale = 1;
    for ( int k = 0; k < places; ++k )
        scale *= 10;
    cpp_int scaled = num * ( scale / den );
    bool negative = scaled < 0;
    if ( negative )
        scaled = -scaled;
    std::string digits = scaled.str();
    if ( digits.size() <= static_cast< std::size_t >( places ) )
        digits.insert( 0, static_cast< std::size_t >( places ) + 1 - digits.size(), '0' );
    digits.insert( digits.size() - static_cast< std::size_t >( places ), "." );
    return negative ? "-" + digits : digits;
}

std::string_view to_string( ConsistencyMode mode )
{
    return mode == ConsistencyMode::nonempty ? "nonempty" : "positive_measure";
}

std::optional< ConsistencyMode > parse_consistency_mode( std::string_view text )
{
    if ( text == "nonempty" )
        return ConsistencyMode::nonempty;
    if ( text == "positive_measure" || text == "measure" )
        return ConsistencyMode::positive_measure;
    return std::nullopt;
}

PossibilitySpace::PossibilitySpace( std::vector< std::string > worlds )
    : _worlds{ std::move( worlds ) }, _weights( _worlds.size(), Rational( 1 ) )
{
    validate();
    _support = all();
}

PossibilitySpace::PossibilitySpace( std::vector< std::string > worlds, std::vector< Rational > weights )
    : _worlds{ std::move( worlds ) }, _weights{ std::move( weights ) }
{
    validate();
    _support = empty();
    for ( std::size_t w = 0; w < _weights.size(); ++w )
        if ( _weights[ w ] > 0 )
            _support.insert( w );
}

std::optional< std::size_t > PossibilitySpace::find( std::string_view label ) const
{
    auto it = std::find( _worlds.begin(), _worlds.end(), label );
    if ( it == _worlds.end() )
        return std::nullopt;
    return static_cast< std::size_t >( it - _worlds.begin() );
}

bool PossibilitySpace::is_counting_measure() const
{
    return std::all_of( _weights.begin(), _weights.end(), []( const Rational& w ) { return w == 1; } );
}

Rational PossibilitySpace::measure( const Subset& set ) const
{
    Rational total = 0;
    for ( auto w : set.members() )
        total += _weights[ w ];
    return total;
}

void PossibilitySpace::validate() const
{
    if ( _worlds.empty() )
        throw std::invalid_argument( "possibility space needs at least one world" );
    if ( _weights.size() != _worlds.size() )
        throw std::invalid_argument( "one weight per world is required" );

    std::set< std::string_view > seen;
    for ( const auto& w : _worlds )
    {
        if ( w.empty() )
            throw std::invalid_argument( "world labels must be nonempty" );
        if ( !seen.insert( w ).second )
            throw std::invalid_argument( "duplicate world label '" + w + "'" );
    }

    Rational total = 0;
    for ( std::size_t k = 0; k < _weights.size(); ++k )
    {
        if ( _weights[ k ] < 0 )
            throw std::invalid_argument( "negative weight for world '" + _worlds[ k ] + "'" );
        total += _weights[ k ];
    }
    if ( total <= 0 )
        throw std::invalid_argument( "total weight must be positive" );
}

std::size_t RecordState::hash() const
{
    std::size_t h = _records.size();
    for ( const auto& r : _records )
        h ^= r.hash() + 0x9e3779b97f4a7c15ULL + ( h << 6 ) + ( h >> 2 );
    return h;
}

Subset feasible_set( const RecordState& state )
{
    if ( state.site_count() == 0 )
        throw std::invalid_argument( "record state without sites" );
    Subset f = state[ 0 ];
    for ( std::size_t i = 1; i < state.site_count(); ++i )
        f &= state[ i ];
    return f;
}

bool is_consistent( const PossibilitySpace& space, const RecordState& state, ConsistencyMode mode )
{
    return nontrivial( space, feasible_set( state ), mode );
}

// Weights are nonnegative, so a set is null exactly when it avoids every
// positively weighted world; no summation is involved.
bool null_equiv( const PossibilitySpace& space, const Subset& a, const Subset& b )
{
    return !( a ^ b ).intersects( space.support() );
}

bool equivalent( const PossibilitySpace& space, const Subset& a, const Subset& b, ConsistencyMode mode )
{
    return mode == ConsistencyMode::nonempty ? a == b : null_equiv( space, a, b );
}

bool equivalent( const PossibilitySpace& space, const RecordState& a, const RecordState& b, ConsistencyMode mode )
{
    if ( a.site_count() != b.site_count() )
        return false;
    for ( std::size_t i = 0; i < a.site_count(); ++i )
        if ( !equivalent( space, a[ i ], b[ i ], mode ) )
            return false;
    return true;
}

bool equivalent( const PossibilitySpace& space, const PartialRecordState& a, const PartialRecordState& b,
                 ConsistencyMode mode )
{
    if ( a.sites != b.sites )
        return false;
    for ( std::size_t k = 0; k < a.records.size(); ++k )
        if ( !equivalent( space, a.records[ k ], b.records[ k ], mode ) )
            return false;
    return true;
}

bool nontrivial( const PossibilitySpace& space, const Subset& set, ConsistencyMode mode )
{
    return mode == ConsistencyMode::nonempty ? !set.is_empty() : set.intersects( space.support() );
}

double measure_of( const PossibilitySpace& space, const Subset& set )
{
    return space.measure( set ).convert_to< double >();
}

double information_content( const PossibilitySpace& space, const RecordState& state )
{
    auto mu = space.measure( feasible_set( state ) );
    if ( mu == 0 )
        return std::numeric_limits< double >::infinity();
    return -std::log( mu.convert_to< double >() );
}

PartialRecordState restrict( const RecordState& state, const std::vector< std::size_t >& sites )
{
    PartialRecordState out;
    out.sites = sites;
    std::sort( out.sites.begin(), out.sites.end() );
    out.sites.erase( std::unique( out.sites.begin(), out.sites.end() ), out.sites.end() );
    for ( auto s : out.sites )
    {
        if ( s >= state.site_count() )
            throw std::out_of_range( "unknown site index " + std::to_string( s ) );
        out.records.push_back( state[ s ] );
    }
    return out;
}

} // namespace chronocheck
