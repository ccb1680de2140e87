#include "chronocheck/subset.hpp"

#include <bit>
#include <stdexcept>

namespace chronocheck
{

namespace
{

constexpr std::size_t word_bits = 64;

std::size_t words_for( std::size_t bits ) { return ( bits + word_bits - 1 ) / word_bits; }

} // namespace

Subset::Subset( std::size_t world_count )
    : _size{ world_count }, _words( words_for( world_count ), 0 )
{}

Subset Subset::full( std::size_t world_count )
{
    Subset s( world_count );
    for ( auto& w : s._words )
        w = ~std::uint64_t{ 0 };
    s.clear_padding();
    return s;
}

Subset Subset::of( std::size_t world_count, std::initializer_list< std::size_t > members )
{
    Subset s( world_count );
    for ( auto m : members )
        s.insert( m );
    return s;
}

bool Subset::contains( std::size_t world ) const
{
    if ( world >= _size )
        return false;
    return ( _words[ world / word_bits ] >> ( world % word_bits ) ) & 1U;
}

void Subset::insert( std::size_t world )
{
    if ( world >= _size )
        throw std::out_of_range( "world index outside the possibility space" );
    _words[ world / word_bits ] |= std::uint64_t{ 1 } << ( world % word_bits );
}

void Subset::erase( std::size_t world )
{
    if ( world >= _size )
        throw std::out_of_range( "world index outside the possibility space" );
    _words[ world / word_bits ] &= ~( std::uint64_t{ 1 } << ( world % word_bits ) );
}

bool Subset::is_empty() const
{
    for ( auto w : _words )
        if ( w != 0 )
            return false;
    return true;
}

std::size_t Subset::count() const
{
    std::size_t n = 0;
    for ( auto w : _words )
        n += static_cast< std::size_t >( std::popcount( w ) );
    return n;
}

bool Subset::is_subset_of( const Subset& other ) const
{
    check_compatible( other );
    for ( std::size_t k = 0; k < _words.size(); ++k )
        if ( ( _words[ k ] & ~other._words[ k ] ) != 0 )
            return false;
    return true;
}

bool Subset::intersects( const Subset& other ) const
{
    check_compatible( other );
    for ( std::size_t k = 0; k < _words.size(); ++k )
        if ( ( _words[ k ] & other._words[ k ] ) != 0 )
            return true;
    return false;
}

std::vector< std::size_t > Subset::members() const
{
    std::vector< std::size_t > out;
    for ( std::size_t k = 0; k < _words.size(); ++k )
    {
        auto w = _words[ k ];
        while ( w != 0 )
        {
            auto bit = static_cast< std::size_t >( std::countr_zero( w ) );
            out.push_back( k * word_bits + bit );
            w &= w - 1;
        }
    }
    return out;
}

Subset Subset::complement() const
{
    Subset s = *this;
    for ( auto& w : s._words )
        w = ~w;
    s.clear_padding();
    return s;
}

Subset& Subset::operator&=( const Subset& other )
{
    check_compatible( other );
    for ( std::size_t k = 0; k < _words.size(); ++k )
        _words[ k ] &= other._words[ k ];
    return *this;
}

Subset& Subset::operator|=( const Subset& other )
{
    check_compatible( other );
    for ( std::size_t k = 0; k < _words.size(); ++k )
        _words[ k ] |= other._words[ k ];
    return *this;
}

Subset& Subset::operator-=( const Subset& other )
{
    check_compatible( other );
    for ( std::size_t k = 0; k < _words.size(); ++k )
        _words[ k ] &= ~other._words[ k ];
    return *this;
}

Subset& Subset::operator^=( const Subset& other )
{
    check_compatible( other );
    for ( std::size_t k = 0; k < _words.size(); ++k )
        _words[ k ] ^= other._words[ k ];
    return *this;
}

bool operator<( const Subset& lhs, const Subset& rhs )
{
    if ( lhs._size != rhs._size )
        return lhs._size < rhs._size;
    for ( std::size_t world = 0; world < lhs._size; ++world )
    {
        bool a = lhs.contains( world );
        bool b = rhs.contains( world );
        if ( a != b )
            return b;
    }
    return false;
}

std::size_t Subset::hash() const
{
    std::size_t h = std::hash< std::size_t >{}( _size );
    for ( auto w : _words )
        h ^= std::hash< std::uint64_t >{}( w ) + 0x9e3779b97f4a7c15ULL + ( h << 6 ) + ( h >> 2 );
    return h;
}

void Subset::check_compatible( const Subset& other ) const
{
    if ( _size != other._size )
        throw std::invalid_argument( "subsets belong to possibility spaces of different size" );
}

void Subset::clear_padding()
{
    if ( _words.empty() )
        return;
    auto tail = _size % word_bits;
    if ( tail != 0 )
        _words.back() &= ( std::uint64_t{ 1 } << tail ) - 1;
}

} // namespace chronocheck
