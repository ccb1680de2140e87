#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace chronocheck
{

/// A set of worlds drawn from a finite possibility space, stored as a
/// characteristic bit-vector. Two subsets compare equal only when they
/// belong to spaces of the same size and have the same members.
class Subset
{
public:
    Subset() = default;

    /// Empty subset of a space with `world_count` worlds.
    explicit Subset( std::size_t world_count );

    static Subset empty( std::size_t world_count ) { return Subset( world_count ); }
    static Subset full( std::size_t world_count );
    static Subset of( std::size_t world_count, std::initializer_list< std::size_t > members );

    [[nodiscard]] std::size_t universe_size() const { return _size; }
    [[nodiscard]] bool contains( std::size_t world ) const;
    void insert( std::size_t world );
    void erase( std::size_t world );

    [[nodiscard]] bool is_empty() const;
    [[nodiscard]] std::size_t count() const;
    [[nodiscard]] bool is_subset_of( const Subset& other ) const;
    [[nodiscard]] bool intersects( const Subset& other ) const;

    /// Member indices in increasing order.
    [[nodiscard]] std::vector< std::size_t > members() const;

    [[nodiscard]] Subset complement() const;

    Subset& operator&=( const Subset& other );
    Subset& operator|=( const Subset& other );
    Subset& operator-=( const Subset& other );
    Subset& operator^=( const Subset& other );

    friend Subset operator&( Subset lhs, const Subset& rhs ) { return lhs &= rhs; }
    friend Subset operator|( Subset lhs, const Subset& rhs ) { return lhs |= rhs; }
    friend Subset operator-( Subset lhs, const Subset& rhs ) { return lhs -= rhs; }
    friend Subset operator^( Subset lhs, const Subset& rhs ) { return lhs ^= rhs; }

    friend bool operator==( const Subset&, const Subset& ) = default;

    /// Lexicographic on the characteristic vector, used for canonical ordering.
    friend bool operator<( const Subset& lhs, const Subset& rhs );

    [[nodiscard]] std::size_t hash() const;

private:
    void check_compatible( const Subset& other ) const;
    void clear_padding();

    std::size_t _size = 0;
    std::vector< std::uint64_t > _words;
};

} // namespace chronocheck

template<>
struct std::hash< chronocheck::Subset >
{
    std::size_t operator()( const chronocheck::Subset& s ) const noexcept { return s.hash(); }
};
