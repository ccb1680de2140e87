#pragma once

#include "chronocheck/subset.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace chronocheck
{

/// Exact nonnegative weight. All measure comparisons are carried out on
/// these values, so "measure zero" and "positive measure" never drift.
using Rational = boost::multiprecision::cpp_rational;

/// Parses "3", "0.25", "1e-3", "-2" or "1/3" into an exact rational.
/// Returns nothing when the text is not a finite number in one of those forms.
std::optional< Rational > parse_rational( std::string_view text );

/// Decimal text if the value has a finite decimal expansion, otherwise "p/q".
std::string format_rational( const Rational& value );

enum class ConsistencyMode
{
    nonempty,
    positive_measure,
};

std::string_view to_string( ConsistencyMode mode );
std::optional< ConsistencyMode > parse_consistency_mode( std::string_view text );

/// Finite set of worlds with a weight per world. The event algebra is the
/// full power set, so every Subset of the right size is measurable.
class PossibilitySpace
{
public:
    /// Counting measure.
    explicit PossibilitySpace( std::vector< std::string > worlds );
    PossibilitySpace( std::vector< std::string > worlds, std::vector< Rational > weights );

    [[nodiscard]] std::size_t size() const { return _worlds.size(); }
    [[nodiscard]] const std::vector< std::string >& worlds() const { return _worlds; }
    [[nodiscard]] const std::vector< Rational >& weights() const { return _weights; }
    [[nodiscard]] const std::string& label( std::size_t world ) const { return _worlds.at( world ); }
    [[nodiscard]] std::optional< std::size_t > find( std::string_view label ) const;
    [[nodiscard]] bool is_counting_measure() const;

    [[nodiscard]] Subset empty() const { return Subset::empty( size() ); }
    [[nodiscard]] Subset all() const { return Subset::full( size() ); }

    /// Worlds of strictly positive weight.
    [[nodiscard]] const Subset& support() const { return _support; }

    [[nodiscard]] Rational measure( const Subset& set ) const;

    friend bool operator==( const PossibilitySpace&, const PossibilitySpace& ) = default;

private:
    void validate() const;

    std::vector< std::string > _worlds;
    std::vector< Rational > _weights;
    Subset _support;
};

/// One local record per site.
class RecordState
{
public:
    RecordState() = default;
    explicit RecordState( std::vector< Subset > records ) : _records{ std::move( records ) } {}

    [[nodiscard]] std::size_t site_count() const { return _records.size(); }
    [[nodiscard]] const Subset& operator[]( std::size_t site ) const { return _records.at( site ); }
    [[nodiscard]] Subset& operator[]( std::size_t site ) { return _records.at( site ); }
    [[nodiscard]] const std::vector< Subset >& records() const { return _records; }

    friend bool operator==( const RecordState&, const RecordState& ) = default;
    friend bool operator<( const RecordState& lhs, const RecordState& rhs ) { return lhs._records < rhs._records; }

    [[nodiscard]] std::size_t hash() const;

private:
    std::vector< Subset > _records;
};

/// Records of a state on a chosen set of sites, in increasing site order.
struct PartialRecordState
{
    std::vector< std::size_t > sites;
    std::vector< Subset > records;

    friend bool operator==( const PartialRecordState&, const PartialRecordState& ) = default;
};

Subset feasible_set( const RecordState& state );

bool is_consistent( const PossibilitySpace& space, const RecordState& state, ConsistencyMode mode );

/// mu(a symmetric-difference b) == 0
bool null_equiv( const PossibilitySpace& space, const Subset& a, const Subset& b );

/// Exact equality in nonempty mode, null-set equivalence in measured mode.
bool equivalent( const PossibilitySpace& space, const Subset& a, const Subset& b, ConsistencyMode mode );
bool equivalent( const PossibilitySpace& space, const RecordState& a, const RecordState& b, ConsistencyMode mode );
bool equivalent( const PossibilitySpace& space, const PartialRecordState& a, const PartialRecordState& b,
                 ConsistencyMode mode );

/// Nonempty in nonempty mode, positive measure in measured mode.
bool nontrivial( const PossibilitySpace& space, const Subset& set, ConsistencyMode mode );

double measure_of( const PossibilitySpace& space, const Subset& set );

/// -log mu(F(R)) with the natural logarithm; +infinity when mu(F(R)) = 0.
double information_content( const PossibilitySpace& space, const RecordState& state );

/// Throws std::out_of_range on an unknown site index.
PartialRecordState restrict( const RecordState& state, const std::vector< std::size_t >& sites );

} // namespace chronocheck

template<>
struct std::hash< chronocheck::RecordState >
{
    std::size_t operator()( const chronocheck::RecordState& s ) const noexcept { return s.hash(); }
};
