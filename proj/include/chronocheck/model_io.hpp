#pragma once

#include "chronocheck/model.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chronocheck
{

/// Malformed model file. `where` is a JSON pointer into the document, or
/// "line L, column C" for syntax errors.
class ModelError : public std::runtime_error
{
public:
    ModelError( std::string where, const std::string& message )
        : std::runtime_error( where + ": " + message ), _where{ std::move( where ) }
    {}

    [[nodiscard]] const std::string& where() const { return _where; }

private:
    std::string _where;
};

/// Strict parse: unknown fields, undeclared names, negative weights and
/// error-level static defects are all rejected with a ModelError.
Model parse_model( std::string_view text );
Model load_model( const std::string& path );

/// Canonical JSON text; parse_model( serialize_model( m ) ) == m.
std::string serialize_model( const Model& model );

/// FNV-1a over the canonical serialization, as 16 hex digits.
std::string model_digest( const Model& model );

/// Sorted (declaration-order) world labels of a subset.
std::vector< std::string > subset_labels( const PossibilitySpace& space, const Subset& set );

} // namespace chronocheck
