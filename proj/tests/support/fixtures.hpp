#pragma once

#include "chronocheck/model_io.hpp"

#include <string>

namespace chronocheck::testing
{

inline std::string fixture_path( const std::string& name ) { return std::string( CHRONOCHECK_FIXTURE_DIR ) + "/" + name; }

inline Model fixture( const std::string& name ) { return load_model( fixture_path( name ) ); }

/// Subset from world labels of the model's space.
inline Subset worlds( const Model& model, std::initializer_list< const char* > labels )
{
    Subset s = model.space.empty();
    for ( const auto* l : labels )
        s.insert( model.space.find( l ).value() );
    return s;
}

inline RecordState state( std::initializer_list< Subset > records ) { return RecordState( std::vector< Subset >( records ) ); }

} // namespace chronocheck::testing
