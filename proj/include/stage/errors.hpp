#pragma once

#include <stdexcept>
#include <string>

namespace stage {

// Base class for everything thrown by the library.
struct StageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input text is not well-formed (carries line/column where known).
struct SyntaxError : StageError {
    using StageError::StageError;
};

// Well-formed input violating a schema invariant; message names the
// offending entity id or index.
struct SchemaError : StageError {
    using StageError::StageError;
};

struct IoError : StageError {
    using StageError::StageError;
};

// Anchor validation failure in strict mode.
struct PlacementError : StageError {
    using StageError::StageError;
};

// No free region of the requested size exists.
struct NoSpaceError : StageError {
    using StageError::StageError;
};

// Footprint larger than the supporting face.
struct FitError : StageError {
    using StageError::StageError;
};

// Rectangle exceeds grid bounds, or mount height above the anchor top.
struct BoundsError : StageError {
    using StageError::StageError;
};

// Entity not strictly between the viewer and the back wall.
struct DegenerateError : StageError {
    using StageError::StageError;
};

struct ProviderError : StageError {
    using StageError::StageError;
};

struct EmptyError : StageError {
    using StageError::StageError;
};

} // namespace stage
