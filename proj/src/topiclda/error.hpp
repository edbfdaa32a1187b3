#pragma once

#include <stdexcept>
#include <string>

namespace topiclda {

// Base of every error thrown by the library. The CLI maps subclasses onto
// its exit codes: config errors -> 2, data errors -> 3, divergence -> 4.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// -- config errors ---------------------------------------------------------
struct InvalidConfig : Error { using Error::Error; };

// -- data / input errors ---------------------------------------------------
struct IoError : Error { using Error::Error; };
struct EmptyVocabulary : Error { using Error::Error; };
struct EmptyDocument : Error { using Error::Error; };
struct NoDocuments : Error { using Error::Error; };
struct NoDocumentsInRange : Error { using Error::Error; };
struct FormatVersionMismatch : Error { using Error::Error; };
struct CorruptCounts : Error { using Error::Error; };

// -- contract violations ---------------------------------------------------
struct IndexOutOfRange : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct InstanceTooLarge : Error { using Error::Error; };
struct EmptyTopicsP : Error { using Error::Error; };
struct UndefinedConditional : Error { using Error::Error; };
struct EmptyFollowerSet : Error { using Error::Error; };
struct ZeroVariance : Error { using Error::Error; };
struct EmptyRegion : Error { using Error::Error; };

// -- numeric failures ------------------------------------------------------
struct Divergence : Error { using Error::Error; };

} // namespace topiclda
