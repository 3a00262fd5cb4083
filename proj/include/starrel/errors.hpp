#ifndef STARREL_ERRORS_HPP
#define STARREL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace starrel {

// Error codes shared across the library. Each maps to one failure mode of
// a public operation; the CLI turns these into structured exit-1 messages.
enum class Errc {
    NonPolynomial,
    UnboundGenerator,
    NotPSD,
    NotHermitian,
    Singular,
    DimMismatch,
    DomainMismatch,
    EmptyList,
    NonpositiveWeight,
    NotInjective,
    AlphaNotRepresentation,
    BadDimension,
    MissingEntry,
    BadIndex,
    IncompatiblePair,
    NotCoherent,
    NotSurjective,
    UnknownName,
    SyntaxError,
    UndeclaredGenerator,
    DuplicateGenerator,
    InvalidArgument,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

  private:
    Errc code_;
};

} // namespace starrel

#endif
