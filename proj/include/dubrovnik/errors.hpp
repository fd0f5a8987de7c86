#pragma once

#include <stdexcept>
#include <string>

namespace dubrovnik {

// Every failure the library can signal, tagged so callers (and the CLI exit
// code logic) can tell input-syntax problems from semantic ones.
enum class ErrorKind {
    MalformedLine,     // unparseable PD / wiring / polynomial text
    DuplicateEdgeUse,  // an edge label used more or fewer than twice
    NonPlanar,         // diagram admits no planar embedding
    BadEndpointSet,    // tangle endpoints are not exactly {NW, NE, SW, SE}
    NotATangle,        // tangle operation applied to a link diagram
    NotALink,          // link operation applied to a tangle diagram
    NotImproper,       // bridge reduction asked for a proper bridge
    NotAMatching,      // wiring pairing is not a perfect matching
    CrossingArcs,      // wiring arcs cross in the cyclic boundary word
    ArityMismatch,     // tangle count disagrees with wiring hole count
    InvalidSpec,       // family parameters outside the supported shape
    BoundViolated,     // a verified degree bound failed
    Internal,          // broken invariant inside the library itself
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

} // namespace dubrovnik
