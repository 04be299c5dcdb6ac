#pragma once

#include <stdexcept>
#include <string>

namespace mow {

// Failure conditions reported by the library. Kept as a single exception
// type with a code so CLI code can map them to exit codes without a
// try-catch per condition.
enum class errc {
    degenerate_input,   // zero-area polygon, empty pixel set, bad file
    disconnected,       // rasterization or dual graph is not 4-connected
    too_large,          // exact solver asked for more than it can handle
    infeasible_walk,    // grid tour visits non-adjacent pixels
    convergence_failure,// numeric optimizer did not reach tolerance
    bad_prime,          // prime divides the leading coefficient
    parse_error,        // malformed input text
};

class error : public std::runtime_error {
public:
    error(errc c, const std::string& what) : std::runtime_error(what), code_(c) {}
    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& what) { throw error(c, what); }

} // namespace mow
