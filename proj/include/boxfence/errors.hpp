#ifndef BOXFENCE_ERRORS_HPP
#define BOXFENCE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace boxfence {

// Thrown when an operation needs more observations than the sample holds
// (quartiles and everything built on them require n >= 4).
struct insufficient_data : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when a robust scale estimate collapses to zero (IQR == 0), which
// leaves the null model undefined.
struct degenerate_scale : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Malformed or unusable input data (bad cell, unknown column, empty input).
// Messages carry row/column context for diagnostics.
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem-level failures: unreadable input, unwritable output.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace boxfence

#endif // BOXFENCE_ERRORS_HPP
