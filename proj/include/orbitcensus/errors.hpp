#ifndef ORBITCENSUS_ERRORS_HPP
#define ORBITCENSUS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace orbitcensus {

// Input violates an operation's precondition (bad file, point outside the
// admissible region, malformed fixture parameters, ...).
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The field could be certified to point outward somewhere on the boundary
// circle; carries one witness point.
struct inward_violation : std::runtime_error {
    double witness_x, witness_y;
    inward_violation(double wx, double wy)
        : std::runtime_error("field not inward on the boundary circle"),
          witness_x(wx), witness_y(wy) {}
};

// A refinement loop ran out of budget before reaching a decision.
struct inconclusive_error : std::runtime_error {
    std::string detail;
    explicit inconclusive_error(std::string d)
        : std::runtime_error("inconclusive: " + d), detail(std::move(d)) {}
};

struct budget_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Certified-mode parameters underflowed the representable range.
struct certified_mode_infeasible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An Euler iterate left the (1+eps)-disk at the given step.
struct left_domain : std::runtime_error {
    long step;
    explicit left_domain(long s)
        : std::runtime_error("trajectory left the domain at step " + std::to_string(s)),
          step(s) {}
};

// Saddle box construction needs a larger simulation horizon (2/T >= 3*eps/4).
struct need_larger_t : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct empty_set_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct key_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct invalid_fixture : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace orbitcensus

#endif
