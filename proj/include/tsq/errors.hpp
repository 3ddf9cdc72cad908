#ifndef TSQ_ERRORS_HPP
#define TSQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tsq {

// Error taxonomy shared by the library, the C API and the CLI exit codes:
//   precondition_error -> TSQ_EPRECOND / exit 2
//   too_large_error    -> TSQ_ETOOLARGE / exit 3
//   internal_error     -> TSQ_EINTERNAL / exit 70 (contract says unreachable)
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// A named precondition was violated (NotCoprime, NotRepresentable, ...).
// `condition()` carries the machine-readable name, what() the full message.
class precondition_error : public error {
public:
    precondition_error(std::string condition, const std::string& detail)
        : error(condition + ": " + detail), cond_(std::move(condition)) {}
    const std::string& condition() const noexcept { return cond_; }

private:
    std::string cond_;
};

// Input exceeds a configured cap.
class too_large_error : public error {
public:
    too_large_error(const std::string& what_arg, const std::string& cap_name)
        : error("TooLarge: " + what_arg + " (cap: " + cap_name + ")"),
          cap_(cap_name) {}
    const std::string& cap_name() const noexcept { return cap_; }

private:
    std::string cap_;
};

// A state the underlying argument proves impossible. Raising this means a bug
// (or a genuine counterexample); it is never retried or swallowed.
class internal_error : public error {
public:
    explicit internal_error(const std::string& what)
        : error("InternalContradiction: " + what) {}
};

} // namespace tsq

#endif
