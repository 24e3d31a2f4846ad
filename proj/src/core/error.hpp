#pragma once

#include <stdexcept>
#include <string>

namespace latforge {

// Error taxonomy mirrors the CLI exit codes and C API status codes:
// input = malformed/ill-typed input data, semantic = a well-formed request
// whose answer is "no" in a fatal way (verification failed, not a lattice,
// budget exhausted while mining), budget = wall-clock cap hit.
enum class ErrKind { input, semantic, budget };

class Error : public std::runtime_error {
public:
    Error(ErrKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    ErrKind kind() const { return kind_; }

private:
    ErrKind kind_;
};

inline Error input_error(const std::string& msg) { return Error(ErrKind::input, msg); }
inline Error semantic_error(const std::string& msg) { return Error(ErrKind::semantic, msg); }

} // namespace latforge
