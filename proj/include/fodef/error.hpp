#pragma once

#include <stdexcept>
#include <string>

namespace fodef {

// Maps onto the CLI exit codes: Input -> 2, Cap -> 3, Invariant -> 4.
enum class ErrorKind { Input, Cap, Invariant };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string code, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& code() const noexcept { return code_; }

private:
    ErrorKind kind_;
    std::string code_;
};

[[noreturn]] void input_error(const std::string& code, const std::string& message);
[[noreturn]] void cap_error(const std::string& code, const std::string& message);
[[noreturn]] void invariant_error(const std::string& code, const std::string& message);

const char* kind_name(ErrorKind kind);

} // namespace fodef
