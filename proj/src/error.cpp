#include "fodef/error.hpp"

namespace fodef {

Error::Error(ErrorKind kind, std::string code, const std::string& message)
    : std::runtime_error(message), kind_(kind), code_(std::move(code))
{
}

void input_error(const std::string& code, const std::string& message)
{
    throw Error(ErrorKind::Input, code, message);
}

void cap_error(const std::string& code, const std::string& message)
{
    throw Error(ErrorKind::Cap, code, message);
}

void invariant_error(const std::string& code, const std::string& message)
{
    throw Error(ErrorKind::Invariant, code, message);
}

const char* kind_name(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::Input: return "input";
    case ErrorKind::Cap: return "cap";
    case ErrorKind::Invariant: return "invariant";
    }
    return "unknown";
}

} // namespace fodef
