#pragma once

#include <stdexcept>
#include <string>

namespace gw {

// every failure carries a stable kind tag so reports can key on it
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)), detail_(msg) {}
    const std::string& kind() const { return kind_; }
    const std::string& detail() const { return detail_; }

private:
    std::string kind_, detail_;
};

#define GW_ERROR(Name)                                                  \
    struct Name : Error {                                               \
        explicit Name(const std::string& m) : Error(#Name, m) {}        \
    };

GW_ERROR(DivisionByZero)
GW_ERROR(NotPolynomial)
GW_ERROR(MalformedInput)
GW_ERROR(DegreeNotRepresentable)
GW_ERROR(NoSuchCover)
GW_ERROR(Inconsistent)
GW_ERROR(ZeroWeight)
GW_ERROR(SpecializationDegenerate)
GW_ERROR(NotConvex)
GW_ERROR(Unsupported)
GW_ERROR(ParseError)

#undef GW_ERROR

} // namespace gw
