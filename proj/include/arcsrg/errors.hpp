#pragma once

#include <stdexcept>
#include <string>

namespace arcsrg {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct CompositeModulus : Error {
    explicit CompositeModulus(const std::string& w) : Error(w) {}
};
struct OddPrimeRequired : Error {
    explicit OddPrimeRequired(const std::string& w) : Error(w) {}
};
struct TooLarge : Error {
    explicit TooLarge(const std::string& w) : Error(w) {}
};
struct ZeroElement : Error {
    explicit ZeroElement(const std::string& w) : Error(w) {}
};
struct BadModulus : Error {
    explicit BadModulus(const std::string& w) : Error(w) {}
};
struct BadParameters : Error {
    explicit BadParameters(const std::string& w) : Error(w) {}
};
struct BadBasePoint : Error {
    explicit BadBasePoint(const std::string& w) : Error(w) {}
};
struct NotThreeValued : Error {
    explicit NotThreeValued(const std::string& w) : Error(w) {}
};
struct NoPartner : Error {
    explicit NoPartner(const std::string& w) : Error(w) {}
};
struct IdentityViolated : Error {
    explicit IdentityViolated(const std::string& w) : Error(w) {}
};
struct MalformedX : Error {
    explicit MalformedX(const std::string& w) : Error(w) {}
};
struct TooLargeForDirect : Error {
    explicit TooLargeForDirect(const std::string& w) : Error(w) {}
};
struct NoOrderMElement : Error {
    explicit NoOrderMElement(const std::string& w) : Error(w) {}
};
struct IrrationalEigenvalue : Error {
    explicit IrrationalEigenvalue(const std::string& w) : Error(w) {}
};
struct HypothesisNotMet : Error {
    explicit HypothesisNotMet(const std::string& w) : Error(w) {}
};

} // namespace arcsrg
