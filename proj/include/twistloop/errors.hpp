#ifndef TWISTLOOP_ERRORS_HPP
#define TWISTLOOP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace twistloop {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// geom
struct StepTooLarge : Error {
    explicit StepTooLarge(const std::string& m) : Error(m) {}
};
struct SliceHitsEndpoint : Error {
    explicit SliceHitsEndpoint(const std::string& m) : Error(m) {}
};
struct NonGenericSlice : Error {
    explicit NonGenericSlice(const std::string& m) : Error(m) {}
};
struct NearAntipode : Error {
    explicit NearAntipode(const std::string& m) : Error(m) {}
};

// families
struct EmbeddingCheckFailed : Error {
    explicit EmbeddingCheckFailed(const std::string& m) : Error(m) {}
};
struct BasepointMismatch : Error {
    explicit BasepointMismatch(const std::string& m) : Error(m) {}
};
struct FormatError : Error {
    explicit FormatError(const std::string& m) : Error(m) {}
};
struct UnitSphereViolation : Error {
    explicit UnitSphereViolation(const std::string& m) : Error(m) {}
};
struct LoopConditionViolation : Error {
    explicit LoopConditionViolation(const std::string& m) : Error(m) {}
};

// collide
struct NonTransverse : Error {
    explicit NonTransverse(const std::string& m) : Error(m) {}
};
struct AmbiguousCluster : Error {
    explicit AmbiguousCluster(const std::string& m) : Error(m) {}
};

// invariants
struct DegreeMismatch : Error {
    explicit DegreeMismatch(const std::string& m) : Error(m) {}
};
struct NonIntegralDegree : Error {
    explicit NonIntegralDegree(const std::string& m) : Error(m) {}
};

// presentation
struct EmptyGeneratorList : Error {
    explicit EmptyGeneratorList(const std::string& m) : Error(m) {}
};
struct TheoremViolated : Error {
    explicit TheoremViolated(const std::string& m) : Error(m) {}
};

} // namespace twistloop

#endif
