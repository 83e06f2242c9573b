#ifndef HEUNRSJ_ERRORS_HPP
#define HEUNRSJ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace heunrsj {

// Base of every computational failure raised by the library.  Usage errors
// (arguments violating documented preconditions) throw std::invalid_argument
// instead.  kind() is a stable machine-readable tag.
class Error : public std::runtime_error {
  public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

  private:
    std::string kind_;
};

class ZeroMu : public Error {
  public:
    ZeroMu() : Error("ZeroMu", "mu must be nonzero") {}
};

class NonPositiveOmega : public Error {
  public:
    NonPositiveOmega() : Error("NonPositiveOmega", "omega must be positive") {}
};

class DegenerateScaling : public Error {
  public:
    DegenerateScaling()
        : Error("DegenerateScaling", "lambda + mu^2 must be positive to define a real omega") {}
};

class StepSizeUnderflow : public Error {
  public:
    explicit StepSizeUnderflow(const std::string& what) : Error("StepSizeUnderflow", what) {}
};

class MaxStepsExceeded : public Error {
  public:
    explicit MaxStepsExceeded(const std::string& what) : Error("MaxStepsExceeded", what) {}
};

class OutOfDomain : public Error {
  public:
    explicit OutOfDomain(const std::string& what) : Error("OutOfDomain", what) {}
};

class DegeneratePair : public Error {
  public:
    explicit DegeneratePair(const std::string& what) : Error("DegeneratePair", what) {}
};

class DenominatorVanished : public Error {
  public:
    DenominatorVanished(const std::string& what, double t)
        : Error("DenominatorVanished", what), t_(t) {}
    double t() const { return t_; }

  private:
    double t_;
};

class NonUnimodular : public Error {
  public:
    NonUnimodular(const std::string& what, double t) : Error("NonUnimodular", what), t_(t) {}
    double t() const { return t_; }

  private:
    double t_;
};

class LogDomain : public Error {
  public:
    LogDomain(const std::string& what, double t) : Error("LogDomain", what), t_(t) {}
    double t() const { return t_; }

  private:
    double t_;
};

class SingularBasis : public Error {
  public:
    explicit SingularBasis(const std::string& what) : Error("SingularBasis", what) {}
};

class StructureViolated : public Error {
  public:
    explicit StructureViolated(const std::string& what) : Error("StructureViolated", what) {}
};

}  // namespace heunrsj

#endif
