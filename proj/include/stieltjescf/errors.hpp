#pragma once

#include <stdexcept>
#include <string>

namespace stieltjescf {

// Exit-code buckets used by the CLI: domain errors map to 1, usage/parse to 2.
enum class ErrorKind {
  domain,
  usage,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

#define STIELTJESCF_DOMAIN_ERROR(Name)                                       \
  class Name : public Error {                                                \
  public:                                                                    \
    explicit Name(const std::string& what) : Error(ErrorKind::domain, what) {} \
  }

STIELTJESCF_DOMAIN_ERROR(PoleProximity);
STIELTJESCF_DOMAIN_ERROR(NotAdmissible);
STIELTJESCF_DOMAIN_ERROR(RealAxisPoint);
STIELTJESCF_DOMAIN_ERROR(TranslationViolation);
STIELTJESCF_DOMAIN_ERROR(NullFunction);
STIELTJESCF_DOMAIN_ERROR(ComplexZero);
STIELTJESCF_DOMAIN_ERROR(DegreeZero);
STIELTJESCF_DOMAIN_ERROR(NonDecreasingDegree);
STIELTJESCF_DOMAIN_ERROR(NotScalar);
STIELTJESCF_DOMAIN_ERROR(NonPositiveCoefficient);
STIELTJESCF_DOMAIN_ERROR(NotMeasureTransform);
STIELTJESCF_DOMAIN_ERROR(DegenerateDenominator);
STIELTJESCF_DOMAIN_ERROR(SingularCore);
STIELTJESCF_DOMAIN_ERROR(BadM1);
STIELTJESCF_DOMAIN_ERROR(ZeroPhase);
STIELTJESCF_DOMAIN_ERROR(ZeroDenominator);
STIELTJESCF_DOMAIN_ERROR(NotRealizable);
STIELTJESCF_DOMAIN_ERROR(InvalidForm);

#undef STIELTJESCF_DOMAIN_ERROR

class UsageError : public Error {
public:
  explicit UsageError(const std::string& what) : Error(ErrorKind::usage, what) {}
};

}  // namespace stieltjescf
