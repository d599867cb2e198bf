#pragma once

#include <stdexcept>
#include <string>

namespace holoifs {

/// Base of every error raised by the library. Callers that only need to
/// distinguish "numerical/structural failure" from success catch this.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// maps
class DomainError : public Error { public: using Error::Error; };
class SingularDerivative : public Error { public: using Error::Error; };
class NotInImage : public Error { public: using Error::Error; };
class IndexError : public Error { public: using Error::Error; };
class InvalidSystem : public Error { public: using Error::Error; };

// attractor / dynamics
class BudgetExceeded : public Error { public: using Error::Error; };
class NoConvergence : public Error { public: using Error::Error; };
class SeparationFailure : public Error { public: using Error::Error; };
class AmbiguousBranch : public Error { public: using Error::Error; };
class OutsideAttractor : public Error { public: using Error::Error; };

// symmetry
class DegenerateDerivative : public Error { public: using Error::Error; };
class AddressFailure : public Error { public: using Error::Error; };
class CriterionEmpty : public Error { public: using Error::Error; };
class GermInvariantViolation : public Error { public: using Error::Error; };
class NoCoincidence : public Error { public: using Error::Error; };
class PrefixViolation : public Error { public: using Error::Error; };

// koenigs
class NotAFixedPoint : public Error { public: using Error::Error; };
class InvalidMultiplier : public Error { public: using Error::Error; };
class NonInvertible : public Error { public: using Error::Error; };

// geometry
class OutsideDomain : public Error { public: using Error::Error; };
class OnSlit : public Error { public: using Error::Error; };
class NotReal : public Error { public: using Error::Error; };

}  // namespace holoifs
