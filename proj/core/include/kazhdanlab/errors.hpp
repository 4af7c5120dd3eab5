#pragma once

#include <stdexcept>
#include <string>

namespace kazhdanlab {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ClosureExceedsCap : Error { using Error::Error; };
struct NonInvertibleGenerator : Error { using Error::Error; };
struct AsymmetricGeneratingSet : Error { using Error::Error; };
struct GroupMismatch : Error { using Error::Error; };
struct DimensionCap : Error { using Error::Error; };
struct NonUnitVector : Error { using Error::Error; };
struct NumericalDegeneracy : Error { using Error::Error; };
struct NonIntegerMultiplicity : Error { using Error::Error; };
struct RankDeficient : Error { using Error::Error; };
struct TrivialGroup : Error { using Error::Error; };
struct ParameterOutOfRange : Error { using Error::Error; };
struct ZeroRecoveredVector : Error { using Error::Error; };
struct MeasureNotPreserved : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

/// The image algebra plateaued below d^2; the plateau rank equals dim sigma(CG).
class NotIrreducible : public Error {
 public:
  NotIrreducible(const std::string& msg, int plateau_rank)
      : Error(msg), plateau_rank_(plateau_rank) {}
  int plateau_rank() const { return plateau_rank_; }

 private:
  int plateau_rank_ = 0;
};

/// Goodness precondition failed; carries the observed gap and the threshold.
class NotGood : public Error {
 public:
  NotGood(const std::string& msg, double max_gap, double epsilon)
      : Error(msg), max_gap_(max_gap), epsilon_(epsilon) {}
  double max_gap() const { return max_gap_; }
  double epsilon() const { return epsilon_; }

 private:
  double max_gap_ = 0.0;
  double epsilon_ = 0.0;
};

}  // namespace kazhdanlab
