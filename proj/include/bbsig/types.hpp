#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace bbsig {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Every failure the library reports derives from Error, so callers can catch
// a single type at the boundary and map it to an exit code.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidConfig : Error { using Error::Error; };
struct InvalidFeatureSet : Error { using Error::Error; };
struct LossShapeError : Error { using Error::Error; };
struct PredictShapeError : Error { using Error::Error; };
struct SampleTooSmall : Error { using Error::Error; };
struct InvalidSplit : Error { using Error::Error; };
struct DegenerateVariance : Error { using Error::Error; };
struct NeedMultiplePValues : Error { using Error::Error; };
struct InvalidPValue : Error { using Error::Error; };
struct CsvError : Error { using Error::Error; };

struct TrainingDiverged : Error {
    int epoch;
    TrainingDiverged(const std::string& what, int epoch_) : Error(what), epoch(epoch_) {}
};

}  // namespace bbsig
