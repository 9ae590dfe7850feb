#ifndef DBR_ERROR_HPP
#define DBR_ERROR_HPP

#include <stdexcept>
#include <string>

namespace dbr {

enum class ErrorKind {
  PointOutsideDisk,
  DegreeMismatch,
  GridTooSmall,
  DenominatorZeroInDisk,
  NotInUnitBall,
  NotAContraction,
  NotInSpace,
  TagMismatch,
  DimensionMismatch,
  ClassifiedExtreme,
  ZeroDiagonal,
  NotNonextreme,
  DefectRankNotOne,
  NotPure,
  NotExtreme,
  GridNotSymmetric,
  InvalidInput,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::PointOutsideDisk: return "PointOutsideDisk";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::GridTooSmall: return "GridTooSmall";
    case ErrorKind::DenominatorZeroInDisk: return "DenominatorZeroInDisk";
    case ErrorKind::NotInUnitBall: return "NotInUnitBall";
    case ErrorKind::NotAContraction: return "NotAContraction";
    case ErrorKind::NotInSpace: return "NotInSpace";
    case ErrorKind::TagMismatch: return "TagMismatch";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ClassifiedExtreme: return "ClassifiedExtreme";
    case ErrorKind::ZeroDiagonal: return "ZeroDiagonal";
    case ErrorKind::NotNonextreme: return "NotNonextreme";
    case ErrorKind::DefectRankNotOne: return "DefectRankNotOne";
    case ErrorKind::NotPure: return "NotPure";
    case ErrorKind::NotExtreme: return "NotExtreme";
    case ErrorKind::GridNotSymmetric: return "GridNotSymmetric";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dbr

#endif  // DBR_ERROR_HPP
