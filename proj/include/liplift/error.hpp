#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace liplift {

// Every failure the library can report. CLI exit codes are derived from the
// class of the code (validation, parse, numerical).
enum class errc {
  // metric space validation
  asymmetric_matrix,
  negative_distance,
  zero_distance_distinct_points,
  nonzero_diagonal,
  triangle_violation,
  invalid_label,
  duplicate_label,
  base_out_of_range,
  cap_exceeded,
  // linear programming
  dimension_mismatch,
  numerical_breakdown,
  no_preimage,
  lp_infeasible,
  lp_unbounded,
  // domain operations
  equal_points,
  space_mismatch,
  base_not_preserved,
  degenerate_space,
  // input handling
  parse_error,
  io_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::asymmetric_matrix: return "AsymmetricMatrix";
    case errc::negative_distance: return "NegativeDistance";
    case errc::zero_distance_distinct_points: return "ZeroDistanceDistinctPoints";
    case errc::nonzero_diagonal: return "NonzeroDiagonal";
    case errc::triangle_violation: return "TriangleViolation";
    case errc::invalid_label: return "InvalidLabel";
    case errc::duplicate_label: return "DuplicateLabel";
    case errc::base_out_of_range: return "BaseOutOfRange";
    case errc::cap_exceeded: return "CapExceeded";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::numerical_breakdown: return "NumericalBreakdown";
    case errc::no_preimage: return "NoPreimage";
    case errc::lp_infeasible: return "Infeasible";
    case errc::lp_unbounded: return "Unbounded";
    case errc::equal_points: return "EqualPoints";
    case errc::space_mismatch: return "SpaceMismatch";
    case errc::base_not_preserved: return "BaseNotPreserved";
    case errc::degenerate_space: return "DegenerateSpace";
    case errc::parse_error: return "ParseError";
    case errc::io_error: return "IoError";
  }
  return "UnknownError";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  errc code() const { return code_; }

 private:
  errc code_;
};

// Parse failures carry the position that triggered them.
class parse_error : public error {
 public:
  parse_error(std::string file, int line, int column, const std::string& message)
      : error(errc::parse_error,
              file + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        file_(std::move(file)),
        line_(line),
        column_(column) {}

  const std::string& file() const { return file_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  std::string file_;
  int line_;
  int column_;
};

}  // namespace liplift
