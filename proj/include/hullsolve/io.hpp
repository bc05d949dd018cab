#ifndef HULLSOLVE_IO_HPP
#define HULLSOLVE_IO_HPP

#include "hullsolve/types.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hullsolve::io {

enum class MatrixFormat { Auto, MatrixMarket, DenseText };

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Shape errors: a row of the wrong length, missing rows, an index outside
/// the declared size, or a vector file that is not a single row or column.
class DimensionMismatch : public ParseError {
 public:
  using ParseError::ParseError;
};

/// Matrix Market (coordinate or array; real, integer or pattern; general,
/// symmetric or skew-symmetric) or DenseText: a header line "rows cols"
/// followed by `rows` lines of `cols` numbers.
Matrix<double> parse_matrix(std::istream& in, MatrixFormat format = MatrixFormat::Auto);
Matrix<double> load_matrix(const std::string& path, MatrixFormat format = MatrixFormat::Auto);

/// A matrix file with a single row or column, flattened.
Vector<double> load_vector(const std::string& path, MatrixFormat format = MatrixFormat::Auto);

void write_dense_text(std::ostream& out, const Matrix<double>& m);
void write_matrix_market_array(std::ostream& out, const Matrix<double>& m);

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);

struct TraceRow {
  std::size_t iter = 0;
  double t = 0.0;
  double gap_or_e = 0.0;
  std::optional<double> alpha_b;  // absent for plain membership runs
  long pivot = -1;                // -1 when no pivot step was taken
  bool witness = false;

  bool operator==(const TraceRow&) const = default;
};

inline constexpr const char* kTraceHeader = "iter,t,gap_or_E,alpha_b,pivot,witness";

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows);
std::vector<TraceRow> read_trace_csv(std::istream& in);

}  // namespace hullsolve::io

#endif  // HULLSOLVE_IO_HPP
