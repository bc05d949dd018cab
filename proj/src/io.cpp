#include "hullsolve/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace hullsolve::io {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

bool is_blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

double parse_number(std::string_view tok, std::size_t line) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, "not a number: '" + std::string(tok) + "'");
  return v;
}

long parse_index(std::string_view tok, std::size_t line) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, "not an integer: '" + std::string(tok) + "'");
  return v;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return char(std::tolower(c)); });
  return out;
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next line that is neither blank nor (optionally) a '%' comment.
  bool next(std::string& line, bool skip_comments) {
    while (std::getline(in_, line)) {
      ++number_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (is_blank(line)) continue;
      if (skip_comments && line.front() == '%') continue;
      return true;
    }
    return false;
  }

  bool raw(std::string& line) {
    if (!std::getline(in_, line)) return false;
    ++number_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  }

  std::size_t number() const { return number_; }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

Matrix<double> parse_matrix_market(LineReader& reader, const std::string& banner) {
  const auto words = split_ws(banner);
  if (words.size() < 5 || lower(words[1]) != "matrix")
    throw ParseError(reader.number(), "malformed Matrix Market banner");
  const std::string layout = lower(words[2]);
  const std::string field = lower(words[3]);
  const std::string symmetry = lower(words[4]);
  if (layout != "coordinate" && layout != "array") throw ParseError(reader.number(), "unknown layout " + layout);
  if (field != "real" && field != "integer" && field != "double" && field != "pattern")
    throw ParseError(reader.number(), "unsupported field " + field);
  if (field == "pattern" && layout == "array") throw ParseError(reader.number(), "pattern requires coordinate");
  if (symmetry != "general" && symmetry != "symmetric" && symmetry != "skew-symmetric")
    throw ParseError(reader.number(), "unsupported symmetry " + symmetry);

  std::string line;
  if (!reader.next(line, true)) throw ParseError(reader.number() + 1, "missing size line");
  const auto size = split_ws(line);
  const std::size_t expected = layout == "coordinate" ? 3 : 2;
  if (size.size() != expected) throw ParseError(reader.number(), "malformed size line");
  const long rows = parse_index(size[0], reader.number());
  const long cols = parse_index(size[1], reader.number());
  if (rows < 1 || cols < 1) throw DimensionMismatch(reader.number(), "matrix dimensions must be positive");
  if (symmetry != "general" && rows != cols) throw DimensionMismatch(reader.number(), "symmetric matrix must be square");

  Matrix<double> m = Matrix<double>::Zero(rows, cols);
  const double mirror = symmetry == "skew-symmetric" ? -1.0 : 1.0;
  if (layout == "coordinate") {
    const long nnz = parse_index(size[2], reader.number());
    for (long e = 0; e < nnz; ++e) {
      if (!reader.next(line, true)) throw DimensionMismatch(reader.number() + 1, "fewer entries than declared");
      const auto tok = split_ws(line);
      const std::size_t want = field == "pattern" ? 2 : 3;
      if (tok.size() != want) throw ParseError(reader.number(), "expected " + std::to_string(want) + " fields");
      const long i = parse_index(tok[0], reader.number());
      const long j = parse_index(tok[1], reader.number());
      if (i < 1 || i > rows || j < 1 || j > cols) throw DimensionMismatch(reader.number(), "index out of range");
      const double v = field == "pattern" ? 1.0 : parse_number(tok[2], reader.number());
      m(i - 1, j - 1) += v;
      if (symmetry != "general" && i != j) m(j - 1, i - 1) += mirror * v;
    }
  } else {
    // Column-major; symmetric variants store the lower triangle only.
    for (long j = 0; j < cols; ++j) {
      for (long i = symmetry == "general" ? 0 : j; i < rows; ++i) {
        if (symmetry == "skew-symmetric" && i == j) continue;
        if (!reader.next(line, true)) throw DimensionMismatch(reader.number() + 1, "fewer entries than declared");
        const auto tok = split_ws(line);
        if (tok.size() != 1) throw ParseError(reader.number(), "expected one value per line");
        const double v = parse_number(tok[0], reader.number());
        m(i, j) = v;
        if (symmetry != "general" && i != j) m(j, i) = mirror * v;
      }
    }
  }
  if (reader.next(line, true)) throw DimensionMismatch(reader.number(), "more entries than declared");
  return m;
}

Matrix<double> parse_dense_text(LineReader& reader, const std::string& header) {
  const auto size = split_ws(header);
  if (size.size() != 2) throw ParseError(reader.number(), "expected header 'rows cols'");
  const long rows = parse_index(size[0], reader.number());
  const long cols = parse_index(size[1], reader.number());
  if (rows < 1 || cols < 1) throw DimensionMismatch(reader.number(), "matrix dimensions must be positive");
  Matrix<double> m(rows, cols);
  std::string line;
  for (long i = 0; i < rows; ++i) {
    if (!reader.next(line, false)) throw DimensionMismatch(reader.number() + 1, "fewer rows than declared");
    const auto tok = split_ws(line);
    if (static_cast<long>(tok.size()) != cols)
      throw DimensionMismatch(reader.number(), "expected " + std::to_string(cols) + " values, found " +
                                                   std::to_string(tok.size()));
    for (long j = 0; j < cols; ++j) m(i, j) = parse_number(tok[static_cast<std::size_t>(j)], reader.number());
  }
  if (reader.next(line, false)) throw DimensionMismatch(reader.number(), "more rows than declared");
  return m;
}

}  // namespace

Matrix<double> parse_matrix(std::istream& in, MatrixFormat format) {
  LineReader reader(in);
  std::string first;
  if (format == MatrixFormat::MatrixMarket) {
    if (!reader.raw(first)) throw ParseError(1, "empty input");
    if (first.rfind("%%MatrixMarket", 0) != 0) throw ParseError(1, "missing %%MatrixMarket banner");
    return parse_matrix_market(reader, first);
  }
  if (!reader.next(first, false)) throw ParseError(1, "empty input");
  if (first.rfind("%%MatrixMarket", 0) == 0) {
    if (format == MatrixFormat::DenseText) throw ParseError(reader.number(), "Matrix Market banner in dense text");
    return parse_matrix_market(reader, first);
  }
  if (first.front() == '%' && !reader.next(first, true)) throw ParseError(reader.number(), "no header line");
  return parse_dense_text(reader, first);
}

Matrix<double> load_matrix(const std::string& path, MatrixFormat format) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return parse_matrix(in, format);
  } catch (const DimensionMismatch& e) {
    throw DimensionMismatch(e.line(), path + ": " + std::string(e.what()));
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path + ": " + std::string(e.what()));
  }
}

Vector<double> load_vector(const std::string& path, MatrixFormat format) {
  const Matrix<double> m = load_matrix(path, format);
  if (m.cols() == 1) return m.col(0);
  if (m.rows() == 1) return m.row(0).transpose();
  throw DimensionMismatch(1, path + ": expected a single row or column, got " + std::to_string(m.rows()) + "x" +
                                 std::to_string(m.cols()));
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void write_dense_text(std::ostream& out, const Matrix<double>& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) out << (j ? " " : "") << format_double(m(i, j));
    out << '\n';
  }
}

void write_matrix_market_array(std::ostream& out, const Matrix<double>& m) {
  out << "%%MatrixMarket matrix array real general\n" << m.rows() << ' ' << m.cols() << '\n';
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) out << format_double(m(i, j)) << '\n';
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows) {
  out << kTraceHeader << '\n';
  for (const TraceRow& r : rows) {
    out << r.iter << ',' << format_double(r.t) << ',' << format_double(r.gap_or_e) << ','
        << (r.alpha_b ? format_double(*r.alpha_b) : std::string()) << ',' << r.pivot << ',' << (r.witness ? 1 : 0)
        << '\n';
  }
}

std::vector<TraceRow> read_trace_csv(std::istream& in) {
  std::string line;
  std::size_t n = 1;
  if (!std::getline(in, line) || line != kTraceHeader) throw ParseError(1, "missing trace header");
  std::vector<TraceRow> rows;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (line.back() == ',') f.emplace_back();
    if (f.size() != 6) throw ParseError(n, "expected 6 trace fields");
    TraceRow r;
    r.iter = static_cast<std::size_t>(parse_index(f[0], n));
    r.t = parse_number(f[1], n);
    r.gap_or_e = parse_number(f[2], n);
    if (!f[3].empty()) r.alpha_b = parse_number(f[3], n);
    r.pivot = parse_index(f[4], n);
    r.witness = parse_index(f[5], n) != 0;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace hullsolve::io
