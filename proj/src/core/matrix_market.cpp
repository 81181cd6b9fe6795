#include "matrecover/core/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

namespace matrecover {
namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
  throw MatrixMarketError(source + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

SparseMatrix matrix_market_read(std::istream& in, const std::string& source_name) {
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) fail(source_name, 1, "empty file");
  ++line_no;
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket") fail(source_name, line_no, "missing %%MatrixMarket banner");
  object = lower(object);
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (object != "matrix") fail(source_name, line_no, "unsupported object '" + object + "'");
  if (format != "coordinate") fail(source_name, line_no, "only coordinate format is supported");
  if (field != "real" && field != "integer" && field != "double") {
    fail(source_name, line_no, "unsupported field '" + field + "'");
  }
  const bool symmetric = symmetry == "symmetric";
  if (!symmetric && symmetry != "general") fail(source_name, line_no, "unsupported symmetry '" + symmetry + "'");

  long long rows = -1, cols = -1, nnz = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '%') continue;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream size_line(line);
    if (!(size_line >> rows >> cols >> nnz)) fail(source_name, line_no, "malformed size line");
    break;
  }
  if (rows < 0) fail(source_name, line_no, "missing size line");
  if (rows <= 0 || cols <= 0 || nnz < 0) fail(source_name, line_no, "invalid dimensions");
  if (symmetric && rows != cols) fail(source_name, line_no, "symmetric matrix must be square");

  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(symmetric ? 2 * nnz : nnz));
  long long read = 0;
  while (read < nnz && std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '%') continue;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream entry(line);
    long long i = 0, j = 0;
    double v = 0.0;
    if (!(entry >> i >> j >> v)) fail(source_name, line_no, "malformed entry");
    if (i < 1 || i > rows || j < 1 || j > cols) fail(source_name, line_no, "index out of range");
    entries.emplace_back(static_cast<Index>(i - 1), static_cast<Index>(j - 1), v);
    if (symmetric && i != j) entries.emplace_back(static_cast<Index>(j - 1), static_cast<Index>(i - 1), v);
    ++read;
  }
  if (read < nnz) {
    fail(source_name, line_no, "expected " + std::to_string(nnz) + " entries, found " + std::to_string(read));
  }

  SparseMatrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  m.setFromTriplets(entries.begin(), entries.end());
  m.makeCompressed();
  return m;
}

SparseMatrix matrix_market_read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open matrix file " + path.string());
  return matrix_market_read(in, path.string());
}

void matrix_market_write(std::ostream& out, const SparseMatrix& m) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
  out << std::setprecision(17);
  for (Index i = 0; i < m.outerSize(); ++i)
    for (SparseMatrix::InnerIterator it(m, i); it; ++it) out << it.row() + 1 << ' ' << it.col() + 1 << ' ' << it.value() << '\n';
}

void matrix_market_write(const std::filesystem::path& path, const SparseMatrix& m) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write matrix file " + path.string());
  matrix_market_write(out, m);
  if (!out) throw InputError("write failed for " + path.string());
}

}  // namespace matrecover
