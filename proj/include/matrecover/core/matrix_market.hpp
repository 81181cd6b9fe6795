#pragma once

#include <filesystem>
#include <iosfwd>

#include "matrecover/core/types.hpp"

namespace matrecover {

/// Parse failure; the message carries the file name and 1-based line number.
class MatrixMarketError : public InputError {
 public:
  using InputError::InputError;
};

/// Reads a MatrixMarket coordinate file (real or integer field, general or
/// symmetric). Symmetric storage is expanded; indices become 0-based.
SparseMatrix matrix_market_read(const std::filesystem::path& path);
SparseMatrix matrix_market_read(std::istream& in, const std::string& source_name = "<stream>");

/// Writes coordinate real general format with 17 significant digits.
void matrix_market_write(const std::filesystem::path& path, const SparseMatrix& m);
void matrix_market_write(std::ostream& out, const SparseMatrix& m);

}  // namespace matrecover
