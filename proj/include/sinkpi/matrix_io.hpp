#pragma once

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sinkpi/randcorr.hpp"

// Text interchange for dense symmetric matrices: RFC-4180-style CSV rows and
// Matrix Market array format. Values are written with 17 significant digits
// so doubles survive a write/read round trip exactly.
namespace sinkpi::io {

namespace detail {

inline void put_value(std::ostream& os, double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  os << buf;
}

}  // namespace detail

// Dense matrix as read back from disk; no correlation invariants implied.
struct DenseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> values;  // row-major

  double operator()(int i, int j) const {
    return values[static_cast<std::size_t>(i) * cols + j];
  }
};

inline void write_csv(std::ostream& os, const CorrelationMatrix& corr) {
  const int p = corr.dim();
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      if (j > 0) os << ',';
      detail::put_value(os, corr(i, j));
    }
    os << '\n';
  }
}

// Matrix Market array format, symmetric: banner, "p p" size line, then the
// lower triangle (diagonal included) in column-major order.
inline void write_matrix_market(std::ostream& os,
                                const CorrelationMatrix& corr) {
  const int p = corr.dim();
  os << "%%MatrixMarket matrix array real symmetric\n";
  os << p << ' ' << p << '\n';
  for (int j = 0; j < p; ++j) {
    for (int i = j; i < p; ++i) {
      detail::put_value(os, corr(i, j));
      os << '\n';
    }
  }
}

inline DenseMatrix read_csv(std::istream& is) {
  DenseMatrix mat;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) {
      try {
        row.push_back(std::stod(field));
      } catch (const std::exception&) {
        throw std::runtime_error("csv: bad numeric field '" + field + "'");
      }
    }
    if (mat.cols == 0) {
      mat.cols = static_cast<int>(row.size());
    } else if (static_cast<int>(row.size()) != mat.cols) {
      throw std::runtime_error("csv: ragged rows");
    }
    mat.values.insert(mat.values.end(), row.begin(), row.end());
    ++mat.rows;
  }
  if (mat.rows == 0) throw std::runtime_error("csv: empty input");
  return mat;
}

// Reads array-format Matrix Market data, general or symmetric.
inline DenseMatrix read_matrix_market(std::istream& is) {
  std::string banner;
  if (!std::getline(is, banner)) {
    throw std::runtime_error("matrix market: empty input");
  }
  std::stringstream header(banner);
  std::string tag, object, format, field, symmetry;
  header >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%MatrixMarket" || object != "matrix" || format != "array" ||
      field != "real") {
    throw std::runtime_error("matrix market: expected 'array real' header");
  }
  const bool symmetric = symmetry == "symmetric";
  if (!symmetric && symmetry != "general") {
    throw std::runtime_error("matrix market: unsupported symmetry '" +
                             symmetry + "'");
  }

  std::string line;
  do {
    if (!std::getline(is, line)) {
      throw std::runtime_error("matrix market: missing size line");
    }
  } while (line.empty() || line[0] == '%');

  DenseMatrix mat;
  std::stringstream size_line(line);
  if (!(size_line >> mat.rows >> mat.cols) || mat.rows < 1 || mat.cols < 1) {
    throw std::runtime_error("matrix market: bad size line");
  }
  mat.values.assign(static_cast<std::size_t>(mat.rows) * mat.cols, 0.0);

  auto at = [&mat](int i, int j) -> double& {
    return mat.values[static_cast<std::size_t>(i) * mat.cols + j];
  };
  auto next_value = [&is]() {
    double v;
    if (!(is >> v)) throw std::runtime_error("matrix market: short data");
    return v;
  };
  if (symmetric) {
    if (mat.rows != mat.cols) {
      throw std::runtime_error("matrix market: symmetric matrix not square");
    }
    for (int j = 0; j < mat.cols; ++j) {
      for (int i = j; i < mat.rows; ++i) {
        const double v = next_value();
        at(i, j) = v;
        at(j, i) = v;
      }
    }
  } else {
    for (int j = 0; j < mat.cols; ++j) {
      for (int i = 0; i < mat.rows; ++i) at(i, j) = next_value();
    }
  }
  return mat;
}

}  // namespace sinkpi::io
