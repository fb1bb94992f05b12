#pragma once

// Shared conversions between the library's Eigen-backed matrices and the
// plain-vector oracle types, plus small comparison utilities.

#include <cstddef>

#include "oracle.hpp"
#include "qube/linalg.hpp"

namespace testutil {

inline oracle::Mat to_oracle(const qube::ComplexMatrix& m) {
  oracle::Mat out = oracle::zeros(static_cast<std::size_t>(m.rows()),
                                  static_cast<std::size_t>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      out[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = m(r, c);
  return out;
}

inline qube::ComplexMatrix from_oracle(const oracle::Mat& m) {
  qube::ComplexMatrix out(static_cast<Eigen::Index>(m.size()),
                          static_cast<Eigen::Index>(m[0].size()));
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < m[0].size(); ++c)
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m[r][c];
  return out;
}

// Largest entrywise deviation; infinite-by-convention if shapes differ.
inline double max_abs_difference(const qube::ComplexMatrix& a,
                                 const oracle::Mat& b) {
  if (static_cast<std::size_t>(a.rows()) != b.size() ||
      static_cast<std::size_t>(a.cols()) != b[0].size())
    return 1e300;
  double max = 0.0;
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      max = std::max(max, std::abs(a(r, c) -
                                   b[static_cast<std::size_t>(r)]
                                    [static_cast<std::size_t>(c)]));
  return max;
}

}  // namespace testutil
