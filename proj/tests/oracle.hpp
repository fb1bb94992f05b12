#pragma once

// Independent reference implementations used to cross-check the library.
// Deliberately naive: plain nested vectors, textbook algorithms, no shared
// code with the headers under test and no linear-algebra dependency.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Mat = std::vector<std::vector<cplx>>;

inline Mat zeros(std::size_t rows, std::size_t cols) {
  return Mat(rows, std::vector<cplx>(cols, cplx(0.0)));
}

inline Mat identity(std::size_t n) {
  Mat m = zeros(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = cplx(1.0);
  return m;
}

inline Mat multiply(const Mat& a, const Mat& b) {
  const std::size_t n = a.size(), k = b.size(), m = b[0].size();
  Mat out = zeros(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      cplx sum(0.0);
      for (std::size_t t = 0; t < k; ++t) sum += a[i][t] * b[t][j];
      out[i][j] = sum;
    }
  return out;
}

inline cplx trace(const Mat& m) {
  cplx sum(0.0);
  for (std::size_t i = 0; i < m.size(); ++i) sum += m[i][i];
  return sum;
}

inline Mat kron(const Mat& a, const Mat& b) {
  const std::size_t ar = a.size(), ac = a[0].size();
  const std::size_t br = b.size(), bc = b[0].size();
  Mat out = zeros(ar * br, ac * bc);
  for (std::size_t i = 0; i < ar; ++i)
    for (std::size_t j = 0; j < ac; ++j)
      for (std::size_t k = 0; k < br; ++k)
        for (std::size_t l = 0; l < bc; ++l)
          out[i * br + k][j * bc + l] = a[i][j] * b[k][l];
  return out;
}

inline std::vector<int> digits(std::size_t index, const std::vector<int>& dims) {
  std::vector<int> out(dims.size(), 0);
  for (std::size_t i = dims.size(); i-- > 0;) {
    out[i] = static_cast<int>(index % dims[i]);
    index /= dims[i];
  }
  return out;
}

inline std::size_t index_of(const std::vector<int>& digits_in,
                            const std::vector<int>& dims) {
  std::size_t index = 0;
  for (std::size_t i = 0; i < dims.size(); ++i)
    index = index * dims[i] + static_cast<std::size_t>(digits_in[i]);
  return index;
}

// Trace out every factor not listed in keep (slot indices); kept factors stay
// in their original order.
inline Mat partial_trace(const Mat& m, const std::vector<int>& dims,
                         const std::vector<std::size_t>& keep) {
  std::vector<int> kept_dims;
  for (auto s : keep) kept_dims.push_back(dims[s]);
  std::size_t kept_total = 1;
  for (auto d : kept_dims) kept_total *= static_cast<std::size_t>(d);
  const std::size_t total = m.size();

  Mat out = zeros(kept_total, kept_total);
  for (std::size_t r = 0; r < total; ++r) {
    const auto rd = digits(r, dims);
    for (std::size_t c = 0; c < total; ++c) {
      const auto cd = digits(c, dims);
      bool diagonal_elsewhere = true;
      for (std::size_t s = 0; s < dims.size(); ++s) {
        bool kept = false;
        for (auto k : keep) kept |= (k == s);
        if (!kept && rd[s] != cd[s]) diagonal_elsewhere = false;
      }
      if (!diagonal_elsewhere) continue;
      std::vector<int> rk, ck;
      for (auto s : keep) {
        rk.push_back(rd[s]);
        ck.push_back(cd[s]);
      }
      out[index_of(rk, kept_dims)][index_of(ck, kept_dims)] += m[r][c];
    }
  }
  return out;
}

// Transpose the factors at the listed slots.
inline Mat partial_transpose(const Mat& m, const std::vector<int>& dims,
                             const std::vector<std::size_t>& transposed) {
  const std::size_t total = m.size();
  Mat out = zeros(total, total);
  for (std::size_t r = 0; r < total; ++r) {
    const auto rd = digits(r, dims);
    for (std::size_t c = 0; c < total; ++c) {
      auto rd2 = rd;
      auto cd2 = digits(c, dims);
      for (auto s : transposed) std::swap(rd2[s], cd2[s]);
      out[index_of(rd2, dims)][index_of(cd2, dims)] = m[r][c];
    }
  }
  return out;
}

// Characteristic polynomial coefficients via the Faddeev-LeVerrier
// recurrence: p(x) = x^n + c[0] x^(n-1) + ... + c[n-1].
inline std::vector<cplx> charpoly(const Mat& a) {
  const std::size_t n = a.size();
  Mat m = identity(n);
  std::vector<cplx> c;
  for (std::size_t k = 1; k <= n; ++k) {
    m = multiply(a, m);
    const cplx ck = -trace(m) / static_cast<double>(k);
    c.push_back(ck);
    for (std::size_t i = 0; i < n; ++i) m[i][i] += ck;
  }
  return c;
}

// All roots of a monic polynomial by Durand-Kerner iteration.
inline std::vector<cplx> roots(const std::vector<cplx>& c) {
  const std::size_t n = c.size();
  auto eval = [&](cplx x) {
    cplx v(1.0);
    for (std::size_t i = 0; i < n; ++i) v = v * x + c[i];
    return v;
  };
  std::vector<cplx> x(n);
  const cplx seed(0.4, 0.9);
  cplx p(1.0);
  for (std::size_t i = 0; i < n; ++i) {
    p *= seed;
    x[i] = p;
  }
  for (int iter = 0; iter < 2000; ++iter) {
    double shift = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      cplx denom(1.0);
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) denom *= (x[i] - x[j]);
      const cplx delta = eval(x[i]) / denom;
      x[i] -= delta;
      shift = std::max(shift, std::abs(delta));
    }
    if (shift < 1e-14) break;
  }
  return x;
}

// Eigenvalues of a small Hermitian matrix, descending.  Practical for the
// sizes exercised in tests (n <= 6); the library under test is never called.
inline std::vector<double> hermitian_eigenvalues(const Mat& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (std::abs(a[i][j] - std::conj(a[j][i])) > 1e-9)
        throw std::invalid_argument("oracle: matrix is not Hermitian");
  std::vector<double> out;
  for (const auto& root : roots(charpoly(a))) {
    if (std::abs(root.imag()) > 1e-7)
      throw std::runtime_error("oracle: eigenvalue solver did not converge");
    out.push_back(root.real());
  }
  std::sort(out.begin(), out.end(), std::greater<double>());
  return out;
}

}  // namespace oracle
