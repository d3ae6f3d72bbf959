#include "p3mod/gf3.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "p3mod/fault.hpp"

namespace p3mod {

Mat Mat::identity(size_t n) {
  Mat m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool Mat::is_identity() const {
  if (rows_ != cols_) return false;
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

bool Mat::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](uint8_t x) { return x == 0; });
}

Mat Mat::operator+(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Mat+: shape mismatch");
  Mat r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = f3_add(a_[i], o.a_[i]);
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Mat-: shape mismatch");
  Mat r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = f3_sub(a_[i], o.a_[i]);
  return r;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: a.cols != b.rows");
  Mat r(a.rows(), b.cols());
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t k = 0; k < a.cols(); ++k) {
      uint8_t aik = a(i, k);
      if (!aik) continue;
      for (size_t j = 0; j < b.cols(); ++j) {
        uint8_t v = r(i, j);
        r(i, j) = static_cast<uint8_t>((v + aik * b(k, j)) % 3);
      }
    }
  }
  return r;
}

Vec vec_mat(std::span<const uint8_t> v, const Mat& m) {
  if (v.size() != m.rows()) throw std::invalid_argument("vec_mat: length mismatch");
  Vec r(m.cols(), 0);
  for (size_t i = 0; i < m.rows(); ++i) {
    uint8_t vi = v[i];
    if (!vi) continue;
    for (size_t j = 0; j < m.cols(); ++j)
      r[j] = static_cast<uint8_t>((r[j] + vi * m(i, j)) % 3);
  }
  return r;
}

Vec vec_add(std::span<const uint8_t> a, std::span<const uint8_t> b) {
  if (a.size() != b.size()) throw std::invalid_argument("vec_add: length mismatch");
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = f3_add(a[i], b[i]);
  return r;
}

Vec vec_scale(std::span<const uint8_t> a, uint8_t s) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = f3_mul(a[i], s);
  return r;
}

bool vec_is_zero(std::span<const uint8_t> v) {
  return std::all_of(v.begin(), v.end(), [](uint8_t x) { return x == 0; });
}

Mat kronecker(const Mat& a, const Mat& b) {
  Mat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t k = 0; k < a.cols(); ++k) {
      uint8_t aik = a(i, k);
      if (!aik) continue;
      for (size_t j = 0; j < b.rows(); ++j)
        for (size_t l = 0; l < b.cols(); ++l)
          r(i * b.rows() + j, k * b.cols() + l) = f3_mul(aik, b(j, l));
    }
  return r;
}

Mat hstack(const Mat& a, const Mat& b) {
  Mat arr[2] = {a, b};
  return hstack(std::span<const Mat>(arr, 2));
}

Mat hstack(std::span<const Mat> ms) {
  if (ms.empty()) return Mat();
  size_t rows = ms[0].rows(), cols = 0;
  for (const Mat& m : ms) {
    if (m.rows() != rows) throw std::invalid_argument("hstack: row count mismatch");
    cols += m.cols();
  }
  Mat r(rows, cols);
  size_t off = 0;
  for (const Mat& m : ms) {
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < m.cols(); ++j) r(i, off + j) = m(i, j);
    off += m.cols();
  }
  return r;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<size_t> rref_inplace(std::vector<Vec>& rows) {
  std::vector<size_t> pivots;
  if (rows.empty()) return pivots;
  size_t ncols = rows[0].size();
  size_t r = 0;
  for (size_t c = 0; c < ncols && r < rows.size(); ++c) {
    size_t sel = r;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    uint8_t inv = f3_inv(rows[r][c]);
    if (inv != 1)
      for (size_t j = c; j < ncols; ++j) rows[r][j] = f3_mul(rows[r][j], inv);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      uint8_t f = rows[i][c];
      for (size_t j = c; j < ncols; ++j)
        rows[i][j] = f3_sub(rows[i][j], f3_mul(f, rows[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(pivots.size());
  return pivots;
}

}  // namespace

std::vector<Vec> rref(std::vector<Vec> rows) {
  rows.erase(std::remove_if(rows.begin(), rows.end(),
                            [](const Vec& v) { return v.empty(); }),
             rows.end());
  rref_inplace(rows);
  return rows;
}

bool in_span(const std::vector<Vec>& echelon, std::span<const uint8_t> v) {
  Vec w(v.begin(), v.end());
  for (const Vec& row : echelon) {
    size_t p = 0;
    while (p < row.size() && row[p] == 0) ++p;
    if (p == row.size()) continue;
    if (w[p] != 0) {
      uint8_t f = w[p];  // row has pivot 1
      for (size_t j = p; j < w.size(); ++j) w[j] = f3_sub(w[j], f3_mul(f, row[j]));
    }
  }
  return vec_is_zero(w);
}

size_t rank(const Mat& m) {
  std::vector<Vec> rows(m.rows());
  for (size_t i = 0; i < m.rows(); ++i) rows[i].assign(m.row(i).begin(), m.row(i).end());
  return rref_inplace(rows).size();
}

std::vector<Vec> kernel_basis(const Mat& m) {
  // {v : v*m = 0}  <=>  m^T v^T = 0; run RREF on m^T and read off the
  // canonical kernel basis from the free columns.
  size_t n = m.rows();  // kernel vectors have this length
  std::vector<Vec> rows(m.cols(), Vec(n, 0));
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) rows[j][i] = m(i, j);
  std::vector<size_t> pivots = rref_inplace(rows);

  std::vector<bool> is_pivot(n, false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (size_t c = 0; c < n; ++c) {
    if (is_pivot[c]) continue;
    Vec v(n, 0);
    v[c] = 1;
    for (size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = f3_neg(rows[r][c]);
    basis.push_back(std::move(v));
  }
  if (fault::on(fault::Kind::kKernelDrop) && !basis.empty()) basis.pop_back();
  return basis;
}

Mat mat_inv(const Mat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("mat_inv: not square");
  size_t n = m.rows();
  std::vector<Vec> rows(n, Vec(2 * n, 0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) rows[i][j] = m(i, j);
    rows[i][n + i] = 1;
  }
  std::vector<size_t> pivots = rref_inplace(rows);
  if (pivots.size() != n || pivots[n - 1] != n - 1)
    throw std::invalid_argument("mat_inv: singular matrix");
  Mat r(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) r(i, j) = rows[i][n + j];
  return r;
}

Mat transpose(const Mat& m) {
  Mat r(m.cols(), m.rows());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) r(j, i) = m(i, j);
  return r;
}

Mat mat_pow(const Mat& m, unsigned k) {
  Mat r = Mat::identity(m.rows());
  for (unsigned i = 0; i < k; ++i) r = mat_mul(r, m);
  return r;
}

std::string to_text(const Mat& m) {
  std::ostringstream os;
  os << m.rows() << ' ' << m.cols() << '\n';
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << int(m(i, j));
    }
    os << '\n';
  }
  return os.str();
}

std::string to_text(std::span<const uint8_t> v) {
  Mat m(1, v.size());
  for (size_t j = 0; j < v.size(); ++j) m(0, j) = v[j];
  return to_text(m);
}

Mat mat_from_text(std::istream& in) {
  size_t rows, cols;
  if (!(in >> rows >> cols)) throw std::invalid_argument("matrix text: missing header");
  Mat m(rows, cols);
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) {
      int x;
      if (!(in >> x)) throw std::invalid_argument("matrix text: truncated entries");
      if (x < 0 || x > 2) throw std::invalid_argument("matrix text: entry outside {0,1,2}");
      m(i, j) = static_cast<uint8_t>(x);
    }
  return m;
}

Mat mat_from_text(const std::string& s) {
  std::istringstream is(s);
  return mat_from_text(is);
}

}  // namespace p3mod
