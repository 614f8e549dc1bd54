#include "latnet/stp.hpp"

#include <limits>
#include <numeric>
#include <sstream>

namespace latnet {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : IntMatrix(rows, cols, std::vector<std::int64_t>(rows * cols, 0)) {}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<std::int64_t> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw DimensionError("IntMatrix: zero dimension");
  if (data_.size() != rows * cols) throw DimensionError("IntMatrix: entry count does not match shape");
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from(const LogicalMatrix& l) {
  IntMatrix m(l.rows(), l.cols());
  for (std::size_t c = 0; c < l.cols(); ++c) m(l[c], c) = 1;
  return m;
}

std::vector<std::int64_t> IntMatrix::column(std::size_t c) const {
  std::vector<std::int64_t> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product: inner dimensions differ");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const auto v = a(i, l);
      if (v == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += v * b(l, j);
    }
  return out;
}

IntMatrix kron(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const auto v = a(i, j);
      if (v == 0) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q) out(i * b.rows() + p, j * b.cols() + q) = v * b(p, q);
    }
  return out;
}

LogicalMatrix::LogicalMatrix(std::size_t rows, std::vector<std::uint32_t> images) : rows_(rows), images_(std::move(images)) {
  if (rows == 0 || images_.empty()) throw DimensionError("LogicalMatrix: zero dimension");
  if (rows > std::numeric_limits<std::uint32_t>::max()) throw DimensionError("LogicalMatrix: too many rows");
  for (auto r : images_)
    if (r >= rows) throw DimensionError("LogicalMatrix: column index out of range");
}

LogicalMatrix LogicalMatrix::delta(std::size_t rows, std::span<const std::size_t> indices) {
  std::vector<std::uint32_t> images;
  images.reserve(indices.size());
  for (auto i : indices) {
    if (i < 1 || i > rows) throw DimensionError("delta: index " + std::to_string(i) + " outside 1.." + std::to_string(rows));
    images.push_back(static_cast<std::uint32_t>(i - 1));
  }
  return LogicalMatrix(rows, std::move(images));
}

LogicalMatrix LogicalMatrix::delta(std::size_t rows, std::initializer_list<std::size_t> indices) {
  return delta(rows, std::span<const std::size_t>(indices.begin(), indices.size()));
}

LogicalMatrix LogicalMatrix::identity(std::size_t n) {
  std::vector<std::uint32_t> images(n);
  std::iota(images.begin(), images.end(), 0u);
  return LogicalMatrix(n, std::move(images));
}

LogicalMatrix LogicalMatrix::basis(std::size_t n, std::size_t i) {
  return LogicalMatrix(n, {static_cast<std::uint32_t>(i)});
}

std::vector<std::size_t> LogicalMatrix::delta_indices() const {
  std::vector<std::size_t> out(images_.size());
  for (std::size_t c = 0; c < images_.size(); ++c) out[c] = images_[c] + 1;
  return out;
}

LogicalMatrix LogicalMatrix::block(std::size_t first, std::size_t count) const {
  if (count == 0 || first + count > cols()) throw DimensionError("block: column range out of bounds");
  return LogicalMatrix(rows_, std::vector<std::uint32_t>(images_.begin() + first, images_.begin() + first + count));
}

bool LogicalMatrix::is_identity() const {
  if (rows_ != cols()) return false;
  for (std::size_t c = 0; c < cols(); ++c)
    if (images_[c] != c) return false;
  return true;
}

std::string LogicalMatrix::to_string() const {
  std::ostringstream os;
  os << "δ_" << rows_ << '[';
  for (std::size_t c = 0; c < cols(); ++c) os << (c ? "," : "") << images_[c] + 1;
  os << ']';
  return os.str();
}

std::size_t lcm(std::size_t a, std::size_t b) { return std::lcm(a, b); }

std::size_t checked_pow(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && out > std::numeric_limits<std::uint32_t>::max() / base)
      throw DimensionError("dimension " + std::to_string(base) + "^" + std::to_string(exp) + " is too large");
    out *= base;
  }
  return out;
}

IntMatrix stp(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t t = lcm(a.cols(), b.rows());
  return kron(a, IntMatrix::identity(t / a.cols())) * kron(b, IntMatrix::identity(t / b.rows()));
}

// Column c of B ⊗ I_s2 has its 1 at row B[c / s2]*s2 + c % s2; that row picks
// column idx of A ⊗ I_s, whose 1 sits at A[idx / s]*s + idx % s.
LogicalMatrix stp(const LogicalMatrix& a, const LogicalMatrix& b) {
  const std::size_t t = lcm(a.cols(), b.rows());
  const std::size_t s = t / a.cols();
  const std::size_t s2 = t / b.rows();
  const std::size_t rows = a.rows() * s;
  const std::size_t cols = b.cols() * s2;
  if (rows > std::numeric_limits<std::uint32_t>::max() || cols > (std::size_t{1} << 31))
    throw DimensionError("stp: result too large");
  std::vector<std::uint32_t> images(cols);
  for (std::size_t c = 0; c < cols; ++c) {
    const std::size_t idx = static_cast<std::size_t>(b[c / s2]) * s2 + c % s2;
    images[c] = static_cast<std::uint32_t>(static_cast<std::size_t>(a[idx / s]) * s + idx % s);
  }
  return LogicalMatrix(rows, std::move(images));
}

LogicalMatrix stp_chain(std::initializer_list<LogicalMatrix> factors) {
  if (factors.size() == 0) throw DimensionError("stp_chain: no factors");
  auto it = factors.begin();
  LogicalMatrix acc = *it++;
  for (; it != factors.end(); ++it) acc = stp(acc, *it);
  return acc;
}

LogicalMatrix kron(const LogicalMatrix& a, const LogicalMatrix& b) {
  std::vector<std::uint32_t> images(a.cols() * b.cols());
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      images[i * b.cols() + j] = static_cast<std::uint32_t>(a[i] * b.rows() + b[j]);
  return LogicalMatrix(a.rows() * b.rows(), std::move(images));
}

LogicalMatrix swap_matrix(std::size_t m, std::size_t n) {
  if (m == 0 || n == 0) throw DimensionError("swap_matrix: zero dimension");
  std::vector<std::uint32_t> images(m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) images[i * n + j] = static_cast<std::uint32_t>(j * m + i);
  return LogicalMatrix(m * n, std::move(images));
}

LogicalMatrix khatri_rao(std::span<const LogicalMatrix> factors) {
  if (factors.empty()) throw DimensionError("khatri_rao: no factors");
  const std::size_t cols = factors.front().cols();
  std::size_t rows = 1;
  for (const auto& f : factors) {
    if (f.cols() != cols) throw DimensionError("khatri_rao: column counts differ");
    if (rows > std::numeric_limits<std::uint32_t>::max() / f.rows()) throw DimensionError("khatri_rao: result too large");
    rows *= f.rows();
  }
  std::vector<std::uint32_t> images(cols);
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t idx = 0;
    for (const auto& f : factors) idx = idx * f.rows() + f[c];
    images[c] = static_cast<std::uint32_t>(idx);
  }
  return LogicalMatrix(rows, std::move(images));
}

LogicalMatrix power_reduce_matrix(std::size_t k) {
  if (k == 0) throw DimensionError("power_reduce_matrix: k must be positive");
  std::vector<std::uint32_t> images(k);
  for (std::size_t i = 0; i < k; ++i) images[i] = static_cast<std::uint32_t>(i * k + i);
  return LogicalMatrix(k * k, std::move(images));
}

LogicalMatrix retrieval_matrix(std::size_t k, std::size_t n, std::size_t i) {
  if (k == 0 || n == 0) throw DimensionError("retrieval_matrix: zero dimension");
  if (i < 1 || i > n) throw DimensionError("retrieval_matrix: index " + std::to_string(i) + " outside 1.." + std::to_string(n));
  const std::size_t cols = checked_pow(k, n);
  const std::size_t stride = checked_pow(k, n - i);
  std::vector<std::uint32_t> images(cols);
  for (std::size_t c = 0; c < cols; ++c) images[c] = static_cast<std::uint32_t>((c / stride) % k);
  return LogicalMatrix(k, std::move(images));
}

std::size_t stack_index(std::span<const std::size_t> digits, std::size_t base) {
  std::size_t idx = 0;
  for (auto d : digits) idx = idx * base + d;
  return idx;
}

std::vector<std::size_t> unstack_index(std::size_t index, std::size_t base, std::size_t count) {
  std::vector<std::size_t> digits(count);
  for (std::size_t i = count; i-- > 0;) {
    digits[i] = index % base;
    index /= base;
  }
  return digits;
}

}  // namespace latnet
