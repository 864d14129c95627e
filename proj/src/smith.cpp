#include "charvar/smith.hpp"

#include <algorithm>
#include <utility>

namespace charvar {
namespace {

struct Overflow {};

struct CheckedInt64 {
  using Int = std::int64_t;
  static Int sub_mul(Int a, Int q, Int b) {  // a - q*b
    Int prod = 0, out = 0;
    if (__builtin_mul_overflow(q, b, &prod)) throw Overflow{};
    if (__builtin_sub_overflow(a, prod, &out)) throw Overflow{};
    return out;
  }
  static Int add(Int a, Int b) {
    Int out = 0;
    if (__builtin_add_overflow(a, b, &out)) throw Overflow{};
    return out;
  }
  static Int neg(Int a) {
    if (a == INT64_MIN) throw Overflow{};
    return -a;
  }
  static Int abs(Int a) { return a < 0 ? neg(a) : a; }
};

struct BigOps {
  using Int = mpz_class;
  static Int sub_mul(const Int& a, const Int& q, const Int& b) { return a - q * b; }
  static Int add(const Int& a, const Int& b) { return a + b; }
  static Int neg(const Int& a) { return -a; }
  static Int abs(const Int& a) { return ::abs(a); }
};

template <class Ops>
class Reducer {
 public:
  using Int = typename Ops::Int;
  using Mat = std::vector<std::vector<Int>>;

  explicit Reducer(Mat a) : a_(std::move(a)) {
    rows_ = a_.size();
    cols_ = rows_ ? a_[0].size() : 0;
    left_ = identity(rows_);
    right_ = identity(cols_);
  }

  void run() {
    const std::size_t steps = std::min(rows_, cols_);
    for (std::size_t t = 0; t < steps; ++t) {
      if (!place_pivot(t)) break;
      for (;;) {
        bool clean = true;
        for (std::size_t i = t + 1; i < rows_; ++i) {
          if (a_[i][t] == 0) continue;
          const Int q = a_[i][t] / a_[t][t];
          row_sub(i, t, q);
          if (a_[i][t] != 0) {
            swap_rows(i, t);
            clean = false;
          }
        }
        for (std::size_t j = t + 1; j < cols_; ++j) {
          if (a_[t][j] == 0) continue;
          const Int q = a_[t][j] / a_[t][t];
          col_sub(j, t, q);
          if (a_[t][j] != 0) {
            swap_cols(j, t);
            clean = false;
          }
        }
        if (!clean) continue;
        bool divisible = true;
        for (std::size_t i = t + 1; i < rows_ && divisible; ++i)
          for (std::size_t j = t + 1; j < cols_; ++j)
            if (a_[i][j] % a_[t][t] != 0) {
              row_add(t, i);
              divisible = false;
              break;
            }
        if (divisible) break;
      }
      if (a_[t][t] < 0) negate_row(t);
    }
  }

  const Mat& matrix() const { return a_; }
  const Mat& left() const { return left_; }
  const Mat& right() const { return right_; }

 private:
  static Mat identity(std::size_t n) {
    Mat m(n, std::vector<Int>(n, Int(0)));
    for (std::size_t k = 0; k < n; ++k) m[k][k] = 1;
    return m;
  }

  bool place_pivot(std::size_t t) {
    bool found = false;
    Int best = 0;
    std::size_t bi = t, bj = t;
    for (std::size_t i = t; i < rows_; ++i)
      for (std::size_t j = t; j < cols_; ++j) {
        if (a_[i][j] == 0) continue;
        const Int v = Ops::abs(a_[i][j]);
        if (!found || v < best) {
          found = true;
          best = v;
          bi = i;
          bj = j;
        }
      }
    if (!found) return false;
    swap_rows(bi, t);
    swap_cols(bj, t);
    return true;
  }

  // row_i -= q row_t, mirrored on the left transform.
  void row_sub(std::size_t i, std::size_t t, const Int& q) {
    for (std::size_t j = 0; j < cols_; ++j) a_[i][j] = Ops::sub_mul(a_[i][j], q, a_[t][j]);
    for (std::size_t j = 0; j < rows_; ++j)
      left_[i][j] = Ops::sub_mul(left_[i][j], q, left_[t][j]);
  }
  void col_sub(std::size_t j, std::size_t t, const Int& q) {
    for (std::size_t i = 0; i < rows_; ++i) a_[i][j] = Ops::sub_mul(a_[i][j], q, a_[i][t]);
    for (std::size_t i = 0; i < cols_; ++i)
      right_[i][j] = Ops::sub_mul(right_[i][j], q, right_[i][t]);
  }
  void row_add(std::size_t t, std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) a_[t][j] = Ops::add(a_[t][j], a_[i][j]);
    for (std::size_t j = 0; j < rows_; ++j) left_[t][j] = Ops::add(left_[t][j], left_[i][j]);
  }
  void negate_row(std::size_t t) {
    for (std::size_t j = 0; j < cols_; ++j) a_[t][j] = Ops::neg(a_[t][j]);
    for (std::size_t j = 0; j < rows_; ++j) left_[t][j] = Ops::neg(left_[t][j]);
  }
  void swap_rows(std::size_t i, std::size_t t) {
    if (i == t) return;
    std::swap(a_[i], a_[t]);
    std::swap(left_[i], left_[t]);
  }
  void swap_cols(std::size_t j, std::size_t t) {
    if (j == t) return;
    for (auto& row : a_) std::swap(row[j], row[t]);
    for (auto& row : right_) std::swap(row[j], row[t]);
  }

  Mat a_, left_, right_;
  std::size_t rows_ = 0, cols_ = 0;
};

template <class Int>
BigMatrix widen(const std::vector<std::vector<Int>>& m) {
  BigMatrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (const Int& v : m[i]) {
      if constexpr (std::is_same_v<Int, mpz_class>) {
        out[i].push_back(v);
      } else {
        out[i].push_back(mpz_class(static_cast<long>(v)));
      }
    }
  return out;
}

template <class Ops>
SmithNormalForm finish(const Reducer<Ops>& r) {
  SmithNormalForm out;
  const auto& a = r.matrix();
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  for (std::size_t k = 0; k < std::min(rows, cols); ++k) {
    if constexpr (std::is_same_v<typename Ops::Int, mpz_class>) {
      out.invariant_factors.push_back(a[k][k]);
    } else {
      out.invariant_factors.push_back(mpz_class(static_cast<long>(a[k][k])));
    }
  }
  out.left = widen(r.left());
  out.right = widen(r.right());
  return out;
}

}  // namespace

BigMatrix to_big(const IntMatrix& m) { return widen(m); }

BigMatrix multiply(const BigMatrix& a, const BigMatrix& b) {
  const std::size_t n = a.size();
  const std::size_t k = b.size();
  const std::size_t p = k ? b[0].size() : 0;
  BigMatrix out(n, std::vector<mpz_class>(p, mpz_class(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j)
      for (std::size_t q = 0; q < k; ++q) out[i][j] += a[i][q] * b[q][j];
  return out;
}

SmithNormalForm smith_normal_form(const BigMatrix& m) {
  Reducer<BigOps> r(m);
  r.run();
  return finish(r);
}

SmithNormalForm smith_normal_form(const IntMatrix& m) {
  try {
    Reducer<CheckedInt64> r(m);
    r.run();
    return finish(r);
  } catch (const Overflow&) {
    SmithNormalForm out = smith_normal_form(to_big(m));
    out.promoted = true;
    return out;
  }
}

}  // namespace charvar
