#include "aqftop/cvec.hpp"

#include <cctype>

namespace aqftop {

GaussC GaussC::inv() const {
  const Rational norm = re_ * re_ + im_ * im_;
  if (norm == 0) throw ArgumentError("GaussC::inv: division by zero");
  return GaussC(re_ / norm, -im_ / norm);
}

GaussC& GaussC::operator+=(const GaussC& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussC& GaussC::operator-=(const GaussC& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussC& GaussC::operator*=(const GaussC& o) {
  Rational re = re_ * o.re_ - im_ * o.im_;
  im_ = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  return *this;
}

std::string GaussC::str() const {
  if (im_ == 0) return re_.str();
  std::string imag;
  if (im_ == 1) {
    imag = "i";
  } else if (im_ == -1) {
    imag = "-i";
  } else {
    imag = im_.str() + "i";
  }
  if (re_ == 0) return imag;
  if (imag[0] == '-') return re_.str() + imag;
  return re_.str() + "+" + imag;
}

namespace {

class ScalarParser {
 public:
  explicit ScalarParser(std::string s, std::string_view original)
      : s_(std::move(s)), original_(original) {}

  GaussC parse() {
    if (s_.empty()) fail();
    GaussC total;
    while (pos_ < s_.size()) total += term();
    return total;
  }

 private:
  [[noreturn]] void fail() const {
    throw ArgumentError("invalid scalar literal '" + std::string(original_) + "'");
  }

  Rational unsigned_rational() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) fail();
    boost::multiprecision::cpp_int num(s_.substr(start, pos_ - start));
    boost::multiprecision::cpp_int den = 1;
    if (pos_ < s_.size() && s_[pos_] == '/') {
      const std::size_t dstart = ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ == dstart) fail();
      den = boost::multiprecision::cpp_int(s_.substr(dstart, pos_ - dstart));
      if (den == 0) throw ArgumentError("zero denominator in '" + std::string(original_) + "'");
    }
    return Rational(num, den);
  }

  GaussC term() {
    Rational sign = 1;
    if (s_[pos_] == '+' || s_[pos_] == '-') {
      if (s_[pos_] == '-') sign = -1;
      ++pos_;
    } else if (pos_ != 0) {
      fail();
    }
    if (pos_ >= s_.size()) fail();
    Rational magnitude = 1;
    bool has_number = false;
    if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      magnitude = unsigned_rational();
      has_number = true;
    }
    bool imaginary = false;
    if (pos_ < s_.size() && s_[pos_] == '*' && has_number) ++pos_;
    if (pos_ < s_.size() && s_[pos_] == 'i') {
      imaginary = true;
      ++pos_;
    }
    if (!has_number && !imaginary) fail();
    if (pos_ < s_.size() && s_[pos_] != '+' && s_[pos_] != '-') fail();
    return imaginary ? GaussC(0, sign * magnitude) : GaussC(sign * magnitude, 0);
  }

  std::string s_;
  std::string_view original_;
  std::size_t pos_ = 0;
};

}  // namespace

GaussC parse_scalar(std::string_view text) {
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  }
  return ScalarParser(std::move(compact), text).parse();
}

Vec basis_vector(std::size_t dim, std::size_t k) {
  Vec v(dim);
  v.at(k) = 1;
  return v;
}

Vec conj(const Vec& v) {
  Vec out;
  out.reserve(v.size());
  for (const auto& z : v) out.push_back(z.conj());
  return out;
}

bool is_zero(const Vec& v) {
  for (const auto& z : v) {
    if (!z.is_zero()) return false;
  }
  return true;
}

Vec& axpy(Vec& y, const GaussC& a, const Vec& x) {
  if (y.size() != x.size()) throw ArgumentError("axpy: dimension mismatch");
  if (a.is_zero()) return y;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!x[k].is_zero()) y[k] += a * x[k];
  }
  return y;
}

std::string vec_str(const Vec& v) {
  std::string s = "(";
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) s += ", ";
    s += v[k].str();
  }
  return s + ")";
}

LinMap::LinMap(std::size_t rows, std::size_t cols, bool antilinear)
    : rows_(rows), cols_(cols), entries_(rows * cols), antilinear_(antilinear) {}

LinMap::LinMap(std::size_t rows, std::size_t cols, std::vector<GaussC> entries,
               bool antilinear)
    : rows_(rows), cols_(cols), entries_(std::move(entries)), antilinear_(antilinear) {
  if (entries_.size() != rows * cols) {
    throw ArgumentError("LinMap: " + std::to_string(entries_.size()) +
                        " entries for a " + std::to_string(rows) + "x" +
                        std::to_string(cols) + " matrix");
  }
}

LinMap LinMap::identity(std::size_t n, bool antilinear) {
  LinMap m(n, n, antilinear);
  for (std::size_t k = 0; k < n; ++k) m(k, k) = 1;
  return m;
}

LinMap LinMap::braiding(std::size_t dim_v, std::size_t dim_w) {
  const std::size_t n = dim_v * dim_w;
  LinMap m(n, n);
  for (std::size_t i = 0; i < dim_v; ++i) {
    for (std::size_t j = 0; j < dim_w; ++j) m(j * dim_v + i, i * dim_w + j) = 1;
  }
  return m;
}

Vec LinMap::apply(const Vec& x) const {
  if (x.size() != cols_) {
    throw ArgumentError("LinMap::apply: vector of dimension " +
                        std::to_string(x.size()) + " for " +
                        std::to_string(cols_) + " columns");
  }
  Vec out(rows_);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (x[c].is_zero()) continue;
    const GaussC xc = antilinear_ ? x[c].conj() : x[c];
    for (std::size_t r = 0; r < rows_; ++r) {
      const GaussC& m = (*this)(r, c);
      if (!m.is_zero()) out[r] += m * xc;
    }
  }
  return out;
}

Vec LinMap::column(std::size_t c) const {
  Vec out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

LinMap LinMap::conj_entries() const {
  LinMap m = *this;
  for (auto& z : m.entries_) z = z.conj();
  return m;
}

LinMap LinMap::conj_transpose() const {
  LinMap m(cols_, rows_, antilinear_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c).conj();
  }
  return m;
}

std::string LinMap::str() const {
  std::string s = antilinear_ ? "anti[" : "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) s += "; ";
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) s += ", ";
      s += (*this)(r, c).str();
    }
  }
  return s + "]";
}

LinMap matmul(const LinMap& a, const LinMap& b) {
  if (a.cols() != b.rows()) {
    throw ArgumentError("matmul: " + std::to_string(a.rows()) + "x" +
                        std::to_string(a.cols()) + " times " +
                        std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  LinMap out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const GaussC& x = a(r, k);
      if (x.is_zero()) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) {
        if (!b(k, c).is_zero()) out(r, c) += x * b(k, c);
      }
    }
  }
  return out;
}

LinMap compose_maps(const LinMap& f, const LinMap& g) {
  if (f.cols() != g.rows()) {
    throw ArgumentError("compose_maps: dimension mismatch (" +
                        std::to_string(f.cols()) + " vs " +
                        std::to_string(g.rows()) + ")");
  }
  LinMap product = matmul(f, f.antilinear() ? g.conj_entries() : g);
  return LinMap(product.rows(), product.cols(), product.entries(),
                f.antilinear() != g.antilinear());
}

LinMap tensor(const LinMap& f, const LinMap& g) {
  if (f.antilinear() != g.antilinear()) {
    throw ArgumentError("tensor: cannot tensor a linear with an antilinear map");
  }
  LinMap out(f.rows() * g.rows(), f.cols() * g.cols(), f.antilinear());
  for (std::size_t r1 = 0; r1 < f.rows(); ++r1) {
    for (std::size_t c1 = 0; c1 < f.cols(); ++c1) {
      const GaussC& x = f(r1, c1);
      if (x.is_zero()) continue;
      for (std::size_t r2 = 0; r2 < g.rows(); ++r2) {
        for (std::size_t c2 = 0; c2 < g.cols(); ++c2) {
          out(r1 * g.rows() + r2, c1 * g.cols() + c2) = x * g(r2, c2);
        }
      }
    }
  }
  return out;
}

}  // namespace aqftop
