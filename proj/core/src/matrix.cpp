#include "freecat/matrix.hpp"

#include "freecat/error.hpp"

namespace freecat {

std::string rat_to_string(const Rat& r) {
  std::string num = numerator(r).str();
  std::string den = denominator(r).str();
  return num + "/" + den;
}

Rat rat_from_string(const std::string& s) {
  auto bad = [&]() -> Rat {
    fail_invalid("malformed rational '" + s + "' (want \"p/q\", q>0, gcd 1)");
  };
  std::size_t slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      boost::multiprecision::cpp_int p(s);
      return Rat(p);
    }
    boost::multiprecision::cpp_int p(s.substr(0, slash));
    boost::multiprecision::cpp_int q(s.substr(slash + 1));
    if (q <= 0) return bad();
    if (gcd(p < 0 ? boost::multiprecision::cpp_int(-p) : p, q) != 1)
      return bad();
    Rat r(p);
    r /= q;
    return r;
  } catch (const std::runtime_error&) {
    return bad();
  }
}

std::string crat_to_string(const CRat& c) {
  if (c.im == 0) return rat_to_string(c.re);
  std::string out = rat_to_string(c.re);
  out += c.im < 0 ? "-" : "+";
  Rat mag = c.im < 0 ? Rat(-c.im) : c.im;
  out += rat_to_string(mag);
  out += " i";
  return out;
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, CRat(1));
  return m;
}

RatMatrix RatMatrix::permutation(const std::vector<std::size_t>& perm) {
  RatMatrix m(perm.size(), perm.size());
  for (std::size_t j = 0; j < perm.size(); ++j) m.set(perm[j], j, CRat(1));
  return m;
}

const CRat& RatMatrix::at(std::size_t r, std::size_t c) const {
  static const CRat zero;
  if (r >= rows_ || c >= cols_) fail_invalid("matrix index out of range");
  auto it = data_[r].find(c);
  return it == data_[r].end() ? zero : it->second;
}

void RatMatrix::set(std::size_t r, std::size_t c, CRat v) {
  if (r >= rows_ || c >= cols_) fail_invalid("matrix index out of range");
  if (v.is_zero())
    data_[r].erase(c);
  else
    data_[r][c] = std::move(v);
}

void RatMatrix::add(std::size_t r, std::size_t c, const CRat& v) {
  if (v.is_zero()) return;
  auto it = data_[r].find(c);
  if (it == data_[r].end()) {
    data_[r][c] = v;
  } else {
    it->second += v;
    if (it->second.is_zero()) data_[r].erase(it);
  }
}

RatMatrix RatMatrix::mul(const RatMatrix& other) const {
  if (cols_ != other.rows_)
    fail_invalid("matrix product shape mismatch: " + std::to_string(rows_) +
                 "x" + std::to_string(cols_) + " * " +
                 std::to_string(other.rows_) + "x" +
                 std::to_string(other.cols_));
  RatMatrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto& [k, a] : data_[r]) {
      for (const auto& [c, b] : other.data_[k]) out.add(r, c, a * b);
    }
  }
  return out;
}

RatMatrix RatMatrix::kron(const RatMatrix& other) const {
  RatMatrix out(rows_ * other.rows_, cols_ * other.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [c, a] : data_[r])
      for (std::size_t r2 = 0; r2 < other.rows_; ++r2)
        for (const auto& [c2, b] : other.data_[r2])
          out.set(r * other.rows_ + r2, c * other.cols_ + c2, a * b);
  return out;
}

RatMatrix RatMatrix::dagger() const {
  RatMatrix out(cols_, rows_);
  for_each([&](std::size_t r, std::size_t c, const CRat& v) {
    out.set(c, r, v.conj());
  });
  return out;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix out(cols_, rows_);
  for_each(
      [&](std::size_t r, std::size_t c, const CRat& v) { out.set(c, r, v); });
  return out;
}

bool RatMatrix::operator==(const RatMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    if (data_[r] != other.data_[r]) return false;
  return true;
}

std::optional<std::size_t>
RatMatrix::first_diff_col(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return 0;
  for (std::size_t c = 0; c < a.cols_; ++c)
    for (std::size_t r = 0; r < a.rows_; ++r)
      if (a.at(r, c) != b.at(r, c)) return c;
  return std::nullopt;
}

std::size_t RatMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& row : data_) n += row.size();
  return n;
}

std::string RatMatrix::to_string() const {
  std::string out = std::to_string(rows_) + "x" + std::to_string(cols_) + " [";
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) out += "; ";
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) out += ", ";
      out += crat_to_string(at(r, c));
    }
  }
  out += "]";
  return out;
}

} // namespace freecat
