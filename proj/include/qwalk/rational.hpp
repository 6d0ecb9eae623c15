#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <ostream>
#include <string>
#include <utility>

#include <Eigen/Core>

namespace qwalk {

/// Arbitrary-precision rational scalar.
///
/// Thin value wrapper around boost::multiprecision::cpp_rational with a plain
/// (non-expression-template) operator surface so it can be used directly as an
/// Eigen scalar type. Always kept in lowest terms by the backend.
class Rational {
 public:
  using Rep = boost::multiprecision::cpp_rational;

  Rational() : v_(0) {}
  Rational(int v) : v_(v) {}          // NOLINT: implicit by design
  Rational(long long v) : v_(v) {}    // NOLINT: implicit by design
  Rational(long long num, long long den) : v_(num, den) {}
  /// Parses "p/q" or a plain integer literal; throws std::runtime_error on junk.
  explicit Rational(const std::string& s) : v_(s) {}

  const Rep& rep() const { return v_; }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(Rep(a.v_ + b.v_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(Rep(a.v_ - b.v_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(Rep(a.v_ * b.v_)); }
  friend Rational operator/(const Rational& a, const Rational& b) { return Rational(Rep(a.v_ / b.v_)); }
  Rational operator-() const { return Rational(Rep(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) { v_ /= o.v_; return *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  bool is_zero() const { return v_.is_zero(); }
  /// Canonical "p/q" (or "p" for integers) textual form.
  std::string str() const { return v_.str(); }
  double to_double() const { return v_.convert_to<double>(); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.v_.str();
  }

 private:
  explicit Rational(Rep v) : v_(std::move(v)) {}
  Rep v_;
};

inline Rational abs(const Rational& r) { return r < Rational(0) ? -r : r; }

using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

}  // namespace qwalk

namespace Eigen {

template <>
struct NumTraits<qwalk::Rational> : GenericNumTraits<qwalk::Rational> {
  using Real = qwalk::Rational;
  using NonInteger = qwalk::Rational;
  using Nested = qwalk::Rational;
  using Literal = qwalk::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 200,
    MulCost = 200
  };
  // Exact scalar: no rounding error, no meaningful precision cutoffs.
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
