#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>

namespace mlab {

using Rational = mpq_class;

/// Tolerances used by every floating-point predicate in the library.
///
/// Exact (rational) code paths ignore the budget entirely.
struct ToleranceBudget {
  double eq_tol = 1e-9;         // equality band
  double strict_margin = 1e-7;  // minimum excess that certifies a strict inequality
  double newton_tol = 1e-12;    // root-finding convergence

  bool valid() const {
    return eq_tol > 0 && eq_tol <= strict_margin && newton_tol <= eq_tol;
  }
};

inline void require_valid(const ToleranceBudget& tol) {
  if (!tol.valid()) {
    throw std::invalid_argument(
        "tolerance budget must satisfy 0 < eq_tol <= strict_margin and newton_tol <= eq_tol");
  }
}

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static double to_double(double v) { return v; }
  static double abs(double v) { return std::fabs(v); }
  /// Sign with a symmetric dead band of half-width `band`.
  static int sign(double v, double band) {
    if (v > band) return 1;
    if (v < -band) return -1;
    return 0;
  }
};

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static double to_double(const Rational& v) { return v.get_d(); }
  static Rational abs(const Rational& v) { return Rational(::abs(v)); }
  static int sign(const Rational& v, double /*band*/) { return sgn(v); }
};

template <class T>
inline constexpr bool is_exact_v = scalar_traits<T>::exact;

template <class T>
double to_double(const T& v) {
  return scalar_traits<T>::to_double(v);
}

template <class T>
int sign_of(const T& v, double band) {
  return scalar_traits<T>::sign(v, band);
}

template <class T>
T abs_of(const T& v) {
  return scalar_traits<T>::abs(v);
}

/// Converts between the two scalar domains. double -> Rational is exact.
template <class To, class From>
To scalar_cast(const From& v) {
  if constexpr (std::is_same_v<To, From>) {
    return v;
  } else if constexpr (std::is_same_v<To, double>) {
    return to_double(v);
  } else {
    static_assert(std::is_same_v<To, Rational> && std::is_same_v<From, double>);
    if (!std::isfinite(v)) throw std::domain_error("non-finite value has no rational form");
    return Rational(v);
  }
}

/// Shortest decimal string that round-trips to the same double.
inline std::string format_double(double v) {
  for (int precision = 1; precision <= 17; ++precision) {
    std::ostringstream os;
    os.precision(precision);
    os << v;
    if (std::stod(os.str()) == v) return os.str();
  }
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

inline std::string format_rational(const Rational& q) {
  Rational c(q);
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

/// Parses "p/q", an integer, or a finite decimal literal ("0.25", "-1e-3") exactly.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  if (s.find_first_of(".eE") == std::string::npos) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational literal: " + s);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
  }
  // Decimal literal: mantissa digits scaled by a power of ten.
  std::size_t epos = s.find_first_of("eE");
  std::string mant = s.substr(0, epos);
  long exp10 = 0;
  if (epos != std::string::npos) exp10 = std::stol(s.substr(epos + 1));
  bool neg = false;
  if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
    neg = mant[0] == '-';
    mant.erase(0, 1);
  }
  std::size_t dot = mant.find('.');
  if (dot != std::string::npos) {
    exp10 -= static_cast<long>(mant.size() - dot - 1);
    mant.erase(dot, 1);
  }
  if (mant.empty() || mant.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("malformed decimal literal: " + s);
  }
  mpz_class num(mant, 10);
  mpz_class scale = 1;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  Rational q = exp10 < 0 ? Rational(num, scale) : Rational(num * scale);
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

enum class ScalarMode { exact, floating };

/// A scalar tagged with its arithmetic mode. Used at API boundaries where the
/// mode is only known at run time (JSON, CLI); algorithms are templated instead.
class Scalar {
 public:
  Scalar() : value_(0.0) {}
  Scalar(double v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational v) : value_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  Scalar(long num, long den) : value_(Rational(num, den)) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    std::get<Rational>(value_).canonicalize();
  }

  ScalarMode mode() const {
    return std::holds_alternative<Rational>(value_) ? ScalarMode::exact : ScalarMode::floating;
  }
  bool exact() const { return mode() == ScalarMode::exact; }
  const Rational& rational() const { return std::get<Rational>(value_); }
  double as_double() const {
    return exact() ? rational().get_d() : std::get<double>(value_);
  }

  std::string to_string() const {
    return exact() ? format_rational(rational()) : format_double(std::get<double>(value_));
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) { return combine(a, b, '+'); }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return combine(a, b, '-'); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) { return combine(a, b, '*'); }
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return combine(a, b, '/'); }

 private:
  static Scalar combine(const Scalar& a, const Scalar& b, char op) {
    if (a.mode() != b.mode()) throw std::invalid_argument("mixed-mode scalar arithmetic");
    if (a.exact()) {
      const Rational& x = a.rational();
      const Rational& y = b.rational();
      switch (op) {
        case '+': return Scalar(Rational(x + y));
        case '-': return Scalar(Rational(x - y));
        case '*': return Scalar(Rational(x * y));
        default:
          if (sgn(y) == 0) throw std::domain_error("division by zero");
          return Scalar(Rational(x / y));
      }
    }
    double x = a.as_double(), y = b.as_double();
    switch (op) {
      case '+': return x + y;
      case '-': return x - y;
      case '*': return x * y;
      default: return x / y;
    }
  }

  std::variant<double, Rational> value_;
};

/// Exact comparison in exact mode, |a - b| <= eq_tol in floating mode.
inline bool approx_eq(const Scalar& a, const Scalar& b, const ToleranceBudget& tol = {}) {
  if (a.mode() != b.mode()) throw std::invalid_argument("mixed-mode comparison");
  if (a.exact()) return a.rational() == b.rational();
  return std::fabs(a.as_double() - b.as_double()) <= tol.eq_tol;
}

inline Scalar parse_scalar(std::string_view text) {
  if (text.find('/') != std::string_view::npos) return Scalar(parse_rational(text));
  return Scalar(std::stod(std::string(text)));
}

}  // namespace mlab
