#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "liplift/error.hpp"

namespace liplift {

// Sign-magnitude integer in base 1e9. Magnitudes stay small in practice
// (simplex tableaus over fixture-sized spaces), so schoolbook arithmetic is
// plenty.
class BigInt {
 public:
  BigInt() : sign_(0) {}

  BigInt(long long v) : sign_(0) {  // NOLINT: implicit by design
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    // avoid overflow on LLONG_MIN
    unsigned long long mag = v < 0 ? ~static_cast<unsigned long long>(v) + 1ULL
                                   : static_cast<unsigned long long>(v);
    while (mag > 0) {
      mag_.push_back(static_cast<std::uint32_t>(mag % kBase));
      mag /= kBase;
    }
  }

  static std::optional<BigInt> parse(std::string_view s) {
    if (s.empty()) return std::nullopt;
    int sign = 1;
    std::size_t i = 0;
    if (s[0] == '+' || s[0] == '-') {
      sign = s[0] == '-' ? -1 : 1;
      i = 1;
    }
    if (i == s.size()) return std::nullopt;
    for (std::size_t k = i; k < s.size(); ++k) {
      if (!std::isdigit(static_cast<unsigned char>(s[k]))) return std::nullopt;
    }
    BigInt out;
    std::size_t end = s.size();
    while (end > i) {
      std::size_t begin = end >= i + 9 ? end - 9 : i;
      std::uint32_t limb = 0;
      for (std::size_t k = begin; k < end; ++k) limb = limb * 10 + (s[k] - '0');
      out.mag_.push_back(limb);
      end = begin;
    }
    out.trim();
    out.sign_ = out.mag_.empty() ? 0 : sign;
    return out;
  }

  bool is_zero() const { return sign_ == 0; }
  bool is_negative() const { return sign_ < 0; }
  int sign() const { return sign_; }
  bool is_even() const { return mag_.empty() || mag_[0] % 2 == 0; }

  friend BigInt operator-(const BigInt& a) {
    BigInt r = a;
    r.sign_ = -r.sign_;
    return r;
  }

  friend BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    BigInt r;
    if (a.sign_ == b.sign_) {
      r.mag_ = add_mag(a.mag_, b.mag_);
      r.sign_ = a.sign_;
    } else {
      int c = cmp_mag(a.mag_, b.mag_);
      if (c == 0) return BigInt();
      if (c > 0) {
        r.mag_ = sub_mag(a.mag_, b.mag_);
        r.sign_ = a.sign_;
      } else {
        r.mag_ = sub_mag(b.mag_, a.mag_);
        r.sign_ = b.sign_;
      }
    }
    return r;
  }

  friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

  friend BigInt operator*(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
    BigInt r;
    r.mag_.assign(a.mag_.size() + b.mag_.size(), 0);
    for (std::size_t i = 0; i < a.mag_.size(); ++i) {
      std::uint64_t carry = 0;
      for (std::size_t j = 0; j < b.mag_.size(); ++j) {
        std::uint64_t cur = r.mag_[i + j] +
                            static_cast<std::uint64_t>(a.mag_[i]) * b.mag_[j] + carry;
        r.mag_[i + j] = static_cast<std::uint32_t>(cur % kBase);
        carry = cur / kBase;
      }
      std::size_t k = i + b.mag_.size();
      while (carry > 0) {
        std::uint64_t cur = r.mag_[k] + carry;
        r.mag_[k] = static_cast<std::uint32_t>(cur % kBase);
        carry = cur / kBase;
        ++k;
      }
    }
    r.trim();
    r.sign_ = a.sign_ * b.sign_;
    return r;
  }

  // Truncated division (quotient rounds toward zero, remainder has the sign
  // of the dividend), matching C++ integer semantics.
  static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.sign_ == 0) throw error(errc::numerical_breakdown, "division by zero BigInt");
    if (cmp_mag(a.mag_, b.mag_) < 0) {
      q = BigInt();
      r = a;
      return;
    }
    std::vector<std::uint32_t> qm, rm;
    divmod_mag(a.mag_, b.mag_, qm, rm);
    q.mag_ = std::move(qm);
    q.trim();
    q.sign_ = q.mag_.empty() ? 0 : a.sign_ * b.sign_;
    r.mag_ = std::move(rm);
    r.trim();
    r.sign_ = r.mag_.empty() ? 0 : a.sign_;
  }

  friend BigInt operator/(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    divmod(a, b, q, r);
    return q;
  }

  friend BigInt operator%(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    divmod(a, b, q, r);
    return r;
  }

  friend bool operator==(const BigInt& a, const BigInt& b) {
    return a.sign_ == b.sign_ && a.mag_ == b.mag_;
  }
  friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
  friend bool operator<(const BigInt& a, const BigInt& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const BigInt& a, const BigInt& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const BigInt& a, const BigInt& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const BigInt& a, const BigInt& b) { return cmp(a, b) >= 0; }

  static int cmp(const BigInt& a, const BigInt& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? -1 : 1;
    int c = cmp_mag(a.mag_, b.mag_);
    return a.sign_ >= 0 ? c : -c;
  }

  BigInt abs() const {
    BigInt r = *this;
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
  }

  static BigInt gcd(BigInt a, BigInt b) {
    a.sign_ = a.mag_.empty() ? 0 : 1;
    b.sign_ = b.mag_.empty() ? 0 : 1;
    while (!b.is_zero()) {
      BigInt q, r;
      divmod(a, b, q, r);
      a = std::move(b);
      b = std::move(r);
    }
    return a;
  }

  std::string to_string() const {
    if (sign_ == 0) return "0";
    std::string out = sign_ < 0 ? "-" : "";
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%u", mag_.back());
    out += buf;
    for (std::size_t i = mag_.size() - 1; i-- > 0;) {
      std::snprintf(buf, sizeof(buf), "%09u", mag_[i]);
      out += buf;
    }
    return out;
  }

  double to_double() const {
    double v = 0.0;
    for (std::size_t i = mag_.size(); i-- > 0;) v = v * kBase + mag_[i];
    return sign_ < 0 ? -v : v;
  }

  bool fits_longlong() const {
    BigInt lo(std::int64_t{-9223372036854775807LL - 1});
    BigInt hi(std::int64_t{9223372036854775807LL});
    return cmp(*this, lo) >= 0 && cmp(*this, hi) <= 0;
  }

  long long to_longlong() const {
    long long v = 0;
    for (std::size_t i = mag_.size(); i-- > 0;) v = v * kBase + mag_[i];
    return sign_ < 0 ? -v : v;
  }

 private:
  static constexpr std::uint64_t kBase = 1000000000ULL;

  void trim() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) sign_ = 0;
  }

  static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
  }

  static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> r;
    r.reserve(std::max(a.size(), b.size()) + 1);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < std::max(a.size(), b.size()) || carry; ++i) {
      std::uint64_t cur = carry;
      if (i < a.size()) cur += a[i];
      if (i < b.size()) cur += b[i];
      r.push_back(static_cast<std::uint32_t>(cur % kBase));
      carry = cur / kBase;
    }
    return r;
  }

  // requires |a| >= |b|
  static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> r = a;
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      std::int64_t cur = static_cast<std::int64_t>(r[i]) - borrow - (i < b.size() ? b[i] : 0);
      if (cur < 0) {
        cur += kBase;
        borrow = 1;
      } else {
        borrow = 0;
      }
      r[i] = static_cast<std::uint32_t>(cur);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  }

  // Knuth algorithm D on base-1e9 limbs; requires |u| >= |v|, v nonzero.
  static void divmod_mag(const std::vector<std::uint32_t>& u_in,
                         const std::vector<std::uint32_t>& v_in,
                         std::vector<std::uint32_t>& q, std::vector<std::uint32_t>& r) {
    if (v_in.size() == 1) {
      std::uint64_t d = v_in[0];
      q.assign(u_in.size(), 0);
      std::uint64_t rem = 0;
      for (std::size_t i = u_in.size(); i-- > 0;) {
        std::uint64_t cur = rem * kBase + u_in[i];
        q[i] = static_cast<std::uint32_t>(cur / d);
        rem = cur % d;
      }
      r.clear();
      if (rem > 0) r.push_back(static_cast<std::uint32_t>(rem));
      return;
    }

    // Normalize so the top divisor limb is >= base/2.
    std::uint32_t scale = static_cast<std::uint32_t>(kBase / (v_in.back() + 1ULL));
    std::vector<std::uint32_t> u = scale_mag(u_in, scale);
    std::vector<std::uint32_t> v = scale_mag(v_in, scale);
    std::size_t n = v.size();
    std::size_t m = u.size() - n;
    u.push_back(0);
    q.assign(m + 1, 0);

    for (std::size_t j = m + 1; j-- > 0;) {
      std::uint64_t top = static_cast<std::uint64_t>(u[j + n]) * kBase + u[j + n - 1];
      std::uint64_t qhat = top / v[n - 1];
      std::uint64_t rhat = top % v[n - 1];
      if (qhat >= kBase) {
        rhat += (qhat - (kBase - 1)) * v[n - 1];
        qhat = kBase - 1;
      }
      while (rhat < kBase &&
             qhat * v[n - 2] > rhat * kBase + u[j + n - 2]) {
        --qhat;
        rhat += v[n - 1];
      }
      // multiply-subtract qhat * v from u[j .. j+n]
      std::int64_t borrow = 0;
      std::uint64_t carry = 0;
      for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t prod = qhat * v[i] + carry;
        carry = prod / kBase;
        std::int64_t cur = static_cast<std::int64_t>(u[i + j]) -
                           static_cast<std::int64_t>(prod % kBase) - borrow;
        if (cur < 0) {
          cur += kBase;
          borrow = 1;
        } else {
          borrow = 0;
        }
        u[i + j] = static_cast<std::uint32_t>(cur);
      }
      std::int64_t cur = static_cast<std::int64_t>(u[j + n]) -
                         static_cast<std::int64_t>(carry) - borrow;
      if (cur < 0) {
        // qhat was one too large: add v back
        cur += kBase;
        --qhat;
        std::uint64_t c2 = 0;
        for (std::size_t i = 0; i < n; ++i) {
          std::uint64_t s = static_cast<std::uint64_t>(u[i + j]) + v[i] + c2;
          u[i + j] = static_cast<std::uint32_t>(s % kBase);
          c2 = s / kBase;
        }
        cur += static_cast<std::int64_t>(c2);
        cur -= static_cast<std::int64_t>(kBase);  // absorbs the borrow carried in
      }
      u[j + n] = static_cast<std::uint32_t>(cur);
      q[j] = static_cast<std::uint32_t>(qhat);
    }

    // Denormalize the remainder.
    u.resize(n);
    r.assign(u.size(), 0);
    std::uint64_t rem = 0;
    for (std::size_t i = u.size(); i-- > 0;) {
      std::uint64_t curv = rem * kBase + u[i];
      r[i] = static_cast<std::uint32_t>(curv / scale);
      rem = curv % scale;
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    while (!q.empty() && q.back() == 0) q.pop_back();
  }

  static std::vector<std::uint32_t> scale_mag(const std::vector<std::uint32_t>& a,
                                              std::uint32_t s) {
    std::vector<std::uint32_t> r;
    r.reserve(a.size() + 1);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      std::uint64_t cur = static_cast<std::uint64_t>(a[i]) * s + carry;
      r.push_back(static_cast<std::uint32_t>(cur % kBase));
      carry = cur / kBase;
    }
    if (carry > 0) r.push_back(static_cast<std::uint32_t>(carry));
    return r;
  }

  int sign_;
  std::vector<std::uint32_t> mag_;
};

// Exact rational number, always kept reduced with a positive denominator.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long v) : num_(v), den_(1) {}  // NOLINT: implicit by design
  Rational(long long num, long long den) : num_(num), den_(den) { normalize(); }
  Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  int sign() const { return num_.sign(); }

  friend Rational operator-(const Rational& a) { return Rational::raw(-a.num_, a.den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_.is_zero()) throw error(errc::numerical_breakdown, "rational division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a, b) >= 0; }

  static int cmp(const Rational& a, const Rational& b) {
    return BigInt::cmp(a.num_ * b.den_, b.num_ * a.den_);
  }

  Rational abs() const { return num_.is_negative() ? -*this : *this; }

  double to_double() const { return num_.to_double() / den_.to_double(); }

  std::string to_string() const {
    if (den_ == BigInt(1)) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
  }

  // Accepts "p", "p/q", and decimal / scientific forms ("1.25", "2e-3"),
  // all converted exactly.
  static std::optional<Rational> parse(std::string_view s) {
    if (s.empty()) return std::nullopt;
    std::size_t slash = s.find('/');
    if (slash != std::string_view::npos) {
      auto p = BigInt::parse(s.substr(0, slash));
      auto q = BigInt::parse(s.substr(slash + 1));
      if (!p || !q || q->is_zero()) return std::nullopt;
      return Rational(*p, *q);
    }
    // [sign] digits [. digits] [eE [sign] digits]
    int sign = 1;
    std::size_t i = 0;
    if (s[0] == '+' || s[0] == '-') {
      sign = s[0] == '-' ? -1 : 1;
      i = 1;
    }
    std::string digits;
    long long frac_len = 0;
    bool any = false;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits += s[i++];
      any = true;
    }
    if (i < s.size() && s[i] == '.') {
      ++i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        digits += s[i++];
        ++frac_len;
        any = true;
      }
    }
    if (!any) return std::nullopt;
    long long exp10 = 0;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
      ++i;
      int esign = 1;
      if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        esign = s[i] == '-' ? -1 : 1;
        ++i;
      }
      if (i == s.size()) return std::nullopt;
      long long e = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        e = e * 10 + (s[i++] - '0');
        if (e > 4096) return std::nullopt;
      }
      exp10 = esign * e;
    }
    if (i != s.size()) return std::nullopt;
    auto mant = BigInt::parse(digits);
    if (!mant) return std::nullopt;
    BigInt num = sign < 0 ? -*mant : *mant;
    BigInt den(1);
    long long net = exp10 - frac_len;
    BigInt ten(10);
    for (long long k = 0; k < (net >= 0 ? net : -net); ++k) {
      if (net >= 0) {
        num = num * ten;
      } else {
        den = den * ten;
      }
    }
    return Rational(num, den);
  }

 private:
  static Rational raw(BigInt n, BigInt d) {
    Rational r;
    r.num_ = std::move(n);
    r.den_ = std::move(d);
    return r;
  }

  void normalize() {
    if (den_.is_zero()) throw error(errc::numerical_breakdown, "rational with zero denominator");
    if (den_.is_negative()) {
      den_ = -den_;
      num_ = -num_;
    }
    if (num_.is_zero()) {
      den_ = BigInt(1);
      return;
    }
    BigInt g = BigInt::gcd(num_.abs(), den_);
    if (g != BigInt(1)) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
  }

  BigInt num_;
  BigInt den_;
};

// Uniform interface over the two arithmetic backends. `double` carries the
// module-default tolerances; Rational compares exactly.
template <class T>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static constexpr const char* mode_name = "float";
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double from_int(long long v) { return static_cast<double>(v); }
  static double from_ratio(long long p, long long q) {
    return static_cast<double>(p) / static_cast<double>(q);
  }
  static double abs(double v) { return std::fabs(v); }
  static double to_double(double v) { return v; }
  static double feasibility_tol() { return 1e-9; }
  static double pivot_tol() { return 1e-11; }
  static std::optional<double> parse(std::string_view s) {
    std::size_t slash = s.find('/');
    if (slash != std::string_view::npos) {
      auto p = parse(s.substr(0, slash));
      auto q = parse(s.substr(slash + 1));
      if (!p || !q || *q == 0.0) return std::nullopt;
      return *p / *q;
    }
    std::string buf(s);
    char* end = nullptr;
    double v = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size() || buf.empty()) return std::nullopt;
    if (!std::isfinite(v)) return std::nullopt;
    return v;
  }
  // shortest representation that parses back to the same bits
  static std::string to_string(double v) {
    char buf[64];
    for (int prec = 1; prec <= 16; ++prec) {
      std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
      if (std::strtod(buf, nullptr) == v) return buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
  }
};

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* mode_name = "rational";
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational from_int(long long v) { return Rational(v); }
  static Rational from_ratio(long long p, long long q) { return Rational(p, q); }
  static Rational abs(const Rational& v) { return v.abs(); }
  static double to_double(const Rational& v) { return v.to_double(); }
  static Rational feasibility_tol() { return Rational(0); }
  static Rational pivot_tol() { return Rational(0); }
  static std::optional<Rational> parse(std::string_view s) { return Rational::parse(s); }
  static std::string to_string(const Rational& v) { return v.to_string(); }
};

}  // namespace liplift
