#include "bellbound/rational.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bellbound {

void BigInt::trim(std::vector<std::uint32_t>& mag) {
  while (!mag.empty() && mag.back() == 0) mag.pop_back();
}

void BigInt::normalize() {
  trim(mag_);
  if (mag_.empty()) sign_ = 0;
}

BigInt::BigInt(std::int64_t v) {
  if (v == 0) return;
  sign_ = v > 0 ? 1 : -1;
  // Avoid overflow on INT64_MIN by negating in unsigned space.
  std::uint64_t mag = v > 0 ? static_cast<std::uint64_t>(v)
                            : ~static_cast<std::uint64_t>(v) + 1;
  mag_.push_back(static_cast<std::uint32_t>(mag));
  if (mag >> 32) mag_.push_back(static_cast<std::uint32_t>(mag >> 32));
}

BigInt BigInt::from_uint64(std::uint64_t v) {
  BigInt out;
  if (v == 0) return out;
  out.sign_ = 1;
  out.mag_.push_back(static_cast<std::uint32_t>(v));
  if (v >> 32) out.mag_.push_back(static_cast<std::uint32_t>(v >> 32));
  return out;
}

BigInt BigInt::operator-() const {
  BigInt out = *this;
  out.sign_ = -out.sign_;
  return out;
}

BigInt BigInt::abs() const {
  BigInt out = *this;
  if (out.sign_ < 0) out.sign_ = 1;
  return out;
}

int BigInt::compare_mag(const std::vector<std::uint32_t>& a,
                        const std::vector<std::uint32_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

std::vector<std::uint32_t> BigInt::add_mag(
    const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out;
  out.reserve(std::max(a.size(), b.size()) + 1);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    std::uint64_t sum = carry;
    if (i < a.size()) sum += a[i];
    if (i < b.size()) sum += b[i];
    out.push_back(static_cast<std::uint32_t>(sum));
    carry = sum >> 32;
  }
  if (carry) out.push_back(static_cast<std::uint32_t>(carry));
  return out;
}

std::vector<std::uint32_t> BigInt::sub_mag(
    const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out;
  out.reserve(a.size());
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::int64_t diff = static_cast<std::int64_t>(a[i]) - borrow -
                        (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
    if (diff < 0) {
      diff += 1ll << 32;
      borrow = 1;
    } else {
      borrow = 0;
    }
    out.push_back(static_cast<std::uint32_t>(diff));
  }
  trim(out);
  return out;
}

std::vector<std::uint32_t> BigInt::mul_mag(
    const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint32_t> out(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::uint64_t cur = static_cast<std::uint64_t>(a[i]) * b[j] +
                          out[i + j] + carry;
      out[i + j] = static_cast<std::uint32_t>(cur);
      carry = cur >> 32;
    }
    std::size_t k = i + b.size();
    while (carry) {
      std::uint64_t cur = out[k] + carry;
      out[k] = static_cast<std::uint32_t>(cur);
      carry = cur >> 32;
      ++k;
    }
  }
  trim(out);
  return out;
}

namespace {

int bit_length(const std::vector<std::uint32_t>& mag) {
  if (mag.empty()) return 0;
  int bits = static_cast<int>((mag.size() - 1) * 32);
  std::uint32_t top = mag.back();
  while (top) {
    ++bits;
    top >>= 1;
  }
  return bits;
}

bool get_bit(const std::vector<std::uint32_t>& mag, int bit) {
  const std::size_t limb = static_cast<std::size_t>(bit) / 32;
  if (limb >= mag.size()) return false;
  return (mag[limb] >> (bit % 32)) & 1;
}

void shl1_add_bit(std::vector<std::uint32_t>& mag, bool bit) {
  std::uint32_t carry = bit ? 1u : 0u;
  for (std::size_t i = 0; i < mag.size(); ++i) {
    std::uint32_t next_carry = mag[i] >> 31;
    mag[i] = (mag[i] << 1) | carry;
    carry = next_carry;
  }
  if (carry) mag.push_back(carry);
}

void set_bit(std::vector<std::uint32_t>& mag, int bit) {
  const std::size_t limb = static_cast<std::size_t>(bit) / 32;
  if (limb >= mag.size()) mag.resize(limb + 1, 0);
  mag[limb] |= (1u << (bit % 32));
}

}  // namespace

// Binary long division; magnitudes stay small enough here that the O(n^2)
// bit loop is a non-issue.
void BigInt::divmod_mag(const std::vector<std::uint32_t>& a,
                        const std::vector<std::uint32_t>& b,
                        std::vector<std::uint32_t>& quot,
                        std::vector<std::uint32_t>& rem) {
  quot.clear();
  rem.clear();
  if (b.empty()) throw std::domain_error("division by zero");
  if (compare_mag(a, b) < 0) {
    rem = a;
    trim(rem);
    return;
  }
  const int bits = bit_length(a);
  for (int i = bits - 1; i >= 0; --i) {
    shl1_add_bit(rem, get_bit(a, i));
    if (compare_mag(rem, b) >= 0) {
      rem = sub_mag(rem, b);
      set_bit(quot, i);
    }
  }
  trim(quot);
  trim(rem);
}

BigInt operator+(const BigInt& a, const BigInt& b) {
  if (a.sign_ == 0) return b;
  if (b.sign_ == 0) return a;
  BigInt out;
  if (a.sign_ == b.sign_) {
    out.sign_ = a.sign_;
    out.mag_ = BigInt::add_mag(a.mag_, b.mag_);
  } else {
    const int cmp = BigInt::compare_mag(a.mag_, b.mag_);
    if (cmp == 0) return BigInt();
    if (cmp > 0) {
      out.sign_ = a.sign_;
      out.mag_ = BigInt::sub_mag(a.mag_, b.mag_);
    } else {
      out.sign_ = b.sign_;
      out.mag_ = BigInt::sub_mag(b.mag_, a.mag_);
    }
  }
  out.normalize();
  return out;
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

BigInt operator*(const BigInt& a, const BigInt& b) {
  BigInt out;
  if (a.sign_ == 0 || b.sign_ == 0) return out;
  out.sign_ = a.sign_ * b.sign_;
  out.mag_ = BigInt::mul_mag(a.mag_, b.mag_);
  out.normalize();
  return out;
}

BigInt operator/(const BigInt& a, const BigInt& b) {
  std::vector<std::uint32_t> quot, rem;
  BigInt::divmod_mag(a.mag_, b.mag_, quot, rem);
  BigInt out;
  out.mag_ = std::move(quot);
  out.sign_ = out.mag_.empty() ? 0 : a.sign_ * b.sign_;
  return out;
}

BigInt operator%(const BigInt& a, const BigInt& b) {
  std::vector<std::uint32_t> quot, rem;
  BigInt::divmod_mag(a.mag_, b.mag_, quot, rem);
  BigInt out;
  out.mag_ = std::move(rem);
  out.sign_ = out.mag_.empty() ? 0 : a.sign_;
  return out;
}

bool operator==(const BigInt& a, const BigInt& b) {
  return a.sign_ == b.sign_ && a.mag_ == b.mag_;
}

bool operator<(const BigInt& a, const BigInt& b) {
  if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
  const int cmp = BigInt::compare_mag(a.mag_, b.mag_);
  return a.sign_ >= 0 ? cmp < 0 : cmp > 0;
}

BigInt BigInt::shifted_left(unsigned bits) const {
  if (sign_ == 0 || bits == 0) return *this;
  BigInt out;
  out.sign_ = sign_;
  const unsigned limbs = bits / 32;
  const unsigned rem = bits % 32;
  out.mag_.assign(limbs, 0);
  std::uint32_t carry = 0;
  for (std::uint32_t limb : mag_) {
    if (rem == 0) {
      out.mag_.push_back(limb);
    } else {
      out.mag_.push_back((limb << rem) | carry);
      carry = limb >> (32 - rem);
    }
  }
  if (rem != 0 && carry) out.mag_.push_back(carry);
  out.normalize();
  return out;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
  a = a.abs();
  b = b.abs();
  while (!b.is_zero()) {
    BigInt r = a % b;
    a = b;
    b = r;
  }
  return a.is_zero() ? BigInt(1) : a;
}

double BigInt::to_double() const {
  double out = 0.0;
  for (std::size_t i = mag_.size(); i-- > 0;) {
    out = out * 4294967296.0 + static_cast<double>(mag_[i]);
  }
  return sign_ < 0 ? -out : out;
}

std::string BigInt::to_string() const {
  if (sign_ == 0) return "0";
  std::vector<std::uint32_t> rest = mag_;
  const std::vector<std::uint32_t> ten = {10};
  std::string digits;
  while (!rest.empty()) {
    std::vector<std::uint32_t> quot, rem;
    divmod_mag(rest, ten, quot, rem);
    digits.push_back(static_cast<char>('0' + (rem.empty() ? 0 : rem[0])));
    rest = std::move(quot);
  }
  if (sign_ < 0) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

Rational::Rational(BigInt num, BigInt den) : num_(num), den_(den) {
  if (den_.is_zero()) throw std::domain_error("rational with zero denominator");
  reduce();
}

void Rational::reduce() {
  if (den_.sign() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_.is_zero()) {
    den_ = BigInt(1);
    return;
  }
  const BigInt g = BigInt::gcd(num_, den_);
  num_ = num_ / g;
  den_ = den_ / g;
}

Rational Rational::from_double(double v) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument("cannot convert non-finite double");
  }
  if (v == 0.0) return Rational(0);
  int exp = 0;
  const double frac = std::frexp(v, &exp);  // v = frac * 2^exp, |frac| in [0.5, 1)
  const auto mantissa = static_cast<std::int64_t>(std::ldexp(frac, 53));
  const int e2 = exp - 53;
  BigInt num(mantissa);
  BigInt den(1);
  if (e2 >= 0) {
    num = num.shifted_left(static_cast<unsigned>(e2));
  } else {
    den = den.shifted_left(static_cast<unsigned>(-e2));
  }
  return Rational(num, den);
}

Rational Rational::operator-() const {
  Rational out = *this;
  out.num_ = -out.num_;
  return out;
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::domain_error("rational division by zero");
  return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

bool operator==(const Rational& a, const Rational& b) {
  return a.num_ == b.num_ && a.den_ == b.den_;
}

bool operator<(const Rational& a, const Rational& b) {
  return a.num_ * b.den_ < b.num_ * a.den_;
}

double Rational::to_double() const {
  if (num_.is_zero()) return 0.0;
  return num_.to_double() / den_.to_double();
}

std::string Rational::to_string() const {
  if (den_ == BigInt(1)) return num_.to_string();
  return num_.to_string() + "/" + den_.to_string();
}

}  // namespace bellbound
