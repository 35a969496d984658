#ifndef FAIRSP_RATIONAL_HPP
#define FAIRSP_RATIONAL_HPP

#include <cstdint>
#include <string>

namespace fairsp {

// Exact rational arithmetic on int64 with overflow-checked normalization.
// Every probability and fairness threshold in the library goes through this
// type; nothing fairness-relevant is ever computed in floating point.
class Rat {
 public:
  Rat() : num_(0), den_(1) {}
  Rat(long long value) : num_(value), den_(1) {}
  Rat(long long num, long long den);

  static Rat parse(const std::string& text);  // "p/q", "p"; throws ParseError

  long long num() const { return num_; }
  long long den() const { return den_; }

  Rat operator+(const Rat& o) const;
  Rat operator-(const Rat& o) const;
  Rat operator*(const Rat& o) const;
  Rat operator/(const Rat& o) const;
  Rat operator-() const { return Rat(-num_, den_); }

  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  bool operator==(const Rat& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rat& o) const { return !(*this == o); }
  bool operator<(const Rat& o) const;
  bool operator<=(const Rat& o) const { return *this < o || *this == o; }
  bool operator>(const Rat& o) const { return o < *this; }
  bool operator>=(const Rat& o) const { return o <= *this; }

  bool is_zero() const { return num_ == 0; }
  std::string str() const;  // lowest terms; integers without the "/q" part

 private:
  long long num_;
  long long den_;  // > 0, gcd(num_, den_) == 1
};

}  // namespace fairsp

#endif
